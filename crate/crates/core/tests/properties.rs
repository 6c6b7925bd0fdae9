use std::collections::HashSet;

use lhqpf::clock::{build_h_stab, g_map, ClockSchedule};
use lhqpf::cnf::random_kcnf;
use lhqpf::hamiltonian::{random_k_local, LocalHamiltonian};
use lhqpf::linalg::{is_hermitian, random_unitary};
use lhqpf::par::Mode;
use lhqpf::qpf::{
    approximate_qpf, choi_deviation, median_amplify, normalize, Backend, GridPartition, QpfConfig,
};
use lhqpf::reductions::sat_to_klh_trivial;
use lhqpf::rng::seeded;
use lhqpf::spectrum::{
    ground_energy_dense, ground_energy_lanczos, ln_partition_from_spectrum, spectrum,
};
use lhqpf::C64;
use nalgebra::DVector;
use proptest::prelude::*;

fn random_h(n: usize, k: usize, m: usize, seed: u64) -> LocalHamiltonian {
    random_k_local(n, k.min(n), m, &mut seeded(seed)).unwrap()
}

fn random_vec(dim: usize, seed: u64) -> Vec<C64> {
    use rand::Rng as _;
    let mut rng = seeded(seed ^ 0x5eed);
    (0..dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn apply_matches_dense(n in 1usize..=5, k in 1usize..=3, m in 1usize..=6, seed in any::<u64>()) {
        let h = random_h(n, k, m, seed);
        let v = random_vec(1 << n, seed);
        let dense = h.to_dense().unwrap() * DVector::from_column_slice(&v);
        let fast = h.apply_with(Mode::Parallel, &v).unwrap();
        let seq = h.apply_with(Mode::Sequential, &v).unwrap();
        prop_assert_eq!(&fast, &seq);
        for (a, b) in fast.iter().zip(dense.iter()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn random_local_hamiltonians_are_hermitian(n in 1usize..=5, k in 1usize..=3, m in 0usize..=6, seed in any::<u64>()) {
        let h = random_h(n, k, m, seed);
        prop_assert!(is_hermitian(&h.to_dense().unwrap(), 1e-12));
        prop_assert!(h.locality() <= k.min(n));
    }

    #[test]
    fn g_map_is_an_injective_walk(a in 1usize..=8, blocks in 1usize..=6) {
        let len = blocks * (a + 1);
        let mut seen = HashSet::new();
        for t in 0..len {
            let (j, u) = g_map(t, a);
            prop_assert!(u <= a);
            prop_assert!(seen.insert((j, u)));
            if t > 0 {
                let (pj, pu) = g_map(t - 1, a);
                let moves = (j != pj) as usize + (u != pu) as usize;
                prop_assert_eq!(moves, 1);
                prop_assert!(j.abs_diff(pj) + u.abs_diff(pu) == 1);
            }
        }
    }

    #[test]
    fn dual_legal_states_are_distinct(a in 2usize..=5, d in 2usize..=3) {
        prop_assume!(a >= d);
        let s = ClockSchedule::dual(a, d).unwrap();
        let idx: HashSet<usize> = (0..=s.t_max()).map(|t| s.legal_index(t).unwrap()).collect();
        prop_assert_eq!(idx.len(), s.t_max() + 1);
    }

    #[test]
    fn h_stab_kernel_is_weight_d(a in 2usize..=10, d in 1usize..=3, x in any::<u64>()) {
        prop_assume!(d < a);
        let terms = build_h_stab(a, d).unwrap();
        let x = (x as usize) & ((1 << a) - 1);
        let v: f64 = terms.iter().map(|t| t.diag(x, a)).sum();
        if x.count_ones() as usize == d {
            prop_assert_eq!(v, 0.0);
        } else {
            prop_assert!(v >= 1.0);
        }
    }

    #[test]
    fn grids_tile_and_slot_of_agrees(l in 2usize..=200, k_frac in 0.0f64..1.0, e_frac in 0.0f64..1.0) {
        let k = ((k_frac * l as f64) as usize).min(l - 1);
        let g = GridPartition::new(l, k);
        for s in 0..g.max_slot() {
            prop_assert_eq!(g.interval(s).1, g.interval(s + 1).0);
        }
        let lf = l as f64;
        let e = e_frac * (1.0 - 1.0 / lf - 1.0 / (lf * lf));
        let s = g.slot_of(e);
        prop_assert!(s.is_some());
        let (lo, hi) = g.interval(s.unwrap());
        prop_assert!(lo <= e && e < hi);
    }

    #[test]
    fn lanczos_matches_dense(n in 2usize..=6, m in 1usize..=8, seed in any::<u64>()) {
        let h = random_h(n, 3, m, seed);
        let d = ground_energy_dense(&h).unwrap().lambda;
        let l = ground_energy_lanczos(&h, 300, 1e-10, seed).unwrap();
        prop_assert!((l.lambda - d).abs() < 1e-7, "lanczos {} dense {}", l.lambda, d);
    }

    #[test]
    fn normalization_restores_z(n in 1usize..=5, m in 1usize..=6, seed in any::<u64>(), beta in 0.0f64..4.0) {
        let h = random_h(n, 2, m, seed);
        let nh = normalize(&h).unwrap();
        let primed = spectrum(&nh.h).unwrap();
        prop_assert!(primed[0] >= -1e-12 && *primed.last().unwrap() <= nh.upper + 1e-12);
        let restored = nh.restore_ln(ln_partition_from_spectrum(&primed, nh.beta_prime(beta)), beta);
        let direct = ln_partition_from_spectrum(&spectrum(&h).unwrap(), beta);
        prop_assert!((restored - direct).abs() < 1e-9);
    }

    #[test]
    fn choi_identity(n in 1usize..=3, seed in any::<u64>()) {
        let u = random_unitary(1 << n, &mut seeded(seed));
        prop_assert!(choi_deviation(&u).unwrap() < 1e-10);
    }

    #[test]
    fn median_splits_the_sample(xs in prop::collection::vec(-1e3f64..1e3, 1..40)) {
        let m = median_amplify(&xs).unwrap();
        prop_assert!(xs.contains(&m));
        let below = xs.iter().filter(|&&x| x <= m).count();
        let above = xs.iter().filter(|&&x| x >= m).count();
        prop_assert!(2 * below >= xs.len() && 2 * above >= xs.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn z_is_nonincreasing_for_clause_penalties(n in 3usize..=7, m in 1usize..=12, seed in any::<u64>(), b in 0.0f64..5.0, db in 0.0f64..5.0) {
        let f = random_kcnf(n, m, 3, &mut seeded(seed));
        let h = sat_to_klh_trivial(&f).unwrap().hamiltonian;
        let ev = spectrum(&h).unwrap();
        prop_assert!(ln_partition_from_spectrum(&ev, b + db) <= ln_partition_from_spectrum(&ev, b) + 1e-12);
    }

    #[test]
    fn oracle_is_deterministic_across_modes(n in 2usize..=5, m in 1usize..=5, seed in any::<u64>(), beta in 0.1f64..3.0) {
        let h = random_h(n, 2, m, seed);
        let par = QpfConfig { seed, mode: Mode::Parallel, ..QpfConfig::default() };
        let seq = QpfConfig { mode: Mode::Sequential, ..par };
        let a = approximate_qpf(&h, beta, &par).unwrap();
        prop_assert_eq!(&a, &approximate_qpf(&h, beta, &par).unwrap());
        prop_assert_eq!(&a, &approximate_qpf(&h, beta, &seq).unwrap());
    }

    #[test]
    fn exact_backend_overestimates_within_one_slot(n in 1usize..=5, m in 1usize..=5, seed in any::<u64>(), beta in 0.0f64..4.0) {
        let h = random_h(n, 2, m, seed);
        let cfg = QpfConfig { backend: Backend::Exact, ..QpfConfig::default() };
        let est = approximate_qpf(&h, beta, &cfg).unwrap();
        let exact = ln_partition_from_spectrum(&spectrum(&h).unwrap(), beta);
        let slack = est.beta_prime / est.l as f64;
        prop_assert!(est.ln_z >= exact - 1e-9);
        prop_assert!(est.ln_z <= exact + slack + 1e-9);
    }
}
