//! Acceptance criteria for the `lhqpf` crate. Each check returns a
//! [`Verdict`]; the `acceptance` test target runs them all.

use std::f64::consts::PI;

use rand::Rng as _;

use lhqpf::circuit::{
    build_sat_verifier, canonicalize_for_construction, simulate, Circuit, Gate, StateVector,
};
use lhqpf::clock::{build_h_stab, check_johnson_equations, verify_conditions, ClockSchedule};
use lhqpf::cnf::{assignment_of, brute_force_sat, evaluate, random_kcnf, CnfFormula};
use lhqpf::hamiltonian::{
    circuit_to_hamiltonian, random_k_local, CoefficientSet, LocalHamiltonian, LocalTerm,
};
use lhqpf::linalg::{bit, random_unitary, CMat};
use lhqpf::qpf::{
    amplitude_estimate, approximate_qpf, approximate_qpf_normalized, choi_deviation, epr_state,
    grid_size, grover_register_bits, phase_estimate, MarkedPreparer, NormalizedHamiltonian,
    QpfConfig,
};
use lhqpf::reductions::{decide_lh_via_qpf, lh_to_qpf, sat_to_klh_trivial};
use lhqpf::rng::{self, Rng};
use lhqpf::spectrum::{
    decide_lh, exact_partition_function, ground_energy_dense, ln_partition_from_spectrum, spectrum,
    Method,
};
use lhqpf::C64;

pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

pub type Check = fn() -> lhqpf::Result<Verdict>;

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn log2_ceil(m: usize) -> usize {
    (usize::BITS - (m - 1).leading_zeros()) as usize
}

// ---------------------------------------------------------------- 1

pub fn dual_clock_table() -> lhqpf::Result<Verdict> {
    const ROWS: [&str; 12] = [
        "100|000", "100|100", "100|110", "100|111", "010|111", "010|110", "010|100", "010|000",
        "001|000", "001|100", "001|110", "001|111",
    ];
    let s = ClockSchedule::dual(3, 2)?;
    let mut bad = Vec::new();
    for (t, want) in ROWS.iter().enumerate() {
        let bits: String = s
            .legal_state(t)?
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        let got = format!("{}|{}", &bits[..3], &bits[3..]);
        if got != *want {
            bad.push(format!("t={t}: {got} != {want}"));
        }
    }
    let rows_ok = s.t_max() == 11;
    Ok(Verdict {
        pass: bad.is_empty() && rows_ok,
        detail: if bad.is_empty() {
            format!("{} rows match", ROWS.len())
        } else {
            bad.join("; ")
        },
    })
}

// ---------------------------------------------------------------- 2

pub fn clock_identities() -> lhqpf::Result<Verdict> {
    let mut johnson = 0;
    let mut eq_failures = 0;
    for a in 1..=12 {
        for d in 1..a {
            eq_failures += check_johnson_equations(&ClockSchedule::johnson(a, d)?)?;
            johnson += 1;
        }
    }
    let mut schedules = Vec::new();
    for t in 1..=10 {
        schedules.push(ClockSchedule::unary(t));
    }
    for d in 2..=3 {
        for a in d..=4 {
            schedules.push(ClockSchedule::dual(a, d)?);
        }
    }
    let mut violations = Vec::new();
    let mut ops = 0;
    for s in &schedules {
        let r = verify_conditions(s)?;
        ops += r.ops_checked;
        if !r.passed() {
            violations.push(format!("{}: {} violations", r.schedule, r.violations.len()));
        }
    }
    Ok(Verdict {
        pass: eq_failures == 0 && violations.is_empty(),
        detail: format!(
            "{johnson} Johnson clocks (a <= 12): {eq_failures} equation failures; {} unary/dual schedules, {ops} operators: {}",
            schedules.len(),
            if violations.is_empty() { "C2-C6 hold".to_string() } else { violations.join(", ") }
        ),
    })
}

// ---------------------------------------------------------------- 3

pub fn h_stab_lemma() -> lhqpf::Result<Verdict> {
    let mut failures = Vec::new();
    let mut cases = 0;
    let (mut below, mut above) = (f64::INFINITY, f64::INFINITY);
    for a in 2..=12 {
        for d in 1..=3usize.min(a - 1) {
            let terms = build_h_stab(a, d)?;
            for x in 0..1usize << a {
                let v: f64 = terms.iter().map(|t| t.diag(x, a)).sum();
                let w = x.count_ones() as usize;
                let ok = match w.cmp(&d) {
                    std::cmp::Ordering::Equal => v == 0.0,
                    std::cmp::Ordering::Less => {
                        below = below.min(v);
                        v >= 1.0
                    }
                    std::cmp::Ordering::Greater => {
                        above = above.min(v);
                        v >= 1.0
                    }
                };
                if !ok && failures.len() < 5 {
                    failures.push(format!("a={a} d={d} x={x:b}: {v}"));
                }
            }
            cases += 1;
        }
    }
    Ok(Verdict {
        pass: failures.is_empty(),
        detail: format!(
            "{cases} (a, d) pairs; min value below weight d {below}, above weight d {above}{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!("; {}", failures.join(", "))
            }
        ),
    })
}

// ---------------------------------------------------------------- 4

fn random_circuit(rng: &mut Rng) -> Circuit {
    let n = rng.gen_range(1..=3);
    let g = rng.gen_range(1..=12);
    let gates = (0..g)
        .map(|_| {
            let q = rng.gen_range(0..n);
            match rng.gen_range(0..6) {
                0 => Gate::h(q),
                1 => Gate::t(q),
                2 => Gate::x(q),
                3 => Gate::z(q),
                4 => Gate::id(q),
                _ if n >= 2 => {
                    let t = (q + rng.gen_range(1..n)) % n;
                    Gate::cnot(q, t)
                }
                _ => Gate::tdg(q),
            }
        })
        .collect();
    Circuit::new(n, 0, n - 1).with_gates(gates)
}

/// Slots the canonical form needs at least: one per single-qubit gate, two
/// extra per CNOT for the target flip, five per controlled-Z block.
fn slot_demand(c: &Circuit) -> (usize, bool) {
    let mut slots = 0;
    let mut two_qubit = false;
    for g in &c.gates {
        if g.qubits.len() == 2 {
            two_qubit = true;
            slots += 7;
        } else {
            slots += 1;
        }
    }
    (slots, two_qubit)
}

fn capacity_a(slots: usize, d: usize) -> usize {
    let mut a = d;
    while choose(a, d - 1) * a < slots {
        a += 1;
    }
    a
}

pub fn locality_and_size() -> lhqpf::Result<Verdict> {
    let mut rng = rng::seeded(4);
    let mut corpus = Vec::new();
    while corpus.len() < 24 {
        let c = random_circuit(&mut rng);
        if canonicalize_for_construction(&c, 1)?.params.t_max <= 30 {
            corpus.push(c);
        }
    }
    let mut problems = Vec::new();
    let mut exact_min = 0;
    for (i, c) in corpus.iter().enumerate() {
        for d in 1..=3 {
            let k = canonicalize_for_construction(c, d)?;
            let p = &k.params;
            let (h, _) = circuit_to_hamiltonian(&k, &CoefficientSet::for_t(p.t_max))?;
            if h.locality() != d + 1 {
                problems.push(format!("#{i} d={d}: locality {}", h.locality()));
            }
            let want = if d == 1 {
                c.width + p.t_max
            } else {
                c.width + 2 * p.a
            };
            if h.width() != want {
                problems.push(format!("#{i} d={d}: width {} != {want}", h.width()));
            }
            if d >= 2 {
                let (slots, two_qubit) = slot_demand(c);
                let lower = capacity_a(slots, d);
                if p.a < lower || (!two_qubit && p.a != lower) {
                    problems.push(format!("#{i} d={d}: a = {} vs capacity {lower}", p.a));
                }
                if !two_qubit {
                    exact_min += 1;
                }
            }
        }
    }

    let mut sweep = Vec::new();
    for d in 2..=3 {
        let a_of: Vec<usize> = (1..=30)
            .map(|g| {
                let c = Circuit::new(1, 0, 0).with_gates(vec![Gate::h(0); g]);
                canonicalize_for_construction(&c, d).map(|k| k.params.a)
            })
            .collect::<lhqpf::Result<_>>()?;
        let monotone = a_of.windows(2).all(|w| w[0] <= w[1]);
        let fact: usize = (1..d).product();
        let bounded = a_of
            .iter()
            .enumerate()
            .all(|(i, &a)| a as f64 <= ((fact * (i + 1)) as f64).powf(1.0 / d as f64) + d as f64);
        let sublinear = (a_of[29] as f64 / a_of[7] as f64) < 30.0 / 8.0;
        if !(monotone && bounded && sublinear) {
            problems.push(format!(
                "sweep d={d}: monotone {monotone}, O(T^(1/d)) bound {bounded}, sublinear {sublinear}"
            ));
        }
        sweep.push(format!(
            "d={d}: a(1,8,30) = ({}, {}, {})",
            a_of[0], a_of[7], a_of[29]
        ));
    }
    Ok(Verdict {
        pass: problems.is_empty(),
        detail: format!(
            "{} circuits x d in 1..=3 ({exact_min} exact-minimality checks); {}{}",
            corpus.len(),
            sweep.join(", "),
            if problems.is_empty() {
                String::new()
            } else {
                format!("; {}", problems.join(", "))
            }
        ),
    })
}

// ---------------------------------------------------------------- 5

fn ground(c: &Circuit, d: usize, unscaled: bool) -> lhqpf::Result<(f64, usize)> {
    let k = canonicalize_for_construction(c, d)?;
    let t = k.params.t_max;
    let coeffs = if unscaled {
        CoefficientSet::unscaled(t)
    } else {
        CoefficientSet::for_t(t)
    };
    let (h, _) = circuit_to_hamiltonian(&k, &coeffs)?;
    Ok((ground_energy_dense(&h)?.lambda, h.width()))
}

pub fn completeness_soundness() -> lhqpf::Result<Verdict> {
    const EPS: f64 = 0.125;
    const TOL: f64 = 1e-8;
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, gates, label) in [(1, 8, "unary"), (2, 10, "dual d=2")] {
        let mut acc = vec![Gate::x(0)];
        acc.extend(vec![Gate::id(0); gates - 1]);
        let acceptor = Circuit::new(0, 1, 0).with_gates(acc);
        let rejector = Circuit::new(0, 1, 0).with_gates(vec![Gate::id(0); gates]);
        let (la, wa) = ground(&acceptor, d, false)?;
        let (lr, wr) = ground(&rejector, d, false)?;
        let (ua, _) = ground(&acceptor, d, true)?;
        let (ur, _) = ground(&rejector, d, true)?;
        let pass = la <= EPS + TOL && lr >= 0.5 - EPS - TOL && wa <= 14 && wr <= 14;
        ok &= pass;
        parts.push(format!(
            "{label} (width {wa}): acceptor {la:.4}, rejector {lr:.4}, gap {:.4} (unscaled gap {:.4})",
            lr - la,
            ur - ua
        ));
    }
    Ok(Verdict {
        pass: ok,
        detail: parts.join("; "),
    })
}

// ---------------------------------------------------------------- 6

fn gate_budget(n: usize, m: usize, k: usize) -> f64 {
    let mut c = 1u32;
    while n.pow(c) < m {
        c += 1;
    }
    let (c, nf) = (c as f64, n as f64);
    let lg = nf.log2();
    34.0 * c * c * nf.powf(c) * lg * lg + (70.0 * k as f64 + 2.0) * nf.powf(c) + 35.0 * c * lg
}

fn phi(f: &CnfFormula, x: usize) -> lhqpf::Result<bool> {
    evaluate(f, &assignment_of(x, f.num_vars()))
}

pub fn verifier_circuit() -> lhqpf::Result<Verdict> {
    let mut problems = Vec::new();
    let mut worst_mass: f64 = 1.0;
    let mut basis_checked = 0;
    let mut max_gate_ratio: f64 = 0.0;
    for i in 0..50u64 {
        let mut rng = rng::stream(6, &[i]);
        let n = rng.gen_range(3..=8);
        let m = rng.gen_range(3..=12);
        let f = random_kcnf(n, m, 3, &mut rng);
        let v = build_sat_verifier(&f)?;
        let e = v.elementary()?;
        let w = e.width;
        let out = v.layout.out;

        let amp = C64::new((1.0 / (1u64 << n) as f64).sqrt(), 0.0);
        let s = simulate(&e, &StateVector::from_amps(vec![amp; 1 << n])?)?;
        let anc = w - n;
        for x in 0..1usize << n {
            let want = phi(&f, x)? as usize;
            let good: f64 = (0..1usize << anc)
                .map(|j| (x << anc) | j)
                .filter(|&idx| bit(idx, out, w) == want)
                .map(|idx| s.amps[idx].norm_sqr())
                .sum();
            let mass = good * (1u64 << n) as f64;
            worst_mass = worst_mass.min(mass);
            if mass < 1.0 - 1e-9 {
                problems.push(format!("#{i} x={x}: mass {mass}"));
            }
        }
        if n <= 5 {
            for x in 0..1usize << n {
                let p = simulate(&e, &StateVector::basis(n, x))?.prob_one(out);
                let want = if phi(&f, x)? { 1.0 } else { 0.0 };
                if (p - want).abs() > 1e-9 {
                    problems.push(format!("#{i} basis x={x}: P(out=1) {p}"));
                }
                basis_checked += 1;
            }
        }

        let bound = 2 * log2_ceil(m) + 2;
        if v.ancillas() > bound {
            problems.push(format!("#{i} m={m}: {} ancillas > {bound}", v.ancillas()));
        }
        let gates = v.elementary_count()? as f64;
        let budget = gate_budget(n, m, 3);
        max_gate_ratio = max_gate_ratio.max(gates / budget);
        if gates > budget {
            problems.push(format!("#{i}: {gates} gates > {budget}"));
        }
    }
    Ok(Verdict {
        pass: problems.is_empty(),
        detail: format!(
            "50 formulas; worst correct-output mass {worst_mass:.12}; {basis_checked} basis runs; max gates/budget {max_gate_ratio:.3}{}",
            if problems.is_empty() { String::new() } else { format!("; {}", problems[..problems.len().min(5)].join(", ")) }
        ),
    })
}

// ---------------------------------------------------------------- 7, 8

fn trivial_corpus() -> Vec<CnfFormula> {
    (0..100u64)
        .map(|i| {
            let mut rng = rng::stream(7, &[i]);
            let n = rng.gen_range(3..=12);
            let m = rng.gen_range(n..=6 * n);
            random_kcnf(n, m, 3, &mut rng)
        })
        .collect()
}

pub fn trivial_reduction() -> lhqpf::Result<Verdict> {
    let mut problems = Vec::new();
    let (mut sat, mut unsat) = (0, 0);
    for (i, f) in trivial_corpus().iter().enumerate() {
        let inst = sat_to_klh_trivial(f)?;
        let lambda = ground_energy_dense(&inst.hamiltonian)?.lambda;
        let ok = if brute_force_sat(f)?.is_some() {
            sat += 1;
            lambda.abs() <= 1e-10
        } else {
            unsat += 1;
            lambda >= 1.0 - 1e-10
        };
        if !ok {
            problems.push(format!("#{i}: λ = {lambda}"));
        }
    }
    Ok(Verdict {
        pass: problems.is_empty() && sat > 0 && unsat > 0,
        detail: format!(
            "{sat} satisfiable, {unsat} unsatisfiable{}",
            if problems.is_empty() {
                String::new()
            } else {
                format!("; {}", problems.join(", "))
            }
        ),
    })
}

pub fn lh_to_qpf_decision() -> lhqpf::Result<Verdict> {
    let mut disagreements = Vec::new();
    let mut separated = 0;
    let mut margin = f64::INFINITY;
    let mut default_margin = f64::INFINITY;
    let corpus = trivial_corpus();
    for (i, f) in corpus.iter().enumerate() {
        let inst = sat_to_klh_trivial(f)?;
        let q = lh_to_qpf(&inst)?;
        default_margin = default_margin.min(q.ln_z_yes() - q.ln_z_no());
        let q = q.clone().with_overrides(Some(q.beta0), Some(q.delta0))?;
        let (via_qpf, _) = decide_lh_via_qpf(&q, |h, b, _| exact_partition_function(h, b))?;
        let (direct, _) = decide_lh(&inst.hamiltonian, &inst.thresholds, Method::Dense)?;
        if via_qpf != direct {
            disagreements.push(format!("#{i}: {via_qpf:?} vs {direct:?}"));
        }
        let gap = q.ln_z_yes() - q.ln_z_no();
        margin = margin.min(gap);
        if q.z_yes() > q.z_no() {
            separated += 1;
        }
    }
    Ok(Verdict {
        pass: disagreements.is_empty() && separated == corpus.len(),
        detail: format!(
            "decisions agree on {}/{}; z_yes > z_no on {separated}/{} at β = β0 (min ln z_yes − ln z_no = {margin:.3e}; at the default β0 + 1/(E_no − E_yes) it is {default_margin:.3}){}",
            corpus.len() - disagreements.len(),
            corpus.len(),
            corpus.len(),
            if disagreements.is_empty() { String::new() } else { format!("; {}", disagreements.join(", ")) }
        ),
    })
}

// ---------------------------------------------------------------- 9

pub fn qpf_contract() -> lhqpf::Result<Verdict> {
    let mut total = 0;
    let mut good = 0;
    let mut parts = Vec::new();
    for n in [4usize, 6, 8] {
        for beta in [1.0, n as f64] {
            let mut ok = 0;
            let mut worst: f64 = 0.0;
            for seed in 0..50u64 {
                let h = random_k_local(n, 3, 2 * n, &mut rng::stream(9, &[n as u64, seed]))?;
                let cfg = QpfConfig {
                    seed,
                    ..QpfConfig::default()
                };
                let est = approximate_qpf(&h, beta, &cfg)?;
                let exact = ln_partition_from_spectrum(&spectrum(&h)?, beta);
                let rel = (est.ln_z - exact).exp() - 1.0;
                worst = worst.max(rel.abs());
                if rel.abs() <= 1.0 / n as f64 {
                    ok += 1;
                }
            }
            total += 50;
            good += ok;
            parts.push(format!("n={n} β={beta}: {ok}/50 (worst {worst:.3})"));
        }
    }
    let rate = good as f64 / total as f64;
    Ok(Verdict {
        pass: rate >= 0.99,
        detail: format!(
            "{good}/{total} = {:.1}% within 1/n; {}",
            100.0 * rate,
            parts.join(", ")
        ),
    })
}

// ---------------------------------------------------------------- 10

pub fn shifted_grids() -> lhqpf::Result<Verdict> {
    let n = 4;
    let beta = 2.0;
    let l = grid_size(n, 1, beta)?;
    // Every eigenvalue sits on a grid-0 anchor ℓ/L, ℓ ≥ 1.
    let values: Vec<f64> = (0..1usize << n)
        .map(|i| (1 + i % 12) as f64 / l as f64)
        .collect();
    let diag = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&e| C64::new(e, 0.0)),
    ));
    let h = LocalHamiltonian::new(n, vec![LocalTerm::new((0..n).collect(), diag, 1.0)])?;
    let nh = NormalizedHamiltonian::assume_normalized(h.clone())?;
    let est = approximate_qpf_normalized(&nh, beta, &QpfConfig::default().adversarial())?;
    let z = exact_partition_function(&h, beta)?;
    let tol = 1.0 / n as f64;
    let z0 = est.grids[0].z;
    let grid0_fails = z0 > (1.0 + tol) * z;
    let min_ok = (est.z / z - 1.0).abs() <= tol;
    Ok(Verdict {
        pass: grid0_fails && min_ok && est.l == l,
        detail: format!(
            "L = {l}, Z = {z:.4}: Z̃_0/Z = {:.3} (> {:.3} required), min_k Z̃_k/Z = {:.3} at k = {}",
            z0 / z,
            1.0 + tol,
            est.z / z,
            est.argmin
        ),
    })
}

// ---------------------------------------------------------------- 11

pub fn choi_epr() -> lhqpf::Result<Verdict> {
    let mut worst: f64 = 0.0;
    let mut worst_choi: f64 = 0.0;
    for i in 0..20u64 {
        let n = 1 + (i % 5) as usize;
        let dim = 1usize << n;
        let v = random_unitary(dim, &mut rng::stream(11, &[i]));
        let epr = epr_state(n)?;
        let s = (dim as f64).sqrt();
        for a in 0..dim {
            for b in 0..dim {
                let amp: C64 = (0..dim).map(|j| v[(a, j)] * v[(b, j)].conj()).sum::<C64>() / s;
                worst = worst.max((amp - epr.amps[a * dim + b]).norm());
            }
        }
        worst_choi = worst_choi.max(choi_deviation(&v)?);
    }
    Ok(Verdict {
        pass: worst < 1e-10 && worst_choi < 1e-10,
        detail: format!("20 unitaries, n in 1..=5: max |Σ V|j⟩V*|j⟩/√D − EPR| = {worst:.2e}, max Choi deviation {worst_choi:.2e}"),
    })
}

// ---------------------------------------------------------------- 12

pub fn quantum_subroutines() -> lhqpf::Result<Verdict> {
    const SAMPLES: usize = 10_000;
    let (r, b) = (8, 6);
    let tol = 2.0 * PI / (1u64 << b) as f64;
    let mut rng = rng::seeded(12);
    let mut ok = true;
    let mut thetas = vec![2.0 * PI * 0.3];
    thetas.extend((0..9).map(|_| rng.gen_range(0.0..2.0 * PI)));
    let mut min_mass: f64 = 1.0;
    let mut headline = String::new();
    for (i, &theta) in thetas.iter().enumerate() {
        let power = |p: usize, v: &[C64]| vec![v[0], v[1] * C64::from_polar(1.0, theta * p as f64)];
        let dist = phase_estimate(power, &[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], r)?;
        let mass = dist.mass_within(theta, tol);
        min_mass = min_mass.min(mass);
        ok &= mass >= 0.75;
        if i == 0 {
            let hits = (0..SAMPLES)
                .filter(|_| lhqpf::qpf::phase::circle_distance(dist.sample(&mut rng), theta) <= tol)
                .count();
            let f = hits as f64 / SAMPLES as f64;
            let band = 3.0 * (mass * (1.0 - mass) / SAMPLES as f64).sqrt();
            let floor = 0.75 - 3.0 * (0.75 * 0.25 / SAMPLES as f64).sqrt();
            ok &= (f - mass).abs() <= band && f >= floor;
            headline =
                format!("θ = 2π·0.3: exact mass {mass:.4}, sampled {f:.4} (3σ band ±{band:.4})");
        }
    }

    let n = 5;
    let bits = grover_register_bits(n, 1);
    let mut counts = Vec::new();
    for m in [0usize, 1, 7, 16, 32] {
        let a = C64::new((1.0 / 32.0f64).sqrt(), 0.0);
        let mut state = vec![C64::new(0.0, 0.0); 1 << (n + 1)];
        for x in 0..1usize << n {
            state[(x << 1) | (x < m) as usize] = a;
        }
        let prep = MarkedPreparer {
            state,
            flag: n,
            population: (1u64 << n) as f64,
        };
        let est = amplitude_estimate(&prep, bits, true, 7, &mut rng::stream(12, &[m as u64]))?;
        let within = (est.count - m as f64).abs() <= m as f64 / n as f64;
        ok &= within;
        counts.push(format!("{m}→{:.3}", est.count));
    }
    Ok(Verdict {
        pass: ok,
        detail: format!(
            "{headline}; min mass over {} phases {min_mass:.4}; amplitude estimation ({bits} bits): {}",
            thetas.len(),
            counts.join(", ")
        ),
    })
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    /// Wall-clock budget in seconds.
    pub budget: f64,
    pub check: Check,
}

pub fn criteria() -> Vec<Criterion> {
    let table: [(usize, &'static str, f64, Check); 12] = [
        (1, "dual clock table for T = 11", 1e-3, dual_clock_table),
        (2, "clock operator identities", 60.0, clock_identities),
        (3, "H_stab diagonal", 10.0, h_stab_lemma),
        (4, "locality and size", 60.0, locality_and_size),
        (
            5,
            "completeness/soundness gap",
            120.0,
            completeness_soundness,
        ),
        (6, "SAT verifier circuit", 120.0, verifier_circuit),
        (7, "trivial SAT reduction", 60.0, trivial_reduction),
        (8, "LH to QPF decision at β0", 60.0, lh_to_qpf_decision),
        (9, "QPF oracle contract", 300.0, qpf_contract),
        (10, "shifted grids", 60.0, shifted_grids),
        (11, "Choi/EPR identity", 10.0, choi_epr),
        (
            12,
            "phase and amplitude estimation",
            300.0,
            quantum_subroutines,
        ),
    ];
    table
        .into_iter()
        .map(|(id, name, budget, check)| Criterion {
            id,
            name,
            budget,
            check,
        })
        .collect()
}
