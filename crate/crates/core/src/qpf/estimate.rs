//! The shifted-grid estimator Z̃ = min_k Z̃_k.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::counting::{grover_register_bits, oracle_count, EprRegister, STATEVECTOR_SYSTEM_GUARD};
use super::grid::GridPartition;
use super::normalize::{
    normalize_with_margin, Normalization, NormalizedHamiltonian, NORMALIZATION_MARGIN,
};
use super::phase::EnergyEstimationParams;
use crate::error::{Error, Result};
use crate::hamiltonian::LocalHamiltonian;
use crate::par::{self, Mode};
use crate::rng;
use crate::spectrum::spectrum;
use crate::DENSE_GUARD;

/// Upper limit on the grid parameter L.
pub const MAX_GRID: usize = 1 << 20;

const TAG_COUNT: u64 = 0xC011;
const TAG_FAIL: u64 = 0xFA11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Exact,
    Oracle,
    Statevector,
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "oracle" => Ok(Backend::Oracle),
            "statevector" => Ok(Backend::Statevector),
            _ => Err(Error::arg(format!("unknown backend '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QpfConfig {
    pub c: u32,
    pub backend: Backend,
    pub seed: u64,
    /// Target success probability; counts fail independently at rate
    /// (1 − confidence)/#counts on the oracle backend.
    pub confidence: f64,
    /// Probability that an eigenvalue within δE outside an interval is counted.
    pub p_leak: f64,
    pub record_counts: bool,
    pub mode: Mode,
    /// Median repetitions of amplitude estimation (statevector backend).
    pub ae_reps: usize,
}

impl Default for QpfConfig {
    fn default() -> Self {
        QpfConfig {
            c: 1,
            backend: Backend::Oracle,
            seed: 0,
            confidence: 0.99,
            p_leak: 0.5,
            record_counts: false,
            mode: Mode::default(),
            ae_reps: 7,
        }
    }
}

impl QpfConfig {
    /// Every boundary leak is counted.
    pub fn adversarial(mut self) -> Self {
        self.p_leak = 1.0;
        self
    }

    fn validate(&self, beta: f64) -> Result<()> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::arg(format!(
                "β must be finite and nonnegative, got {beta}"
            )));
        }
        if self.c == 0 {
            return Err(Error::arg("precision exponent c must be at least 1"));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::arg("confidence must lie in (0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.p_leak) {
            return Err(Error::arg("leak probability must lie in [0, 1]"));
        }
        Ok(())
    }

    fn check_width(&self, n: usize) -> Result<()> {
        let (what, limit) = match self.backend {
            Backend::Statevector => ("statevector system width", STATEVECTOR_SYSTEM_GUARD),
            _ => ("dense width", DENSE_GUARD),
        };
        if n > limit {
            return Err(Error::Guard {
                what,
                value: n,
                limit,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridValue {
    pub k: usize,
    pub ln_z: f64,
    pub z: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountRecord {
    pub k: usize,
    pub slot: usize,
    pub anchor: f64,
    pub estimate: f64,
    pub failed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QpfEstimate {
    pub z: f64,
    pub ln_z: f64,
    /// Grid attaining the minimum.
    pub argmin: usize,
    pub grids: Vec<GridValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<CountRecord>>,
    pub backend: Backend,
    pub n: usize,
    pub c: u32,
    pub beta: f64,
    pub beta_prime: f64,
    pub l: usize,
    pub delta_c: f64,
    pub delta_e: f64,
    pub normalization: Normalization,
    /// (k, slot) of counts that failed.
    pub failures: Vec<(usize, usize)>,
}

/// L = max(2, ⌈4nᶜβ′⌉).
pub fn grid_size(n: usize, c: u32, beta_prime: f64) -> Result<usize> {
    let l = (4.0 * (n as f64).powi(c as i32) * beta_prime)
        .ceil()
        .max(2.0);
    if !(l <= MAX_GRID as f64) {
        return Err(Error::Guard {
            what: "grid parameter L",
            value: l.min(usize::MAX as f64) as usize,
            limit: MAX_GRID,
        });
    }
    Ok(l as usize)
}

/// Highest energy grid 0 covers with a δE cushion: 1 − 1/L − 1/L².
fn grid0_ceiling(l: usize) -> f64 {
    let l = l as f64;
    1.0 - 1.0 / l - 1.0 / (l * l)
}

/// Normalizes `h`, widening the margin until grid 0 covers the spectrum,
/// then estimates Z(β).
pub fn approximate_qpf(h: &LocalHamiltonian, beta: f64, cfg: &QpfConfig) -> Result<QpfEstimate> {
    cfg.validate(beta)?;
    cfg.check_width(h.width())?;
    let mut margin = NORMALIZATION_MARGIN;
    for _ in 0..64 {
        let nh = normalize_with_margin(h, margin)?;
        let l = grid_size(h.width(), cfg.c, nh.beta_prime(beta))?;
        let ceiling = grid0_ceiling(l);
        if nh.upper <= ceiling {
            return approximate_qpf_normalized(&nh, beta, cfg);
        }
        margin = margin.max(1.0 / ceiling - 1.0) * (1.0 + 1e-9);
    }
    Err(Error::arg("normalization margin did not settle"))
}

/// Estimates Z(β) of H = s·H′ + c. Grid 0 must cover the spectrum of H′.
pub fn approximate_qpf_normalized(
    nh: &NormalizedHamiltonian,
    beta: f64,
    cfg: &QpfConfig,
) -> Result<QpfEstimate> {
    cfg.validate(beta)?;
    cfg.check_width(nh.h.width())?;
    let n = nh.h.width();
    let beta_prime = nh.beta_prime(beta);
    let l = grid_size(n, cfg.c, beta_prime)?;
    if nh.upper > grid0_ceiling(l) {
        return Err(Error::arg(format!(
            "H′ bound {} exceeds the grid-0 ceiling {} for L = {l}",
            nh.upper,
            grid0_ceiling(l)
        )));
    }
    let delta_c = 1.0 / (4.0 * (n as f64).powi(cfg.c as i32));
    let delta_e = 1.0 / (l as f64 * l as f64);
    let dim = (1usize << n) as f64;

    let source = match cfg.backend {
        Backend::Exact | Backend::Oracle => Source::Spectrum(spectrum(&nh.h)?),
        Backend::Statevector => {
            let params = EnergyEstimationParams::new(delta_e, 1)?;
            Source::Register(
                EprRegister::new(nh, params.r)?,
                grover_register_bits(n, cfg.c),
            )
        }
    };
    let failing = if cfg.backend == Backend::Oracle {
        failure_set(l, cfg)
    } else {
        BTreeSet::new()
    };

    let per_grid = par::map_range(cfg.mode, l, |k| {
        let g = GridPartition::new(l, k);
        let mut counts: BTreeMap<usize, (f64, bool)> = BTreeMap::new();
        match &source {
            Source::Spectrum(ev) => {
                let mut tally: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
                for &e in ev {
                    let Some(s) = g.slot_of(e) else { continue };
                    tally.entry(s).or_default().0 += 1;
                    let (lo, hi) = g.interval(s);
                    if s < g.max_slot() && hi - e <= delta_e {
                        tally.entry(s + 1).or_default().1 += 1;
                    }
                    if s > 0 && e - lo < delta_e {
                        tally.entry(s - 1).or_default().1 += 1;
                    }
                }
                for (s, (inside, cands)) in tally {
                    let m = if cfg.backend == Backend::Oracle {
                        let mut r = rng::stream(cfg.seed, &[TAG_COUNT, k as u64, s as u64]);
                        oracle_count(inside, cands, cfg.p_leak, delta_c, &mut r)
                    } else {
                        inside as f64
                    };
                    counts.insert(s, (m, false));
                }
            }
            Source::Register(reg, bits) => {
                for s in g.slots() {
                    let (lo, hi) = g.interval(s);
                    let p = reg.mass(lo, hi);
                    if p > 0.0 {
                        let mut r = rng::stream(cfg.seed, &[TAG_COUNT, k as u64, s as u64]);
                        let m = reg.count(p, *bits, cfg.ae_reps, &mut r).unwrap_or(0.0);
                        counts.insert(s, (m, false));
                    }
                }
            }
        }
        for &(_, s) in failing.range((k, 0)..=(k, usize::MAX)) {
            let mut r = rng::stream(cfg.seed, &[TAG_FAIL, k as u64, s as u64]);
            counts.insert(s, (r.gen_range(0.0..=dim), true));
        }
        let terms: Vec<f64> = counts
            .iter()
            .filter(|(_, &(m, _))| m > 0.0)
            .map(|(&s, &(m, _))| m.ln() - beta_prime * g.anchor(s))
            .collect();
        let ln_z = nh.restore_ln(log_sum_exp(&terms), beta);
        let records: Vec<CountRecord> = if cfg.record_counts {
            counts
                .iter()
                .map(|(&s, &(m, failed))| CountRecord {
                    k,
                    slot: s,
                    anchor: g.anchor(s),
                    estimate: m,
                    failed,
                })
                .collect()
        } else {
            Vec::new()
        };
        (
            GridValue {
                k,
                ln_z,
                z: ln_z.exp(),
            },
            records,
        )
    });

    let grids: Vec<GridValue> = per_grid.iter().map(|g| g.0).collect();
    let best = grids
        .iter()
        .min_by(|a, b| a.ln_z.total_cmp(&b.ln_z))
        .copied()
        .expect("L >= 2 grids");
    let counts = cfg
        .record_counts
        .then(|| per_grid.into_iter().flat_map(|g| g.1).collect());
    Ok(QpfEstimate {
        z: best.z,
        ln_z: best.ln_z,
        argmin: best.k,
        grids,
        counts,
        backend: cfg.backend,
        n,
        c: cfg.c,
        beta,
        beta_prime,
        l,
        delta_c,
        delta_e,
        normalization: nh.normalization(),
        failures: failing.into_iter().collect(),
    })
}

enum Source {
    Spectrum(Vec<f64>),
    Register(EprRegister, usize),
}

pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().fold(f64::NEG_INFINITY, |a, &x| a.max(x));
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Failing (k, slot) pairs, drawn by geometric skipping over all counts.
fn failure_set(l: usize, cfg: &QpfConfig) -> BTreeSet<(usize, usize)> {
    let total = l + (l - 1) * (l + 1);
    let p = (1.0 - cfg.confidence) / total as f64;
    let mut r = rng::stream(cfg.seed, &[TAG_FAIL]);
    let log_q = (-p).ln_1p();
    let mut out = BTreeSet::new();
    let mut idx = 0usize;
    loop {
        let u: f64 = 1.0 - r.gen::<f64>();
        let skip = (u.ln() / log_q).floor();
        if !(skip < (total - idx) as f64) {
            break;
        }
        idx += skip as usize;
        out.insert(if idx < l {
            (0, idx)
        } else {
            let j = idx - l;
            (1 + j / (l + 1), j % (l + 1))
        });
        idx += 1;
        if idx >= total {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{random_k_local, LocalTerm};
    use crate::linalg::ket_bra;
    use crate::spectrum::{exact_partition_function, ln_partition_from_spectrum};

    fn ones(n: usize) -> LocalHamiltonian {
        let terms = (0..n)
            .map(|q| LocalTerm::new(vec![q], ket_bra(1, 1, 2), 1.0))
            .collect();
        LocalHamiltonian::new(n, terms).unwrap()
    }

    #[test]
    fn grid_size_examples() {
        assert_eq!(grid_size(4, 1, 1.0).unwrap(), 16);
        assert_eq!(grid_size(4, 1, 0.0).unwrap(), 2);
        assert!(grid_size(4, 3, 1e9).is_err());
    }

    #[test]
    fn exact_backend_brackets_z() {
        let h = ones(4);
        for beta in [0.5, 2.0, 4.0] {
            let cfg = QpfConfig {
                backend: Backend::Exact,
                ..Default::default()
            };
            let est = approximate_qpf(&h, beta, &cfg).unwrap();
            let z = exact_partition_function(&h, beta).unwrap();
            // Every count rounds its eigenvalues down to the anchor, and
            // anchors sit at most 1/L below.
            let slack = (est.beta_prime / est.l as f64).exp();
            assert!(
                est.z >= z * (1.0 - 1e-9) && est.z <= z * slack,
                "{} vs {z}",
                est.z
            );
        }
    }

    #[test]
    fn oracle_is_deterministic_and_mode_independent() {
        let mut r = rng::seeded(9);
        let h = random_k_local(4, 3, 5, &mut r).unwrap();
        let cfg = QpfConfig {
            seed: 17,
            record_counts: true,
            ..Default::default()
        };
        let a = approximate_qpf(&h, 1.0, &cfg).unwrap();
        let b = approximate_qpf(
            &h,
            1.0,
            &QpfConfig {
                mode: Mode::Sequential,
                ..cfg
            },
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oracle_accuracy_on_random_hamiltonian() {
        let mut r = rng::seeded(10);
        let h = random_k_local(4, 3, 6, &mut r).unwrap();
        let ev = spectrum(&h).unwrap();
        let est = approximate_qpf(&h, 4.0, &QpfConfig::default()).unwrap();
        let rel = (est.ln_z - ln_partition_from_spectrum(&ev, 4.0)).exp() - 1.0;
        assert!(rel.abs() <= 0.25, "{rel}");
    }

    #[test]
    fn failures_follow_rate() {
        let cfg = QpfConfig {
            confidence: 0.5,
            ..Default::default()
        };
        let hits: usize = (0..400)
            .map(|s| failure_set(10, &QpfConfig { seed: s, ..cfg }).len())
            .sum();
        // Expect about 0.5 failures per run.
        assert!((150..=250).contains(&hits), "{hits}");
    }

    #[test]
    fn statevector_tracks_exact() {
        let h = ones(2);
        let cfg = QpfConfig {
            backend: Backend::Statevector,
            ..Default::default()
        };
        let sv = approximate_qpf(&h, 1.0, &cfg).unwrap();
        let ex = approximate_qpf(
            &h,
            1.0,
            &QpfConfig {
                backend: Backend::Exact,
                ..cfg
            },
        )
        .unwrap();
        assert!(
            (sv.ln_z - ex.ln_z).abs() < 0.5,
            "{} vs {}",
            sv.ln_z,
            ex.ln_z
        );
    }
}
