use std::path::Path;

use anyhow::{bail, Context, Result};
use lhqpf::hamiltonian::CoefficientSet;
use lhqpf::DENSE_GUARD;
use serde::Deserialize;

/// Optional TOML configuration.
///
/// ```toml
/// [coefficients]
/// profile = "unscaled"     # or "scaled" (default)
/// alpha_b = 4.0            # individual overrides
///
/// [guards]
/// dense_width = 10         # may only lower the built-in limit
/// ```
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub coefficients: CoefficientConfig,
    #[serde(default)]
    pub guards: GuardConfig,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientConfig {
    pub profile: Option<String>,
    pub alpha_in: Option<f64>,
    pub alpha_out: Option<f64>,
    pub alpha_a: Option<f64>,
    pub alpha_b: Option<f64>,
    pub alpha_clock: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GuardConfig {
    pub dense_width: Option<usize>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: Config = toml::from_str(&text).context("parsing config")?;
        if let Some(w) = cfg.guards.dense_width {
            if w > DENSE_GUARD {
                bail!("guards.dense_width = {w} exceeds the built-in limit {DENSE_GUARD}");
            }
        }
        Ok(cfg)
    }

    pub fn dense_width(&self) -> usize {
        self.guards.dense_width.unwrap_or(DENSE_GUARD)
    }

    /// True when the coefficients differ from the built-in default.
    pub fn customizes_coefficients(&self) -> bool {
        let c = &self.coefficients;
        c.profile.is_some()
            || c.alpha_in.is_some()
            || c.alpha_out.is_some()
            || c.alpha_a.is_some()
            || c.alpha_b.is_some()
            || c.alpha_clock.is_some()
    }

    pub fn coefficients(&self, t_max: usize) -> Result<CoefficientSet> {
        let c = &self.coefficients;
        let mut set = match c.profile.as_deref() {
            None | Some("scaled") => CoefficientSet::for_t(t_max),
            Some("unscaled") => CoefficientSet::unscaled(t_max),
            Some(other) => bail!("unknown coefficient profile '{other}'"),
        };
        set.alpha_in = c.alpha_in.unwrap_or(set.alpha_in);
        set.alpha_out = c.alpha_out.unwrap_or(set.alpha_out);
        set.alpha_a = c.alpha_a.unwrap_or(set.alpha_a);
        set.alpha_b = c.alpha_b.unwrap_or(set.alpha_b);
        set.alpha_clock = c.alpha_clock.unwrap_or(set.alpha_clock);
        Ok(set)
    }
}
