//! Line-oriented `key = value` experiment configs.
//!
//! Unknown keys are errors, not warnings: silent config drift ruins
//! reproducibility. Blank lines and lines starting with `#` are ignored.

use crate::{HarnessError, Result};
use dimlab_core::cantor::RemovalSchedule;
use serde::Serialize;

/// Hard cap on the Cartesian product size in graph experiments.
pub const PRODUCT_CAP: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CantorSpec {
    Fat,
    Lean,
    Middle { alpha: f64 },
}

impl CantorSpec {
    pub fn schedule(&self) -> RemovalSchedule {
        match self {
            CantorSpec::Fat => RemovalSchedule::FatSvc,
            CantorSpec::Lean => RemovalSchedule::Lean,
            CantorSpec::Middle { alpha } => RemovalSchedule::MiddleAlpha { alpha: *alpha },
        }
    }

    fn parse(value: &str) -> Result<Self> {
        match value {
            "fat" => Ok(CantorSpec::Fat),
            "lean" => Ok(CantorSpec::Lean),
            other => {
                if let Some(alpha) = other.strip_prefix("middle:") {
                    let alpha = parse_f64("cantor alpha", alpha)?;
                    Ok(CantorSpec::Middle { alpha })
                } else {
                    Err(HarnessError::Config(format!(
                        "unknown cantor schedule '{other}' (expected fat | lean | middle:<alpha>)"
                    )))
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FSpec {
    /// Random coordinate series with geometric coefficient decay.
    Series {
        seed: u64,
        /// Domain depth; defaults to the experiment depth when absent.
        m: Option<u32>,
        ratio: f64,
    },
    Zero,
    /// factor * phi; the adversarial aligned choice.
    ScalePhi { factor: f64 },
}

impl FSpec {
    fn parse(value: &str) -> Result<Self> {
        if value == "zero" {
            return Ok(FSpec::Zero);
        }
        if let Some(factor) = value.strip_prefix("scale-phi:") {
            return Ok(FSpec::ScalePhi {
                factor: parse_f64("scale-phi factor", factor)?,
            });
        }
        if let Some(rest) = value.strip_prefix("series:") {
            let mut seed = 1u64;
            let mut m = None;
            let mut ratio = 0.5f64;
            for part in rest.split(',') {
                let (k, v) = part.split_once('=').ok_or_else(|| {
                    HarnessError::Config(format!("malformed series field '{part}'"))
                })?;
                match k {
                    "seed" => {
                        seed = v.parse().map_err(|_| {
                            HarnessError::Config(format!("bad series seed '{v}'"))
                        })?
                    }
                    "m" => {
                        m = Some(v.parse().map_err(|_| {
                            HarnessError::Config(format!("bad series length '{v}'"))
                        })?)
                    }
                    "decay" => {
                        let r = v.strip_prefix("geometric:").ok_or_else(|| {
                            HarnessError::Config(format!(
                                "unknown decay '{v}' (expected geometric:<ratio>)"
                            ))
                        })?;
                        ratio = parse_f64("decay ratio", r)?;
                    }
                    other => {
                        return Err(HarnessError::Config(format!(
                            "unknown series field '{other}'"
                        )))
                    }
                }
            }
            return Ok(FSpec::Series { seed, m, ratio });
        }
        Err(HarnessError::Config(format!(
            "unknown f spec '{value}' (expected series:... | zero | scale-phi:<c>)"
        )))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub cantor: CantorSpec,
    pub depth: u32,
    pub f: FSpec,
    pub phi: CantorSpec,
    /// Half-width of the lambda window [-n, n].
    pub lambda_range: f64,
    pub lambda_samples: usize,
    /// Extra uniform random lambda samples on top of the grid.
    pub lambda_random: usize,
    pub lambda_seed: u64,
    pub t_grid: Vec<f64>,
    pub n_grid: Vec<f64>,
    /// Exponent for the per-record image energy in sweeps.
    pub energy_t: f64,
    pub box_base: f64,
    pub box_j_min: u32,
    pub box_j_max: u32,
    pub profile_depths: Vec<u32>,
    pub product_depth: u32,
    pub slope_threshold: f64,
    pub sandwich_tol: f64,
    pub bound_tau: f64,
    pub cap_atoms: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            cantor: CantorSpec::Fat,
            depth: 10,
            f: FSpec::Series {
                seed: 1,
                m: None,
                ratio: 0.5,
            },
            phi: CantorSpec::Fat,
            lambda_range: 2.0,
            lambda_samples: 64,
            lambda_random: 0,
            lambda_seed: 1,
            t_grid: vec![0.3, 0.5, 0.7, 0.9],
            n_grid: vec![1.0, 4.0],
            energy_t: 0.5,
            box_base: 2.0,
            box_j_min: 1,
            box_j_max: 11,
            profile_depths: (4..=12).collect(),
            product_depth: 7,
            slope_threshold: 0.8,
            sandwich_tol: 0.15,
            bound_tau: 0.05,
            cap_atoms: 1 << 14,
        }
    }
}

fn parse_f64(what: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse()
        .map_err(|_| HarnessError::Config(format!("bad {what} '{v}'")))
}

fn parse_list<T: std::str::FromStr>(what: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| HarnessError::Config(format!("bad {what} entry '{s}'")))
        })
        .collect()
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                HarnessError::Config(format!("line {}: expected 'key = value'", idx + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "cantor" => cfg.cantor = CantorSpec::parse(value)?,
                "depth" => cfg.depth = parse_f64("depth", value)? as u32,
                "f" => cfg.f = FSpec::parse(value)?,
                "phi" => {
                    let inner = value.strip_prefix("embed:").ok_or_else(|| {
                        HarnessError::Config(format!(
                            "phi must be embed:<cantor>, got '{value}'"
                        ))
                    })?;
                    cfg.phi = CantorSpec::parse(inner)?;
                }
                "lambda_range" => cfg.lambda_range = parse_f64("lambda_range", value)?,
                "lambda_samples" => {
                    cfg.lambda_samples = value.parse().map_err(|_| {
                        HarnessError::Config(format!("bad lambda_samples '{value}'"))
                    })?
                }
                "lambda_random" => {
                    cfg.lambda_random = value.parse().map_err(|_| {
                        HarnessError::Config(format!("bad lambda_random '{value}'"))
                    })?
                }
                "lambda_seed" => {
                    cfg.lambda_seed = value.parse().map_err(|_| {
                        HarnessError::Config(format!("bad lambda_seed '{value}'"))
                    })?
                }
                "t_grid" => cfg.t_grid = parse_list("t_grid", value)?,
                "n_grid" => cfg.n_grid = parse_list("n_grid", value)?,
                "energy_t" => cfg.energy_t = parse_f64("energy_t", value)?,
                "box_base" => cfg.box_base = parse_f64("box_base", value)?,
                "box_j_min" => cfg.box_j_min = parse_f64("box_j_min", value)? as u32,
                "box_j_max" => cfg.box_j_max = parse_f64("box_j_max", value)? as u32,
                "profile_depths" => cfg.profile_depths = parse_list("profile_depths", value)?,
                "product_depth" => {
                    cfg.product_depth = parse_f64("product_depth", value)? as u32
                }
                "slope_threshold" => cfg.slope_threshold = parse_f64("slope_threshold", value)?,
                "sandwich_tol" => cfg.sandwich_tol = parse_f64("sandwich_tol", value)?,
                "bound_tau" => cfg.bound_tau = parse_f64("bound_tau", value)?,
                "cap_atoms" => {
                    cfg.cap_atoms = value.parse().map_err(|_| {
                        HarnessError::Config(format!("bad cap_atoms '{value}'"))
                    })?
                }
                other => {
                    return Err(HarnessError::Config(format!(
                        "line {}: unknown key '{other}'",
                        idx + 1
                    )))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda_range < 1.0 {
            return Err(HarnessError::Config(format!(
                "lambda_range must be >= 1, got {}",
                self.lambda_range
            )));
        }
        if self.lambda_samples < 3 {
            return Err(HarnessError::Config(format!(
                "lambda_samples must be >= 3, got {}",
                self.lambda_samples
            )));
        }
        if self.depth == 0 || (1u64 << self.depth) > self.cap_atoms {
            return Err(HarnessError::Config(format!(
                "depth {} outside the resource cap of {} atoms",
                self.depth, self.cap_atoms
            )));
        }
        for t in &self.t_grid {
            if !(*t > 0.0 && *t < 1.0) {
                return Err(HarnessError::Config(format!(
                    "t_grid entries must lie in (0,1), got {t}"
                )));
            }
        }
        for n in &self.n_grid {
            if *n < 1.0 {
                return Err(HarnessError::Config(format!(
                    "n_grid entries must be >= 1, got {n}"
                )));
            }
        }
        if self.product_depth == 0 {
            return Err(HarnessError::Config(
                "product_depth must be at least 1".into(),
            ));
        }
        if self.box_base <= 1.0 || self.box_j_max <= self.box_j_min {
            return Err(HarnessError::Config(
                "box scales need base > 1 and j_max > j_min".into(),
            ));
        }
        Ok(())
    }

    /// Override hooks for the CLI flags.
    pub fn with_seed(mut self, seed: u64) -> Self {
        if let FSpec::Series { seed: s, .. } = &mut self.f {
            *s = seed;
        }
        self
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.depth = depth;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_config() {
        let text = "\
# sweep setup
cantor = middle:0.3333333333333333
depth = 8
f = series:seed=7,m=8,decay=geometric:0.5
phi = embed:fat
lambda_range = 2
lambda_samples = 16
t_grid = 0.3, 0.5
n_grid = 1, 4
energy_t = 0.5
box_base = 2
box_j_min = 1
box_j_max = 9
product_depth = 6
";
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert_eq!(cfg.depth, 8);
        assert_eq!(
            cfg.f,
            FSpec::Series {
                seed: 7,
                m: Some(8),
                ratio: 0.5
            }
        );
        assert_eq!(cfg.phi, CantorSpec::Fat);
        assert!(matches!(cfg.cantor, CantorSpec::Middle { .. }));
        assert_eq!(cfg.t_grid, vec![0.3, 0.5]);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let err = ExperimentConfig::parse("depht = 8\n").unwrap_err();
        assert!(matches!(err, HarnessError::Config(_)));
        assert!(err.to_string().contains("depht"));
    }

    #[test]
    fn invariants_enforced() {
        assert!(ExperimentConfig::parse("lambda_range = 0.5\n").is_err());
        assert!(ExperimentConfig::parse("lambda_samples = 2\n").is_err());
        assert!(ExperimentConfig::parse("depth = 15\n").is_err());
        assert!(ExperimentConfig::parse("depth = 15\ncap_atoms = 32768\n").is_ok());
        assert!(ExperimentConfig::parse("t_grid = 0.5,1.0\n").is_err());
        assert!(ExperimentConfig::parse("n_grid = 0.5\n").is_err());
    }

    #[test]
    fn f_spec_variants() {
        assert_eq!(FSpec::parse("zero").unwrap(), FSpec::Zero);
        assert_eq!(
            FSpec::parse("scale-phi:-1").unwrap(),
            FSpec::ScalePhi { factor: -1.0 }
        );
        assert_eq!(
            FSpec::parse("series:seed=3").unwrap(),
            FSpec::Series {
                seed: 3,
                m: None,
                ratio: 0.5
            }
        );
        assert!(FSpec::parse("series:sid=3").is_err());
        assert!(FSpec::parse("bogus").is_err());
    }
}
