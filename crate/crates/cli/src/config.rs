//! Job configuration: parsed strictly from JSON, fractions exact, every
//! semantic problem reported before any job runs.

use serde::Deserialize;

use toroidal_core::evaluation::PointGrid;
use toroidal_core::exact::scalar::{self, Scalar};
use toroidal_core::modules::{FactorWeight, PsiFunctional};
use toroidal_core::{Error, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub version: u32,
    pub algebra: AlgebraConfig,
    #[serde(default)]
    pub grid: Vec<Vec<String>>,
    #[serde(default)]
    pub weights: Vec<WeightConfig>,
    #[serde(default)]
    pub depth: i64,
    #[serde(default)]
    pub seed: u64,
    pub jobs: Vec<JobSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub loops: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightConfig {
    pub basis: String,
    pub coords: Vec<i64>,
    #[serde(default)]
    pub level: Option<i64>,
    #[serde(default)]
    pub d1: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum JobSpec {
    BuildTau {
        #[serde(default = "default_bound")]
        degree_bound: i64,
    },
    VerifyBracket {
        #[serde(default = "default_bound")]
        degree_bound: i64,
        #[serde(default = "default_trials")]
        random_trials: usize,
    },
    GridFactorize {},
    #[serde(rename = "build-example-41")]
    BuildExample41 {
        #[serde(default = "default_bound")]
        degree_bound: i64,
    },
    #[serde(rename = "build-example-42")]
    BuildExample42 {
        #[serde(default = "default_bound")]
        degree_bound: i64,
    },
    Gamma {},
    DecomposeLoop {},
    Integrability {
        #[serde(default = "default_family")]
        family: String,
        #[serde(default = "default_bound")]
        degree_bound: i64,
        #[serde(default = "default_power")]
        max_power: usize,
    },
    CentralOps {
        #[serde(default = "default_family")]
        family: String,
        #[serde(default = "default_bound")]
        degree_bound: i64,
    },
    Twist {
        matrix: Vec<Vec<i64>>,
        #[serde(default = "default_family")]
        family: String,
    },
}

fn default_bound() -> i64 {
    1
}

fn default_trials() -> usize {
    200
}

fn default_power() -> usize {
    8
}

fn default_family() -> String {
    "example-41".into()
}

pub const KNOWN_JOBS: &[&str] = &[
    "build-tau",
    "verify-bracket",
    "grid-factorize",
    "build-example-41",
    "build-example-42",
    "gamma",
    "decompose-loop",
    "integrability",
    "central-ops",
    "twist",
];

impl JobConfig {
    /// Exact parse of the per-axis point lists.
    pub fn parse_grid(&self) -> Result<PointGrid> {
        let mut axes: Vec<Vec<Scalar>> = Vec::with_capacity(self.grid.len());
        for axis in &self.grid {
            let mut pts = Vec::with_capacity(axis.len());
            for s in axis {
                pts.push(scalar::parse(s)?);
            }
            axes.push(pts);
        }
        PointGrid::new(axes)
    }

    pub fn parse_weights(&self) -> Result<Vec<FactorWeight>> {
        let d = self.algebra.rank;
        let mut out = Vec::with_capacity(self.weights.len());
        for w in &self.weights {
            if w.coords.len() != d {
                return Err(Error::Dimension(format!(
                    "weight has {} coordinates, rank is {d}",
                    w.coords.len()
                )));
            }
            match w.basis.as_str() {
                "finite" => out.push(FactorWeight::Finite { hvals: w.coords.clone() }),
                "affine" => {
                    let level = w.level.ok_or_else(|| {
                        Error::Domain("affine weight needs a level".into())
                    })?;
                    let dval = match &w.d1 {
                        Some(s) => scalar::parse(s)?,
                        None => scalar::zero(),
                    };
                    out.push(FactorWeight::Affine { hvals: w.coords.clone(), level, dval });
                }
                other => {
                    return Err(Error::Domain(format!("unknown weight basis tag '{other}'")))
                }
            }
        }
        Ok(out)
    }

    pub fn psi_spec(&self) -> Result<PsiFunctional> {
        PsiFunctional::new(self.algebra.rank, self.parse_grid()?, self.parse_weights()?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != 1 {
            return Err(Error::Domain(format!(
                "unsupported config version {}",
                self.version
            )));
        }
        if self.algebra.kind != "A" {
            return Err(Error::Domain(format!(
                "unsupported algebra type '{}'",
                self.algebra.kind
            )));
        }
        if self.algebra.rank < 1 {
            return Err(Error::Domain("rank must be at least 1".into()));
        }
        if self.algebra.loops < 2 {
            return Err(Error::Domain("need at least two loop variables".into()));
        }
        if self.depth < 0 {
            return Err(Error::Domain("depth must be nonnegative".into()));
        }
        // grid and weights are validated lazily by the jobs needing them,
        // but a present grid must parse and be valid up front
        if !self.grid.is_empty() {
            self.parse_grid()?;
        }
        if !self.weights.is_empty() {
            self.parse_weights()?;
        }
        Ok(())
    }
}
