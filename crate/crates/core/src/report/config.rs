//! Suite selection and run parameters.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Loop,
    Lattice,
    Miura,
    Ftv,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Loop => "loop",
            Suite::Lattice => "lattice",
            Suite::Miura => "miura",
            Suite::Ftv => "ftv",
            Suite::All => "all",
        }
    }

    /// Whether the suite runs checks on `SL2^N`.
    pub fn uses_lattice(self) -> bool {
        !matches!(self, Suite::Loop)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "loop" => Ok(Suite::Loop),
            "lattice" => Ok(Suite::Lattice),
            "miura" => Ok(Suite::Miura),
            "ftv" => Ok(Suite::Ftv),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidConfig(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            other => Err(Error::InvalidConfig(format!("unknown format {other:?}"))),
        }
    }
}

/// Parameters of one verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Number of lattice sites.
    #[serde(rename = "N")]
    pub n: usize,
    /// Loop modes are sampled from `-mode_range ..= mode_range`.
    pub mode_range: i64,
    /// Random points per sampled check.
    pub points: usize,
    pub seed: u64,
    /// Optional rational value of `q` for specialized spot checks.
    #[serde(serialize_with = "serialize_opt_rational", deserialize_with = "deserialize_opt_rational")]
    pub q_specialization: Option<BigRational>,
    pub format: Format,
    /// Lattice points checked in addition to the random ones.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_points: Vec<LatticeConfig>,
}

fn serialize_opt_rational<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn deserialize_opt_rational<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<BigRational>, D::Error> {
    Option::<String>::deserialize(d)?
        .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
        .transpose()
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            n: 3,
            mode_range: 1,
            points: 25,
            seed: 42,
            q_specialization: None,
            format: Format::Json,
            extra_points: Vec::new(),
        }
    }
}

impl SuiteConfig {
    /// Rejects `points = 0`, a negative mode range, and lattice runs with
    /// fewer than three sites. Even `N` is accepted; checks that need odd
    /// `N` are then reported as skipped.
    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(Error::InvalidConfig("points must be at least 1".into()));
        }
        if self.mode_range < 0 {
            return Err(Error::InvalidConfig("mode range must be nonnegative".into()));
        }
        if self.suite.uses_lattice() && self.n < 3 {
            return Err(Error::NOutOfRange(format!("N = {}; lattice suites need N >= 3", self.n)));
        }
        if let Some(p) = self.extra_points.iter().find(|p| p.n() != self.n) {
            return Err(Error::DimensionMismatch(format!("extra point has {} sites but N = {}", p.n(), self.n)));
        }
        Ok(())
    }
}
