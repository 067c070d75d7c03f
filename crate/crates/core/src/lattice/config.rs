//! The lattice-config file format, one `SL2` matrix per site:
//! `{"N": 3, "sites": [{"a": "2", "b": "1/3", "c": "3", "d": "1"}, …]}`.
//! Entries are exact rationals written as strings (integers may also be
//! JSON numbers).

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::algebra::{Gen, GenKind};
use crate::difference::json::parse_rational;
use crate::difference::{LatticeRing, MatrixOp, SiteArray};
use crate::error::{Error, Result};

use super::checks::VarietyPoint;

/// `[[a, b], [c, d]]` at one site.
pub type SiteMatrix = [[BigRational; 2]; 2];

/// A point of `SL2^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeConfig {
    sites: Vec<SiteMatrix>,
}

impl LatticeConfig {
    /// Every site must have determinant 1.
    pub fn new(sites: Vec<SiteMatrix>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::NOutOfRange("a lattice config needs at least one site".into()));
        }
        if sites.iter().any(|[[a, b], [c, d]]| a * d - b * c != BigRational::one()) {
            return Err(Error::DeterminantNotOne);
        }
        Ok(LatticeConfig { sites })
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[SiteMatrix] {
        &self.sites
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v.get("N").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing integer field \"N\"".into()))? as usize;
        let sites = v.get("sites").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing array \"sites\"".into()))?;
        if sites.len() != n {
            return Err(Error::DimensionMismatch(format!("N = {n} but {} sites given", sites.len())));
        }
        let entry = |s: &Value, key: &str| -> Result<BigRational> {
            parse_rational(s.get(key).ok_or_else(|| Error::Parse(format!("site is missing \"{key}\"")))?)
        };
        let parsed = sites
            .iter()
            .map(|s| Ok([[entry(s, "a")?, entry(s, "b")?], [entry(s, "c")?, entry(s, "d")?]]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn to_json(&self) -> Value {
        let sites: Vec<Value> = self
            .sites
            .iter()
            .map(|[[a, b], [c, d]]| json!({"a": a.to_string(), "b": b.to_string(), "c": c.to_string(), "d": d.to_string()}))
            .collect();
        json!({"N": self.n(), "sites": sites})
    }

    /// Coordinates `a_k, b_k, c_k, d_k`.
    pub fn to_variety_point(&self) -> VarietyPoint {
        let mut p = VarietyPoint::new();
        for (k, m) in self.sites.iter().enumerate() {
            for (i, kind) in GenKind::ENTRIES.iter().enumerate() {
                p.insert(Gen::new(*kind, k), m[i / 2][i % 2].clone());
            }
        }
        p
    }

    /// Reads sites `0..n` back from a point; `None` if a coordinate is missing.
    pub fn from_variety_point(p: &VarietyPoint, n: usize) -> Option<Result<Self>> {
        let get = |kind, k| p.get(&Gen::new(kind, k)).cloned();
        let sites: Option<Vec<SiteMatrix>> = (0..n)
            .map(|k| Some([[get(GenKind::A, k)?, get(GenKind::B, k)?], [get(GenKind::C, k)?, get(GenKind::D, k)?]]))
            .collect();
        sites.map(Self::new)
    }

    /// The `2x2` operator over the lattice ring with these site values.
    pub fn to_matrix_op(&self) -> Result<MatrixOp<LatticeRing>> {
        let column = |i: usize, j: usize| SiteArray::from_rationals(self.sites.iter().map(|m| m[i][j].clone()).collect());
        MatrixOp::new(LatticeRing::new(self.n()), vec![vec![column(0, 0), column(0, 1)], vec![column(1, 0), column(1, 1)]])
    }
}

impl Serialize for LatticeConfig {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeConfig {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_json(&Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn round_trip_and_determinant() {
        let doc = json!({"N": 2, "sites": [{"a": "2", "b": "1/3", "c": 3, "d": 1}, {"a": 1, "b": 0, "c": "-5/2", "d": 1}]});
        let cfg = LatticeConfig::from_json(&doc).unwrap();
        assert_eq!(cfg.sites()[0][0][1], rat(1) / rat(3));
        assert_eq!(LatticeConfig::from_json(&cfg.to_json()).unwrap(), cfg);
        let back = LatticeConfig::from_variety_point(&cfg.to_variety_point(), 2).unwrap().unwrap();
        assert_eq!(back, cfg);
        assert!(cfg.to_matrix_op().is_ok());

        let bad = json!({"N": 1, "sites": [{"a": 1, "b": 1, "c": 1, "d": 1}]});
        assert_eq!(LatticeConfig::from_json(&bad), Err(Error::DeterminantNotOne));
        let short = json!({"N": 2, "sites": [{"a": 1, "b": 0, "c": 0, "d": 1}]});
        assert!(matches!(LatticeConfig::from_json(&short), Err(Error::DimensionMismatch(_))));
    }
}
