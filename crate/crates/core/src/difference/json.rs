//! JSON form of matrix operators:
//! `{"n": 2, "ring": {"variant": "q_shift"}, "entries": [[…], […]]}`.
//! Loop entries are Laurent-polynomial arrays, lattice entries are arrays of
//! `N` rational strings (one per site).

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{LatticePolynomial, LaurentPoly};
use crate::error::{Error, Result};

use super::matrix::{canonicalize, Matrix, MatrixOp};
use super::ring::{DifferenceRing, IdentityRing, LatticeRing, QShiftRing, SiteArray};

/// Elements that serialize to JSON.
pub trait JsonElem: DifferenceRing {
    fn elem_to_json(&self, x: &Self::Elem) -> Result<Value>;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
}

impl JsonElem for QShiftRing {
    fn elem_to_json(&self, x: &LaurentPoly) -> Result<Value> {
        Ok(x.to_json())
    }
    fn elem_from_json(&self, v: &Value) -> Result<LaurentPoly> {
        LaurentPoly::from_json(v)
    }
}

impl JsonElem for IdentityRing {
    fn elem_to_json(&self, x: &LaurentPoly) -> Result<Value> {
        Ok(x.to_json())
    }
    fn elem_from_json(&self, v: &Value) -> Result<LaurentPoly> {
        LaurentPoly::from_json(v)
    }
}

pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => s.trim().parse::<BigRational>().map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|k| BigRational::from_integer(k.into()))
            .ok_or_else(|| Error::Parse(format!("rational must be an integer or string, got {n}"))),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

impl JsonElem for LatticeRing {
    fn elem_to_json(&self, x: &SiteArray) -> Result<Value> {
        let vals = x.as_rationals().ok_or_else(|| Error::InvalidConfig("symbolic site values cannot be serialized".into()))?;
        Ok(Value::Array(vals.iter().map(|r| Value::String(r.to_string())).collect()))
    }
    fn elem_from_json(&self, v: &Value) -> Result<SiteArray> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("lattice entry must be an array of site values".into()))?;
        if arr.len() != self.n {
            return Err(Error::DimensionMismatch(format!("expected {} site values, got {}", self.n, arr.len())));
        }
        Ok(SiteArray(arr.iter().map(|x| parse_rational(x).map(LatticePolynomial::constant)).collect::<Result<_>>()?))
    }
}

fn ring_json(v: &super::ring::RingVariant) -> Value {
    match v {
        super::ring::RingVariant::QShift { .. } => json!({"variant": "q_shift"}),
        super::ring::RingVariant::LatticeShift { n } => json!({"variant": "lattice_shift", "N": n}),
        super::ring::RingVariant::Identity => json!({"variant": "identity"}),
    }
}

fn matrix_to_json<R: JsonElem>(ring: &R, m: &Matrix<R::Elem>) -> Result<Value> {
    Ok(Value::Array(
        m.iter()
            .map(|row| row.iter().map(|x| ring.elem_to_json(x)).collect::<Result<Vec<_>>>().map(Value::Array))
            .collect::<Result<_>>()?,
    ))
}

pub fn matrix_op_to_json<R: JsonElem>(m: &MatrixOp<R>) -> Result<Value> {
    Ok(json!({
        "n": m.n(),
        "ring": ring_json(&m.ring().variant()),
        "entries": matrix_to_json(m.ring(), m.entries())?,
    }))
}

fn entries_from_json<R: JsonElem>(ring: &R, n: usize, v: &Value) -> Result<Matrix<R::Elem>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("entries must be an array of rows".into()))?;
    if rows.len() != n {
        return Err(Error::DimensionMismatch(format!("n = {n} but {} rows given", rows.len())));
    }
    rows.iter()
        .map(|row| {
            let row = row.as_array().ok_or_else(|| Error::Parse("row must be an array".into()))?;
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!("n = {n} but a row has {} entries", row.len())));
            }
            row.iter().map(|x| ring.elem_from_json(x)).collect()
        })
        .collect()
}

/// A matrix operator over whichever ring the document names.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrixOp {
    QShift(MatrixOp<QShiftRing>),
    Lattice(MatrixOp<LatticeRing>),
    Identity(MatrixOp<IdentityRing>),
}

impl AnyMatrixOp {
    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing integer field \"n\"".into()))? as usize;
        let ring = v.get("ring").ok_or_else(|| Error::Parse("missing field \"ring\"".into()))?;
        let variant = ring.get("variant").and_then(Value::as_str).ok_or_else(|| Error::Parse("missing ring variant".into()))?;
        let entries = v.get("entries").ok_or_else(|| Error::Parse("missing field \"entries\"".into()))?;
        match variant {
            "q_shift" => {
                let r = QShiftRing::default();
                Ok(AnyMatrixOp::QShift(MatrixOp::new(r, entries_from_json(&r, n, entries)?)?))
            }
            "identity" => Ok(AnyMatrixOp::Identity(MatrixOp::new(IdentityRing, entries_from_json(&IdentityRing, n, entries)?)?)),
            "lattice_shift" => {
                let big_n = ring.get("N").and_then(Value::as_u64).ok_or_else(|| Error::Parse("lattice ring needs \"N\"".into()))? as usize;
                if big_n == 0 {
                    return Err(Error::NOutOfRange("N must be positive".into()));
                }
                let r = LatticeRing::new(big_n);
                Ok(AnyMatrixOp::Lattice(MatrixOp::new(r, entries_from_json(&r, n, entries)?)?))
            }
            other => Err(Error::Parse(format!("unknown ring variant {other:?}"))),
        }
    }

    pub fn to_json(&self) -> Result<Value> {
        match self {
            AnyMatrixOp::QShift(m) => matrix_op_to_json(m),
            AnyMatrixOp::Lattice(m) => matrix_op_to_json(m),
            AnyMatrixOp::Identity(m) => matrix_op_to_json(m),
        }
    }

    /// Normal form and gauge witness as `{"t": […], "gauge": [[…]]}`.
    pub fn canonicalize_json(&self) -> Result<Value> {
        fn go<R: JsonElem>(m: &MatrixOp<R>) -> Result<Value> {
            let (c, g) = canonicalize(m)?;
            let t = c.t.iter().map(|x| m.ring().elem_to_json(x)).collect::<Result<Vec<_>>>()?;
            Ok(json!({"t": t, "gauge": matrix_to_json(m.ring(), g.entries())?}))
        }
        match self {
            AnyMatrixOp::QShift(m) => go(m),
            AnyMatrixOp::Lattice(m) => go(m),
            AnyMatrixOp::Identity(m) => go(m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalize_document() {
        let doc = json!({
            "n": 2,
            "ring": {"variant": "q_shift"},
            "entries": [[[[1, "1"]], []], [[[0, "-1"]], [[-1, "1"]]]]
        });
        let m = AnyMatrixOp::from_json(&doc).unwrap();
        let out = m.canonicalize_json().unwrap();
        assert_eq!(out["t"], json!([[[-1, "1/q"], [1, "1"]]]));
        assert_eq!(out["gauge"], json!([[[[0, "1"]], [[-1, "-1"]]], [[], [[0, "1"]]]]));
        assert_eq!(m.to_json().unwrap(), doc);
    }

    #[test]
    fn lattice_document() {
        let doc = json!({
            "n": 2,
            "ring": {"variant": "lattice_shift", "N": 2},
            "entries": [[["2", "1/2"], ["0", "0"]], [["-1", "-1"], ["1/2", "2"]]]
        });
        let m = AnyMatrixOp::from_json(&doc).unwrap();
        // t_k = a_k + d_{k+1}
        assert_eq!(m.canonicalize_json().unwrap()["t"], json!([["4", "1"]]));
    }
}
