//! Finitely supported Laurent polynomials in the loop variable `s` with
//! coefficients in `Q(q)`, together with the `q`-shift `f(s) -> f(s q^k)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::RationalFunctionQ as Rf;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rf>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rf::one())
    }

    pub fn constant(c: Rf) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * s^k`
    pub fn monomial(c: Rf, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    /// The loop variable `s`.
    pub fn s() -> Self {
        Self::monomial(Rf::one(), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rf)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }

    pub fn add_term(&mut self, k: i64, c: &Rf) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Rf::is_one)
    }

    /// Coefficient of `s^k` (the `k`-th Fourier mode).
    pub fn coeff(&self, k: i64) -> Rf {
        self.terms.get(&k).cloned().unwrap_or_else(Rf::zero)
    }

    pub fn coeff_ref(&self, k: i64) -> Option<&Rf> {
        self.terms.get(&k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rf)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `f(s) -> f(s q^k)`: the coefficient of `s^m` is multiplied by `q^{km}`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&m, c)| (m, c * &Rf::q_pow(k * m))).collect() }
    }

    /// Inverse of a monomial `c s^j`; general Laurent inverses are infinite
    /// series and are refused.
    pub fn invert(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::NotFinitelySupported);
        }
        let (&j, c) = self.terms.iter().next().unwrap();
        Ok(Self::monomial(c.inv()?, -j))
    }

    pub fn as_monomial(&self) -> Option<(i64, &Rf)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rf) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// Multiply by `s^k`.
    pub fn mul_s_pow(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&m, v)| (m + k, v.clone())).collect() }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// JSON form: array of `[exponent, "coefficient"]` sorted by exponent.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| serde_json::json!([k, c.render()]))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("Laurent polynomial must be an array".into()))?;
        let mut out = Self::zero();
        for item in arr {
            let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse("expected [exponent, coefficient]".into()))?;
            let k = pair[0].as_i64().ok_or_else(|| Error::Parse("exponent must be an integer".into()))?;
            let c: Rf = match &pair[1] {
                serde_json::Value::String(s) => s.parse()?,
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(Rf::from_int)
                    .ok_or_else(|| Error::Parse("coefficient must be an integer or string".into()))?,
                _ => return Err(Error::Parse("coefficient must be a string".into())),
            };
            out.add_term(k, &c);
        }
        Ok(out)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("({c})s^{k}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Free-function form of [`LaurentPoly::shift`].
pub fn laurent_shift(f: &LaurentPoly, k: i64) -> LaurentPoly {
    f.shift(k)
}

/// Free-function form of [`LaurentPoly::invert`].
pub fn laurent_invert(f: &LaurentPoly) -> Result<LaurentPoly> {
    f.invert()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> Rf {
        s.parse().unwrap()
    }

    #[test]
    fn shift_monomials() {
        assert_eq!(LaurentPoly::s().shift(1), LaurentPoly::monomial(Rf::q(), 1));
        let f = &LaurentPoly::one() + &LaurentPoly::monomial(Rf::one(), -1);
        let expected = &LaurentPoly::one() + &LaurentPoly::monomial(Rf::q_pow(-1), -1);
        assert_eq!(f.shift(1), expected);
    }

    #[test]
    fn invert_monomials_only() {
        assert_eq!(LaurentPoly::s().invert().unwrap(), LaurentPoly::monomial(Rf::one(), -1));
        let f = LaurentPoly::monomial(rf("1+q"), 2);
        assert_eq!(f.invert().unwrap(), LaurentPoly::monomial(rf("1/(1+q)"), -2));
        assert!((&f * &f.invert().unwrap()).is_one());
        let g = &LaurentPoly::one() + &LaurentPoly::s();
        assert_eq!(g.invert(), Err(Error::NotFinitelySupported));
    }

    #[test]
    fn json_roundtrip() {
        let f = LaurentPoly::from_terms([(-1, rf("(-1+q)/(1+q)")), (2, rf("3"))]);
        let v = f.to_json();
        assert_eq!(v.to_string(), r#"[[-1,"(-1+q)/(1+q)"],[2,"3"]]"#);
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), f);
    }
}
