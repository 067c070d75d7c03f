//! The field `Q(q)` of rational functions in the indeterminate `q`.
//!
//! Every value is kept in a canonical reduced form: numerator and
//! denominator are integer polynomials with `gcd = 1` in `Z[q]` (so the
//! integer contents are coprime as well) and the leading coefficient of the
//! denominator is positive. Structural equality is therefore value equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Poles closer than this to the evaluation point are refused.
pub const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunctionQ {
    pub fn zero() -> Self {
        RationalFunctionQ { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunctionQ { num: IntPoly::constant(BigInt::from(n)), den: IntPoly::one() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_polys(IntPoly::from_i64s(&[n]), IntPoly::from_i64s(&[d])).expect("zero denominator")
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_polys(IntPoly::constant(r.numer().clone()), IntPoly::constant(r.denom().clone()))
            .expect("rational has nonzero denominator")
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            RationalFunctionQ { num: IntPoly::monomial(BigInt::one(), k as usize), den: IntPoly::one() }
        } else {
            RationalFunctionQ { num: IntPoly::one(), den: IntPoly::monomial(BigInt::one(), (-k) as usize) }
        }
    }

    /// Build `num / den` and reduce.
    pub fn from_polys(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        if d.leading().unwrap().is_negative() {
            n = -&n;
            d = -&d;
        }
        RationalFunctionQ { num: n, den: d }
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `q`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.coeffs().first().cloned().unwrap_or_else(BigInt::zero);
        let d = self.den.coeffs()[0].clone();
        Some(BigRational::new(n, d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        RationalFunctionQ { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }
    }

    /// Substitute `q -> q^k` (`k` may be negative).
    pub fn subs_q_power(&self, k: i64) -> Self {
        fn compose(p: &IntPoly, k: usize) -> IntPoly {
            let mut out = IntPoly::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out = &out + &IntPoly::monomial(c.clone(), i * k);
                }
            }
            out
        }
        if k == 0 {
            let n: BigInt = self.num.coeffs().iter().sum();
            let d: BigInt = self.den.coeffs().iter().sum();
            return Self::from_polys(IntPoly::constant(n), IntPoly::constant(d)).expect("pole at q = 1");
        }
        let ku = k.unsigned_abs() as usize;
        let n = compose(&self.num, ku);
        let d = compose(&self.den, ku);
        if k > 0 {
            return Self::reduce(n, d);
        }
        // p(q^-k) = q^{-k deg p} * reversed
        let rev = |p: &IntPoly| IntPoly::from_coeffs(p.coeffs().iter().rev().cloned().collect());
        let dn = n.degree().unwrap_or(0) as i64;
        let dd = d.degree().unwrap_or(0) as i64;
        let base = Self::reduce(rev(&n), rev(&d));
        &base * &Self::q_pow(dd - dn)
    }

    /// Floating evaluation at a complex point.
    pub fn eval_complex(&self, q0: Complex64) -> Result<Complex64> {
        let d = self.den.eval_complex(q0);
        if d.norm() < POLE_TOLERANCE {
            return Err(Error::SpecializationAtPole);
        }
        Ok(self.num.eval_complex(q0) / d)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, q0: &BigRational) -> Result<BigRational> {
        let ev = |p: &IntPoly| {
            let mut acc = BigRational::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc * q0 + BigRational::from_integer(c.clone());
            }
            acc
        };
        let d = ev(&self.den);
        if d.is_zero() {
            return Err(Error::SpecializationAtPole);
        }
        Ok(ev(&self.num) / d)
    }

    /// Rendering used in every serialized format: `p(q)/r(q)`, each side
    /// parenthesized when it has more than one term; the denominator is
    /// omitted when it is 1.
    pub fn render(&self) -> String {
        let wrap = |p: &IntPoly| {
            let s = p.render();
            if p.term_count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            self.num.render()
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl Default for RationalFunctionQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<i64> for RationalFunctionQ {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn add(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunctionQ::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            // gcd(num, den) = 1 already when the denominators are coprime
            return RationalFunctionQ::normalize_sign(num, den);
        }
        let b = self.den.div_exact(&g);
        let d = rhs.den.div_exact(&g);
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return RationalFunctionQ::zero();
        }
        let h = num.gcd(&g);
        let den = &self.den * &d;
        if h.is_one() {
            RationalFunctionQ::normalize_sign(num, den)
        } else {
            RationalFunctionQ::normalize_sign(num.div_exact(&h), den.div_exact(&h))
        }
    }
}

impl RationalFunctionQ {
    fn normalize_sign(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.leading().unwrap().is_negative() {
            RationalFunctionQ { num: -&num, den: -&den }
        } else {
            RationalFunctionQ { num, den }
        }
    }
}

impl Sub for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn sub(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        RationalFunctionQ { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn mul(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunctionQ::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = if g1.is_one() { (self.num.clone(), rhs.den.clone()) } else { (self.num.div_exact(&g1), rhs.den.div_exact(&g1)) };
        let (c, b) = if g2.is_one() { (rhs.num.clone(), self.den.clone()) } else { (rhs.num.div_exact(&g2), self.den.div_exact(&g2)) };
        RationalFunctionQ::normalize_sign(&a * &c, &b * &d)
    }
}

impl Div for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    /// Panics on division by zero; use [`RationalFunctionQ::checked_div`]
    /// for the fallible form.
    fn div(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: RationalFunctionQ) -> RationalFunctionQ { (&self).$m(&rhs) }
        }
        impl $tr<&RationalFunctionQ> for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: &RationalFunctionQ) -> RationalFunctionQ { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        -&self
    }
}

impl std::iter::Sum for RationalFunctionQ {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RationalFunctionQ::zero(), |a, b| &a + &b)
    }
}

/// Binary operation selector for [`ratq_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Div,
    Neg,
}

/// Field operation on two rational functions; `Neg` ignores `y`.
pub fn ratq_arith(op: ArithOp, x: &RationalFunctionQ, y: &RationalFunctionQ) -> Result<RationalFunctionQ> {
    match op {
        ArithOp::Add => Ok(x + y),
        ArithOp::Mul => Ok(x * y),
        ArithOp::Div => x.checked_div(y),
        ArithOp::Neg => Ok(-x),
    }
}

// ---- parsing ---------------------------------------------------------------

fn parse_poly(src: &str) -> Result<IntPoly> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let s = strip_parens(&s);
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut acc = IntPoly::zero();
    for t in terms {
        acc = &acc + &parse_term(t)?;
    }
    Ok(acc)
}

fn parse_term(t: &str) -> Result<IntPoly> {
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (coef_str, pow) = match body.find('q') {
        None => (body, 0usize),
        Some(pos) => {
            let rest = &body[pos + 1..];
            let pow = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?
            } else {
                return Err(Error::Parse(format!("bad term {t:?}")));
            };
            (body[..pos].trim_end_matches('*'), pow)
        }
    };
    let mut c = if coef_str.is_empty() {
        BigInt::one()
    } else {
        BigInt::from_str(coef_str).map_err(|_| Error::Parse(format!("bad coefficient in {t:?}")))?
    };
    if neg {
        c = -c;
    }
    Ok(IntPoly::monomial(c, pow))
}

fn strip_parens(s: &str) -> &str {
    let mut s = s;
    while s.starts_with('(') && s.ends_with(')') && matching_close(s) == Some(s.len() - 1) {
        s = &s[1..s.len() - 1];
    }
    s
}

fn matching_close(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

impl FromStr for RationalFunctionQ {
    type Err = Error;
    fn from_str(src: &str) -> Result<Self> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(Error::Parse(format!("more than one '/' in {src:?}")));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        match split {
            None => Ok(RationalFunctionQ::from_polys(parse_poly(&s)?, IntPoly::one())?),
            Some(i) => RationalFunctionQ::from_polys(parse_poly(&s[..i])?, parse_poly(&s[i + 1..])?),
        }
    }
}

impl serde::Serialize for RationalFunctionQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> serde::Deserialize<'de> for RationalFunctionQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunctionQ {
        s.parse().unwrap()
    }

    #[test]
    fn telescoping_sum() {
        assert_eq!(rf("1/(1+q)") + rf("q/(1+q)"), RationalFunctionQ::one());
    }

    #[test]
    fn phi_pairing_at_one() {
        let x = rf("1/(1+q)");
        let one = RationalFunctionQ::one();
        assert_eq!(&x + &(&one - &x), one);
        // phi_1 + phi_-1 with phi_-1 = 1/(1+q^-1)
        let phi_m1 = (RationalFunctionQ::one() + RationalFunctionQ::q_pow(-1)).inv().unwrap();
        assert_eq!(x + phi_m1, one);
    }

    #[test]
    fn inverse_pair() {
        assert_eq!(rf("(1-q)/(1+q)") * rf("(1+q)/(1-q)"), RationalFunctionQ::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(ratq_arith(ArithOp::Div, &RationalFunctionQ::one(), &RationalFunctionQ::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_sign_and_content() {
        let x = RationalFunctionQ::from_polys(IntPoly::from_i64s(&[2, -2]), IntPoly::from_i64s(&[-4, -4])).unwrap();
        assert_eq!(x.render(), "(-1+q)/(2+2q)");
        assert_eq!(rf("(2-2q)/(-4-4q)"), x);
    }

    #[test]
    fn render_parse_roundtrip() {
        for s in ["(-1+q)/(1+q)", "1/2", "-3", "q^3/(1+q^2)", "0", "(1+2q^3)/5"] {
            assert_eq!(rf(s).render(), s);
        }
    }

    #[test]
    fn substitution_of_q_powers() {
        let x = rf("(1-q)/(1+q)");
        assert_eq!(x.subs_q_power(-1), -&x);
        assert_eq!(x.subs_q_power(2), rf("(1-q^2)/(1+q^2)"));
    }

    #[test]
    fn complex_evaluation() {
        let x = rf("1/(1+q)");
        assert!((x.eval_complex(Complex64::new(1.0, 0.0)).unwrap().re - 0.5).abs() < 1e-15);
        assert_eq!(x.eval_complex(Complex64::new(-1.0, 0.0)), Err(Error::SpecializationAtPole));
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let v = rf("(1-q)/(1+q)").eval_complex(w).unwrap();
        assert!(v.re.abs() < 1e-12);
        assert!((v.im + 3f64.sqrt()).abs() < 1e-12);
    }
}
