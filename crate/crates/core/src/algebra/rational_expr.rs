//! Ratios of lattice polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lattice_poly::{Gen, LatticePolynomial};
use crate::error::{Error, Result};

/// `num / den` with a nonzero denominator. Common monomial factors are
/// cancelled and single-term denominators are folded into the numerator as
/// Laurent monomials. Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalExpr {
    num: LatticePolynomial,
    den: LatticePolynomial,
}

impl RationalExpr {
    pub fn new(num: LatticePolynomial, den: LatticePolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: LatticePolynomial) -> Self {
        RationalExpr { num: p, den: LatticePolynomial::one() }
    }

    pub fn var(g: Gen) -> Self {
        Self::from_poly(LatticePolynomial::var(g))
    }

    pub fn zero() -> Self {
        Self::from_poly(LatticePolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LatticePolynomial::one())
    }

    fn reduce(num: LatticePolynomial, den: LatticePolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = den.as_monomial() {
            let factor = LatticePolynomial::term(c.recip(), m.inv());
            return RationalExpr { num: &num * &factor, den: LatticePolynomial::one() };
        }
        let common = num.monomial_content().min_with(&den.monomial_content());
        let inv = common.inv();
        let (num, den) = (num.mul_monomial(&inv), den.mul_monomial(&inv));
        // Fix the scale so that the leading denominator coefficient is 1.
        let lead = den.terms().next_back().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::one);
        let r = lead.recip();
        RationalExpr { num: num.scale(&r), den: den.scale(&r) }
    }

    pub fn numer(&self) -> &LatticePolynomial {
        &self.num
    }

    pub fn denom(&self) -> &LatticePolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&LatticePolynomial> {
        self.den.as_constant().filter(|c| c.is_one()).map(|_| &self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// `∂/∂g` by the quotient rule.
    pub fn derivative(&self, g: Gen) -> Self {
        let dn = self.num.derivative(g);
        let dd = self.den.derivative(g);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduce(top, &self.den * &self.den)
    }

    pub fn gens(&self) -> std::collections::BTreeSet<Gen> {
        let mut s = self.num.gens();
        s.extend(self.den.gens());
        s
    }

    pub fn substitute_all(&self, map: &std::collections::BTreeMap<Gen, LatticePolynomial>) -> Result<Self> {
        Self::new(self.num.substitute_all(map)?, self.den.substitute_all(map)?)
    }

    pub fn eval(&self, point: &std::collections::BTreeMap<Gen, BigRational>) -> Result<BigRational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point)? / d)
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Debug for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<LatticePolynomial> for RationalExpr {
    fn from(p: LatticePolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: &RationalExpr) -> RationalExpr {
        if self.den == rhs.den {
            return RationalExpr::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalExpr::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalExpr {
    type Output = RationalExpr;
    fn sub(self, rhs: &RationalExpr) -> RationalExpr {
        self + &(-rhs)
    }
}

impl Neg for &RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: &RationalExpr) -> RationalExpr {
        RationalExpr::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalExpr {
            type Output = RationalExpr;
            fn $m(self, rhs: RationalExpr) -> RationalExpr { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        -&self
    }
}

impl Zero for RationalExpr {
    fn zero() -> Self {
        RationalExpr::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lattice_poly::GenKind;

    #[test]
    fn monomial_denominators_fold_into_laurent_numerators() {
        let t0 = LatticePolynomial::gen(GenKind::T, 0);
        let t1 = LatticePolynomial::gen(GenKind::T, 1);
        let s = RationalExpr::new(LatticePolynomial::one(), &t0 * &t1).unwrap();
        assert!(s.as_poly().is_some());
        let back = &s * &RationalExpr::from_poly(&t0 * &t1);
        assert_eq!(back, RationalExpr::one());
    }

    #[test]
    fn cross_multiplication_equality() {
        let x = LatticePolynomial::gen(GenKind::Nu, 0);
        let one = LatticePolynomial::one();
        let a = RationalExpr::new(x.clone(), &one + &x).unwrap();
        let b = &RationalExpr::one() - &RationalExpr::new(one.clone(), &one + &x).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_rule() {
        let x = Gen::new(GenKind::Nu, 0);
        let xp = LatticePolynomial::var(x);
        let one = LatticePolynomial::one();
        let f = RationalExpr::new(one.clone(), &one + &xp).unwrap();
        let expected = RationalExpr::new(LatticePolynomial::from_int(-1), &(&one + &xp) * &(&one + &xp)).unwrap();
        assert_eq!(f.derivative(x), expected);
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert!(RationalExpr::new(LatticePolynomial::one(), LatticePolynomial::zero()).is_err());
    }
}
