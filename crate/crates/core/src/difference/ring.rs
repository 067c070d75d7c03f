//! Commutative rings with an automorphism `τ`.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{LatticePolynomial, LaurentPoly, RationalFunctionQ};

/// Tag identifying a difference ring in serialized form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingVariant {
    /// `τ f(s) = f(s q^step)` on Laurent polynomials in `s`.
    QShift { step: i64 },
    /// `τ f_i = f_{i+1}` on functions on `Z/NZ`.
    LatticeShift { n: usize },
    /// `τ = id`.
    Identity,
}

impl RingVariant {
    pub fn name(&self) -> &'static str {
        match self {
            RingVariant::QShift { .. } => "q_shift",
            RingVariant::LatticeShift { .. } => "lattice_shift",
            RingVariant::Identity => "identity",
        }
    }
}

/// A commutative ring together with an automorphism `τ`.
pub trait DifferenceRing: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn variant(&self) -> RingVariant;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn tau(&self, x: &Self::Elem) -> Self::Elem;
    fn tau_inv(&self, x: &Self::Elem) -> Self::Elem;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    /// `τ^k` for any integer `k`.
    fn tau_pow(&self, x: &Self::Elem, k: i64) -> Self::Elem {
        let mut out = x.clone();
        for _ in 0..k.unsigned_abs() {
            out = if k > 0 { self.tau(&out) } else { self.tau_inv(&out) };
        }
        out
    }
}

/// Laurent polynomials in `s` over `Q(q)` with `τ f(s) = f(s q^step)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QShiftRing {
    pub step: i64,
}

impl Default for QShiftRing {
    fn default() -> Self {
        QShiftRing { step: 1 }
    }
}

/// Laurent polynomials in `s` over `Q(q)` with `τ = id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IdentityRing;

macro_rules! laurent_ring_ops {
    () => {
        type Elem = LaurentPoly;
        fn zero(&self) -> LaurentPoly {
            LaurentPoly::zero()
        }
        fn one(&self) -> LaurentPoly {
            LaurentPoly::one()
        }
        fn from_int(&self, n: i64) -> LaurentPoly {
            LaurentPoly::constant(RationalFunctionQ::from_int(n))
        }
        fn add(&self, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
            x + y
        }
        fn mul(&self, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
            x * y
        }
        fn neg(&self, x: &LaurentPoly) -> LaurentPoly {
            -x
        }
        fn is_zero(&self, x: &LaurentPoly) -> bool {
            x.is_zero()
        }
    };
}

impl DifferenceRing for QShiftRing {
    laurent_ring_ops!();
    fn variant(&self) -> RingVariant {
        RingVariant::QShift { step: self.step }
    }
    fn tau(&self, x: &LaurentPoly) -> LaurentPoly {
        x.shift(self.step)
    }
    fn tau_inv(&self, x: &LaurentPoly) -> LaurentPoly {
        x.shift(-self.step)
    }
}

impl DifferenceRing for IdentityRing {
    laurent_ring_ops!();
    fn variant(&self) -> RingVariant {
        RingVariant::Identity
    }
    fn tau(&self, x: &LaurentPoly) -> LaurentPoly {
        x.clone()
    }
    fn tau_inv(&self, x: &LaurentPoly) -> LaurentPoly {
        x.clone()
    }
}

/// A function `Z/NZ -> R`, stored as its values at sites `0..N`.
/// Values are lattice polynomials so that both numeric points (constants)
/// and symbolic coordinates fit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SiteArray(pub Vec<LatticePolynomial>);

impl SiteArray {
    pub fn constant(n: usize, c: LatticePolynomial) -> Self {
        SiteArray(vec![c; n])
    }

    pub fn from_rationals(values: Vec<BigRational>) -> Self {
        SiteArray(values.into_iter().map(LatticePolynomial::constant).collect())
    }

    pub fn site(&self, i: usize) -> &LatticePolynomial {
        &self.0[i % self.0.len()]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Values as exact rationals, if every site is constant.
    pub fn as_rationals(&self) -> Option<Vec<BigRational>> {
        self.0.iter().map(LatticePolynomial::as_constant).collect()
    }
}

/// Functions on `Z/NZ` with `(τ f)_i = f_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeRing {
    pub n: usize,
}

impl LatticeRing {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "lattice size must be positive");
        LatticeRing { n }
    }

    fn zip(&self, x: &SiteArray, y: &SiteArray, f: impl Fn(&LatticePolynomial, &LatticePolynomial) -> LatticePolynomial) -> SiteArray {
        SiteArray(x.0.iter().zip(&y.0).map(|(a, b)| f(a, b)).collect())
    }
}

impl DifferenceRing for LatticeRing {
    type Elem = SiteArray;

    fn variant(&self) -> RingVariant {
        RingVariant::LatticeShift { n: self.n }
    }
    fn zero(&self) -> SiteArray {
        SiteArray::constant(self.n, LatticePolynomial::zero())
    }
    fn one(&self) -> SiteArray {
        SiteArray::constant(self.n, LatticePolynomial::one())
    }
    fn from_int(&self, k: i64) -> SiteArray {
        SiteArray::constant(self.n, LatticePolynomial::from_int(k))
    }
    fn add(&self, x: &SiteArray, y: &SiteArray) -> SiteArray {
        self.zip(x, y, |a, b| a + b)
    }
    fn mul(&self, x: &SiteArray, y: &SiteArray) -> SiteArray {
        self.zip(x, y, |a, b| a * b)
    }
    fn neg(&self, x: &SiteArray) -> SiteArray {
        SiteArray(x.0.iter().map(|a| -a).collect())
    }
    fn is_zero(&self, x: &SiteArray) -> bool {
        x.0.iter().all(LatticePolynomial::is_zero)
    }
    fn tau(&self, x: &SiteArray) -> SiteArray {
        SiteArray((0..self.n).map(|i| x.site(i + 1).clone()).collect())
    }
    fn tau_inv(&self, x: &SiteArray) -> SiteArray {
        SiteArray((0..self.n).map(|i| x.site(i + self.n - 1).clone()).collect())
    }
}

/// Convenience: a lattice site array of rationals.
pub fn site_array(values: &[BigRational]) -> SiteArray {
    SiteArray::from_rationals(values.to_vec())
}

/// `1` at site `k`, `0` elsewhere.
pub fn site_indicator(n: usize, k: usize) -> SiteArray {
    SiteArray(
        (0..n)
            .map(|i| if i == k % n { LatticePolynomial::constant(BigRational::one()) } else { LatticePolynomial::constant(BigRational::zero()) })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn lattice_tau_shifts_sites() {
        let r = LatticeRing::new(3);
        let f = site_array(&[rat(1), rat(2), rat(3)]);
        assert_eq!(r.tau(&f), site_array(&[rat(2), rat(3), rat(1)]));
        assert_eq!(r.tau_inv(&r.tau(&f)), f);
        assert_eq!(r.tau_pow(&f, 3), f);
    }

    #[test]
    fn q_shift_is_multiplicative() {
        let r = QShiftRing::default();
        let f = &LaurentPoly::s() + &LaurentPoly::one();
        let g = LaurentPoly::monomial(RationalFunctionQ::from_int(2), -1);
        assert_eq!(r.tau(&r.mul(&f, &g)), r.mul(&r.tau(&f), &r.tau(&g)));
        assert_eq!(r.tau_inv(&r.tau(&f)), f);
    }
}
