//! Random sampling of ring elements, gauge elements and `M^J` points.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::algebra::{LatticePolynomial, LaurentPoly, RationalFunctionQ};

use super::matrix::{determinant, GaugeElement, Matrix, MatrixOp};
use super::ring::{DifferenceRing, IdentityRing, LatticeRing, QShiftRing, SiteArray};

/// Rings whose elements can be sampled.
pub trait RandomElement: DifferenceRing {
    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;
}

/// A small nonzero rational with numerator in `[-4, 4]` and denominator in `[1, 3]`.
pub fn random_rational<G: Rng + ?Sized>(rng: &mut G) -> BigRational {
    loop {
        let n: i64 = rng.gen_range(-4..=4);
        if n != 0 {
            return BigRational::new(BigInt::from(n), BigInt::from(rng.gen_range(1..=3i64)));
        }
    }
}

fn random_q_coefficient<G: Rng + ?Sized>(rng: &mut G) -> RationalFunctionQ {
    let base = RationalFunctionQ::from_rational(&random_rational(rng));
    match rng.gen_range(0..4) {
        0 => &base * &RationalFunctionQ::q_pow(rng.gen_range(-1..=1)),
        1 => &base / &(&RationalFunctionQ::one() + &RationalFunctionQ::q()),
        _ => base,
    }
}

/// Laurent polynomial with 0–3 terms, exponents in `[-2, 2]`.
pub fn random_laurent<G: Rng + ?Sized>(rng: &mut G) -> LaurentPoly {
    let terms = rng.gen_range(0..=3);
    LaurentPoly::from_terms((0..terms).map(|_| (rng.gen_range(-2..=2), random_q_coefficient(rng))))
}

impl RandomElement for QShiftRing {
    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> LaurentPoly {
        random_laurent(rng)
    }
}

impl RandomElement for IdentityRing {
    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> LaurentPoly {
        random_laurent(rng)
    }
}

impl RandomElement for LatticeRing {
    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> SiteArray {
        SiteArray(
            (0..self.n)
                .map(|_| if rng.gen_bool(0.2) { LatticePolynomial::zero() } else { LatticePolynomial::constant(random_rational(rng)) })
                .collect(),
        )
    }
}

pub fn random_unipotent<R: RandomElement, G: Rng + ?Sized>(ring: &R, n: usize, rng: &mut G) -> GaugeElement<R> {
    let entries: Matrix<R::Elem> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => ring.one(),
                    std::cmp::Ordering::Greater => ring.zero(),
                    std::cmp::Ordering::Less => ring.random_elem(rng),
                })
                .collect()
        })
        .collect();
    GaugeElement::new(ring.clone(), entries).expect("upper unipotent by construction")
}

/// A random element of `M^J` with determinant 1: rows `2..n` and the first
/// `n-1` entries of row 1 are random; the top-right entry is solved for,
/// using that its cofactor is 1.
pub fn random_mj_member<R: RandomElement, G: Rng + ?Sized>(ring: &R, n: usize, rng: &mut G) -> MatrixOp<R> {
    let mut entries: Matrix<R::Elem> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j + 1 == i {
                        ring.from_int(-1)
                    } else if j + 1 < i {
                        ring.zero()
                    } else {
                        ring.random_elem(rng)
                    }
                })
                .collect()
        })
        .collect();
    if n == 1 {
        entries[0][0] = ring.one();
        return MatrixOp::new(ring.clone(), entries).expect("unit determinant");
    }
    entries[0][n - 1] = ring.zero();
    let rest = determinant(ring, &entries);
    entries[0][n - 1] = ring.sub(&ring.one(), &rest);
    MatrixOp::new(ring.clone(), entries).expect("unit determinant by construction")
}
