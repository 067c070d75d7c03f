//! Points of the loop group `SL2` with finitely supported entries.

use rand::Rng;

use crate::algebra::{GenKind, LaurentPoly, RationalFunctionQ as Rf};
use crate::difference::random::random_rational;
use crate::difference::{MatrixOp, QShiftRing};
use crate::error::{Error, Result};

use super::bilocal::PointValues;

/// `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopPoint {
    a: LaurentPoly,
    b: LaurentPoly,
    c: LaurentPoly,
    d: LaurentPoly,
}

impl LoopPoint {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Result<Self> {
        let det = &(&a * &d) - &(&b * &c);
        if !det.is_one() {
            return Err(Error::DeterminantNotOne);
        }
        Ok(LoopPoint { a, b, c, d })
    }

    pub fn identity() -> Self {
        LoopPoint { a: LaurentPoly::one(), b: LaurentPoly::zero(), c: LaurentPoly::zero(), d: LaurentPoly::one() }
    }

    /// `[[1, x], [0, 1]]`
    pub fn upper(x: LaurentPoly) -> Self {
        LoopPoint { a: LaurentPoly::one(), b: x, c: LaurentPoly::zero(), d: LaurentPoly::one() }
    }

    /// `[[1, 0], [y, 1]]`
    pub fn lower(y: LaurentPoly) -> Self {
        LoopPoint { a: LaurentPoly::one(), b: LaurentPoly::zero(), c: y, d: LaurentPoly::one() }
    }

    /// `diag(c s^k, c^{-1} s^{-k})`
    pub fn torus(c: &Rf, k: i64) -> Result<Self> {
        Ok(LoopPoint {
            a: LaurentPoly::monomial(c.clone(), k),
            b: LaurentPoly::zero(),
            c: LaurentPoly::zero(),
            d: LaurentPoly::monomial(c.inv()?, -k),
        })
    }

    pub fn a(&self) -> &LaurentPoly {
        &self.a
    }
    pub fn b(&self) -> &LaurentPoly {
        &self.b
    }
    pub fn c(&self) -> &LaurentPoly {
        &self.c
    }
    pub fn d(&self) -> &LaurentPoly {
        &self.d
    }

    pub fn entry(&self, kind: GenKind) -> &LaurentPoly {
        match kind {
            GenKind::A => &self.a,
            GenKind::B => &self.b,
            GenKind::C => &self.c,
            GenKind::D => &self.d,
            other => panic!("loop points have no {} entry", other.symbol()),
        }
    }

    /// Entries as a 2x2 array, row major.
    pub fn matrix(&self) -> [[&LaurentPoly; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let [[a, b], [c, d]] = self.matrix();
        let [[e, f], [g, h]] = other.matrix();
        LoopPoint {
            a: &(a * e) + &(b * g),
            b: &(a * f) + &(b * h),
            c: &(c * e) + &(d * g),
            d: &(c * f) + &(d * h),
        }
    }

    pub fn values(&self) -> PointValues {
        PointValues::new()
            .with(GenKind::A, self.a.clone())
            .with(GenKind::B, self.b.clone())
            .with(GenKind::C, self.c.clone())
            .with(GenKind::D, self.d.clone())
    }

    pub fn to_matrix_op(&self) -> MatrixOp<QShiftRing> {
        let entries = vec![vec![self.a.clone(), self.b.clone()], vec![self.c.clone(), self.d.clone()]];
        MatrixOp::new(QShiftRing::default(), entries).expect("loop points have unit determinant")
    }

    pub fn from_matrix_op(m: &MatrixOp<QShiftRing>) -> Result<Self> {
        if m.n() != 2 {
            return Err(Error::DimensionMismatch(format!("loop points are 2x2, got {}x{}", m.n(), m.n())));
        }
        let e = m.entries();
        Self::new(e[0][0].clone(), e[0][1].clone(), e[1][0].clone(), e[1][1].clone())
    }

    /// Product of `factors` random unipotent and torus elements. Entries
    /// stay small: each unipotent factor has one or two terms with exponents
    /// in `[-1, 1]`.
    pub fn random<G: Rng + ?Sized>(rng: &mut G, factors: usize) -> Self {
        let small = |rng: &mut G| {
            let terms = rng.gen_range(1..=2);
            LaurentPoly::from_terms((0..terms).map(|_| {
                let c = Rf::from_rational(&random_rational(rng));
                let c = if rng.gen_bool(0.25) { &c * &Rf::q() } else { c };
                (rng.gen_range(-1..=1), c)
            }))
        };
        let mut p = Self::identity();
        for _ in 0..factors {
            let f = match rng.gen_range(0..3) {
                0 => Self::upper(small(rng)),
                1 => Self::lower(small(rng)),
                _ => {
                    let c = Rf::from_rational(&random_rational(rng));
                    Self::torus(&c, rng.gen_range(-1..=1)).expect("nonzero")
                }
            };
            p = p.mul(&f);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_points_are_unimodular() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let p = LoopPoint::random(&mut rng, 4);
            assert!(LoopPoint::new(p.a.clone(), p.b.clone(), p.c.clone(), p.d.clone()).is_ok());
        }
    }

    #[test]
    fn rejects_bad_determinant() {
        let two = LaurentPoly::constant(Rf::from_int(2));
        assert_eq!(
            LoopPoint::new(two.clone(), LaurentPoly::zero(), LaurentPoly::zero(), two),
            Err(Error::DeterminantNotOne)
        );
    }
}
