//! Scalar `q`-difference operators, the Miura factorization and
//! fundamental characters.

use std::collections::BTreeMap;

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};

use super::matrix::{determinant, CanonicalForm, Matrix, MatrixOp};
use super::ring::{DifferenceRing, QShiftRing};

/// `L = D^n + t_1 D^{n-1} + … + t_{n-1} D + t_n`, where `D f = f(sq) D`.
/// Operators coming from normal forms have `t_n = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarQDO {
    coeffs: Vec<LaurentPoly>,
}

impl ScalarQDO {
    /// Coefficients `t_1 … t_n`; the order `n` is their count.
    pub fn new(coeffs: Vec<LaurentPoly>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::DimensionMismatch("scalar operator needs order at least 2".into()));
        }
        Ok(ScalarQDO { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `t_i` for `1 <= i <= n`.
    pub fn t(&self, i: usize) -> &LaurentPoly {
        &self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &LaurentPoly {
        self.coeffs.last().expect("order >= 2")
    }

    /// Back to normal-form coordinates; the constant term must be 1.
    pub fn to_canonical(&self) -> Result<CanonicalForm<QShiftRing>> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        Ok(CanonicalForm { t: self.coeffs[..self.coeffs.len() - 1].to_vec() })
    }

    pub fn as_operator(&self) -> QDifferenceOperator {
        let n = self.order() as u32;
        let mut op = QDifferenceOperator::monomial(LaurentPoly::one(), n);
        for (i, c) in self.coeffs.iter().enumerate() {
            op.add_term(n - 1 - i as u32, c);
        }
        op
    }
}

/// Read the scalar operator off the first row of a normal form.
pub fn extract_scalar(c: &CanonicalForm<QShiftRing>) -> ScalarQDO {
    let mut coeffs = c.t.clone();
    coeffs.push(LaurentPoly::one());
    ScalarQDO { coeffs }
}

/// General operator `Σ_k f_k(s) D^k` with `D f(s) = f(sq) D`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QDifferenceOperator {
    terms: BTreeMap<u32, LaurentPoly>,
}

impl QDifferenceOperator {
    pub fn monomial(f: LaurentPoly, power: u32) -> Self {
        let mut op = Self::default();
        op.add_term(power, &f);
        op
    }

    /// `D + f`
    pub fn first_order(f: LaurentPoly) -> Self {
        let mut op = Self::monomial(LaurentPoly::one(), 1);
        op.add_term(0, &f);
        op
    }

    pub fn add_term(&mut self, power: u32, f: &LaurentPoly) {
        let entry = self.terms.entry(power).or_default();
        *entry = &*entry + f;
        if entry.is_zero() {
            self.terms.remove(&power);
        }
    }

    pub fn coeff(&self, power: u32) -> LaurentPoly {
        self.terms.get(&power).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// `(f D^a)(g D^b) = f g(s q^a) D^{a+b}`
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&a, f) in &self.terms {
            for (&b, g) in &other.terms {
                out.add_term(a + b, &(f * &g.shift(a as i64)));
            }
        }
        out
    }
}

/// Coefficients of `(D + λ_1(s))(D + λ_2(sq^{-1}))…(D + λ_n(sq^{-n+1}))`:
/// `t_i = Σ_{j_1<…<j_i} λ_{j_1}(s) λ_{j_2}(sq^{-1}) … λ_{j_i}(sq^{-i+1})`.
/// The product of the shifted `λ`'s (the constant term) is not forced to 1.
pub fn miura_compose(lambdas: &[LaurentPoly]) -> Result<ScalarQDO> {
    let n = lambdas.len();
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if lambdas.iter().any(LaurentPoly::is_zero) {
        return Err(Error::InvalidConfig("Miura factors must be nonzero".into()));
    }
    // e[i] after processing λ_1..λ_j: sum over i-subsets of {1..j}.
    let mut e = vec![LaurentPoly::zero(); n + 1];
    e[0] = LaurentPoly::one();
    for (j, lambda) in lambdas.iter().enumerate() {
        for i in (1..=j + 1).rev() {
            let add = &e[i - 1] * &lambda.shift(-(i as i64 - 1));
            e[i] = &e[i] + &add;
        }
    }
    if n == 1 {
        return Err(Error::DimensionMismatch("scalar operator needs order at least 2".into()));
    }
    ScalarQDO::new(e.split_off(1))
}

/// Lower bidiagonal matrix with `λ_i(sq^{-i+1})` on the diagonal and `-1`
/// below it. Its determinant is the Miura constant term.
pub fn miura_matrix(lambdas: &[LaurentPoly]) -> Result<MatrixOp<QShiftRing>> {
    let n = lambdas.len();
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let ring = QShiftRing::default();
    let mut entries: Matrix<LaurentPoly> = vec![vec![LaurentPoly::zero(); n]; n];
    for (i, l) in lambdas.iter().enumerate() {
        entries[i][i] = l.shift(-(i as i64));
        if i > 0 {
            entries[i][i - 1] = ring.from_int(-1);
        }
    }
    MatrixOp::new_unchecked(ring, entries)
}

/// `χ_i(g)` for `i = 1 … n-1`: sums of principal `i x i` minors.
pub fn fundamental_characters<R: DifferenceRing>(ring: &R, g: &Matrix<R::Elem>) -> Vec<R::Elem> {
    let n = g.len();
    let mut out = vec![ring.zero(); n.saturating_sub(1)];
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= n {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
        let sub: Matrix<R::Elem> = idx.iter().map(|&r| idx.iter().map(|&c| g[r][c].clone()).collect()).collect();
        out[size - 1] = ring.add(&out[size - 1], &determinant(ring, &sub));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalFunctionQ as Rf;

    #[test]
    fn constant_miura_is_binomial() {
        let ones = vec![LaurentPoly::one(); 4];
        let l = miura_compose(&ones).unwrap();
        let expected = [4, 6, 4, 1];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(l.t(i + 1), &LaurentPoly::constant(Rf::from_int(*e)));
        }
    }

    #[test]
    fn second_order_miura() {
        // t_1 = λ_1(s) + λ_2(s), t_2 = λ_1(s) λ_2(s q^{-1})
        let l1 = LaurentPoly::s();
        let l2 = LaurentPoly::monomial(Rf::from_int(3), 2);
        let l = miura_compose(&[l1.clone(), l2.clone()]).unwrap();
        assert_eq!(l.t(1), &(&l1 + &l2));
        assert_eq!(l.t(2), &(&l1 * &l2.shift(-1)));
    }

    #[test]
    fn empty_sequence_is_an_error() {
        assert_eq!(miura_compose(&[]), Err(Error::EmptySequence));
    }
}
