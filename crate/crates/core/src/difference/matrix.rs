//! First-order matrix difference operators `τ + M`, the unipotent gauge
//! action `M -> τ(g) M g^{-1}`, and the constructive normal form.

use crate::error::{Error, Result};

use super::ring::DifferenceRing;

pub type Matrix<E> = Vec<Vec<E>>;

pub(crate) fn mat_mul<R: DifferenceRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = ring.zero();
                    for (k, bk) in b.iter().enumerate() {
                        if ring.is_zero(&a[i][k]) || ring.is_zero(&bk[j]) {
                            continue;
                        }
                        acc = ring.add(&acc, &ring.mul(&a[i][k], &bk[j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub(crate) fn identity_matrix<R: DifferenceRing>(ring: &R, n: usize) -> Matrix<R::Elem> {
    (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect()
}

fn mat_tau<R: DifferenceRing>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.iter().map(|row| row.iter().map(|x| ring.tau(x)).collect()).collect()
}

/// Determinant by cofactor expansion along the first row; only ring
/// operations are used, so it works over any commutative ring.
pub fn determinant<R: DifferenceRing>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let n = a.len();
    match n {
        0 => ring.one(),
        1 => a[0][0].clone(),
        2 => ring.sub(&ring.mul(&a[0][0], &a[1][1]), &ring.mul(&a[0][1], &a[1][0])),
        _ => {
            let mut acc = ring.zero();
            for j in 0..n {
                if ring.is_zero(&a[0][j]) {
                    continue;
                }
                let minor: Matrix<R::Elem> =
                    a[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = ring.mul(&a[0][j], &determinant(ring, &minor));
                acc = if j % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
            }
            acc
        }
    }
}

/// An `n x n` matrix over a difference ring with determinant 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixOp<R: DifferenceRing> {
    ring: R,
    entries: Matrix<R::Elem>,
}

impl<R: DifferenceRing> MatrixOp<R> {
    pub fn new(ring: R, entries: Matrix<R::Elem>) -> Result<Self> {
        let op = Self::new_unchecked(ring, entries)?;
        if determinant(&op.ring, &op.entries) != op.ring.one() {
            return Err(Error::DeterminantNotOne);
        }
        Ok(op)
    }

    /// Shape is checked, the determinant is not.
    pub fn new_unchecked(ring: R, entries: Matrix<R::Elem>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("expected a square matrix, got {n} rows")));
        }
        Ok(MatrixOp { ring, entries })
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let entries = identity_matrix(&ring, n);
        MatrixOp { ring, entries }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn entries(&self) -> &Matrix<R::Elem> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i][j]
    }

    pub fn determinant(&self) -> R::Elem {
        determinant(&self.ring, &self.entries)
    }

    /// Membership in `M^J`: `-1` on the subdiagonal, zeros below it.
    pub fn is_mj_member(&self) -> bool {
        let minus_one = self.ring.from_int(-1);
        (0..self.n()).all(|i| {
            (0..i).all(|j| {
                let x = &self.entries[i][j];
                if j + 1 == i {
                    *x == minus_one
                } else {
                    self.ring.is_zero(x)
                }
            })
        })
    }
}

/// Free-function form of [`MatrixOp::is_mj_member`].
pub fn is_mj_member<R: DifferenceRing>(m: &MatrixOp<R>) -> bool {
    m.is_mj_member()
}

/// Upper unipotent matrix over a difference ring.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeElement<R: DifferenceRing> {
    ring: R,
    entries: Matrix<R::Elem>,
}

impl<R: DifferenceRing> GaugeElement<R> {
    pub fn new(ring: R, entries: Matrix<R::Elem>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("gauge element must be square".into()));
        }
        let one = ring.one();
        for (i, row) in entries.iter().enumerate() {
            if row[i] != one || row[..i].iter().any(|x| !ring.is_zero(x)) {
                return Err(Error::InvalidConfig("gauge element must be upper unipotent".into()));
            }
        }
        Ok(GaugeElement { ring, entries })
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let entries = identity_matrix(&ring, n);
        GaugeElement { ring, entries }
    }

    /// `E_{i,j}(x)`: identity plus `x` at `(i, j)`, `i < j` (0-based).
    pub fn elementary(ring: R, n: usize, i: usize, j: usize, x: R::Elem) -> Self {
        assert!(i < j && j < n, "elementary unipotent needs i < j < n");
        let mut entries = identity_matrix(&ring, n);
        entries[i][j] = x;
        GaugeElement { ring, entries }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix<R::Elem> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i][j]
    }

    pub fn is_identity(&self) -> bool {
        self.entries == identity_matrix(&self.ring, self.n())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        GaugeElement { ring: self.ring.clone(), entries: mat_mul(&self.ring, &self.entries, &other.entries) }
    }

    /// Inverse via the terminating series `sum_k (I - g)^k`.
    pub fn inverse(&self) -> Self {
        let n = self.n();
        let ring = &self.ring;
        let id = identity_matrix(ring, n);
        let nil: Matrix<R::Elem> =
            (0..n).map(|i| (0..n).map(|j| ring.sub(&id[i][j], &self.entries[i][j])).collect()).collect();
        let mut acc = id.clone();
        let mut power = id;
        for _ in 1..n {
            power = mat_mul(ring, &power, &nil);
            acc = acc.iter().zip(&power).map(|(a, p)| a.iter().zip(p).map(|(x, y)| ring.add(x, y)).collect()).collect();
        }
        GaugeElement { ring: ring.clone(), entries: acc }
    }
}

/// `τ(g) M g^{-1}`. Applying `g1` and then `g2` equals applying `g2 * g1`.
pub fn gauge_apply<R: DifferenceRing>(g: &GaugeElement<R>, m: &MatrixOp<R>) -> Result<MatrixOp<R>> {
    if g.n() != m.n() {
        return Err(Error::DimensionMismatch(format!("gauge is {0}x{0}, operator is {1}x{1}", g.n(), m.n())));
    }
    if g.ring.variant() != m.ring.variant() {
        return Err(Error::RingMismatch(format!("{:?} vs {:?}", g.ring.variant(), m.ring.variant())));
    }
    let ring = &m.ring;
    let left = mat_mul(ring, &mat_tau(ring, &g.entries), &m.entries);
    let entries = mat_mul(ring, &left, &g.inverse().entries);
    Ok(MatrixOp { ring: ring.clone(), entries })
}

/// The normal-form coordinates `t_1 .. t_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm<R: DifferenceRing> {
    pub t: Vec<R::Elem>,
}

impl<R: DifferenceRing> CanonicalForm<R> {
    /// The matrix with first row `(t_1, …, t_{n-1}, 1)`, `-1` on the
    /// subdiagonal and zeros elsewhere.
    pub fn embed(&self, ring: &R) -> MatrixOp<R> {
        let n = self.t.len() + 1;
        let mut entries: Matrix<R::Elem> = (0..n).map(|_| (0..n).map(|_| ring.zero()).collect()).collect();
        for (j, tj) in self.t.iter().enumerate() {
            entries[0][j] = tj.clone();
        }
        entries[0][n - 1] = ring.one();
        for i in 1..n {
            entries[i][i - 1] = ring.from_int(-1);
        }
        MatrixOp { ring: ring.clone(), entries }
    }
}

/// Gauge `M` into normal form by eliminating rows `n, …, 2` right to left
/// with elementary unipotents `E_{α-1,j}(-A_{α,j})`. Returns the normal form
/// and the accumulated gauge `g` with `gauge_apply(g, M) = embed(t)`.
pub fn canonicalize<R: DifferenceRing>(m: &MatrixOp<R>) -> Result<(CanonicalForm<R>, GaugeElement<R>)> {
    if !m.is_mj_member() {
        return Err(Error::NotInMJ("subdiagonal must be -1 with zeros below".into()));
    }
    let ring = m.ring.clone();
    let n = m.n();
    let mut current = m.clone();
    let mut total = GaugeElement::identity(ring.clone(), n);
    for alpha in (1..n).rev() {
        for j in (alpha..n).rev() {
            let entry = current.entries[alpha][j].clone();
            if ring.is_zero(&entry) {
                continue;
            }
            let g = GaugeElement::elementary(ring.clone(), n, alpha - 1, j, ring.neg(&entry));
            current = gauge_apply(&g, &current)?;
            total = g.mul(&total);
        }
    }
    if current.entries[0][n - 1] != ring.one() {
        return Err(Error::DeterminantNotOne);
    }
    let t = current.entries[0][..n - 1].to_vec();
    Ok((CanonicalForm { t }, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{LaurentPoly, RationalFunctionQ as Rf};
    use crate::difference::ring::QShiftRing;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(k, c)| (k, Rf::from_int(c))))
    }

    #[test]
    fn two_by_two_elimination() {
        let ring = QShiftRing::default();
        let m = MatrixOp::new(ring, vec![vec![lp(&[(1, 1)]), lp(&[])], vec![lp(&[(0, -1)]), lp(&[(-1, 1)])]]).unwrap();
        let (c, g) = canonicalize(&m).unwrap();
        let expected_t = LaurentPoly::from_terms([(1, Rf::one()), (-1, Rf::q_pow(-1))]);
        assert_eq!(c.t, vec![expected_t]);
        assert_eq!(g.entry(0, 1), &lp(&[(-1, -1)]));
        assert_eq!(gauge_apply(&g, &m).unwrap(), c.embed(&ring));
    }

    #[test]
    fn identity_is_not_in_mj() {
        assert!(!MatrixOp::identity(QShiftRing::default(), 3).is_mj_member());
    }

    #[test]
    fn unipotent_inverse() {
        let ring = QShiftRing::default();
        let mut e = identity_matrix(&ring, 3);
        e[0][1] = lp(&[(1, 2)]);
        e[0][2] = lp(&[(-1, 1), (0, 3)]);
        e[1][2] = lp(&[(2, -1)]);
        let g = GaugeElement::new(ring, e).unwrap();
        assert!(g.mul(&g.inverse()).is_identity());
    }
}
