//! The lattice r-matrix `r = Σ E_n⊗F_n + ¼ Σ φ_{n-m} H_n⊗H_m` on
//! `sl2^N` and its classical Yang-Baxter residual.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::rat;
use crate::error::{Error, Result};

use super::phi::{wrap, LatticePhi};

/// Default largest `N` accepted by [`cybe_residual`].
pub const DEFAULT_CYBE_BOUND: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sl2 {
    E,
    H,
    F,
}

/// A basis element of `sl2` placed at one site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SiteBasis {
    pub kind: Sl2,
    pub site: usize,
}

impl fmt::Display for SiteBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.kind, self.site)
    }
}

/// `[x, y]` for basis elements; distinct sites commute.
fn lie_bracket(x: SiteBasis, y: SiteBasis) -> Option<(SiteBasis, i64)> {
    if x.site != y.site {
        return None;
    }
    let at = |kind| SiteBasis { kind, site: x.site };
    match (x.kind, y.kind) {
        (Sl2::H, Sl2::E) => Some((at(Sl2::E), 2)),
        (Sl2::E, Sl2::H) => Some((at(Sl2::E), -2)),
        (Sl2::H, Sl2::F) => Some((at(Sl2::F), -2)),
        (Sl2::F, Sl2::H) => Some((at(Sl2::F), 2)),
        (Sl2::E, Sl2::F) => Some((at(Sl2::H), 1)),
        (Sl2::F, Sl2::E) => Some((at(Sl2::H), -1)),
        _ => None,
    }
}

/// Sparse element of `sl2^N ⊗ … ⊗ sl2^N`; zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LatticeTensor {
    terms: BTreeMap<Vec<SiteBasis>, BigRational>,
}

impl LatticeTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, key: Vec<SiteBasis>, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<SiteBasis>, &BigRational)> {
        self.terms.iter()
    }

    /// Applies `site ↦ site + k (mod N)` to every factor.
    pub fn site_shifted(&self, k: i64, n: usize) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            let moved = key.iter().map(|b| SiteBasis { kind: b.kind, site: wrap(b.site as i64 + k, n) }).collect();
            out.add_term(moved, c);
        }
        out
    }
}

impl fmt::Display for LatticeTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({c}) {}", k.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("⊗")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `r` as a two-tensor.
pub fn lattice_r_matrix(phi: &LatticePhi) -> LatticeTensor {
    let n = phi.n();
    let at = |kind, site| SiteBasis { kind, site };
    let mut r = LatticeTensor::zero();
    for s in 0..n {
        r.add_term(vec![at(Sl2::E, s), at(Sl2::F, s)], &rat(1));
    }
    let quarter = BigRational::new(1.into(), 4.into());
    for s in 0..n {
        for t in 0..n {
            r.add_term(vec![at(Sl2::H, s), at(Sl2::H, t)], &(phi.get(s as i64 - t as i64) * &quarter));
        }
    }
    r
}

/// `[r12, r13] + [r12, r23] + [r13, r23]` for `N <= bound`.
pub fn cybe_residual_bounded(phi: &LatticePhi, bound: usize) -> Result<LatticeTensor> {
    if phi.n() > bound {
        return Err(Error::NOutOfRange(format!("N = {} exceeds the CYBE bound {bound}", phi.n())));
    }
    let r = lattice_r_matrix(phi);
    let pairs: Vec<(SiteBasis, SiteBasis, &BigRational)> = r.terms().map(|(k, c)| (k[0], k[1], c)).collect();
    let mut out = LatticeTensor::zero();
    for &(a1, b1, c1) in &pairs {
        for &(a2, b2, c2) in &pairs {
            let c = c1 * c2;
            // [r12, r13] = Σ [a1, a2] ⊗ b1 ⊗ b2
            if let Some((x, k)) = lie_bracket(a1, a2) {
                out.add_term(vec![x, b1, b2], &(&c * rat(k)));
            }
            // [r12, r23] = Σ a1 ⊗ [b1, a2] ⊗ b2
            if let Some((x, k)) = lie_bracket(b1, a2) {
                out.add_term(vec![a1, x, b2], &(&c * rat(k)));
            }
            // [r13, r23] = Σ a1 ⊗ a2 ⊗ [b1, b2]
            if let Some((x, k)) = lie_bracket(b1, b2) {
                out.add_term(vec![a1, a2, x], &(&c * rat(k)));
            }
        }
    }
    Ok(out)
}

pub fn cybe_residual(phi: &LatticePhi) -> Result<LatticeTensor> {
    cybe_residual_bounded(phi, DEFAULT_CYBE_BOUND)
}

/// `(τ⊗τ) r = r` with `τ` the cyclic site shift.
pub fn r_is_shift_invariant(phi: &LatticePhi) -> bool {
    let r = lattice_r_matrix(phi);
    r.site_shifted(1, phi.n()) == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::phi::solve_first_class_lattice;

    #[test]
    fn single_site_standard() {
        let phi = solve_first_class_lattice(1).unwrap();
        assert!(cybe_residual(&phi).unwrap().is_zero());
    }

    #[test]
    fn three_sites_and_control() {
        let phi = solve_first_class_lattice(3).unwrap();
        assert!(cybe_residual(&phi).unwrap().is_zero());
        assert!(r_is_shift_invariant(&phi));
        let bad = LatticePhi::from_ints(&[1, -1, 0]).unwrap();
        let res = cybe_residual(&bad).unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn bound() {
        let phi = solve_first_class_lattice(9).unwrap();
        assert!(matches!(cybe_residual(&phi), Err(Error::NOutOfRange(_))));
    }
}
