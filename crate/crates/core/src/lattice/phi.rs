//! The Cartan coefficients `φ_k` of the lattice r-matrix, their
//! antisymmetrization `φ̂`, and the root-of-unity formula for `φ̂`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::rat;
use crate::error::{Error, Result};

/// `φ_0, …, φ_{N-1}` on the representatives `{0, …, N-1}` of `Z/NZ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePhi {
    n: usize,
    values: Vec<BigRational>,
}

impl LatticePhi {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(LatticePhi { n: values.len(), values })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| rat(v)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `φ_k` for any integer `k`, read cyclically.
    pub fn get(&self, k: i64) -> &BigRational {
        &self.values[wrap(k, self.n)]
    }

    /// `φ̂_k = ½(φ_k - φ_{-k})`.
    pub fn hat(&self, k: i64) -> BigRational {
        (self.get(k) - self.get(-k)) / rat(2)
    }

    /// Indices `k` where `φ_k + φ_{-k} ≠ 2δ_{k,0}`.
    pub fn pairing_defects(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&k| self.get(k as i64) + self.get(-(k as i64)) != delta2(k == 0))
            .collect()
    }

    /// Indices `k` where `φ_{k-1} + 2φ_k + φ_{k+1} ≠ 2δ_{k,0} + 2δ_{k+1,0}`.
    pub fn recurrence_defects(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&k| {
                let k_ = k as i64;
                let lhs = self.get(k_ - 1) + self.get(k_) * rat(2) + self.get(k_ + 1);
                lhs != delta2(k == 0) + delta2(wrap(k_ + 1, self.n) == 0)
            })
            .collect()
    }

    pub fn is_first_class(&self) -> bool {
        self.pairing_defects().is_empty() && self.recurrence_defects().is_empty()
    }
}

fn delta2(hit: bool) -> BigRational {
    if hit {
        rat(2)
    } else {
        BigRational::zero()
    }
}

/// `k mod n` in `{0, …, n-1}`.
pub fn wrap(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// The closed forms: `(-1)^k` for odd `N`, `(-1)^k (1 - 2k/N)` for even `N`.
pub fn closed_form_phi(n: usize) -> Result<LatticePhi> {
    if n == 0 {
        return Err(Error::NOutOfRange("N = 0".into()));
    }
    let sign = |k: usize| if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let values = (0..n)
        .map(|k| {
            if n % 2 == 1 {
                sign(k)
            } else {
                sign(k) * (BigRational::one() - BigRational::new((2 * k).into(), n.into()))
            }
        })
        .collect();
    LatticePhi::new(values)
}

/// Reduced row echelon form over `Q`; returns the pivot columns.
fn row_reduce(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Solves the cyclic first-class system: the recurrence, the pairing
/// condition and `φ_0 = 1`, stacked and reduced exactly. The result is
/// compared with the closed forms.
pub fn solve_first_class_lattice(n: usize) -> Result<LatticePhi> {
    if n == 0 {
        return Err(Error::NOutOfRange("N = 0; need N >= 1".into()));
    }
    let width = n + 1;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for k in 0..n {
        let mut row = vec![BigRational::zero(); width];
        for (off, c) in [(-1i64, 1), (0, 2), (1, 1)] {
            row[wrap(k as i64 + off, n)] += rat(c);
        }
        row[n] = delta2(k == 0) + delta2(wrap(k as i64 + 1, n) == 0);
        rows.push(row);
    }
    for k in 0..n {
        let mut row = vec![BigRational::zero(); width];
        row[k] += rat(1);
        row[wrap(-(k as i64), n)] += rat(1);
        row[n] = delta2(k == 0);
        rows.push(row);
    }
    let mut anchor = vec![BigRational::zero(); width];
    anchor[0] = rat(1);
    anchor[n] = rat(1);
    rows.push(anchor);

    let pivots = row_reduce(&mut rows, width);
    if pivots.contains(&n) {
        return Err(Error::InvalidConfig(format!("first-class system for N = {n} is inconsistent")));
    }
    if pivots.len() != n {
        return Err(Error::InvalidConfig(format!("first-class system for N = {n} is underdetermined")));
    }
    let phi = LatticePhi::new((0..n).map(|k| rows[k][n].clone()).collect())?;
    debug_assert!(phi.is_first_class());
    let closed = closed_form_phi(n)?;
    if phi != closed {
        return Err(Error::InvalidConfig(format!("solver output for N = {n} differs from the closed form")));
    }
    Ok(phi)
}

/// `(1/N) Σ_i (1-ε^i)/(1+ε^i) ε^{ki}` with `ε = exp(2πi/N)`.
pub fn root_unity_phi(n: usize, k: i64) -> Result<Complex64> {
    if n % 2 == 0 {
        return Err(Error::OddNRequired(n));
    }
    let eps = |j: i64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (j.rem_euclid(n as i64)) as f64 / n as f64);
    let one = Complex64::new(1.0, 0.0);
    let sum: Complex64 = (0..n as i64).map(|i| (one - eps(i)) / (one + eps(i)) * eps(k * i)).sum();
    Ok(sum / n as f64)
}

/// `|root_unity_phi(N, k) - φ̂_{-k}|`.
pub fn root_unity_deviation(phi: &LatticePhi, k: i64) -> Result<f64> {
    let z = root_unity_phi(phi.n(), k)?;
    let exact = phi.hat(-k).to_f64().unwrap_or(f64::NAN);
    Ok((z - Complex64::new(exact, 0.0)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(solve_first_class_lattice(5).unwrap(), LatticePhi::from_ints(&[1, -1, 1, -1, 1]).unwrap());
        let four = solve_first_class_lattice(4).unwrap();
        let expected: Vec<BigRational> =
            vec![rat(1), BigRational::new((-1).into(), 2.into()), rat(0), BigRational::new(1.into(), 2.into())];
        assert_eq!(four.values(), &expected[..]);
        assert_eq!(solve_first_class_lattice(1).unwrap().values(), &[rat(1)]);
    }

    #[test]
    fn invariants_up_to_twelve() {
        for n in 1..=12 {
            let phi = solve_first_class_lattice(n).unwrap();
            assert!(phi.is_first_class(), "N = {n}");
            assert!(phi.hat(0).is_zero());
            for k in 0..n as i64 {
                assert_eq!(phi.hat(n as i64 - k), -phi.hat(k));
            }
        }
    }

    #[test]
    fn corrupted_phi_is_flagged() {
        let bad = LatticePhi::from_ints(&[1, -1, 0]).unwrap();
        assert!(!bad.pairing_defects().is_empty());
    }

    #[test]
    fn root_of_unity() {
        assert!((root_unity_phi(3, 1).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        assert!(root_unity_phi(3, 0).unwrap().norm() < 1e-10);
        for n in [3, 5, 7, 9] {
            let phi = solve_first_class_lattice(n).unwrap();
            for k in 0..n as i64 {
                assert!(root_unity_deviation(&phi, k).unwrap() < 1e-10);
            }
        }
        assert_eq!(root_unity_phi(4, 1), Err(Error::OddNRequired(4)));
    }
}
