//! Structure constants of the q-deformed `W_N` Poisson algebra on the
//! series `T_1, …, T_{N-1}` and of the free-field algebra on
//! `Λ_1, …, Λ_N`.

use crate::algebra::{IntPoly, RationalFunctionQ as Rf};
use crate::error::{Error, Result};

/// `1 - x^k` as a rational function of `x`.
fn one_minus_pow(k: usize) -> Rf {
    &Rf::one() - &Rf::q_pow(k as i64)
}

/// How to read `T_N` when it appears on the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopConvention {
    /// `t_N ≡ 1`, the constraint value.
    Constant,
    /// `t_N` is the top elementary polynomial, kept as a generator.
    Generator,
}

/// One `δ` term `sign · δ(q^shift w/z) T_{z_index}(z) T_{w_index}(w)`;
/// an index of `None` stands for the constant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTerm {
    pub sign: i8,
    pub shift: i64,
    pub z_index: Option<usize>,
    pub w_index: Option<usize>,
}

/// `{T_i(z), T_j(w)}` for `i <= j`:
/// `Σ_m (w/z)^m κ_m T_i(z)T_j(w) + Σ_r δ(wq^r/z) T_{i-r}(w)T_{j+r}(z)
///  - Σ_r δ(w/(zq^{j-i+r})) T_{i-r}(z)T_{j+r}(w)`, `r = 1 … min(i, N-j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WStructure {
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

impl WStructure {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NOutOfRange(format!("N = {n}; need N >= 2")));
        }
        if i > j {
            return Err(Error::IndexOrder { i, j });
        }
        if i < 1 || j > n - 1 {
            return Err(Error::NOutOfRange(format!("indices must satisfy 1 <= i <= j <= {}", n - 1)));
        }
        Ok(WStructure { n, i, j })
    }

    /// `κ` as a rational function of `x = q^m`:
    /// `(1 - x^i)(1 - x^{N-j}) / (1 - x^N)`.
    pub fn coefficient_in_x(&self) -> Rf {
        let num = &one_minus_pow(self.i) * &one_minus_pow(self.n - self.j);
        num.checked_div(&one_minus_pow(self.n)).expect("1 - x^N is nonzero")
    }

    /// `κ_m`; at `m = 0` the reduced fraction vanishes.
    pub fn coefficient(&self, m: i64) -> Rf {
        self.coefficient_in_x().subs_q_power(m)
    }

    pub fn delta_terms(&self, top: TopConvention) -> Vec<DeltaTerm> {
        let index = |k: usize| -> Option<usize> {
            if k == 0 || (k == self.n && top == TopConvention::Constant) {
                None
            } else {
                Some(k)
            }
        };
        let (i, j) = (self.i as i64, self.j as i64);
        let mut out = Vec::new();
        for r in 1..=self.i.min(self.n - self.j) {
            out.push(DeltaTerm { sign: 1, shift: r as i64, z_index: index(self.j + r), w_index: index(self.i - r) });
        }
        for r in 1..=self.i.min(self.n - self.j) {
            out.push(DeltaTerm {
                sign: -1,
                shift: -(j - i + r as i64),
                z_index: index(self.i - r),
                w_index: index(self.j + r),
            });
        }
        out
    }
}

/// `{Λ_i(z), Λ_i(w)}`: coefficient `(1-x)(1-x^{N-1})/(1-x^N)` in `x = q^m`.
pub fn free_field_diagonal_in_x(n: usize) -> Result<Rf> {
    if n < 2 {
        return Err(Error::NOutOfRange(format!("N = {n}; need N >= 2")));
    }
    Ok((&one_minus_pow(1) * &one_minus_pow(n - 1)).checked_div(&one_minus_pow(n))?)
}

/// `{Λ_i(z), Λ_j(w)}`, `i < j`: coefficient `-(1-x)^2/(1-x^N)` in
/// `x = q^m`, multiplying `(w q^{N-1}/z)^m`.
pub fn free_field_offdiagonal_in_x(n: usize) -> Result<(Rf, i64)> {
    if n < 2 {
        return Err(Error::NOutOfRange(format!("N = {n}; need N >= 2")));
    }
    let c = -&(&one_minus_pow(1) * &one_minus_pow(1)).checked_div(&one_minus_pow(n))?;
    Ok((c, n as i64 - 1))
}

/// `(1 - x)/(1 + x)`, the q-Virasoro coefficient in `x = q^m`.
pub fn virasoro_coefficient_in_x() -> Rf {
    Rf::from_polys(IntPoly::from_coeffs(vec![1.into(), (-1).into()]), IntPoly::from_coeffs(vec![1.into(), 1.into()]))
        .expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loop_poisson::spec::phi_tilde;

    #[test]
    fn n2_reduces_to_virasoro() {
        let w = WStructure::new(2, 1, 1).unwrap();
        assert_eq!(w.coefficient_in_x(), virasoro_coefficient_in_x());
        assert_eq!(free_field_diagonal_in_x(2).unwrap(), virasoro_coefficient_in_x());
        for m in -16..=16 {
            assert_eq!(w.coefficient(m), phi_tilde(m));
        }
        let d = w.delta_terms(TopConvention::Constant);
        assert_eq!(
            d,
            vec![
                DeltaTerm { sign: 1, shift: 1, z_index: None, w_index: None },
                DeltaTerm { sign: -1, shift: -1, z_index: None, w_index: None },
            ]
        );
    }

    #[test]
    fn index_order() {
        assert_eq!(WStructure::new(4, 3, 1), Err(Error::IndexOrder { i: 3, j: 1 }));
        assert!(WStructure::new(3, 1, 1).unwrap().coefficient(0).is_zero());
    }
}
