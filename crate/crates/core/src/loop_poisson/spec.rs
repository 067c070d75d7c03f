//! The family of loop `r`-matrices `Σ E_n ⊗ F_{-n} + ½ Σ φ_n H_n ⊗ H_{-n}`
//! with `φ_n + φ_{-n} = 1`, and the first-class condition on `φ`.

use std::collections::BTreeMap;

use crate::algebra::RationalFunctionQ as Rf;
use crate::error::{Error, Result};

/// Choice of the Cartan coefficients `φ_n`.
#[derive(Debug, Clone, PartialEq)]
pub enum RMatrixSpec {
    /// `φ_0 = 1/2`, `φ_n = 1` for `n > 0`, `φ_n = 0` for `n < 0`.
    StandardR0,
    /// `φ_n = 1/(1+q^n)`.
    FirstClass,
    /// Explicit values on a finite window; modes outside it fall back to
    /// the first-class values.
    Custom(BTreeMap<i64, Rf>),
}

/// `1/(1+q^n)`
pub fn first_class_phi(n: i64) -> Rf {
    (&Rf::one() + &Rf::q_pow(n)).inv().expect("1+q^n is nonzero")
}

/// `(1-q^n)/(1+q^n)`, the coefficients of the series `φ̃`; zero at `n = 0`.
pub fn phi_tilde(n: i64) -> Rf {
    if n == 0 {
        return Rf::zero();
    }
    let qn = Rf::q_pow(n);
    (&Rf::one() - &qn).checked_div(&(&Rf::one() + &qn)).expect("1+q^n is nonzero")
}

impl RMatrixSpec {
    pub fn standard_r0() -> Self {
        RMatrixSpec::StandardR0
    }

    pub fn first_class() -> Self {
        RMatrixSpec::FirstClass
    }

    pub fn phi(&self, n: i64) -> Rf {
        match self {
            RMatrixSpec::StandardR0 => match n.signum() {
                0 => Rf::from_ratio(1, 2),
                1 => Rf::one(),
                _ => Rf::zero(),
            },
            RMatrixSpec::FirstClass => first_class_phi(n),
            RMatrixSpec::Custom(values) => values.get(&n).cloned().unwrap_or_else(|| first_class_phi(n)),
        }
    }

    pub fn is_first_class(&self) -> bool {
        match self {
            RMatrixSpec::FirstClass => true,
            RMatrixSpec::StandardR0 => false,
            RMatrixSpec::Custom(values) => values.iter().all(|(&n, v)| *v == first_class_phi(n)),
        }
    }

    /// Checks `φ_n + φ_{-n} = 1` for `|n| <= range`.
    pub fn validate(&self, range: i64) -> Result<()> {
        for n in 0..=range {
            if &self.phi(n) + &self.phi(-n) != Rf::one() {
                return Err(Error::ClassConstraint(n));
            }
        }
        if let RMatrixSpec::Custom(values) = self {
            for &n in values.keys() {
                if &self.phi(n) + &self.phi(-n) != Rf::one() {
                    return Err(Error::ClassConstraint(n));
                }
            }
        }
        Ok(())
    }
}

/// `½(φ_m - φ_{-m} + φ_m q^m - φ_{-m} q^{-m})`: the coefficient of
/// `δ_{m,-k}` in `{c_m, c_k}` on the surface `c(s) = -1`. It vanishes for all
/// `m` exactly when the constraints are first class.
pub fn constraint_bracket_coefficient(spec: &RMatrixSpec, m: i64) -> Rf {
    let (p, n) = (spec.phi(m), spec.phi(-m));
    let sum = &(&(&p - &n) + &(&p * &Rf::q_pow(m))) - &(&n * &Rf::q_pow(-m));
    &sum * &Rf::from_ratio(1, 2)
}

/// One solved mode of the first-class system.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSolution {
    pub m: i64,
    pub phi: Rf,
    /// Determinant of the 2x2 system in `(φ_m, φ_{-m})`; nonzero means the
    /// solution is unique. For `m = 0` the system is the single equation
    /// `2 φ_0 = 1` and this is 2.
    pub determinant: Rf,
}

/// Solve `φ_m - φ_{-m} + φ_m q^m - φ_{-m} q^{-m} = 0`, `φ_m + φ_{-m} = 1`
/// by Cramer's rule for `|m| <= range`.
pub fn solve_first_class_loop(range: i64) -> Result<(RMatrixSpec, Vec<PhiSolution>)> {
    let mut values = BTreeMap::new();
    let mut solutions = Vec::new();
    for m in -range..=range {
        let sol = if m == 0 {
            PhiSolution { m, phi: Rf::from_ratio(1, 2), determinant: Rf::from_int(2) }
        } else {
            // [[1+q^m, -(1+q^{-m})], [1, 1]] (φ_m, φ_{-m})^T = (0, 1)^T
            let a = &Rf::one() + &Rf::q_pow(m);
            let b = -&(&Rf::one() + &Rf::q_pow(-m));
            let det = &a - &b;
            if det.is_zero() {
                return Err(Error::InvalidConfig(format!("singular first-class system at m = {m}")));
            }
            let phi = (-&b).checked_div(&det)?;
            PhiSolution { m, phi, determinant: det }
        };
        values.insert(m, sol.phi.clone());
        solutions.push(sol);
    }
    Ok((RMatrixSpec::Custom(values), solutions))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solved_values() {
        let (_, sols) = solve_first_class_loop(2).unwrap();
        let one = sols.iter().find(|s| s.m == 1).unwrap();
        assert_eq!(one.phi, "1/(1+q)".parse().unwrap());
        let zero = sols.iter().find(|s| s.m == 0).unwrap();
        assert_eq!(zero.phi, Rf::from_ratio(1, 2));
    }

    #[test]
    fn constraint_coefficients() {
        assert!(constraint_bracket_coefficient(&RMatrixSpec::first_class(), 3).is_zero());
        assert_eq!(constraint_bracket_coefficient(&RMatrixSpec::standard_r0(), 1), "(1+q)/2".parse().unwrap());
        assert!(constraint_bracket_coefficient(&RMatrixSpec::standard_r0(), 0).is_zero());
    }

    #[test]
    fn class_constraint_violation() {
        let bad = RMatrixSpec::Custom([(1, Rf::one()), (-1, Rf::one())].into());
        assert_eq!(bad.validate(3), Err(Error::ClassConstraint(1)));
        assert!(RMatrixSpec::standard_r0().validate(5).is_ok());
    }
}
