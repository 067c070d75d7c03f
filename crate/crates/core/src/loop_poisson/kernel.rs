//! Kernel calculus. A kernel is a formal series `K(x) = Σ_n κ(n) x^n` in
//! `x = w/z`; paired with series `Z(z)`, `W(w)` it gives the mode bracket
//! `Σ_n κ(n) ζ_{m-n} ω_{p+n}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::RationalFunctionQ as Rf;

use super::spec::{phi_tilde, RMatrixSpec};

/// Kernel building blocks, each shifted by a power of `q` in its argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KernelAtom {
    /// `δ(q^a x)`: `κ(n) = q^{an}`.
    Delta(i64),
    /// `Σ φ_n q^{an} x^n` with `φ` from the r-matrix.
    Phi(i64),
    /// `φ̃(q^a x)`: `κ(n) = (1-q^n)/(1+q^n) q^{an}`.
    PhiTilde(i64),
    /// `κ(n) = δ_{n,0}`.
    Const,
}

impl KernelAtom {
    pub fn coefficient(&self, n: i64, spec: &RMatrixSpec) -> Rf {
        match *self {
            KernelAtom::Delta(a) => Rf::q_pow(a * n),
            KernelAtom::Phi(a) => &spec.phi(n) * &Rf::q_pow(a * n),
            KernelAtom::PhiTilde(a) => {
                if n == 0 {
                    Rf::zero()
                } else {
                    &phi_tilde(n) * &Rf::q_pow(a * n)
                }
            }
            KernelAtom::Const => {
                if n == 0 {
                    Rf::one()
                } else {
                    Rf::zero()
                }
            }
        }
    }

    /// `K(x) -> K(q^k x)`.
    pub fn shifted(&self, k: i64) -> Self {
        match *self {
            KernelAtom::Delta(a) => KernelAtom::Delta(a + k),
            KernelAtom::Phi(a) => KernelAtom::Phi(a + k),
            KernelAtom::PhiTilde(a) => KernelAtom::PhiTilde(a + k),
            KernelAtom::Const => KernelAtom::Const,
        }
    }

    /// `K(x) -> K(1/x)`, i.e. `κ(n) -> κ(-n)`. The `Phi` case uses
    /// `φ_{-n} = 1 - φ_n`, valid for every admissible r-matrix.
    pub fn reflected(&self) -> KernelExpr {
        match *self {
            KernelAtom::Delta(a) => KernelExpr::atom(KernelAtom::Delta(-a)),
            KernelAtom::Phi(a) => &KernelExpr::atom(KernelAtom::Delta(-a)) - &KernelExpr::atom(KernelAtom::Phi(-a)),
            KernelAtom::PhiTilde(a) => KernelExpr::atom(KernelAtom::PhiTilde(-a)).scale(&Rf::from_int(-1)),
            KernelAtom::Const => KernelExpr::atom(KernelAtom::Const),
        }
    }

    /// Rewrite in terms of `φ̃(x)` and `δ(q^a x)` for the first-class
    /// r-matrix `φ_n = 1/(1+q^n)`, using
    /// `φ̃(x) + φ̃(qx) = δ(x) - δ(qx)` and `2 Φ(x) = φ̃(x) + δ(x)`.
    pub fn first_class_normal_form(&self) -> KernelExpr {
        match *self {
            KernelAtom::PhiTilde(0) | KernelAtom::Delta(_) | KernelAtom::Const => KernelExpr::atom(*self),
            KernelAtom::PhiTilde(a) if a > 0 => {
                // φ̃(q^a x) = δ(q^{a-1}x) - δ(q^a x) - φ̃(q^{a-1} x)
                let mut e = &KernelExpr::atom(KernelAtom::Delta(a - 1)) - &KernelExpr::atom(KernelAtom::Delta(a));
                e = &e - &KernelAtom::PhiTilde(a - 1).first_class_normal_form();
                e
            }
            KernelAtom::PhiTilde(a) => {
                // φ̃(q^a x) = δ(q^a x) - δ(q^{a+1} x) - φ̃(q^{a+1} x)
                let mut e = &KernelExpr::atom(KernelAtom::Delta(a)) - &KernelExpr::atom(KernelAtom::Delta(a + 1));
                e = &e - &KernelAtom::PhiTilde(a + 1).first_class_normal_form();
                e
            }
            KernelAtom::Phi(a) => {
                // Φ(q^a x) = (φ̃(q^a x) + δ(q^a x)) / 2
                let half = Rf::from_ratio(1, 2);
                let e = &KernelAtom::PhiTilde(a).first_class_normal_form() + &KernelExpr::atom(KernelAtom::Delta(a));
                e.scale(&half)
            }
        }
    }
}

impl fmt::Display for KernelAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = |a: i64| match a {
            0 => "w/z".to_string(),
            1 => "qw/z".to_string(),
            -1 => "w/(qz)".to_string(),
            a => format!("q^{a}w/z"),
        };
        match *self {
            KernelAtom::Delta(a) => write!(f, "δ({})", arg(a)),
            KernelAtom::Phi(a) => write!(f, "Φ({})", arg(a)),
            KernelAtom::PhiTilde(a) => write!(f, "φ({})", arg(a)),
            KernelAtom::Const => write!(f, "1"),
        }
    }
}

/// Finite linear combination of kernel atoms with `Q(q)` coefficients, kept
/// sorted with like atoms merged and zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KernelExpr {
    terms: BTreeMap<KernelAtom, Rf>,
}

impl KernelExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn atom(a: KernelAtom) -> Self {
        Self::term(a, Rf::one())
    }

    pub fn term(a: KernelAtom, c: Rf) -> Self {
        let mut e = Self::zero();
        e.add_term(a, &c);
        e
    }

    pub fn add_term(&mut self, a: KernelAtom, c: &Rf) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(a).or_insert_with(Rf::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KernelAtom, &Rf)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rf) -> Self {
        let mut e = Self::zero();
        for (a, v) in &self.terms {
            e.add_term(*a, &(v * c));
        }
        e
    }

    pub fn shifted(&self, k: i64) -> Self {
        let mut e = Self::zero();
        for (a, v) in &self.terms {
            e.add_term(a.shifted(k), v);
        }
        e
    }

    pub fn reflected(&self) -> Self {
        let mut e = Self::zero();
        for (a, v) in &self.terms {
            e = &e + &a.reflected().scale(v);
        }
        e
    }

    pub fn first_class_normal_form(&self) -> Self {
        let mut e = Self::zero();
        for (a, v) in &self.terms {
            e = &e + &a.first_class_normal_form().scale(v);
        }
        e
    }

    /// `κ(n)`.
    pub fn coefficient(&self, n: i64, spec: &RMatrixSpec) -> Rf {
        self.terms.iter().map(|(a, v)| v * &a.coefficient(n, spec)).sum()
    }
}

impl std::ops::Add for &KernelExpr {
    type Output = KernelExpr;
    fn add(self, rhs: &KernelExpr) -> KernelExpr {
        let mut e = self.clone();
        for (a, v) in &rhs.terms {
            e.add_term(*a, v);
        }
        e
    }
}

impl std::ops::Sub for &KernelExpr {
    type Output = KernelExpr;
    fn sub(self, rhs: &KernelExpr) -> KernelExpr {
        self + &rhs.scale(&Rf::from_int(-1))
    }
}

impl fmt::Display for KernelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(a, c)| format!("({c}) {a}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_plus_shifted_phi_is_delta_difference() {
        let lhs = &KernelExpr::atom(KernelAtom::PhiTilde(0)) + &KernelExpr::atom(KernelAtom::PhiTilde(1));
        let rhs = &KernelExpr::atom(KernelAtom::Delta(0)) - &KernelExpr::atom(KernelAtom::Delta(1));
        assert_eq!(lhs.first_class_normal_form(), rhs);
        let spec = RMatrixSpec::first_class();
        for n in -6..=6 {
            assert_eq!(lhs.coefficient(n, &spec), rhs.coefficient(n, &spec));
        }
    }

    #[test]
    fn normal_form_preserves_coefficients() {
        let spec = RMatrixSpec::first_class();
        for atom in [KernelAtom::Phi(2), KernelAtom::Phi(-3), KernelAtom::PhiTilde(-2), KernelAtom::PhiTilde(3)] {
            let nf = atom.first_class_normal_form();
            for n in -5..=5 {
                assert_eq!(nf.coefficient(n, &spec), atom.coefficient(n, &spec), "{atom} at {n}");
            }
        }
    }

    #[test]
    fn reflection_is_coefficient_reversal() {
        for spec in [RMatrixSpec::first_class(), RMatrixSpec::standard_r0()] {
            for atom in [KernelAtom::Phi(1), KernelAtom::Delta(-2), KernelAtom::Const] {
                let r = atom.reflected();
                for n in -4..=4 {
                    assert_eq!(r.coefficient(n, &spec), atom.coefficient(-n, &spec));
                }
            }
        }
    }
}
