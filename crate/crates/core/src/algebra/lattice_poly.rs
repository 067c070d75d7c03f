//! Sparse multivariate Laurent polynomials over `Q` in site-indexed lattice
//! coordinates (`a_k`, `b_k`, `λ_k`, `t_k`, ...).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coordinate family of a lattice generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    A,
    B,
    C,
    D,
    Lambda,
    T,
    Nu,
    S,
}

impl GenKind {
    pub fn symbol(self) -> &'static str {
        match self {
            GenKind::A => "a",
            GenKind::B => "b",
            GenKind::C => "c",
            GenKind::D => "d",
            GenKind::Lambda => "λ",
            GenKind::T => "t",
            GenKind::Nu => "ν",
            GenKind::S => "s",
        }
    }

    /// The four matrix-entry families `a, b, c, d` in row-major order.
    pub const ENTRIES: [GenKind; 4] = [GenKind::A, GenKind::B, GenKind::C, GenKind::D];
}

/// A generator `kind_site`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub kind: GenKind,
    pub site: usize,
}

impl Gen {
    pub fn new(kind: GenKind, site: usize) -> Self {
        Gen { kind, site }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind.symbol(), self.site)
    }
}

/// Sorted list of `(generator, exponent)` with nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Gen, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(g: Gen, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(vec![(g, e)])
        }
    }

    pub fn factors(&self) -> &[(Gen, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: Gen) -> i32 {
        self.0.iter().find(|(h, _)| *h == g).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (ga, ea) = self.0[i];
            let (gb, eb) = other.0[j];
            match ga.cmp(&gb) {
                std::cmp::Ordering::Less => {
                    out.push((ga, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((gb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if ea + eb != 0 {
                        out.push((ga, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Self {
        Monomial(self.0.iter().map(|&(g, e)| (g, -e)).collect())
    }

    /// Componentwise minimum of exponents (the monomial gcd when both are
    /// allowed to carry negative powers).
    pub fn min_with(&self, other: &Self) -> Self {
        let mut gens: BTreeSet<Gen> = self.0.iter().map(|x| x.0).collect();
        gens.extend(other.0.iter().map(|x| x.0));
        Monomial(
            gens.into_iter()
                .filter_map(|g| {
                    let e = self.exponent(g).min(other.exponent(g));
                    (e != 0).then_some((g, e))
                })
                .collect(),
        )
    }

    fn with_exponent(&self, g: Gen, e: i32) -> Self {
        let mut v: Vec<(Gen, i32)> = self.0.iter().copied().filter(|(h, _)| *h != g).collect();
        if e != 0 {
            v.push((g, e));
            v.sort();
        }
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Finite sum of `coefficient * monomial` in canonical form (sorted, no zero
/// coefficients), so equal values have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LatticePolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LatticePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LatticePolynomial { terms }
    }

    pub fn var(g: Gen) -> Self {
        Self::term(BigRational::one(), Monomial::var(g, 1))
    }

    pub fn gen(kind: GenKind, site: usize) -> Self {
        Self::var(Gen::new(kind, site))
    }

    /// `g^e`, negative `e` allowed (formal inverse).
    pub fn var_pow(g: Gen, e: i32) -> Self {
        Self::term(BigRational::one(), Monomial::var(g, e))
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn gens(&self) -> BTreeSet<Gen> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|x| x.0)).collect()
    }

    /// Generators that occur with a negative exponent.
    pub fn inverted_gens(&self) -> BTreeSet<Gen> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().filter(|x| x.1 < 0).map(|x| x.0))
            .collect()
    }

    /// Errors unless every negatively-powered generator is in `declared`.
    pub fn check_inverses(&self, declared: &BTreeSet<Gen>) -> Result<()> {
        match self.inverted_gens().into_iter().find(|g| !declared.contains(g)) {
            Some(g) => Err(Error::UndeclaredInverse(g.to_string())),
            None => Ok(()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LatticePolynomial { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LatticePolynomial { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single term.
    pub fn invert_monomial(&self) -> Result<Self> {
        let (m, c) = self.as_monomial().ok_or(Error::NotFinitelySupported)?;
        Ok(Self::term(c.recip(), m.inv()))
    }

    /// Partial derivative; negative exponents differentiate as Laurent
    /// monomials.
    pub fn derivative(&self, g: Gen) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(g);
            if e != 0 {
                out.add_term(m.with_exponent(g, e - 1), &(c * rat(e as i64)));
            }
        }
        out
    }

    /// Replace `g` by `value`; negative powers of `g` require `value` to be a
    /// single term.
    pub fn substitute(&self, g: Gen, value: &Self) -> Result<Self> {
        let mut cache: BTreeMap<i32, Self> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(g);
            if e == 0 {
                out.add_term(m.clone(), c);
                continue;
            }
            if !cache.contains_key(&e) {
                let p = if e > 0 { value.pow(e as u32) } else { value.invert_monomial()?.pow((-e) as u32) };
                cache.insert(e, p);
            }
            let rest = Self::term(c.clone(), m.with_exponent(g, 0));
            out = &out + &(&rest * &cache[&e]);
        }
        Ok(out)
    }

    /// Simultaneous substitution of several generators.
    pub fn substitute_all(&self, map: &BTreeMap<Gen, Self>) -> Result<Self> {
        let mut out = Self::zero();
        let mut powers: BTreeMap<(Gen, i32), Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            let mut kept = Monomial::one();
            for &(g, e) in &m.0 {
                match map.get(&g) {
                    Some(v) => {
                        if !powers.contains_key(&(g, e)) {
                            let p = if e > 0 { v.pow(e as u32) } else { v.invert_monomial()?.pow((-e) as u32) };
                            powers.insert((g, e), p);
                        }
                        acc = &acc * &powers[&(g, e)];
                    }
                    None => kept = kept.mul(&Monomial::var(g, e)),
                }
            }
            out = &out + &acc.mul_monomial(&kept);
        }
        Ok(out)
    }

    /// Exact evaluation; a missing generator or a zero raised to a negative
    /// power is an error.
    pub fn eval(&self, point: &BTreeMap<Gen, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(g, e) in &m.0 {
                let x = point
                    .get(&g)
                    .ok_or_else(|| Error::InvalidConfig(format!("no value for generator {g}")))?;
                if e < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                v *= num_traits::pow::Pow::pow(x, e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Largest monomial dividing every term (componentwise minimum exponent).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        it.fold(first.clone(), |acc, m| acc.min_with(m))
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            out.push_str(if out.is_empty() {
                if neg {
                    "-"
                } else {
                    ""
                }
            } else if neg {
                " - "
            } else {
                " + "
            });
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{abs}*{m}"));
            }
        }
        out
    }
}

impl fmt::Debug for LatticePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for LatticePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &LatticePolynomial {
    type Output = LatticePolynomial;
    fn add(self, rhs: &LatticePolynomial) -> LatticePolynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &LatticePolynomial {
    type Output = LatticePolynomial;
    fn sub(self, rhs: &LatticePolynomial) -> LatticePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Neg for &LatticePolynomial {
    type Output = LatticePolynomial;
    fn neg(self) -> LatticePolynomial {
        LatticePolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &LatticePolynomial {
    type Output = LatticePolynomial;
    fn mul(self, rhs: &LatticePolynomial) -> LatticePolynomial {
        let mut out = LatticePolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LatticePolynomial {
            type Output = LatticePolynomial;
            fn $m(self, rhs: LatticePolynomial) -> LatticePolynomial { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LatticePolynomial {
    type Output = LatticePolynomial;
    fn neg(self) -> LatticePolynomial {
        -&self
    }
}

impl std::iter::Sum for LatticePolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: usize) -> LatticePolynomial {
        LatticePolynomial::gen(GenKind::A, k)
    }

    #[test]
    fn canonical_form_is_unique() {
        let x = &(&a(0) + &a(1)) * &(&a(0) - &a(1));
        let y = &(&a(0) * &a(0)) - &(&a(1) * &a(1));
        assert_eq!(x, y);
        assert!((&x - &y).is_zero());
    }

    #[test]
    fn laurent_derivative() {
        let g = Gen::new(GenKind::Lambda, 2);
        let inv = LatticePolynomial::var_pow(g, -1);
        let d = inv.derivative(g);
        assert_eq!(d, LatticePolynomial::var_pow(g, -2).scale(&rat(-1)));
    }

    #[test]
    fn substitution_of_inverse_needs_monomial() {
        let c = Gen::new(GenKind::C, 0);
        let p = LatticePolynomial::var_pow(c, -1);
        assert!(p.substitute(c, &(&a(0) + &a(1))).is_err());
        assert_eq!(p.substitute(c, &LatticePolynomial::from_int(-1)).unwrap(), LatticePolynomial::from_int(-1));
    }

    #[test]
    fn undeclared_inverse_is_reported() {
        let g = Gen::new(GenKind::T, 0);
        let p = LatticePolynomial::var_pow(g, -1);
        assert_eq!(p.check_inverses(&BTreeSet::new()), Err(Error::UndeclaredInverse("t_0".into())));
        assert!(p.check_inverses(&[g].into_iter().collect()).is_ok());
    }

    #[test]
    fn evaluation() {
        let pt: BTreeMap<Gen, BigRational> = [(Gen::new(GenKind::A, 0), rat(2)), (Gen::new(GenKind::A, 1), rat(3))].into();
        let p = &(&a(0) * &a(1)) - &LatticePolynomial::from_int(1);
        assert_eq!(p.eval(&pt).unwrap(), rat(5));
    }
}
