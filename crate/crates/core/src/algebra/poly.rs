//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients. This is the numerator/denominator type behind
//! [`RationalFunctionQ`](super::RationalFunctionQ).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients are stored low degree first; the leading coefficient is
/// never zero (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Largest `k` such that `q^k` divides `self`.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide by `q^k`; caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> Self {
        IntPoly { coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    /// Pseudo-remainder: `lc(other)^(deg self - deg other + 1) * self mod other`.
    fn pseudo_rem(&self, other: &Self) -> Self {
        let dv = other.degree().expect("pseudo_rem by zero");
        let lc = other.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dv && !r.is_empty() {
            let dr = r.len() - 1;
            let lead = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, oc) in other.coeffs.iter().enumerate() {
                r[dr - dv + i] -= &lead * oc;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        IntPoly { coeffs: r }
    }

    /// Gcd in `Z[q]`, primitive with positive leading coefficient
    /// (the gcd of two zero polynomials is zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        // Common powers of q are stripped first; most denominators here are
        // products of 1 + q^n and powers of q.
        let low = a.low_order().min(b.low_order());
        a = a.shift_down(a.low_order());
        b = b.shift_down(b.low_order());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                a = IntPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&cont).shift_up(low)
    }

    /// Exact division; panics if `other` does not divide `self` in `Z[q]`.
    pub fn div_exact(&self, other: &Self) -> Self {
        let (quo, rem) = self.div_rem_rational(other);
        assert!(rem.is_zero(), "div_exact: non-zero remainder");
        quo
    }

    /// Division with remainder, requiring every intermediate quotient
    /// coefficient to be integral (true whenever the division is exact).
    fn div_rem_rational(&self, other: &Self) -> (Self, Self) {
        let dv = other.degree().expect("division by zero polynomial");
        if other.is_one() {
            return (self.clone(), Self::zero());
        }
        let lc = other.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dv {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![BigInt::zero(); r.len() - dv];
        while r.len() > dv {
            let dr = r.len() - 1;
            let (qc, rem) = r[dr].div_rem(lc);
            if !rem.is_zero() {
                return (Self::from_coeffs(quo), Self::from_coeffs(r));
            }
            for (i, oc) in other.coeffs.iter().enumerate() {
                r[dr - dv + i] -= &qc * oc;
            }
            quo[dr - dv] = qc;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Self::from_coeffs(quo), Self::from_coeffs(r))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at a complex number.
    pub fn eval_complex(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Sparse rendering, ascending degree, e.g. `-1+q` or `1+2q^3`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                out.push_str(&abs.to_string());
            }
            match k {
                0 => {}
                1 => out.push('q'),
                _ => {
                    out.push_str("q^");
                    out.push_str(&k.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, 1]); // 1+q
        let b = p(&[1, 0, 1]); // 1+q^2
        let c = p(&[-1, 1]); // -1+q
        let x = &(&a * &b) * &p(&[0, 0, 3]);
        let y = &(&a * &c) * &p(&[0, 6]);
        assert_eq!(x.gcd(&y), (&a * &p(&[0, 3])));
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert!(p(&[1, 1]).gcd(&p(&[1, 0, 1])).is_one());
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 1]);
        let b = p(&[2, -3, 5]);
        assert_eq!((&a * &b).div_exact(&a), b);
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[-1, 1]).render(), "-1+q");
        assert_eq!(p(&[0, -1, 0, 2]).render(), "-q+2q^3");
        assert_eq!(IntPoly::zero().render(), "0");
    }
}
