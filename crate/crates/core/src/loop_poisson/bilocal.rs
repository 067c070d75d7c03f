//! Bilocal expressions `Σ c · K(w/z) · Z(z) · W(w)` where `Z`, `W` are
//! monomials in shifted generating series `X(z q^k)`. Bracket rules between
//! generator families, their Leibniz extension and mode evaluation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{GenKind, LaurentPoly, RationalFunctionQ as Rf};
use crate::error::{Error, Result};

use super::kernel::{KernelAtom, KernelExpr};
use super::spec::RMatrixSpec;

/// The series `X(u q^shift)` of family `kind`, where `u` is `z` or `w`.
/// Series are identified with functions by `X(s) = x(s)`, so this factor is
/// the function `x(s q^shift)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub kind: GenKind,
    pub shift: i64,
}

impl Factor {
    pub fn new(kind: GenKind, shift: i64) -> Self {
        Factor { kind, shift }
    }
}

/// Sorted product of factors with nonzero integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LoopMonomial(Vec<(Factor, i32)>);

impl LoopMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn factor(kind: GenKind, shift: i64, exp: i32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        LoopMonomial(vec![(Factor::new(kind, shift), exp)])
    }

    pub fn of(kind: GenKind) -> Self {
        Self::factor(kind, 0, 1)
    }

    pub fn factors(&self) -> &[(Factor, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<Factor, i32> = self.0.iter().copied().collect();
        for &(f, e) in &other.0 {
            *map.entry(f).or_insert(0) += e;
        }
        LoopMonomial(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    /// Shift every factor's argument by `q^k`.
    pub fn shifted(&self, k: i64) -> Self {
        LoopMonomial(self.0.iter().map(|&(f, e)| (Factor::new(f.kind, f.shift + k), e)).collect())
    }

    /// Remove one power of the factor at `idx`.
    fn without_one(&self, idx: usize) -> Self {
        let mut v = self.0.clone();
        v[idx].1 -= 1;
        if v[idx].1 == 0 {
            v.remove(idx);
        }
        LoopMonomial(v)
    }

    /// The Laurent polynomial in `s` obtained by substituting point values;
    /// negative exponents require monomial values.
    pub fn evaluate(&self, values: &PointValues) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one();
        for &(f, e) in &self.0 {
            let x = values.get(f.kind)?.shift(f.shift);
            acc = &acc * &x.pow(e as i64)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for LoopMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render("u", f)
    }
}

impl LoopMonomial {
    fn render(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(fac, e)| {
                let name = fac.kind.symbol().to_uppercase();
                let arg = match fac.shift {
                    0 => var.to_string(),
                    1 => format!("{var}q"),
                    k => format!("{var}q^{k}"),
                };
                if *e == 1 {
                    format!("{name}({arg})")
                } else {
                    format!("{name}({arg})^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Polynomial in shifted series of a single variable, e.g.
/// `A(z) C(zq) + D(zq) C(z)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeriesPoly {
    terms: BTreeMap<LoopMonomial, Rf>,
}

impl SeriesPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rf) -> Self {
        Self::term(c, LoopMonomial::one())
    }

    pub fn term(c: Rf, m: LoopMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn factor(kind: GenKind, shift: i64, exp: i32) -> Self {
        Self::term(Rf::one(), LoopMonomial::factor(kind, shift, exp))
    }

    pub fn add_term(&mut self, m: LoopMonomial, c: &Rf) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rf::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LoopMonomial, &Rf)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c);
        }
        p
    }

    pub fn scale(&self, c: &Rf) -> Self {
        let mut p = Self::zero();
        for (m, v) in &self.terms {
            p.add_term(m.clone(), &(v * c));
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                p.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        p
    }

    pub fn shifted(&self, k: i64) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            p.add_term(m.shifted(k), c);
        }
        p
    }

    /// Replace every factor of family `kind` (at any shift `k`) by
    /// `value.shifted(k)`; only nonnegative exponents may be substituted.
    pub fn substitute(&self, kind: GenKind, value: &SeriesPoly) -> Result<Self> {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            p = p.add(&substitute_monomial(m, kind, value)?.scale(c));
        }
        Ok(p)
    }

    pub fn evaluate(&self, values: &PointValues) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        for (m, c) in &self.terms {
            acc = &acc + &m.evaluate(values)?.scale(c);
        }
        Ok(acc)
    }
}

fn substitute_monomial(m: &LoopMonomial, kind: GenKind, value: &SeriesPoly) -> Result<SeriesPoly> {
    let mut acc = SeriesPoly::constant(Rf::one());
    for &(f, e) in m.factors() {
        if f.kind == kind {
            if e < 0 {
                return Err(Error::NotFinitelySupported);
            }
            let v = value.shifted(f.shift);
            for _ in 0..e {
                acc = acc.mul(&v);
            }
        } else {
            acc = acc.mul(&SeriesPoly::factor(f.kind, f.shift, e));
        }
    }
    Ok(acc)
}

/// Values of generator families at a point, as Laurent polynomials in `s`.
/// With `X(z) = Σ x_n z^{-n}` and `X(s) = x(s)`, the mode `x_n` is the
/// coefficient of `s^{-n}`; see [`mode`].
#[derive(Debug, Clone, Default)]
pub struct PointValues(BTreeMap<GenKind, LaurentPoly>);

impl PointValues {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, kind: GenKind, value: LaurentPoly) -> Self {
        self.0.insert(kind, value);
        self
    }

    pub fn get(&self, kind: GenKind) -> Result<&LaurentPoly> {
        self.0.get(&kind).ok_or_else(|| Error::InvalidConfig(format!("no value for family {}", kind.symbol())))
    }
}

/// The mode `x_n`, i.e. the coefficient of `s^{-n}`.
pub fn mode(x: &LaurentPoly, n: i64) -> Rf {
    x.coeff(-n)
}

/// Key of a bilocal term: kernel atom and the `z`- and `w`-monomials.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub atom: KernelAtom,
    pub z: LoopMonomial,
    pub w: LoopMonomial,
}

/// `Σ c · K(w/z) · Z(z) · W(w)`: the generating-series form of a bracket
/// `{F(z), G(w)}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BracketRule {
    terms: BTreeMap<TermKey, Rf>,
}

impl BracketRule {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: Rf, atom: KernelAtom, z: LoopMonomial, w: LoopMonomial) -> Self {
        let mut r = Self::zero();
        r.add_term(TermKey { atom, z, w }, &c);
        r
    }

    /// `c · K(w/z) · X(z) · Y(w)` for a kernel expression and two families.
    pub fn simple(c: Rf, kernel: &KernelExpr, x: GenKind, y: GenKind) -> Self {
        let mut r = Self::zero();
        for (a, v) in kernel.terms() {
            r.add_term(TermKey { atom: *a, z: LoopMonomial::of(x), w: LoopMonomial::of(y) }, &(v * &c));
        }
        r
    }

    pub fn add_term(&mut self, key: TermKey, c: &Rf) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Rf::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
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

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Rf)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &other.terms {
            r.add_term(k.clone(), c);
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rf::from_int(-1)))
    }

    pub fn scale(&self, c: &Rf) -> Self {
        let mut r = Self::zero();
        for (k, v) in &self.terms {
            r.add_term(k.clone(), &(v * c));
        }
        r
    }

    /// Multiply every term by `Z(z)` on the left and `W(w)` on the right.
    pub fn mul_monomials(&self, z: &LoopMonomial, w: &LoopMonomial) -> Self {
        let mut r = Self::zero();
        for (k, v) in &self.terms {
            r.add_term(TermKey { atom: k.atom, z: k.z.mul(z), w: k.w.mul(w) }, v);
        }
        r
    }

    /// `{F(z q^k), G(w q^l)}` from `{F(z), G(w)}`.
    pub fn at_shifts(&self, k: i64, l: i64) -> Self {
        let mut r = Self::zero();
        for (key, v) in &self.terms {
            r.add_term(TermKey { atom: key.atom.shifted(l - k), z: key.z.shifted(k), w: key.w.shifted(l) }, v);
        }
        r
    }

    /// `{G(z), F(w)} = -{F(w), G(z)}`: reflect kernels, exchange the
    /// monomials and negate.
    pub fn swapped(&self) -> Self {
        let mut r = Self::zero();
        for (key, v) in &self.terms {
            for (a, c) in key.atom.reflected().terms() {
                r.add_term(TermKey { atom: *a, z: key.w.clone(), w: key.z.clone() }, &-&(v * c));
            }
        }
        r
    }

    /// Normal form: kernels rewritten over `φ̃(w/z)` and `δ(q^a w/z)`
    /// (first-class r-matrix only, when `first_class` is set), and every
    /// `z`-factor of a `δ(q^a w/z)` term moved to `w` using `z = q^a w`.
    pub fn normal_form(&self, first_class: bool) -> Self {
        let mut r = Self::zero();
        for (key, v) in &self.terms {
            let kernel = if first_class {
                KernelExpr::atom(key.atom).first_class_normal_form()
            } else {
                KernelExpr::atom(key.atom)
            };
            for (a, c) in kernel.terms() {
                let coeff = v * c;
                match *a {
                    KernelAtom::Delta(shift) => {
                        let w = key.w.mul(&key.z.shifted(shift));
                        r.add_term(TermKey { atom: *a, z: LoopMonomial::one(), w }, &coeff);
                    }
                    _ => r.add_term(TermKey { atom: *a, z: key.z.clone(), w: key.w.clone() }, &coeff),
                }
            }
        }
        r
    }

    /// Substitute a family by a series polynomial on both sides.
    pub fn substitute(&self, kind: GenKind, value: &SeriesPoly) -> Result<Self> {
        let mut r = Self::zero();
        for (key, v) in &self.terms {
            let zs = substitute_monomial(&key.z, kind, value)?;
            let ws = substitute_monomial(&key.w, kind, value)?;
            for (zm, zc) in zs.terms() {
                for (wm, wc) in ws.terms() {
                    r.add_term(TermKey { atom: key.atom, z: zm.clone(), w: wm.clone() }, &(&(v * zc) * wc));
                }
            }
        }
        Ok(r)
    }

    /// `κ ⊗ Z(z) W(w)` from a kernel and two series polynomials.
    pub fn from_kernel_product(kernel: &KernelExpr, z: &SeriesPoly, w: &SeriesPoly) -> Self {
        let mut r = Self::zero();
        for (a, ka) in kernel.terms() {
            for (zm, zc) in z.terms() {
                for (wm, wc) in w.terms() {
                    r.add_term(TermKey { atom: *a, z: zm.clone(), w: wm.clone() }, &(&(ka * zc) * wc));
                }
            }
        }
        r
    }

    /// The mode bracket `{f_m, g_p}` at a point: for each term,
    /// `c Σ_n κ(n) ζ_{m-n} ω_{p+n}` where `ζ`, `ω` are the modes of the
    /// two monomials. Only finitely many `n` contribute.
    pub fn eval_modes(&self, spec: &RMatrixSpec, m: i64, p: i64, values: &PointValues) -> Result<Rf> {
        let mut total = Rf::zero();
        let mut cache: BTreeMap<LoopMonomial, LaurentPoly> = BTreeMap::new();
        for (key, v) in &self.terms {
            for mono in [&key.z, &key.w] {
                if !cache.contains_key(mono) {
                    cache.insert(mono.clone(), mono.evaluate(values)?);
                }
            }
            let zeta = &cache[&key.z];
            let omega = &cache[&key.w];
            for (e, zc) in zeta.terms() {
                let n = m + e;
                if let Some(wc) = omega.coeff_ref(-(p + n)) {
                    let k = key.atom.coefficient(n, spec);
                    if !k.is_zero() {
                        total = &total + &(&(v * &k) * &(zc * wc));
                    }
                }
            }
        }
        Ok(total)
    }

    /// Families appearing anywhere in the rule.
    pub fn families(&self) -> BTreeSet<GenKind> {
        self.terms.keys().flat_map(|k| k.z.factors().iter().chain(k.w.factors()).map(|(f, _)| f.kind)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| {
                    serde_json::json!({
                        "kernel": k.atom.to_string(),
                        "coefficient": c.render(),
                        "z": format!("{}", DisplayMono(&k.z, "z")),
                        "w": format!("{}", DisplayMono(&k.w, "w")),
                    })
                })
                .collect(),
        )
    }
}

struct DisplayMono<'a>(&'a LoopMonomial, &'a str);

impl fmt::Display for DisplayMono<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.render(self.1, f)
    }
}

impl fmt::Display for BracketRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({c}) {} {} {}", k.atom, DisplayMono(&k.z, "z"), DisplayMono(&k.w, "w")))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Leibniz extension: `{F(z), G(w)}` for series polynomials `F`, `G`, given
/// the bracket rule of every ordered pair of families.
pub fn leibniz<R>(f: &SeriesPoly, g: &SeriesPoly, rule: R) -> Result<BracketRule>
where
    R: Fn(GenKind, GenKind) -> Result<BracketRule>,
{
    let mut out = BracketRule::zero();
    for (fm, fc) in f.terms() {
        for (gm, gc) in g.terms() {
            let coeff = fc * gc;
            // d(X^e) = e X^{e-1} dX, including negative e
            for (i, &(ff, fe)) in fm.factors().iter().enumerate() {
                for (j, &(gf, ge)) in gm.factors().iter().enumerate() {
                    let base = rule(ff.kind, gf.kind)?.at_shifts(ff.shift, gf.shift);
                    let z_rest = fm.without_one(i);
                    let w_rest = gm.without_one(j);
                    let weight = &coeff * &Rf::from_int(fe as i64 * ge as i64);
                    out = out.add(&base.mul_monomials(&z_rest, &w_rest).scale(&weight));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_twice_is_identity() {
        let r = BracketRule::term(Rf::one(), KernelAtom::Phi(1), LoopMonomial::of(GenKind::A), LoopMonomial::of(GenKind::D));
        assert_eq!(r.swapped().swapped(), r);
    }

    #[test]
    fn delta_terms_localize() {
        // δ(qw/z) X(z) Y(w)  ->  δ(qw/z) X(wq) Y(w)
        let r = BracketRule::term(Rf::one(), KernelAtom::Delta(1), LoopMonomial::of(GenKind::A), LoopMonomial::of(GenKind::B));
        let nf = r.normal_form(true);
        let expected = BracketRule::term(
            Rf::one(),
            KernelAtom::Delta(1),
            LoopMonomial::one(),
            LoopMonomial::factor(GenKind::A, 1, 1).mul(&LoopMonomial::of(GenKind::B)),
        );
        assert_eq!(nf, expected);
    }
}
