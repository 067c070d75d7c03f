//! Generator bracket tables on `SL2^N` and their Leibniz extension.
//!
//! The twisted table comes from
//!
//! `{φ,ψ} = ½⟨r, ∇φ∧∇ψ⟩ + ½⟨r, ∇'φ∧∇'ψ⟩ - ⟨r^τ, ∇'φ⊗∇ψ⟩ + ⟨r^τ, ∇'ψ⊗∇φ⟩`
//!
//! with the pairing `Σ_k tr(X_k Y_k)` and gradients supported at the site
//! of the coordinate. For `τ(g)_k = g_{k+1}` the shift enters the pairing
//! as `r^τ = (id ⊗ τ) r = (τ^{-1} ⊗ id) r`; with that orientation the
//! twisted conjugation `(g, x) ↦ τ(g) x g^{-1}` is a Poisson map (checked
//! in [`super::checks`]) and the constraints `c_k` are first class. The
//! Sklyanin table uses `½⟨r, ∇φ∧∇ψ⟩ - ½⟨r, ∇'φ∧∇'ψ⟩`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{rat, Gen, GenKind, LatticePolynomial, RationalExpr};
use crate::error::{Error, Result};

use super::phi::{wrap, LatticePhi};

/// A skew-symmetric assignment of brackets to pairs of generators.
pub trait BracketTable {
    fn bracket(&self, u: Gen, v: Gen) -> LatticePolynomial;
}

/// Explicit table; missing pairs are zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LatticeBracketTable {
    n: usize,
    entries: BTreeMap<(Gen, Gen), LatticePolynomial>,
}

impl BracketTable for LatticeBracketTable {
    fn bracket(&self, u: Gen, v: Gen) -> LatticePolynomial {
        self.get(u, v)
    }
}

impl LatticeBracketTable {
    pub fn new(n: usize) -> Self {
        LatticeBracketTable { n, entries: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets `{u, v} = p` without touching `{v, u}`.
    pub fn set(&mut self, u: Gen, v: Gen, p: LatticePolynomial) {
        if p.is_zero() {
            self.entries.remove(&(u, v));
        } else {
            self.entries.insert((u, v), p);
        }
    }

    /// Sets `{u, v} = p` and `{v, u} = -p`.
    pub fn insert(&mut self, u: Gen, v: Gen, p: LatticePolynomial) {
        self.set(v, u, -&p);
        self.set(u, v, p);
    }

    pub fn get(&self, u: Gen, v: Gen) -> LatticePolynomial {
        self.entries.get(&(u, v)).cloned().unwrap_or_else(LatticePolynomial::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Gen, Gen), &LatticePolynomial)> {
        self.entries.iter()
    }

    /// Pairs whose entries fail `{u, v} = -{v, u}`.
    pub fn antisymmetry_defects(&self) -> Vec<(Gen, Gen)> {
        self.entries
            .iter()
            .filter(|((u, v), p)| &self.get(*v, *u) != &-*p)
            .map(|(k, _)| *k)
            .collect()
    }

    /// Pairs where relabeling every site by `+1` does not map the table to
    /// itself.
    pub fn shift_covariance_defects(&self) -> Result<Vec<(Gen, Gen)>> {
        let mut bad = Vec::new();
        let keys: BTreeSet<(Gen, Gen)> = self.entries.keys().copied().collect();
        let moved: BTreeSet<(Gen, Gen)> = keys.iter().map(|(u, v)| (shift_gen(*u, 1, self.n), shift_gen(*v, 1, self.n))).collect();
        for (u, v) in keys.union(&moved) {
            let (pu, pv) = (shift_gen(*u, -1, self.n), shift_gen(*v, -1, self.n));
            if shift_sites(&self.get(pu, pv), 1, self.n)? != self.get(*u, *v) {
                bad.push((*u, *v));
            }
        }
        Ok(bad)
    }

    /// Entries with the second factor's sites offset by `offset`.
    pub fn merged_with(&self, other: &LatticeBracketTable, offset: usize) -> Result<LatticeBracketTable> {
        let mut out = self.clone();
        out.n = offset + other.n;
        let map: BTreeMap<Gen, LatticePolynomial> = all_gens_in(other)
            .into_iter()
            .map(|g| (g, LatticePolynomial::var(Gen::new(g.kind, g.site + offset))))
            .collect();
        for ((u, v), p) in &other.entries {
            let lift = |g: &Gen| Gen::new(g.kind, g.site + offset);
            out.set(lift(u), lift(v), p.substitute_all(&map)?);
        }
        Ok(out)
    }
}

fn all_gens_in(t: &LatticeBracketTable) -> BTreeSet<Gen> {
    let mut s = BTreeSet::new();
    for ((u, v), p) in &t.entries {
        s.insert(*u);
        s.insert(*v);
        s.extend(p.gens());
    }
    s
}

pub fn shift_gen(g: Gen, k: i64, n: usize) -> Gen {
    Gen::new(g.kind, wrap(g.site as i64 + k, n))
}

/// Relabels every generator site by `+k (mod N)`.
pub fn shift_sites(p: &LatticePolynomial, k: i64, n: usize) -> Result<LatticePolynomial> {
    let map: BTreeMap<Gen, LatticePolynomial> =
        p.gens().into_iter().map(|g| (g, LatticePolynomial::var(shift_gen(g, k, n)))).collect();
    p.substitute_all(&map)
}

/// Something the Leibniz extension can act on.
pub trait PoissonOperand: Sized + Clone {
    fn operand_gens(&self) -> BTreeSet<Gen>;
    fn partial(&self, g: Gen) -> Self;
    fn times_poly(&self, p: &LatticePolynomial) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn zero_like() -> Self;
    fn inverted(&self) -> BTreeSet<Gen>;
}

impl PoissonOperand for LatticePolynomial {
    fn operand_gens(&self) -> BTreeSet<Gen> {
        self.gens()
    }
    fn partial(&self, g: Gen) -> Self {
        self.derivative(g)
    }
    fn times_poly(&self, p: &LatticePolynomial) -> Self {
        self * p
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn zero_like() -> Self {
        LatticePolynomial::zero()
    }
    fn inverted(&self) -> BTreeSet<Gen> {
        self.inverted_gens()
    }
}

impl PoissonOperand for RationalExpr {
    fn operand_gens(&self) -> BTreeSet<Gen> {
        self.gens()
    }
    fn partial(&self, g: Gen) -> Self {
        self.derivative(g)
    }
    fn times_poly(&self, p: &LatticePolynomial) -> Self {
        self * &RationalExpr::from_poly(p.clone())
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn zero_like() -> Self {
        RationalExpr::zero()
    }
    fn inverted(&self) -> BTreeSet<Gen> {
        let mut s = self.numer().inverted_gens();
        s.extend(self.denom().inverted_gens());
        s
    }
}

/// `{f, g} = Σ_{u,v} ∂f/∂u ∂g/∂v {u, v}`. Every generator carrying a
/// negative exponent must be in `invertible`; for such a generator this is
/// the rule `{x^{-1}, y} = -x^{-2}{x, y}`.
pub fn poisson_bracket<P: PoissonOperand, T: BracketTable>(
    f: &P,
    g: &P,
    table: &T,
    invertible: &BTreeSet<Gen>,
) -> Result<P> {
    for x in f.inverted().union(&g.inverted()) {
        if !invertible.contains(x) {
            return Err(Error::UndeclaredInverse(x.to_string()));
        }
    }
    let fg: Vec<(Gen, P)> = f.operand_gens().into_iter().map(|u| (u, f.partial(u))).collect();
    let gg: Vec<(Gen, P)> = g.operand_gens().into_iter().map(|v| (v, g.partial(v))).collect();
    let mut total = P::zero_like();
    for (u, fu) in &fg {
        for (v, gv) in &gg {
            let uv = table.bracket(*u, *v);
            if uv.is_zero() {
                continue;
            }
            total = total.plus(&fu.times(gv).times_poly(&uv));
        }
    }
    Ok(total)
}

/// Position `(row, column)` of a matrix-entry family.
pub fn entry_position(kind: GenKind) -> Result<(usize, usize)> {
    match kind {
        GenKind::A => Ok((0, 0)),
        GenKind::B => Ok((0, 1)),
        GenKind::C => Ok((1, 0)),
        GenKind::D => Ok((1, 1)),
        other => Err(Error::InvalidConfig(format!("{} is not a matrix entry", other.symbol()))),
    }
}

fn entry_at(i: usize, j: usize) -> GenKind {
    GenKind::ENTRIES[2 * i + j]
}

type Grad = [[LatticePolynomial; 2]; 2];

/// Gradient of the coordinate `x_ij` at its site, projected to `sl2`.
/// Left: column `i` of the result is column `j` of `x`. Right: row `j`
/// of the result is row `i` of `x`.
fn gradient(kind: GenKind, site: usize, left: bool) -> Result<Grad> {
    let (i, j) = entry_position(kind)?;
    let var = |r, c| LatticePolynomial::gen(entry_at(r, c), site);
    let mut g: Grad = Default::default();
    for l in 0..2 {
        if left {
            g[l][i] = var(l, j);
        } else {
            g[j][l] = var(i, l);
        }
    }
    let half_trace = (&g[0][0] + &g[1][1]).scale(&BigRational::new(1.into(), 2.into()));
    g[0][0] = &g[0][0] - &half_trace;
    g[1][1] = &g[1][1] - &half_trace;
    Ok(g)
}

/// `⟨(τ^twist ⊗ id) r, X ⊗ Y⟩` for `X` at site `p` and `Y` at site `s`.
/// `τ^t E_n = E_{n-t}`, so the `E⊗F` part needs `p + t = s`, and the
/// Cartan part is `φ_{p+t-s} X_11 Y_11`.
fn pair(x: &Grad, p: usize, y: &Grad, s: usize, twist: i64, phi: &LatticePhi) -> LatticePolynomial {
    let n = phi.n();
    let d = p as i64 + twist - s as i64;
    let mut out = &(&x[0][0] * &y[0][0]) * &LatticePolynomial::constant(phi.get(d).clone());
    if wrap(d, n) == 0 {
        out = &out + &(&x[1][0] * &y[0][1]);
    }
    out
}

fn wedge(x: &Grad, p: usize, y: &Grad, s: usize, phi: &LatticePhi) -> LatticePolynomial {
    &pair(x, p, y, s, 0, phi) - &pair(y, s, x, p, 0, phi)
}

fn all_coordinates(n: usize) -> Vec<Gen> {
    (0..n).flat_map(|s| GenKind::ENTRIES.map(|k| Gen::new(k, s))).collect()
}

fn build_table(phi: &LatticePhi, entry: impl Fn(Gen, Gen) -> Result<LatticePolynomial>) -> Result<LatticeBracketTable> {
    let mut t = LatticeBracketTable::new(phi.n());
    for u in all_coordinates(phi.n()) {
        for v in all_coordinates(phi.n()) {
            t.set(u, v, entry(u, v)?);
        }
    }
    Ok(t)
}

/// The twisted bracket on the coordinates `a_k, b_k, c_k, d_k` with
/// `r^τ = (τ^twist ⊗ id) r`.
pub fn derive_lattice_table_twisted(phi: &LatticePhi, twist: i64) -> Result<LatticeBracketTable> {
    let half = BigRational::new(1.into(), 2.into());
    build_table(phi, |u, v| {
        let (gl, gr) = (gradient(u.kind, u.site, true)?, gradient(u.kind, u.site, false)?);
        let (hl, hr) = (gradient(v.kind, v.site, true)?, gradient(v.kind, v.site, false)?);
        let (p, s) = (u.site, v.site);
        let sym = &wedge(&gl, p, &hl, s, phi) + &wedge(&gr, p, &hr, s, phi);
        let twisted = &pair(&gr, p, &hl, s, twist, phi) - &pair(&hr, s, &gl, p, twist, phi);
        Ok(&sym.scale(&half) - &twisted)
    })
}

/// Power of the site shift in `r^τ` for `τ(g)_k = g_{k+1}`.
pub const LATTICE_TWIST: i64 = -1;

/// The twisted bracket for `τ(g)_k = g_{k+1}`.
pub fn derive_lattice_table(phi: &LatticePhi) -> Result<LatticeBracketTable> {
    derive_lattice_table_twisted(phi, LATTICE_TWIST)
}

/// The Sklyanin bracket, used on the gauge-group factor.
pub fn sklyanin_table(phi: &LatticePhi) -> Result<LatticeBracketTable> {
    let half = BigRational::new(1.into(), 2.into());
    build_table(phi, |u, v| {
        let (gl, gr) = (gradient(u.kind, u.site, true)?, gradient(u.kind, u.site, false)?);
        let (hl, hr) = (gradient(v.kind, v.site, true)?, gradient(v.kind, v.site, false)?);
        let (p, s) = (u.site, v.site);
        Ok((&wedge(&gl, p, &hl, s, phi) - &wedge(&gr, p, &hr, s, phi)).scale(&half))
    })
}

fn delta(a: i64, b: i64, n: usize) -> bool {
    wrap(a - b, n) == 0
}

/// `{λ_n, λ_m} = φ̂_{n-m} λ_n λ_m`.
pub fn heisenberg_table(phi: &LatticePhi) -> LatticeBracketTable {
    let n = phi.n();
    let mut t = LatticeBracketTable::new(n);
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (Gen::new(GenKind::Lambda, a), Gen::new(GenKind::Lambda, b));
            let p = &LatticePolynomial::var(x) * &LatticePolynomial::var(y);
            t.set(x, y, p.scale(&phi.hat(a as i64 - b as i64)));
        }
    }
    t
}

/// `{t_n, t_m} = φ̂_{n-m} t_n t_m + δ_{n,m+1} - δ_{n+1,m}`.
pub fn discrete_virasoro_table(phi: &LatticePhi) -> LatticeBracketTable {
    let n = phi.n();
    let mut t = LatticeBracketTable::new(n);
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (Gen::new(GenKind::T, a), Gen::new(GenKind::T, b));
            let (a_, b_) = (a as i64, b as i64);
            let mut p = (&LatticePolynomial::var(x) * &LatticePolynomial::var(y)).scale(&phi.hat(a_ - b_));
            if delta(a_, b_ + 1, n) {
                p = &p + &LatticePolynomial::one();
            }
            if delta(a_ + 1, b_, n) {
                p = &p - &LatticePolynomial::one();
            }
            t.set(x, y, p);
        }
    }
    t
}

/// `{ν_n, ν_m} = (δ_{n+1,m} - δ_{n,m+1}) ν_n ν_m`.
pub fn nu_table(n: usize) -> LatticeBracketTable {
    let mut t = LatticeBracketTable::new(n);
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (Gen::new(GenKind::Nu, a), Gen::new(GenKind::Nu, b));
            let (a_, b_) = (a as i64, b as i64);
            let c = i64::from(delta(a_ + 1, b_, n)) - i64::from(delta(a_, b_ + 1, n));
            if c != 0 {
                t.set(x, y, (&LatticePolynomial::var(x) * &LatticePolynomial::var(y)).scale(&rat(c)));
            }
        }
    }
    t
}

/// Pairs of a derived table whose entry is not zero.
pub fn nonzero_pairs(t: &LatticeBracketTable) -> usize {
    t.entries().filter(|(_, p)| !p.is_zero()).count()
}

/// True when every entry is a homogeneous quadratic.
pub fn is_quadratic(t: &LatticeBracketTable) -> bool {
    t.entries().all(|(_, p)| p.terms().all(|(m, c)| c.is_zero() || m.factors().iter().map(|(_, e)| *e).sum::<i32>() == 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::phi::solve_first_class_lattice;

    #[test]
    fn gradients_are_directional_derivatives() {
        // d/dt x_ij(e^{tξ} x) = (ξx)_ij = tr(∇_L x_ij ξ); likewise x e^{tξ} on the right
        let x = [[rat(3), rat(2)], [rat(4), rat(3)]];
        let point: BTreeMap<Gen, BigRational> =
            (0..4).map(|k| (Gen::new(GenKind::ENTRIES[k], 1), x[k / 2][k % 2].clone())).collect();
        let basis = [[[rat(0), rat(1)], [rat(0), rat(0)]], [[rat(1), rat(0)], [rat(0), rat(-1)]], [[rat(0), rat(0)], [rat(1), rat(0)]]];
        let prod = |a: &[[BigRational; 2]; 2], b: &[[BigRational; 2]; 2], i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        for kind in GenKind::ENTRIES {
            let (i, j) = entry_position(kind).unwrap();
            for xi in &basis {
                for left in [true, false] {
                    let grad = gradient(kind, 1, left).unwrap();
                    let pairing: BigRational = (0..2)
                        .flat_map(|l| (0..2).map(move |m| (l, m)))
                        .map(|(l, m)| grad[l][m].eval(&point).unwrap() * &xi[m][l])
                        .sum();
                    let expected = if left { prod(xi, &x, i, j) } else { prod(&x, xi, i, j) };
                    assert_eq!(pairing, expected, "{kind:?}, left = {left}");
                }
            }
        }
    }

    fn g(kind: GenKind, site: usize) -> Gen {
        Gen::new(kind, site)
    }

    #[test]
    fn derived_table_shape() {
        for n in [3, 4, 5] {
            let phi = solve_first_class_lattice(n).unwrap();
            for t in [derive_lattice_table(&phi).unwrap(), sklyanin_table(&phi).unwrap()] {
                assert!(t.antisymmetry_defects().is_empty());
                assert!(t.shift_covariance_defects().unwrap().is_empty());
                assert!(is_quadratic(&t));
            }
            let t = derive_lattice_table(&phi).unwrap();
            for a in 0..n {
                for b in 0..n {
                    assert!(t.get(g(GenKind::B, a), g(GenKind::B, b)).is_zero());
                }
            }
        }
    }

    #[test]
    fn self_bracket_and_undeclared_inverse() {
        let phi = solve_first_class_lattice(3).unwrap();
        let t = derive_lattice_table(&phi).unwrap();
        let f = &(&LatticePolynomial::gen(GenKind::A, 0) * &LatticePolynomial::gen(GenKind::C, 1))
            + &LatticePolynomial::gen(GenKind::D, 2);
        assert!(poisson_bracket(&f, &f, &t, &BTreeSet::new()).unwrap().is_zero());
        let inv = LatticePolynomial::var_pow(g(GenKind::A, 0), -1);
        assert_eq!(
            poisson_bracket(&inv, &f, &t, &BTreeSet::new()),
            Err(Error::UndeclaredInverse("a_0".into()))
        );
        let declared: BTreeSet<Gen> = [g(GenKind::A, 0)].into();
        let lhs = poisson_bracket(&inv, &f, &t, &declared).unwrap();
        let base = poisson_bracket(&LatticePolynomial::gen(GenKind::A, 0), &f, &t, &declared).unwrap();
        assert_eq!(lhs, -&(&LatticePolynomial::var_pow(g(GenKind::A, 0), -2) * &base));
    }
}
