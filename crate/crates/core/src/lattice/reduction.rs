//! Reduction of the twisted lattice bracket to the discrete Virasoro
//! algebra, its free-field (Miura) realization, and the FTV variables.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{rat, Gen, GenKind, LatticePolynomial, RationalExpr};
use crate::error::{Error, Result};

use super::bracket::{
    derive_lattice_table, discrete_virasoro_table, heisenberg_table, nu_table, poisson_bracket, LatticeBracketTable,
};
use super::phi::{solve_first_class_lattice, wrap, LatticePhi};

/// Outcome of a symbolic sweep over generator pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pairs_checked: usize,
    /// `(n, m, residual)` for the pairs that failed, rendered.
    pub failures: Vec<(usize, usize, String)>,
}

impl IdentityCheck {
    fn new(name: &str) -> Self {
        IdentityCheck { name: name.into(), pairs_checked: 0, failures: Vec::new() }
    }

    fn record(&mut self, n: usize, m: usize, residual: &impl std::fmt::Display, is_zero: bool) {
        self.pairs_checked += 1;
        if !is_zero {
            self.failures.push((n, m, residual.to_string()));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.pairs_checked > 0
    }
}

fn var(kind: GenKind, site: i64, n: usize) -> LatticePolynomial {
    LatticePolynomial::gen(kind, wrap(site, n))
}

fn gen(kind: GenKind, site: i64, n: usize) -> Gen {
    Gen::new(kind, wrap(site, n))
}

fn indicator(hit: bool) -> LatticePolynomial {
    if hit {
        LatticePolynomial::one()
    } else {
        LatticePolynomial::zero()
    }
}

fn same(a: i64, b: i64, n: usize) -> bool {
    wrap(a - b, n) == 0
}

fn require_odd(n: usize, min: usize) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::OddNRequired(n));
    }
    if n < min {
        return Err(Error::NOutOfRange(format!("N = {n}; need N >= {min}")));
    }
    Ok(())
}

/// `t̃_n = a_n c_{n+1} + d_{n+1} c_n`.
pub fn wt_t(site: i64, n: usize) -> LatticePolynomial {
    &(&var(GenKind::A, site, n) * &var(GenKind::C, site + 1, n)) + &(&var(GenKind::D, site + 1, n) * &var(GenKind::C, site, n))
}

/// `b_k ↦ (a_k d_k - 1) c_k^{-1}` for every site.
fn eliminate_b(n: usize) -> BTreeMap<Gen, LatticePolynomial> {
    (0..n as i64)
        .map(|k| {
            let ad = &var(GenKind::A, k, n) * &var(GenKind::D, k, n);
            let inv_c = LatticePolynomial::var_pow(gen(GenKind::C, k, n), -1);
            (gen(GenKind::B, k, n), &(&ad - &LatticePolynomial::one()) * &inv_c)
        })
        .collect()
}

/// Right-hand side of the `t̃` bracket:
/// `φ̂_{n-m} t̃_n t̃_m + δ_{n,m+1} c_m c_{m+2} - δ_{n+1,m} c_n c_{n+2}`.
pub fn wt_t_rhs(phi: &LatticePhi, a: i64, b: i64) -> LatticePolynomial {
    let n = phi.n();
    let c = |k| var(GenKind::C, k, n);
    let mut out = (&wt_t(a, n) * &wt_t(b, n)).scale(&phi.hat(a - b));
    if same(a, b + 1, n) {
        out = &out + &(&c(b) * &c(b + 2));
    }
    if same(a + 1, b, n) {
        out = &out - &(&c(a) * &c(a + 2));
    }
    out
}

/// Record of the discrete reduction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionRecord {
    pub n: usize,
    pub wt_t_bracket: IdentityCheck,
    pub wt_t_c: IdentityCheck,
    pub c_c: IdentityCheck,
    /// Reduced brackets that are not expressible in `t_k = a_k + d_{k+1}`
    /// or differ from the discrete Virasoro table.
    pub reduced_mismatches: Vec<(usize, usize, String)>,
    #[serde(skip)]
    pub reduced_table: LatticeBracketTable,
}

impl ReductionRecord {
    pub fn passed(&self) -> bool {
        self.wt_t_bracket.passed() && self.wt_t_c.passed() && self.c_c.passed() && self.reduced_mismatches.is_empty()
    }
}

/// Verifies the `t̃` bracket, `{t̃, c} = 0` and `{c, c} = 0` in the
/// coordinate ring (eliminating `b` on `c ≠ 0`), then restricts to
/// `c = -1` and rewrites in `t_k = a_k + d_{k+1}`.
pub fn reduce_discrete_virasoro(n: usize) -> Result<ReductionRecord> {
    require_odd(n, 3)?;
    let phi = solve_first_class_lattice(n)?;
    let table = derive_lattice_table(&phi)?;
    reduce_with_table(&phi, &table)
}

/// The reduction for an arbitrary coordinate table (used by negative
/// controls).
pub fn reduce_with_table(phi: &LatticePhi, table: &LatticeBracketTable) -> Result<ReductionRecord> {
    let n = phi.n();
    let elim = eliminate_b(n);
    let none = BTreeSet::new();
    let on_ring = |p: &LatticePolynomial| p.substitute_all(&elim);
    let mut wt_t_bracket = IdentityCheck::new("{wt_t_n, wt_t_m}");
    let mut wt_t_c = IdentityCheck::new("{wt_t_n, c_m}");
    let mut c_c = IdentityCheck::new("{c_n, c_m}");
    let mut reduced_table = LatticeBracketTable::new(n);
    let mut reduced_mismatches = Vec::new();
    let target = discrete_virasoro_table(phi);

    // c_k = -1, b_k = 1 - a_k d_k, then a_k = t_k - d_{k+1}.
    let mut surface: BTreeMap<Gen, LatticePolynomial> = BTreeMap::new();
    for k in 0..n as i64 {
        surface.insert(gen(GenKind::C, k, n), LatticePolynomial::from_int(-1));
        surface.insert(gen(GenKind::B, k, n), &LatticePolynomial::one() - &(&var(GenKind::A, k, n) * &var(GenKind::D, k, n)));
    }
    let to_t: BTreeMap<Gen, LatticePolynomial> = (0..n as i64)
        .map(|k| (gen(GenKind::A, k, n), &var(GenKind::T, k, n) - &var(GenKind::D, k + 1, n)))
        .collect();

    for a in 0..n {
        for b in 0..n {
            let (a_, b_) = (a as i64, b as i64);
            let bracket = poisson_bracket(&wt_t(a_, n), &wt_t(b_, n), table, &none)?;
            let diff = on_ring(&(&bracket - &wt_t_rhs(phi, a_, b_)))?;
            wt_t_bracket.record(a, b, &diff, diff.is_zero());

            let tc = on_ring(&poisson_bracket(&wt_t(a_, n), &var(GenKind::C, b_, n), table, &none)?)?;
            wt_t_c.record(a, b, &tc, tc.is_zero());

            let cc = on_ring(&poisson_bracket(&var(GenKind::C, a_, n), &var(GenKind::C, b_, n), table, &none)?)?;
            c_c.record(a, b, &cc, cc.is_zero());

            let reduced = bracket.substitute_all(&surface)?.substitute_all(&to_t)?;
            let leftover = reduced.gens().iter().any(|g| g.kind != GenKind::T);
            let expected = target.get(gen(GenKind::T, a_, n), gen(GenKind::T, b_, n));
            if leftover || reduced != expected {
                reduced_mismatches.push((a, b, reduced.to_string()));
            }
            reduced_table.set(gen(GenKind::T, a_, n), gen(GenKind::T, b_, n), reduced);
        }
    }
    Ok(ReductionRecord { n, wt_t_bracket, wt_t_c, c_c, reduced_mismatches, reduced_table })
}

/// `t_n = λ_n + λ_{n+1}^{-1}`.
pub fn discrete_miura(site: i64, n: usize) -> LatticePolynomial {
    &var(GenKind::Lambda, site, n) + &LatticePolynomial::var_pow(gen(GenKind::Lambda, site + 1, n), -1)
}

fn miura_map(n: usize) -> BTreeMap<Gen, LatticePolynomial> {
    (0..n as i64).map(|k| (gen(GenKind::T, k, n), discrete_miura(k, n))).collect()
}

fn lambdas(n: usize) -> BTreeSet<Gen> {
    (0..n).map(|k| Gen::new(GenKind::Lambda, k)).collect()
}

/// Pushes the free-field bracket forward along `t_n = λ_n + λ_{n+1}^{-1}`
/// and compares with the discrete Virasoro table for every pair.
pub fn discrete_miura_check(n: usize) -> Result<IdentityCheck> {
    require_odd(n, 3)?;
    let phi = solve_first_class_lattice(n)?;
    let heis = heisenberg_table(&phi);
    let vir = discrete_virasoro_table(&phi);
    let map = miura_map(n);
    let inv = lambdas(n);
    let mut check = IdentityCheck::new("miura: {t_n, t_m} from {λ, λ}");
    for a in 0..n {
        for b in 0..n {
            let (a_, b_) = (a as i64, b as i64);
            let lhs = poisson_bracket(&discrete_miura(a_, n), &discrete_miura(b_, n), &heis, &inv)?;
            let rhs = vir.get(gen(GenKind::T, a_, n), gen(GenKind::T, b_, n)).substitute_all(&map)?;
            let diff = &lhs - &rhs;
            check.record(a, b, &diff, diff.is_zero());
        }
    }
    Ok(check)
}

/// `ν_n = λ_n λ_{n+1}` pushed forward from the free-field bracket.
pub fn nu_from_heisenberg_check(n: usize) -> Result<IdentityCheck> {
    require_odd(n, 3)?;
    let phi = solve_first_class_lattice(n)?;
    let heis = heisenberg_table(&phi);
    let nus = nu_table(n);
    let nu = |k: i64| &var(GenKind::Lambda, k, n) * &var(GenKind::Lambda, k + 1, n);
    let map: BTreeMap<Gen, LatticePolynomial> = (0..n as i64).map(|k| (gen(GenKind::Nu, k, n), nu(k))).collect();
    let mut check = IdentityCheck::new("{ν_n, ν_m} from {λ, λ}");
    for a in 0..n {
        for b in 0..n {
            let (a_, b_) = (a as i64, b as i64);
            let lhs = poisson_bracket(&nu(a_), &nu(b_), &heis, &BTreeSet::new())?;
            let rhs = nus.get(gen(GenKind::Nu, a_, n), gen(GenKind::Nu, b_, n)).substitute_all(&map)?;
            let diff = &lhs - &rhs;
            check.record(a, b, &diff, diff.is_zero());
        }
    }
    Ok(check)
}

/// `t^{(2)}_n = t_n t_{n+1} - 1`.
pub fn t2(site: i64, n: usize) -> LatticePolynomial {
    &(&var(GenKind::T, site, n) * &var(GenKind::T, site + 1, n)) - &LatticePolynomial::one()
}

/// `(δ_{n+1,m} - δ_{n,m+1})(t2_n t2_m - 1) + δ_{n,m+2} t_m t_{m+3} - δ_{n+2,m} t_n t_{n+3}`.
pub fn t2_rhs(a: i64, b: i64, n: usize) -> LatticePolynomial {
    let t = |k| var(GenKind::T, k, n);
    let sign = &indicator(same(a + 1, b, n)) - &indicator(same(a, b + 1, n));
    let mut out = &sign * &(&(&t2(a, n) * &t2(b, n)) - &LatticePolynomial::one());
    if same(a, b + 2, n) {
        out = &out + &(&t(b) * &t(b + 3));
    }
    if same(a + 2, b, n) {
        out = &out - &(&t(a) * &t(a + 3));
    }
    out
}

/// `s_n s_m ((δ_{n+1,m} - δ_{n,m+1})(1 - s_n - s_m) - s_{n+1} δ_{n+2,m} + s_{m+1} δ_{n,m+2})`
/// with `s` supplied by the caller.
pub fn fad_rhs(s: &dyn Fn(i64) -> RationalExpr, a: i64, b: i64, n: usize) -> RationalExpr {
    let sign = i64::from(same(a + 1, b, n)) - i64::from(same(a, b + 1, n));
    let mut inner = RationalExpr::zero();
    if sign != 0 {
        inner = (&(&RationalExpr::one() - &s(a)) - &s(b)).scale(&rat(sign));
    }
    if same(a + 2, b, n) {
        inner = &inner - &s(a + 1);
    }
    if same(a, b + 2, n) {
        inner = &inner + &s(b + 1);
    }
    &(&s(a) * &s(b)) * &inner
}

/// Record of the FTV chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FtvRecord {
    pub n: usize,
    pub t2_bracket: IdentityCheck,
    pub s_identities: IdentityCheck,
    pub fad_t_route: IdentityCheck,
    pub fad_nu_route: IdentityCheck,
}

impl FtvRecord {
    pub fn passed(&self) -> bool {
        self.t2_bracket.passed() && self.s_identities.passed() && self.fad_t_route.passed() && self.fad_nu_route.passed()
    }
}

/// `s_n = 1/(t_n t_{n+1})`.
pub fn s_from_t(site: i64, n: usize) -> RationalExpr {
    RationalExpr::from_poly(&var(GenKind::T, site, n) * &var(GenKind::T, site + 1, n)).inv().expect("nonzero monomial")
}

/// `s_n = 1/((1 + ν_n)(1 + ν_{n+1}^{-1})) = ν_{n+1}/((1 + ν_n)(1 + ν_{n+1}))`.
pub fn s_from_nu(site: i64, n: usize) -> RationalExpr {
    let one = LatticePolynomial::one();
    let den = &(&one + &var(GenKind::Nu, site, n)) * &(&one + &var(GenKind::Nu, site + 1, n));
    RationalExpr::new(var(GenKind::Nu, site + 1, n), den).expect("nonzero denominator")
}

/// Verifies the `t^{(2)}` bracket, the two expressions of `s_n`, and the
/// FTV bracket along the `t` and `ν` routes, for every pair.
pub fn ftv_chain(n: usize) -> Result<FtvRecord> {
    require_odd(n, 5)?;
    let phi = solve_first_class_lattice(n)?;
    let vir = discrete_virasoro_table(&phi);
    let nus = nu_table(n);
    let none = BTreeSet::new();
    let nu_gens: BTreeSet<Gen> = (0..n).map(|k| Gen::new(GenKind::Nu, k)).collect();
    let t_gens: BTreeSet<Gen> = (0..n).map(|k| Gen::new(GenKind::T, k)).collect();

    let mut t2_bracket = IdentityCheck::new("{t2_n, t2_m}");
    let mut fad_t_route = IdentityCheck::new("fad via t");
    let mut fad_nu_route = IdentityCheck::new("fad via ν");
    for a in 0..n {
        for b in 0..n {
            let (a_, b_) = (a as i64, b as i64);
            let lhs = poisson_bracket(&t2(a_, n), &t2(b_, n), &vir, &none)?;
            let diff = &lhs - &t2_rhs(a_, b_, n);
            t2_bracket.record(a, b, &diff, diff.is_zero());

            let st = |k| s_from_t(k, n);
            let lhs = poisson_bracket(&st(a_), &st(b_), &vir, &t_gens)?;
            let diff = &lhs - &fad_rhs(&st, a_, b_, n);
            fad_t_route.record(a, b, &diff, diff.is_zero());

            let sn = |k| s_from_nu(k, n);
            let lhs = poisson_bracket(&sn(a_), &sn(b_), &nus, &nu_gens)?;
            let diff = &lhs - &fad_rhs(&sn, a_, b_, n);
            fad_nu_route.record(a, b, &diff, diff.is_zero());
        }
    }

    // s_n = 1/(1 + t2_n) = 1/(t_n t_{n+1}) = 1/((1+ν_n)(1+ν_{n+1}^{-1})) on the Miura image.
    let mut s_identities = IdentityCheck::new("s_n expressions");
    let nu_to_lambda: BTreeMap<Gen, LatticePolynomial> = (0..n as i64)
        .map(|k| (gen(GenKind::Nu, k, n), &var(GenKind::Lambda, k, n) * &var(GenKind::Lambda, k + 1, n)))
        .collect();
    for a in 0..n {
        let a_ = a as i64;
        let via_t2 = RationalExpr::from_poly(&LatticePolynomial::one() + &t2(a_, n)).inv()?;
        let first = (&via_t2 - &s_from_t(a_, n)).is_zero();
        let lhs = RationalExpr::new(LatticePolynomial::one(), &discrete_miura(a_, n) * &discrete_miura(a_ + 1, n))?;
        let rhs = s_from_nu(a_, n).substitute_all(&nu_to_lambda)?;
        let diff = &lhs - &rhs;
        s_identities.record(a, a, &diff, first && diff.is_zero());
    }
    Ok(FtvRecord { n, t2_bracket, s_identities, fad_t_route, fad_nu_route })
}

/// `t_k = a_k + d_{k+1}` and `t̃_k` agree up to sign on `c = -1`.
pub fn canonical_t_matches_wt_t(n: usize) -> Result<bool> {
    let surface: BTreeMap<Gen, LatticePolynomial> =
        (0..n).map(|k| (Gen::new(GenKind::C, k), LatticePolynomial::from_int(-1))).collect();
    for k in 0..n as i64 {
        let t = &var(GenKind::A, k, n) + &var(GenKind::D, k + 1, n);
        if wt_t(k, n).substitute_all(&surface)? != -t {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_site_reduction() {
        let rec = reduce_discrete_virasoro(3).unwrap();
        assert!(rec.wt_t_bracket.passed(), "{:?}", rec.wt_t_bracket.failures);
        assert!(rec.wt_t_c.passed(), "{:?}", rec.wt_t_c.failures);
        assert!(rec.c_c.passed(), "{:?}", rec.c_c.failures);
        assert!(rec.reduced_mismatches.is_empty(), "{:?}", rec.reduced_mismatches);
        let t01 = rec.reduced_table.get(Gen::new(GenKind::T, 0), Gen::new(GenKind::T, 1));
        let expected = &(&LatticePolynomial::gen(GenKind::T, 0) * &LatticePolynomial::gen(GenKind::T, 1)) - &LatticePolynomial::one();
        assert_eq!(t01, expected);
        assert!(matches!(reduce_discrete_virasoro(4), Err(Error::OddNRequired(4))));
    }

    #[test]
    fn miura_three_sites() {
        let check = discrete_miura_check(3).unwrap();
        assert!(check.passed(), "{:?}", check.failures);
        assert!(nu_from_heisenberg_check(5).unwrap().passed());
    }

    #[test]
    fn ftv_five_sites() {
        let rec = ftv_chain(5).unwrap();
        assert!(rec.passed(), "{rec:?}");
        assert!(matches!(ftv_chain(3), Err(Error::NOutOfRange(_))));
    }

    #[test]
    fn canonical_coordinates() {
        assert!(canonical_t_matches_wt_t(5).unwrap());
    }
}
