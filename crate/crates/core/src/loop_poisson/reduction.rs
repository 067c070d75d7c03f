//! The gauge invariant `t̃`, the reduced bracket on the constraint surface
//! `c(s) = -1`, and the Miura map `λ -> λ(s) + λ(sq)^{-1}`.

use crate::algebra::{GenKind, LaurentPoly, RationalFunctionQ as Rf};
use crate::error::{Error, Result};

use super::bilocal::{leibniz, mode, BracketRule, LoopMonomial, PointValues, SeriesPoly};
use super::derive::hand_table;
use super::kernel::{KernelAtom, KernelExpr};
use super::point::LoopPoint;
use super::spec::{phi_tilde, RMatrixSpec};

/// `t̃(s) = a(s) c(sq) + d(sq) c(s)`.
pub fn wt_t(point: &LoopPoint) -> LaurentPoly {
    &(point.a() * &point.c().shift(1)) + &(&point.d().shift(1) * point.c())
}

/// `T̃(z) = A(z) C(zq) + D(zq) C(z)`.
pub fn wt_t_series() -> SeriesPoly {
    let ac = LoopMonomial::of(GenKind::A).mul(&LoopMonomial::factor(GenKind::C, 1, 1));
    let dc = LoopMonomial::factor(GenKind::D, 1, 1).mul(&LoopMonomial::of(GenKind::C));
    SeriesPoly::term(Rf::one(), ac).add(&SeriesPoly::term(Rf::one(), dc))
}

/// `T(z) = A(z) + D(zq)`, the value of `-T̃` on `c = -1`.
pub fn surface_t_series() -> SeriesPoly {
    SeriesPoly::factor(GenKind::A, 0, 1).add(&SeriesPoly::factor(GenKind::D, 1, 1))
}

/// `{C(z), T̃(w)}` in normal form; zero as a rule.
pub fn c_wt_t_rule() -> Result<BracketRule> {
    Ok(leibniz(&SeriesPoly::factor(GenKind::C, 0, 1), &wt_t_series(), hand_table)?.normal_form(true))
}

/// `{T̃(z), T̃(w)}` restricted to `c = -1`, `b = 1 - ad`, in normal form.
pub fn reduced_wt_t_bracket() -> Result<BracketRule> {
    let raw = leibniz(&wt_t_series(), &wt_t_series(), hand_table)?;
    let on_surface = raw.substitute(GenKind::C, &SeriesPoly::constant(Rf::from_int(-1)))?;
    // ad - bc = 1 with c = -1 gives b = 1 - ad
    let b = SeriesPoly::constant(Rf::one()).add(&SeriesPoly::term(
        Rf::from_int(-1),
        LoopMonomial::of(GenKind::A).mul(&LoopMonomial::of(GenKind::D)),
    ));
    Ok(on_surface.substitute(GenKind::B, &b)?.normal_form(true))
}

/// `φ̃(w/z) T(z) T(w) + δ(qw/z) - δ(w/(qz))` with `T` given as a series
/// polynomial.
pub fn virasoro_rule_for(t: &SeriesPoly) -> BracketRule {
    let mut rule = BracketRule::from_kernel_product(&KernelExpr::atom(KernelAtom::PhiTilde(0)), t, t);
    rule = rule.add(&BracketRule::term(Rf::one(), KernelAtom::Delta(1), LoopMonomial::one(), LoopMonomial::one()));
    rule.sub(&BracketRule::term(Rf::one(), KernelAtom::Delta(-1), LoopMonomial::one(), LoopMonomial::one()))
}

/// The q-Virasoro rule on the family `T`.
pub fn virasoro_rule() -> BracketRule {
    virasoro_rule_for(&SeriesPoly::factor(GenKind::T, 0, 1))
}

/// Reduce `{T̃, T̃}` to the constraint surface and check that it is the
/// q-Virasoro rule in `T = A(z) + D(zq)`. Returns the rule on `T`.
pub fn reduced_virasoro_rule() -> Result<BracketRule> {
    let reduced = reduced_wt_t_bracket()?;
    let expected = virasoro_rule_for(&surface_t_series()).normal_form(true);
    if reduced != expected {
        return Err(Error::InvalidConfig(format!("reduced bracket {reduced} differs from q-Virasoro {expected}")));
    }
    Ok(virasoro_rule())
}

/// `{t_n, t_m} = Σ_k φ̃_k t_{n-k} t_{m+k} + (q^n - q^{-n}) δ_{n+m,0}`,
/// summed directly over the support of `t` (`t_i` is the coefficient of
/// `s^{-i}`).
pub fn virasoro_modes(t: &LaurentPoly, n: i64, m: i64) -> Rf {
    let mut acc = Rf::zero();
    for (e, ti) in t.terms() {
        let k = n + e;
        let tj = mode(t, m + k);
        if !tj.is_zero() {
            acc = &acc + &(&phi_tilde(k) * &(ti * &tj));
        }
    }
    if n + m == 0 {
        acc = &acc + &(&Rf::q_pow(n) - &Rf::q_pow(-n));
    }
    acc
}

/// `t(s) = λ(s) + λ(sq)^{-1}`; `λ` must be a monomial.
pub fn miura_loop(lambda: &LaurentPoly) -> Result<LaurentPoly> {
    if lambda.as_monomial().is_none() {
        return Err(Error::NonMonomialPoint);
    }
    Ok(lambda + &lambda.shift(1).invert()?)
}

/// `T(z) = Λ(z) + Λ(zq)^{-1}`.
pub fn miura_series() -> SeriesPoly {
    SeriesPoly::factor(GenKind::Lambda, 0, 1).add(&SeriesPoly::factor(GenKind::Lambda, 1, -1))
}

/// `{Λ(z), Λ(w)} = φ̃(w/z) Λ(z) Λ(w)`.
pub fn heisenberg_rule(x: GenKind, y: GenKind) -> Result<BracketRule> {
    if x != GenKind::Lambda || y != GenKind::Lambda {
        return Err(Error::InvalidConfig("the free-field bracket only involves λ".into()));
    }
    Ok(BracketRule::term(Rf::one(), KernelAtom::PhiTilde(0), LoopMonomial::of(x), LoopMonomial::of(y)))
}

/// Difference between the pushforward of the free-field bracket through
/// the Miura map and the q-Virasoro rule, as a normal form; zero when the
/// map is Poisson.
pub fn miura_kernel_defect() -> Result<BracketRule> {
    let t = miura_series();
    let pushed = leibniz(&t, &t, heisenberg_rule)?.normal_form(true);
    Ok(pushed.sub(&virasoro_rule_for(&t).normal_form(true)))
}

/// Outcome of comparing the two evaluations of `{t_n, t_m}` at the image of
/// a monomial point.
#[derive(Debug, Clone, PartialEq)]
pub struct MiuraRecord {
    pub j: i64,
    pub c: Rf,
    pub image: LaurentPoly,
    /// `(n, m, chain rule value, direct value)` for every mode pair in the
    /// image support.
    pub pairs: Vec<(i64, i64, Rf, Rf)>,
}

impl MiuraRecord {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|(_, _, a, b)| a == b)
    }
}

/// Compare `{t_n, t_m}` computed (a) by the chain rule through
/// `λ -> λ(s) + λ(sq)^{-1}` from the free-field bracket, and (b) by the
/// q-Virasoro rule at the image point, for `λ = c s^j`.
pub fn miura_check_loop(j: i64, c: &Rf) -> Result<MiuraRecord> {
    if c.is_zero() {
        return Err(Error::NonMonomialPoint);
    }
    let lambda = LaurentPoly::monomial(c.clone(), j);
    let image = miura_loop(&lambda)?;
    let spec = RMatrixSpec::first_class();
    let free = heisenberg_rule(GenKind::Lambda, GenKind::Lambda)?;
    let free_values = PointValues::new().with(GenKind::Lambda, lambda.clone());
    let vira = virasoro_rule();
    let vira_values = PointValues::new().with(GenKind::T, image.clone());
    // differential of λ -> λ(sq)^{-1} at λ: δλ -> -λ(sq)^{-2} δλ(sq)
    let minus_inv_sq = lambda.shift(1).pow(-2)?.scale(&Rf::from_int(-1));
    // ∂t_n/∂λ_k, where λ_k perturbs λ by s^{-k}
    let partial = |n: i64, k: i64| {
        let unit = LaurentPoly::monomial(Rf::one(), -k);
        mode(&(&unit + &(&minus_inv_sq * &unit.shift(1))), n)
    };
    // λ_k only reaches t_k and t_{k+2j}
    let sources = |n: i64| {
        let mut ks = vec![n, n - 2 * j];
        ks.dedup();
        ks
    };
    let support: Vec<i64> = image.support().map(|e| -e).collect();
    let mut pairs = Vec::new();
    for &n in &support {
        for &m in &support {
            let mut chain = Rf::zero();
            for k in sources(n) {
                for l in sources(m) {
                    let d = &partial(n, k) * &partial(m, l);
                    if d.is_zero() {
                        continue;
                    }
                    chain = &chain + &(&d * &free.eval_modes(&spec, k, l, &free_values)?);
                }
            }
            let direct = vira.eval_modes(&spec, n, m, &vira_values)?;
            pairs.push((n, m, chain, direct));
        }
    }
    Ok(MiuraRecord { j, c: c.clone(), image, pairs })
}

/// On the cross-section `b = 0` the entry `a` is a monomial and the derived
/// `{a_m, a_k}` must equal the free-field bracket of `Λ = A`; mixed
/// brackets `{a, b}` must vanish there. Returns the number of mismatches.
pub fn b_zero_cross_section_mismatches(points: &[LoopPoint], modes: std::ops::RangeInclusive<i64>) -> Result<usize> {
    let spec = RMatrixSpec::first_class();
    let aa = super::derive::derive_bracket_rule(GenKind::A, GenKind::A, &spec, 1)?;
    let ab = super::derive::derive_bracket_rule(GenKind::A, GenKind::B, &spec, 1)?;
    let free = heisenberg_rule(GenKind::Lambda, GenKind::Lambda)?;
    let mut bad = 0;
    for p in points {
        if !p.b().is_zero() {
            return Err(Error::InvalidConfig("cross-section points need b = 0".into()));
        }
        let values = p.values();
        let lam = PointValues::new().with(GenKind::Lambda, p.a().clone());
        for m in modes.clone() {
            for k in modes.clone() {
                if aa.eval_modes(&spec, m, k, &values)? != free.eval_modes(&spec, m, k, &lam)? {
                    bad += 1;
                }
                if !ab.eval_modes(&spec, m, k, &values)?.is_zero() {
                    bad += 1;
                }
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wt_t_example() {
        let p = LoopPoint::new(
            LaurentPoly::s(),
            LaurentPoly::zero(),
            LaurentPoly::constant(Rf::from_int(-1)),
            LaurentPoly::monomial(Rf::one(), -1),
        )
        .unwrap();
        let expected = LaurentPoly::from_terms([(1, Rf::from_int(-1)), (-1, -&Rf::q_pow(-1))]);
        assert_eq!(wt_t(&p), expected);
    }

    #[test]
    fn c_commutes_with_invariant() {
        let r = c_wt_t_rule().unwrap();
        assert!(r.is_zero(), "{r}");
    }

    #[test]
    fn reduction_gives_virasoro() {
        let r = reduced_wt_t_bracket().unwrap();
        let e = virasoro_rule_for(&surface_t_series()).normal_form(true);
        assert_eq!(r, e, "\n{r}\n{e}");
    }

    #[test]
    fn miura_kernel_identity() {
        let d = miura_kernel_defect().unwrap();
        assert!(d.is_zero(), "{d}");
    }

    #[test]
    fn central_term() {
        let one = LaurentPoly::one();
        assert_eq!(virasoro_modes(&LaurentPoly::zero(), 2, -2), &Rf::q_pow(2) - &Rf::q_pow(-2));
        assert!(virasoro_modes(&LaurentPoly::zero(), 2, -1).is_zero());
        // t = 1: Σ_k φ̃_k t_{n-k} t_{m+k} only has k = n, m = -n
        assert_eq!(virasoro_modes(&one, 1, -1), &phi_tilde(1) + &(&Rf::q() - &Rf::q_pow(-1)));
    }

    #[test]
    fn miura_at_simple_point() {
        let rec = miura_check_loop(1, &Rf::one()).unwrap();
        assert_eq!(rec.image, LaurentPoly::from_terms([(1, Rf::one()), (-1, Rf::q_pow(-1))]));
        assert!(rec.passed(), "{:?}", rec.pairs);
    }
}
