//! Bracket rules between the entry series `A, B, C, D` of the loop group:
//! derived from the twisted r-matrix bracket, the explicit table, and the
//! matrix (RLL-type) presentation.

use crate::algebra::{GenKind, RationalFunctionQ as Rf};
use crate::error::Result;

use super::bilocal::{BracketRule, LoopMonomial, SeriesPoly};
use super::gradient::{entry_at, entry_position, symbolic_gradient, Side};
use super::kernel::{KernelAtom, KernelExpr};
use super::point::LoopPoint;
use super::spec::RMatrixSpec;

/// Window on which an r-matrix spec is checked before use.
const SPEC_CHECK_RANGE: i64 = 16;

type Grad = [[SeriesPoly; 2]; 2];

/// `⟨(τ^twist ⊗ id) r, X ⊗ Y⟩` as a bilocal rule. When `x_is_z` the `X`
/// gradient belongs to the `z`-side function; otherwise `X` belongs to the
/// `w`-side function and the kernel is reflected so the pattern stays
/// `z`-function first.
fn pair(x: &Grad, y: &Grad, twist: i64, x_is_z: bool) -> BracketRule {
    // E_n ⊗ F_{-n} pairs X_21 with Y_12; ½ φ_n H_n ⊗ H_{-n} pairs 2 X_11 Y_11.
    let ef = KernelExpr::atom(KernelAtom::Delta(twist));
    let hh = KernelExpr::term(KernelAtom::Phi(twist), Rf::from_int(2));
    if x_is_z {
        BracketRule::from_kernel_product(&ef, &x[1][0], &y[0][1]).add(&BracketRule::from_kernel_product(&hh, &x[0][0], &y[0][0]))
    } else {
        BracketRule::from_kernel_product(&ef.reflected(), &y[0][1], &x[1][0])
            .add(&BracketRule::from_kernel_product(&hh.reflected(), &y[0][0], &x[0][0]))
    }
}

/// `{X(z), Y(w)}` for entry families `x`, `y` from the twisted bracket
///
/// `{φ,ψ} = ½⟨r, ∇φ∧∇ψ⟩ + ½⟨r, ∇'φ∧∇'ψ⟩ - ⟨r^τ, ∇'φ⊗∇ψ⟩ + ⟨r^τ, ∇'ψ⊗∇φ⟩`
///
/// where `r^τ` carries `twist` powers of the shift on its first factor.
/// The result keeps `Φ` atoms; compare rules through [`BracketRule::normal_form`].
pub fn derive_bracket_rule(x: GenKind, y: GenKind, spec: &RMatrixSpec, twist: i64) -> Result<BracketRule> {
    spec.validate(SPEC_CHECK_RANGE)?;
    let (gl, gr) = (symbolic_gradient(x, Side::Left)?, symbolic_gradient(x, Side::Right)?);
    let (hl, hr) = (symbolic_gradient(y, Side::Left)?, symbolic_gradient(y, Side::Right)?);
    let half = Rf::from_ratio(1, 2);
    let left = pair(&gl, &hl, 0, true).sub(&pair(&hl, &gl, 0, false));
    let right = pair(&gr, &hr, 0, true).sub(&pair(&hr, &gr, 0, false));
    let twisted = pair(&hr, &gl, twist, false).sub(&pair(&gr, &hl, twist, true));
    Ok(left.add(&right).scale(&half).add(&twisted))
}

fn mono(kind: GenKind) -> LoopMonomial {
    LoopMonomial::of(kind)
}

fn one_term(c: i64, atom: KernelAtom, z: GenKind, w: GenKind) -> BracketRule {
    BracketRule::term(Rf::from_int(c), atom, mono(z), mono(w))
}

/// The explicit table of brackets for the first-class r-matrix with a
/// single shift twist, with `φ = φ̃(w/z)`. Pairs below the diagonal follow
/// from antisymmetry.
pub fn hand_table(x: GenKind, y: GenKind) -> Result<BracketRule> {
    use GenKind::{A, B, C, D};
    use KernelAtom::{Delta, PhiTilde};
    let (xi, yi) = (entry_position(x)?, entry_position(y)?);
    if (xi.0 * 2 + xi.1) > (yi.0 * 2 + yi.1) {
        return Ok(hand_table(y, x)?.swapped());
    }
    Ok(match (x, y) {
        (A, A) => one_term(1, PhiTilde(0), A, A),
        (A, B) => one_term(-1, Delta(0), A, B),
        (A, C) => one_term(1, Delta(0), A, C),
        (A, D) => one_term(-1, PhiTilde(0), A, D),
        (B, B) | (C, C) => BracketRule::zero(),
        (B, C) => one_term(1, Delta(0), A, D).add(&one_term(-1, Delta(1), A, A)),
        (B, D) => one_term(-1, Delta(1), A, B),
        (C, D) => one_term(1, Delta(-1), A, C),
        (D, D) => one_term(1, PhiTilde(0), D, D).add(&one_term(-1, Delta(1), C, B)).add(&one_term(1, Delta(-1), B, C)),
        _ => unreachable!("ordered loop entry pair"),
    })
}

/// The first-class `R(w/z)` in the basis `e1e1, e1e2, e2e1, e2e2`:
/// diagonal `(½Φ, -½Φ, -½Φ, ½Φ)` plus `δ` at position `(e1e2, e2e1)`.
fn r_matrix() -> Vec<Vec<KernelExpr>> {
    let half = Rf::from_ratio(1, 2);
    let phi = KernelExpr::term(KernelAtom::Phi(0), half);
    let mut r = vec![vec![KernelExpr::zero(); 4]; 4];
    r[0][0] = phi.clone();
    r[1][1] = phi.scale(&Rf::from_int(-1));
    r[2][2] = phi.scale(&Rf::from_int(-1));
    r[3][3] = phi;
    r[1][2] = KernelExpr::atom(KernelAtom::Delta(0));
    r
}

fn idx(i: usize, k: usize) -> usize {
    2 * i + k
}

/// `R_21(z/w)`, i.e. `σR` with reflected kernels.
fn r21_reflected(r: &[Vec<KernelExpr>]) -> Vec<Vec<KernelExpr>> {
    let mut out = vec![vec![KernelExpr::zero(); 4]; 4];
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    out[idx(i, k)][idx(j, l)] = r[idx(k, i)][idx(l, j)].reflected();
                }
            }
        }
    }
    out
}

fn shift_all(r: &[Vec<KernelExpr>], k: i64) -> Vec<Vec<KernelExpr>> {
    r.iter().map(|row| row.iter().map(|e| e.shifted(k)).collect()).collect()
}

/// `{L_ij(z), L_kl(w)}` from the quadratic matrix presentation
///
/// `{L₁, L₂} = ½ r⁻ L₁L₂ + ½ L₁L₂ r⁻ - L₁ R(qw/z) L₂ + L₂ R₂₁(z/(qw)) L₁`
///
/// with `r⁻ = R - R₂₁` and `L = [[A, B], [C, D]]`.
pub fn rll_rule(i: usize, j: usize, k: usize, l: usize) -> BracketRule {
    let r = r_matrix();
    let r21 = r21_reflected(&r);
    let rminus: Vec<Vec<KernelExpr>> =
        (0..4).map(|p| (0..4).map(|s| &r[p][s] - &r21[p][s]).collect()).collect();
    let r_up = shift_all(&r, 1);
    let r21_down = shift_all(&r21, -1);
    let half = Rf::from_ratio(1, 2);
    let one = Rf::one();
    let mut out = BracketRule::zero();
    let mut push = |kernel: &KernelExpr, c: &Rf, z: GenKind, w: GenKind| {
        for (atom, v) in kernel.terms() {
            out = out.add(&BracketRule::term(v * c, *atom, mono(z), mono(w)));
        }
    };
    for a in 0..2 {
        for b in 0..2 {
            push(&rminus[idx(i, k)][idx(a, b)], &half, entry_at(a, j), entry_at(b, l));
            push(&rminus[idx(a, b)][idx(j, l)], &half, entry_at(i, a), entry_at(k, b));
            push(&r_up[idx(a, k)][idx(j, b)], &-&one, entry_at(i, a), entry_at(b, l));
            push(&r21_down[idx(i, a)][idx(b, l)], &one, entry_at(b, j), entry_at(k, a));
        }
    }
    out
}

/// The RLL rule for a pair of entry families.
pub fn rll_family_rule(x: GenKind, y: GenKind) -> Result<BracketRule> {
    let (i, j) = entry_position(x)?;
    let (k, l) = entry_position(y)?;
    Ok(rll_rule(i, j, k, l))
}

/// `{x_m, y_k}` at a point.
pub fn bracket_eval(rule: &BracketRule, spec: &RMatrixSpec, m: i64, k: i64, point: &LoopPoint) -> Result<Rf> {
    rule.eval_modes(spec, m, k, &point.values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LaurentPoly;
    use crate::loop_poisson::gradient::LOOP_ENTRIES;

    #[test]
    fn derived_rules_match_table() {
        let spec = RMatrixSpec::first_class();
        for x in LOOP_ENTRIES {
            for y in LOOP_ENTRIES {
                let derived = derive_bracket_rule(x, y, &spec, 1).unwrap().normal_form(true);
                let table = hand_table(x, y).unwrap().normal_form(true);
                assert_eq!(derived, table, "{{{}, {}}}: derived {derived} vs table {table}", x.symbol(), y.symbol());
            }
        }
    }

    #[test]
    fn rll_matches_table() {
        for x in LOOP_ENTRIES {
            for y in LOOP_ENTRIES {
                let rll = rll_family_rule(x, y).unwrap().normal_form(true);
                let table = hand_table(x, y).unwrap().normal_form(true);
                assert_eq!(rll, table, "{{{}, {}}}: rll {rll} vs table {table}", x.symbol(), y.symbol());
            }
        }
    }

    #[test]
    fn a_modes_at_linear_point() {
        // a(s) = 1 + s, b = 1, c = -1, d = 0
        let point = LoopPoint::new(
            LaurentPoly::from_terms([(0, Rf::one()), (1, Rf::one())]),
            LaurentPoly::constant(Rf::from_int(1)),
            LaurentPoly::constant(Rf::from_int(-1)),
            LaurentPoly::zero(),
        )
        .unwrap();
        let rule = hand_table(GenKind::A, GenKind::A).unwrap();
        let spec = RMatrixSpec::first_class();
        // a_0 = 1 and a_{-1} = 1; only φ̃_1 a_{-1} a_0 survives
        assert_eq!(bracket_eval(&rule, &spec, 0, -1, &point).unwrap(), "(1-q)/(1+q)".parse().unwrap());
        assert!(bracket_eval(&rule, &spec, 0, 1, &point).unwrap().is_zero());
        assert!(bracket_eval(&rule, &spec, 1, 1, &point).unwrap().is_zero());
    }
}
