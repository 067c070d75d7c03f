//! The registry of checks and the suite runner.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::{rat, GenKind, LaurentPoly, RationalFunctionQ as Rf};
use crate::difference::{
    canonicalize, fundamental_characters, gauge_apply, random_mj_member, random_unipotent, DifferenceRing, IdentityRing,
    LatticeRing, MatrixOp, QShiftRing, RandomElement, SiteArray,
};
use crate::error::Result;
use crate::lattice::{
    self, canonical_t_matches_wt_t, cybe_residual, derive_lattice_table, discrete_miura_check, ftv_chain, jacobi_check,
    nu_from_heisenberg_check, poisson_action_check, poisson_action_check_twisted, r_is_shift_invariant,
    reduce_discrete_virasoro, root_unity_deviation, solve_first_class_lattice, IdentityCheck, LatticePhi, LATTICE_TWIST,
};
use crate::loop_poisson::{
    bracket_eval, derive_bracket_rule, first_class_phi, free_field_diagonal_in_x, hand_table, miura_check_loop,
    miura_kernel_defect, phi_tilde, reduced_virasoro_rule, rll_family_rule, solve_first_class_loop, virasoro_modes,
    virasoro_rule, GeneratorId, LoopPoint, NestedBrackets, PointValues, RMatrixSpec, WStructure, LOOP_ENTRIES,
};
use crate::loop_poisson::constraint_bracket_coefficient;

use super::config::{Suite, SuiteConfig};
use super::result::CheckResult;

type CheckFn = fn(&SuiteConfig, &mut ChaCha8Rng) -> Result<CheckResult>;

/// A registered check: stable id, topic tag, the suites that include it.
pub struct CheckSpec {
    pub id: &'static str,
    pub anchor: &'static str,
    pub suites: &'static [Suite],
    run: CheckFn,
}

use Suite::{Ftv, Lattice, Loop, Miura};

pub const CHECKS: &[CheckSpec] = &[
    CheckSpec { id: "gauge.normal_form", anchor: "gauge-normal-form", suites: &[Loop], run: gauge_normal_form },
    CheckSpec { id: "lattice.action", anchor: "twisted-covariance", suites: &[Lattice], run: lattice_action },
    CheckSpec { id: "lattice.action.control", anchor: "twisted-covariance", suites: &[Lattice], run: lattice_action_control },
    CheckSpec { id: "lattice.canonical_t", anchor: "gauge-normal-form", suites: &[Lattice], run: lattice_canonical_t },
    CheckSpec { id: "lattice.cybe", anchor: "lattice-cybe", suites: &[Lattice], run: lattice_cybe },
    CheckSpec { id: "lattice.cybe.control", anchor: "lattice-cybe", suites: &[Lattice], run: lattice_cybe_control },
    CheckSpec { id: "lattice.ftv", anchor: "ftv-chain", suites: &[Lattice, Ftv], run: lattice_ftv },
    CheckSpec { id: "lattice.jacobi", anchor: "lattice-jacobi", suites: &[Lattice], run: lattice_jacobi },
    CheckSpec { id: "lattice.jacobi.control", anchor: "lattice-jacobi", suites: &[Lattice], run: lattice_jacobi_control },
    CheckSpec { id: "lattice.miura", anchor: "discrete-miura", suites: &[Lattice, Miura], run: lattice_miura },
    CheckSpec { id: "lattice.nu", anchor: "discrete-miura", suites: &[Lattice, Miura, Ftv], run: lattice_nu },
    CheckSpec { id: "lattice.phi", anchor: "lattice-phi", suites: &[Lattice], run: lattice_phi },
    CheckSpec { id: "lattice.reduction", anchor: "discrete-virasoro-reduction", suites: &[Lattice], run: lattice_reduction },
    CheckSpec { id: "lattice.root_unity", anchor: "root-of-unity", suites: &[Lattice], run: lattice_root_unity },
    CheckSpec { id: "lattice.table", anchor: "lattice-bracket-table", suites: &[Lattice], run: lattice_table },
    CheckSpec { id: "loop.jacobi", anchor: "loop-jacobi", suites: &[Loop], run: loop_jacobi },
    CheckSpec { id: "loop.miura.kernel", anchor: "loop-miura", suites: &[Loop, Miura], run: loop_miura_kernel },
    CheckSpec { id: "loop.miura.points", anchor: "loop-miura", suites: &[Loop, Miura], run: loop_miura_points },
    CheckSpec { id: "loop.phi", anchor: "loop-first-class-phi", suites: &[Loop], run: loop_phi },
    CheckSpec { id: "loop.q_specialization", anchor: "q-specialization", suites: &[Loop], run: loop_q_specialization },
    CheckSpec { id: "loop.reduction", anchor: "q-virasoro-reduction", suites: &[Loop], run: loop_reduction },
    CheckSpec { id: "loop.table.points", anchor: "loop-bracket-table", suites: &[Loop], run: loop_table_points },
    CheckSpec { id: "loop.table.symbolic", anchor: "loop-bracket-table", suites: &[Loop], run: loop_table_symbolic },
    CheckSpec { id: "loop.w_structure", anchor: "w-structure", suites: &[Loop], run: loop_w_structure },
];

impl CheckSpec {
    pub fn in_suite(&self, suite: Suite) -> bool {
        suite == Suite::All || self.suites.contains(&suite)
    }
}

/// 64-bit FNV-1a; keys each check's random stream to its id.
fn stream_key(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// The random stream of one check, independent of scheduling.
pub fn check_rng(seed: u64, id: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ stream_key(id))
}

fn run_one(spec: &CheckSpec, config: &SuiteConfig) -> CheckResult {
    let mut rng = check_rng(config.seed, spec.id);
    let start = Instant::now();
    let mut r = match (spec.run)(config, &mut rng) {
        Ok(r) => r,
        Err(e) => CheckResult::new(spec.id, spec.anchor).fail("-", format!("error: {e}"), json!({"error": e.to_string()})),
    };
    r.elapsed = start.elapsed();
    r
}

/// Runs the selected checks concurrently; results are sorted by id.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    config.validate()?;
    let selected: Vec<&CheckSpec> = CHECKS.iter().filter(|c| c.in_suite(config.suite)).collect();
    let mut results: Vec<CheckResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected.iter().map(|spec| scope.spawn(move || run_one(spec, config))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    results.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(results)
}

/// Runs a single check by id.
pub fn run_check(id: &str, config: &SuiteConfig) -> Option<CheckResult> {
    CHECKS.iter().find(|c| c.id == id).map(|c| run_one(c, config))
}

fn base(id: &str) -> CheckResult {
    let spec = CHECKS.iter().find(|c| c.id == id).expect("registered check");
    CheckResult::new(spec.id, spec.anchor)
}

fn identity_outcome(id: &str, checks: &[&IdentityCheck]) -> CheckResult {
    let pairs: usize = checks.iter().map(|c| c.pairs_checked).sum();
    for c in checks {
        if let Some((n, m, residual)) = c.failures.first() {
            return base(id).fail(
                residual.clone(),
                format!("{}: {} of {} pairs fail", c.name, c.failures.len(), c.pairs_checked),
                json!({"identity": c.name, "n": n, "m": m, "residual": residual}),
            );
        }
        if c.pairs_checked == 0 {
            return base(id).fail("-", format!("{}: no pairs checked", c.name), json!({"identity": c.name}));
        }
    }
    let names: Vec<&str> = checks.iter().map(|c| c.name.as_str()).collect();
    base(id).pass(format!("{pairs} pairs exact: {}", names.join("; ")))
}

fn odd_gate(id: &str, config: &SuiteConfig) -> Option<CheckResult> {
    (config.n % 2 == 0).then(|| base(id).skipped("odd N required"))
}

// ---- loop group -------------------------------------------------------

fn loop_phi(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "loop.phi";
    let (spec, sols) = solve_first_class_loop(8)?;
    for m in -8..=8i64 {
        let expected = Rf::one().checked_div(&(&Rf::one() + &Rf::q_pow(m)))?;
        if spec.phi(m) != expected || first_class_phi(m) != expected {
            return Ok(base(id).fail(spec.phi(m).to_string(), format!("φ_{m} differs from 1/(1+q^{m})"), json!({"m": m})));
        }
        let c = constraint_bracket_coefficient(&spec, m);
        if !c.is_zero() {
            return Ok(base(id).fail(c.to_string(), "constraint bracket coefficient nonzero", json!({"m": m})));
        }
    }
    if sols.iter().any(|s| s.determinant.is_zero()) {
        return Ok(base(id).fail("-", "singular system", json!({})));
    }
    let standard = constraint_bracket_coefficient(&RMatrixSpec::standard_r0(), 1);
    let half_one_plus_q = &(&Rf::one() + &Rf::q()) * &Rf::from_ratio(1, 2);
    if standard != half_one_plus_q {
        return Ok(base(id).fail(standard.to_string(), "standard r-matrix coefficient at m = 1 is not (1+q)/2", json!({"m": 1})));
    }
    Ok(base(id).pass("φ_n = 1/(1+q^n) for |n| <= 8; constraint coefficients vanish; standard r_0 gives (1+q)/2 at m = 1"))
}

fn loop_table_symbolic(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "loop.table.symbolic";
    let spec = RMatrixSpec::first_class();
    for x in LOOP_ENTRIES {
        for y in LOOP_ENTRIES {
            let table = hand_table(x, y)?.normal_form(true);
            let derived = derive_bracket_rule(x, y, &spec, 1)?.normal_form(true);
            let rll = rll_family_rule(x, y)?.normal_form(true);
            for (route, rule) in [("derived", &derived), ("rll", &rll)] {
                let diff = rule.sub(&table);
                if !diff.is_zero() {
                    return Ok(base(id).fail(
                        diff.to_string(),
                        format!("{route} rule differs from the table"),
                        json!({"pair": [x.symbol(), y.symbol()], "route": route}),
                    ));
                }
            }
        }
    }
    Ok(base(id).pass("16 ordered pairs: derived = table = RLL in kernel normal form"))
}

fn loop_table_points(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "loop.table.points";
    let spec = RMatrixSpec::first_class();
    let mut rules = Vec::new();
    for x in LOOP_ENTRIES {
        for y in LOOP_ENTRIES {
            rules.push((x, y, derive_bracket_rule(x, y, &spec, 1)?, hand_table(x, y)?, rll_family_rule(x, y)?));
        }
    }
    let r = config.mode_range;
    let mut evaluations = 0;
    for idx in 0..config.points {
        let point = LoopPoint::random(rng, 3);
        for (x, y, derived, table, rll) in &rules {
            for m in -r..=r {
                for k in -r..=r {
                    let t = bracket_eval(table, &spec, m, k, &point)?;
                    let d = bracket_eval(derived, &spec, m, k, &point)?;
                    let l = bracket_eval(rll, &spec, m, k, &point)?;
                    evaluations += 1;
                    if d != t || l != t {
                        return Ok(base(id).fail(
                            (&d - &t).to_string(),
                            "pointwise bracket values disagree",
                            json!({"point_index": idx, "pair": [x.symbol(), y.symbol()], "modes": [m, k],
                                   "point": point_json(&point), "table": t.to_string(), "derived": d.to_string(), "rll": l.to_string()}),
                        ));
                    }
                }
            }
        }
    }
    Ok(base(id).pass(format!("{} points, {evaluations} mode pairs: derived = table = RLL", config.points)))
}

fn point_json(p: &LoopPoint) -> serde_json::Value {
    json!({"a": p.a().to_json(), "b": p.b().to_json(), "c": p.c().to_json(), "d": p.d().to_json()})
}

fn loop_reduction(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "loop.reduction";
    // Err when the reduced rule differs from the q-Virasoro rule
    reduced_virasoro_rule()?;
    let c_rule = crate::loop_poisson::c_wt_t_rule()?.normal_form(true);
    if !c_rule.is_zero() {
        return Ok(base(id).fail(c_rule.to_string(), "{C, T̃} is not zero", json!({})));
    }
    for n in 1..=4i64 {
        let central = virasoro_modes(&LaurentPoly::zero(), n, -n);
        if central != &Rf::q_pow(n) - &Rf::q_pow(-n) {
            return Ok(base(id).fail(central.to_string(), "central term", json!({"n": n})));
        }
    }
    // series rule and its mode expansion agree at random T
    let rule = virasoro_rule();
    let spec = RMatrixSpec::first_class();
    for _ in 0..3 {
        let t = crate::difference::random::random_laurent(rng);
        let values = PointValues::new().with(GenKind::T, t.clone());
        for n in -2..=2 {
            for m in -2..=2 {
                let a = rule.eval_modes(&spec, n, m, &values)?;
                let b = virasoro_modes(&t, n, m);
                if a != b {
                    return Ok(base(id).fail((&a - &b).to_string(), "mode expansion differs", json!({"t": t.to_json(), "n": n, "m": m})));
                }
            }
        }
    }
    Ok(base(id).pass("reduced rule = q-Virasoro in normal form; {C, T̃} = 0; central term q^n - q^-n"))
}

fn loop_miura_points(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "loop.miura.points";
    let coefficients = [Rf::one(), Rf::from_int(2), &Rf::one() + &Rf::q()];
    let mut pairs = 0;
    for j in -2..=2 {
        for c in &coefficients {
            let rec = miura_check_loop(j, c)?;
            pairs += rec.pairs.len();
            if let Some((n, m, chain, direct)) = rec.pairs.iter().find(|(_, _, a, b)| a != b) {
                return Ok(base(id).fail(
                    (chain - direct).to_string(),
                    "chain rule and direct evaluation differ",
                    json!({"j": j, "c": c.to_string(), "n": n, "m": m}),
                ));
            }
        }
    }
    Ok(base(id).pass(format!("15 monomial points, {pairs} mode pairs exact")))
}

fn loop_miura_kernel(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "loop.miura.kernel";
    let defect = miura_kernel_defect()?;
    if !defect.is_zero() {
        return Ok(base(id).fail(defect.to_string(), "push-forward of the free-field bracket differs", json!({})));
    }
    Ok(base(id).pass("pushed free-field bracket = q-Virasoro in normal form"))
}

fn loop_w_structure(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "loop.w_structure";
    let w = WStructure::new(2, 1, 1)?;
    let free = free_field_diagonal_in_x(2)?;
    if free != w.coefficient_in_x() {
        return Ok(base(id).fail(free.to_string(), "free-field and W coefficients differ at N = 2", json!({})));
    }
    for m in -16..=16 {
        let (a, b) = (w.coefficient(m), phi_tilde(m));
        if a != b {
            return Ok(base(id).fail((&a - &b).to_string(), "coefficient differs from (1-q^m)/(1+q^m)", json!({"m": m})));
        }
    }
    Ok(base(id).pass("both N = 2 coefficients equal (1-q^m)/(1+q^m) for |m| <= 16"))
}

fn loop_jacobi(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    use rand::Rng;
    let id = "loop.jacobi";
    let points = config.points.min(3);
    let mut triples = 0;
    for idx in 0..points {
        let p = LoopPoint::random(rng, 3);
        let values = p.values();
        let mut nb = NestedBrackets::new(hand_table, RMatrixSpec::first_class(), &values);
        for _ in 0..4 {
            let mut pick = || GeneratorId::new(LOOP_ENTRIES[rng.gen_range(0..4)], rng.gen_range(-1..=1));
            let (f, g, h) = (pick()?, pick()?, pick()?);
            let j = nb.jacobiator(f, g, h)?;
            triples += 1;
            if !j.is_zero() {
                return Ok(base(id).fail(
                    j.to_string(),
                    "nonzero Jacobiator",
                    json!({"point_index": idx, "point": point_json(&p),
                           "triple": [[f.entry.symbol(), f.mode], [g.entry.symbol(), g.mode], [h.entry.symbol(), h.mode]]}),
                ));
            }
        }
    }
    Ok(base(id).pass(format!("{triples} random mode triples at {points} points")))
}

fn loop_q_specialization(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "loop.q_specialization";
    let Some(q0) = &config.q_specialization else {
        return Ok(base(id).skipped("no q specialization given"));
    };
    let mut checked = 0;
    for m in -8..=8i64 {
        let qm = num_traits::pow::Pow::pow(q0, m);
        let one = BigRational::one();
        if (&one + &qm).is_zero() {
            continue;
        }
        let phi = first_class_phi(m).eval_rational(q0)?;
        let vir = phi_tilde(m).eval_rational(q0)?;
        if phi != (&one / (&one + &qm)) || vir != (&one - &qm) / (&one + &qm) {
            return Ok(base(id).fail((phi - &one / (&one + &qm)).to_string(), "specialized coefficient differs", json!({"m": m, "q": q0.to_string()})));
        }
        checked += 1;
    }
    if checked == 0 {
        return Ok(base(id).skipped(format!("q = {q0} is a pole of every coefficient")));
    }
    Ok(base(id).pass(format!("φ_m and φ̃_m at q = {q0} for {checked} modes")))
}

fn canonical_round<R>(ring: &R, n: usize, rng: &mut ChaCha8Rng, characters: bool) -> Result<Option<String>>
where
    R: RandomElement + PartialEq + std::fmt::Debug,
    R::Elem: PartialEq + std::fmt::Debug,
{
    let m = random_mj_member(ring, n, rng);
    let (form, g) = canonicalize(&m)?;
    if gauge_apply(&g, &m)? != form.embed(ring) {
        return Ok(Some("gauge witness does not map M to its normal form".into()));
    }
    let moved = gauge_apply(&random_unipotent(ring, n, rng), &m)?;
    if canonicalize(&moved)?.0 != form {
        return Ok(Some("normal form changed along the orbit".into()));
    }
    let (again, g2) = canonicalize(&form.embed(ring))?;
    if again != form || !g2.is_identity() {
        return Ok(Some("canonicalization is not idempotent".into()));
    }
    if characters && fundamental_characters(ring, m.entries()) != form.t {
        return Ok(Some("characters differ from the normal-form coordinates".into()));
    }
    Ok(None)
}

fn gauge_normal_form(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "gauge.normal_form";
    let lattice = LatticeRing::new(config.n.max(1));
    let mut runs = 0;
    for n in 2..=4 {
        for variant in ["q_shift", "identity", "lattice_shift"] {
            for idx in 0..config.points {
                let bad = match variant {
                    "q_shift" => canonical_round(&QShiftRing::default(), n, rng, false)?,
                    "identity" => canonical_round(&IdentityRing, n, rng, true)?,
                    _ => canonical_round(&lattice, n, rng, false)?,
                };
                runs += 1;
                if let Some(reason) = bad {
                    return Ok(base(id).fail("-", reason, json!({"n": n, "variant": variant, "instance": idx})));
                }
            }
        }
    }
    Ok(base(id).pass(format!("{runs} random operators: witness, orbit invariance, idempotence; characters at τ = id")))
}

// ---- lattice -----------------------------------------------------------

fn lattice_phi(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.phi";
    let phi = solve_first_class_lattice(config.n)?;
    if !phi.is_first_class() {
        return Ok(base(id).fail("-", "solver output violates an invariant", json!({"N": config.n})));
    }
    let values: Vec<String> = phi.values().iter().map(|v| v.to_string()).collect();
    Ok(base(id).pass(format!("φ = ({})", values.join(", "))))
}

/// The solved φ with its last entry replaced by 0.
fn corrupted_phi(n: usize) -> Result<LatticePhi> {
    let mut v = solve_first_class_lattice(n)?.values().to_vec();
    *v.last_mut().expect("N >= 1") = BigRational::zero();
    LatticePhi::new(v)
}

fn lattice_cybe(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.cybe";
    if config.n > lattice::cybe::DEFAULT_CYBE_BOUND {
        return Ok(base(id).skipped(format!("N exceeds the CYBE bound {}", lattice::cybe::DEFAULT_CYBE_BOUND)));
    }
    let phi = solve_first_class_lattice(config.n)?;
    let res = cybe_residual(&phi)?;
    if !res.is_zero() {
        return Ok(base(id).fail(res.to_string(), "nonzero CYBE residual", json!({"N": config.n})));
    }
    if !r_is_shift_invariant(&phi) {
        return Ok(base(id).fail("-", "r is not site-shift invariant", json!({"N": config.n})));
    }
    Ok(base(id).pass("residual exactly zero; (τ⊗τ) r = r"))
}

fn lattice_cybe_control(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.cybe.control";
    if config.n > lattice::cybe::DEFAULT_CYBE_BOUND {
        return Ok(base(id).negative().skipped(format!("N exceeds the CYBE bound {}", lattice::cybe::DEFAULT_CYBE_BOUND)));
    }
    let bad = corrupted_phi(config.n)?;
    let res = cybe_residual(&bad)?;
    if res.is_zero() {
        return Ok(base(id).negative().fail("0", "corrupted φ passes CYBE", json!({"phi": phi_json(&bad)})));
    }
    let first = res.terms().next().map(|(k, c)| format!("({c}) {}", k.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("⊗")));
    let residual = res.terms().next().map(|(_, c)| c.to_string()).unwrap_or_default();
    Ok(with_residual(residual, base(id).negative().pass(format!(
        "corrupted φ = ({}) rejected: {} nonzero triples, e.g. {}",
        phi_json(&bad).join(", "),
        res.len(),
        first.unwrap_or_default()
    ))))
}

/// A passing control shows the nonzero value that rejected the corrupted input.
fn with_residual(residual: impl Into<String>, mut r: CheckResult) -> CheckResult {
    r.residual = residual.into();
    r
}

fn phi_json(phi: &LatticePhi) -> Vec<String> {
    phi.values().iter().map(|v| v.to_string()).collect()
}

fn lattice_table(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    use crate::algebra::{Gen, LatticePolynomial};
    let id = "lattice.table";
    let n = config.n;
    let phi = solve_first_class_lattice(n)?;
    let table = derive_lattice_table(&phi)?;
    let sk = lattice::sklyanin_table(&phi)?;
    for (name, t) in [("twisted", &table), ("sklyanin", &sk)] {
        if let Some((u, v)) = t.antisymmetry_defects().first() {
            return Ok(base(id).fail("-", format!("{name} table not antisymmetric"), json!({"pair": [u.to_string(), v.to_string()]})));
        }
        if let Some((u, v)) = t.shift_covariance_defects()?.first() {
            return Ok(base(id).fail("-", format!("{name} table not site-shift covariant"), json!({"pair": [u.to_string(), v.to_string()]})));
        }
    }
    let surface: std::collections::BTreeMap<Gen, LatticePolynomial> =
        (0..n).map(|k| (Gen::new(GenKind::C, k), LatticePolynomial::from_int(-1))).collect();
    for a in 0..n {
        for b in 0..n {
            let bb = table.get(Gen::new(GenKind::B, a), Gen::new(GenKind::B, b));
            if !bb.is_zero() {
                return Ok(base(id).fail(bb.to_string(), "{b, b} is not zero", json!({"n": a, "m": b})));
            }
            let cc = table.get(Gen::new(GenKind::C, a), Gen::new(GenKind::C, b)).substitute_all(&surface)?;
            if !cc.is_zero() {
                return Ok(base(id).fail(cc.to_string(), "{c, c} does not vanish on c = -1", json!({"n": a, "m": b})));
            }
        }
    }
    Ok(base(id).pass(format!(
        "{} nonzero entries; antisymmetric, shift covariant; {{b,b}} = 0; {{c,c}} = 0 on c = -1; twist {}",
        table.entries().count(),
        LATTICE_TWIST
    )))
}

fn jacobi_outcome(id: &str, rec: &lattice::JacobiRecord) -> CheckResult {
    match &rec.first_failure {
        None => base(id).pass(format!("{} points x {} triples: Jacobiator zero", rec.points, rec.triples_per_point)),
        Some(f) => base(id).fail(
            f.residual.clone(),
            format!("{} nonzero Jacobiators", rec.failures),
            serde_json::to_value(f).expect("serializable"),
        ),
    }
}

fn lattice_jacobi(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let phi = solve_first_class_lattice(config.n)?;
    let mut pts: Vec<_> = config.extra_points.iter().map(|p| p.to_variety_point()).collect();
    pts.extend((0..config.points).map(|_| lattice::random_point(rng, config.n, 0)));
    let rec = lattice::jacobi_at_points(&derive_lattice_table(&phi)?, &pts)?;
    Ok(jacobi_outcome("lattice.jacobi", &rec))
}

fn lattice_jacobi_control(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.jacobi.control";
    let bad = corrupted_phi(config.n)?;
    let rec = jacobi_check(&derive_lattice_table(&bad)?, 1, rng)?;
    Ok(match rec.first_failure {
        Some(f) => with_residual(
            f.residual.clone(),
            base(id).negative().pass(format!("corrupted φ rejected: nonzero Jacobiator at ({}, {}, {})", f.triple.0, f.triple.1, f.triple.2)),
        ),
        None => base(id).negative().fail("0", "corrupted φ passes Jacobi", json!({"phi": phi_json(&bad)})),
    })
}

fn lattice_reduction(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.reduction";
    if let Some(r) = odd_gate(id, config) {
        return Ok(r);
    }
    let rec = reduce_discrete_virasoro(config.n)?;
    let mut out = identity_outcome(id, &[&rec.wt_t_bracket, &rec.wt_t_c, &rec.c_c]);
    if out.status == super::result::Status::Pass {
        if let Some((n, m, got)) = rec.reduced_mismatches.first() {
            return Ok(base(id).fail(got.clone(), "restricted bracket differs from the discrete Virasoro table", json!({"n": n, "m": m})));
        }
        out.details.push_str("; restriction to c = -1 gives the discrete Virasoro table");
    }
    Ok(out)
}

fn lattice_miura(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.miura";
    if let Some(r) = odd_gate(id, config) {
        return Ok(r);
    }
    let check = discrete_miura_check(config.n)?;
    let mut out = identity_outcome(id, &[&check]);
    // both derivations of the discrete Virasoro table agree
    if out.status == super::result::Status::Pass {
        let rec = reduce_discrete_virasoro(config.n)?;
        let phi = solve_first_class_lattice(config.n)?;
        if rec.reduced_table != lattice::discrete_virasoro_table(&phi) {
            return Ok(base(id).fail("-", "reduction and Miura give different tables", json!({"N": config.n})));
        }
        out.details.push_str("; equals the table obtained by reduction");
    }
    Ok(out)
}

fn lattice_nu(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.nu";
    if let Some(r) = odd_gate(id, config) {
        return Ok(r);
    }
    Ok(identity_outcome(id, &[&nu_from_heisenberg_check(config.n)?]))
}

fn lattice_ftv(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.ftv";
    if let Some(r) = odd_gate(id, config) {
        return Ok(r);
    }
    if config.n < 5 {
        return Ok(base(id).skipped("N >= 5 required"));
    }
    let rec = ftv_chain(config.n)?;
    Ok(identity_outcome(id, &[&rec.t2_bracket, &rec.s_identities, &rec.fad_t_route, &rec.fad_nu_route]))
}

fn lattice_root_unity(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.root_unity";
    if let Some(r) = odd_gate(id, config) {
        return Ok(r);
    }
    let phi = solve_first_class_lattice(config.n)?;
    let tol = 1e-10;
    let mut worst = 0.0f64;
    for k in 0..config.n as i64 {
        let dev = root_unity_deviation(&phi, k)?;
        worst = worst.max(dev);
        if dev >= tol {
            return Ok(base(id).fail(format!("{dev:.3e} (tol {tol:e})"), "root-of-unity average differs from φ̂", json!({"k": k})));
        }
    }
    let mut r = base(id).pass(format!("all {} residues within {tol:e}", config.n));
    r.residual = if worst == 0.0 { "0".into() } else { format!("< {tol:e}") };
    Ok(r)
}

fn lattice_action(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.action";
    if config.n > 5 {
        return Ok(base(id).skipped("N <= 5 required for cost"));
    }
    let phi = solve_first_class_lattice(config.n)?;
    let rec = poisson_action_check(&phi, config.points, rng)?;
    Ok(match &rec.first_failure {
        None => base(id).pass(format!("{} points x {} coordinate pairs exact", rec.points, rec.pairs)),
        Some((f, g, idx, diff)) => base(id).fail(
            diff.clone(),
            format!("{} mismatches", rec.failures),
            json!({"pair": [f, g], "point_index": idx}),
        ),
    })
}

fn lattice_action_control(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let id = "lattice.action.control";
    if config.n > 5 {
        return Ok(base(id).negative().skipped("N <= 5 required for cost"));
    }
    let phi = solve_first_class_lattice(config.n)?;
    let rec = poisson_action_check_twisted(&phi, -LATTICE_TWIST, 1, false, rng)?;
    Ok(if rec.passed() {
        base(id).negative().fail("0", "opposite shift orientation is also covariant", json!({"N": config.n}))
    } else {
        let residual = rec.first_failure.as_ref().map(|f| f.3.clone()).unwrap_or_default();
        with_residual(residual, base(id).negative().pass(format!("opposite shift orientation rejected: {} of {} pairs differ", rec.failures, rec.pairs)))
    })
}

fn lattice_canonical_t(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    use crate::difference::random::random_rational;
    let id = "lattice.canonical_t";
    let n = config.n;
    if !canonical_t_matches_wt_t(n)? {
        return Ok(base(id).fail("-", "t̃ restricted to c = -1 is not -(a_k + d_{k+1})", json!({"N": n})));
    }
    let ring = LatticeRing::new(n);
    for idx in 0..config.points.min(10) {
        let a: Vec<BigRational> = (0..n).map(|_| random_rational(rng)).collect();
        let d: Vec<BigRational> = (0..n).map(|_| random_rational(rng)).collect();
        let b: Vec<BigRational> = a.iter().zip(&d).map(|(x, y)| BigRational::one() - x * y).collect();
        let entries = vec![
            vec![SiteArray::from_rationals(a.clone()), SiteArray::from_rationals(b)],
            vec![SiteArray::from_rationals(vec![rat(-1); n]), SiteArray::from_rationals(d.clone())],
        ];
        let m = MatrixOp::new(ring, entries)?;
        let (form, _) = canonicalize(&m)?;
        let expected: Vec<BigRational> = (0..n).map(|k| &a[k] + &d[(k + 1) % n]).collect();
        let got = form.t[0].as_rationals();
        if got.as_ref() != Some(&expected) {
            return Ok(base(id).fail(
                format!("{got:?}"),
                "lattice normal form is not a_k + d_{k+1}",
                json!({"instance": idx, "a": strs(&a), "d": strs(&d)}),
            ));
        }
    }
    let _ = ring.one();
    Ok(base(id).pass("normal form t_k = a_k + d_{k+1} = -t̃_k on c = -1"))
}

fn strs(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids: Vec<&str> = CHECKS.iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        for c in CHECKS {
            assert!(super::super::anchors::is_known_anchor(c.anchor), "{}", c.anchor);
        }
    }

    #[test]
    fn streams_depend_on_id_only() {
        use rand::RngCore;
        assert_eq!(check_rng(7, "x").next_u64(), check_rng(7, "x").next_u64());
        assert_ne!(check_rng(7, "x").next_u64(), check_rng(7, "y").next_u64());
    }
}
