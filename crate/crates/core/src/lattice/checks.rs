//! Pointwise certificates on the `SL2^N` variety: the Jacobi identity of a
//! coordinate table, and the Poisson property of the twisted conjugation
//! `(g, x) ↦ τ(g) x g^{-1}`.
//!
//! Both sides are evaluated exactly at random rational points. A nonzero
//! polynomial of degree `D` vanishes at a uniformly random point of `S^k`
//! with probability at most `D/|S|` (Schwartz-Zippel); the Jacobiator of a
//! quadratic table has degree 3, so each independent point that returns
//! zero lowers the chance of a false pass by that factor.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::algebra::{rat, Gen, GenKind, LatticePolynomial};
use crate::error::Result;

use super::config::LatticeConfig;
use super::bracket::{derive_lattice_table_twisted, poisson_bracket, sklyanin_table, LatticeBracketTable, LATTICE_TWIST};
use super::phi::{wrap, LatticePhi};

/// Values of `a_k, b_k, c_k, d_k` at every site.
pub type VarietyPoint = BTreeMap<Gen, BigRational>;

fn small_rational(rng: &mut impl Rng) -> BigRational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=7);
    BigRational::new(num.into(), den.into())
}

fn nonzero_rational(rng: &mut impl Rng) -> BigRational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A random element of `SL2(Q)`: `[[1,x],[0,1]]·[[1,0],[y,1]]·diag(u, 1/u)`.
pub fn random_sl2(rng: &mut impl Rng) -> [[BigRational; 2]; 2] {
    let (x, y, u) = (small_rational(rng), small_rational(rng), nonzero_rational(rng));
    let one = BigRational::one();
    let a = (&one + &x * &y) * &u;
    let b = &x / &u;
    let c = &y * &u;
    let d = one / &u;
    [[a, b], [c, d]]
}

/// Random point with sites `offset .. offset + n`.
pub fn random_point(rng: &mut impl Rng, n: usize, offset: usize) -> VarietyPoint {
    let mut p = BTreeMap::new();
    for s in 0..n {
        let m = random_sl2(rng);
        for (k, kind) in GenKind::ENTRIES.iter().enumerate() {
            p.insert(Gen::new(*kind, s + offset), m[k / 2][k % 2].clone());
        }
    }
    p
}

fn coordinates(n: usize, offset: usize) -> Vec<Gen> {
    (offset..offset + n).flat_map(|s| GenKind::ENTRIES.map(|k| Gen::new(k, s))).collect()
}

/// A nonzero Jacobiator with its arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiFailure {
    pub point_index: usize,
    pub triple: (String, String, String),
    pub residual: String,
    pub point: LatticeConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiRecord {
    pub n: usize,
    pub points: usize,
    pub triples_per_point: usize,
    pub first_failure: Option<JacobiFailure>,
    pub failures: usize,
}

impl JacobiRecord {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.points > 0
    }
}

/// Jacobiator of the coordinate table at random variety points, over all
/// triples of distinct coordinates.
pub fn jacobi_check(table: &LatticeBracketTable, points: usize, rng: &mut impl Rng) -> Result<JacobiRecord> {
    let pts: Vec<VarietyPoint> = (0..points).map(|_| random_point(rng, table.n(), 0)).collect();
    jacobi_at_points(table, &pts)
}

/// [`jacobi_check`] at given points.
pub fn jacobi_at_points(table: &LatticeBracketTable, points: &[VarietyPoint]) -> Result<JacobiRecord> {
    let n = table.n();
    let coords = coordinates(n, 0);
    // ∂_w {u, v} for every pair, kept sparse.
    let mut partials: BTreeMap<(Gen, Gen), Vec<(Gen, LatticePolynomial)>> = BTreeMap::new();
    for &u in &coords {
        for &v in &coords {
            let p = table.get(u, v);
            partials.insert((u, v), p.gens().into_iter().map(|w| (w, p.derivative(w))).collect());
        }
    }
    let mut first_failure = None;
    let mut failures = 0;
    let mut triples = 0;
    for (idx, pt) in points.iter().enumerate() {
        let mut value: BTreeMap<(Gen, Gen), BigRational> = BTreeMap::new();
        for &u in &coords {
            for &v in &coords {
                value.insert((u, v), table.get(u, v).eval(pt)?);
            }
        }
        let mut dvalue: BTreeMap<(Gen, Gen), Vec<(Gen, BigRational)>> = BTreeMap::new();
        for (k, list) in &partials {
            let evald: Result<Vec<_>> = list.iter().map(|(w, d)| Ok((*w, d.eval(pt)?))).collect();
            dvalue.insert(*k, evald?);
        }
        // {f, {g, h}} = Σ_w {f, w} ∂_w {g, h}
        let nested = |f: Gen, g: Gen, h: Gen| -> BigRational {
            dvalue[&(g, h)].iter().map(|(w, d)| &value[&(f, *w)] * d).sum()
        };
        triples = 0;
        for (i, &f) in coords.iter().enumerate() {
            for (j, &g) in coords.iter().enumerate().skip(i + 1) {
                for &h in coords.iter().skip(j + 1) {
                    triples += 1;
                    let jac = nested(f, g, h) + nested(g, h, f) + nested(h, f, g);
                    if !jac.is_zero() {
                        failures += 1;
                        if first_failure.is_none() {
                            first_failure = Some(JacobiFailure {
                                point_index: idx,
                                triple: (f.to_string(), g.to_string(), h.to_string()),
                                residual: jac.to_string(),
                                point: LatticeConfig::from_variety_point(pt, n).expect("point covers every site")?,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(JacobiRecord { n, points: points.len(), triples_per_point: triples, first_failure, failures })
}

/// Coordinates of `τ(g) x g^{-1}` with `g` on sites `0..N` and `x` on
/// sites `N..2N`: `(g_{k+1} x_k g_k^{-1})_{ij}`.
pub fn twisted_conjugation(n: usize) -> BTreeMap<Gen, LatticePolynomial> {
    let gv = |kind, s: usize| LatticePolynomial::gen(kind, s);
    let entry = |m: [[GenKind; 2]; 2], i: usize, j: usize| m[i][j];
    let kinds = [[GenKind::A, GenKind::B], [GenKind::C, GenKind::D]];
    let mut out = BTreeMap::new();
    for k in 0..n {
        let next = wrap(k as i64 + 1, n);
        let inv = |i: usize, j: usize| -> LatticePolynomial {
            // [[d, -b], [-c, a]]
            match (i, j) {
                (0, 0) => gv(GenKind::D, k),
                (0, 1) => -gv(GenKind::B, k),
                (1, 0) => -gv(GenKind::C, k),
                _ => gv(GenKind::A, k),
            }
        };
        for i in 0..2 {
            for j in 0..2 {
                let mut p = LatticePolynomial::zero();
                for l in 0..2 {
                    for r in 0..2 {
                        let term = &(&gv(entry(kinds, i, l), next) * &gv(entry(kinds, l, r), n + k)) * &inv(r, j);
                        p = &p + &term;
                    }
                }
                out.insert(Gen::new(entry(kinds, i, j), k), p);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionRecord {
    pub n: usize,
    pub points: usize,
    pub pairs: usize,
    pub failures: usize,
    /// `(f, g, point index, lhs - rhs)` for the first failure.
    pub first_failure: Option<(String, String, usize, String)>,
}

impl ActionRecord {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.points > 0
    }
}

/// Product structure on `SL2^N × SL2^N`: Sklyanin on the gauge factor
/// (sites `0..N`), the twisted table on the second factor (sites `N..2N`).
fn product_table(phi: &LatticePhi, twist: i64) -> Result<LatticeBracketTable> {
    sklyanin_table(phi)?.merged_with(&derive_lattice_table_twisted(phi, twist)?, phi.n())
}

/// Checks `{f∘m, g∘m} = {f, g} ∘ m` for the twisted conjugation `m` at
/// `points` random points, for all pairs of coordinates. With
/// `gauge_identity` the gauge factor is pinned to the identity.
pub fn poisson_action_check_twisted(
    phi: &LatticePhi,
    twist: i64,
    points: usize,
    gauge_identity: bool,
    rng: &mut impl Rng,
) -> Result<ActionRecord> {
    let n = phi.n();
    let target = derive_lattice_table_twisted(phi, twist)?;
    let product = product_table(phi, twist)?;
    let m = twisted_conjugation(n);
    let coords = coordinates(n, 0);
    let none = BTreeSet::new();
    let mut pulled: BTreeMap<(Gen, Gen), LatticePolynomial> = BTreeMap::new();
    for (i, &f) in coords.iter().enumerate() {
        for &g in coords.iter().skip(i + 1) {
            pulled.insert((f, g), poisson_bracket(&m[&f], &m[&g], &product, &none)?);
        }
    }
    let mut failures = 0;
    let mut first_failure = None;
    for idx in 0..points {
        let mut pt = if gauge_identity {
            let mut p = BTreeMap::new();
            for s in 0..n {
                for (k, kind) in GenKind::ENTRIES.iter().enumerate() {
                    p.insert(Gen::new(*kind, s), if k == 0 || k == 3 { rat(1) } else { rat(0) });
                }
            }
            p
        } else {
            random_point(rng, n, 0)
        };
        pt.extend(random_point(rng, n, n));
        let image: VarietyPoint = m.iter().map(|(g, p)| Ok((*g, p.eval(&pt)?))).collect::<Result<_>>()?;
        for ((f, g), lhs) in &pulled {
            let diff = lhs.eval(&pt)? - target.get(*f, *g).eval(&image)?;
            if !diff.is_zero() {
                failures += 1;
                if first_failure.is_none() {
                    first_failure = Some((f.to_string(), g.to_string(), idx, diff.to_string()));
                }
            }
        }
    }
    Ok(ActionRecord { n, points, pairs: pulled.len(), failures, first_failure })
}

/// Checks that the first-class brackets `{c_n, c_m}` vanish at random
/// gauge transforms of constraint-surface points.
pub fn constraint_invariance_check(phi: &LatticePhi, points: usize, rng: &mut impl Rng) -> Result<bool> {
    let n = phi.n();
    let table = derive_lattice_table_twisted(phi, LATTICE_TWIST)?;
    for _ in 0..points {
        // a point with c_k = -1 (b_k = 1 - a_k d_k)
        let mut x = BTreeMap::new();
        for s in 0..n {
            let (a, d) = (small_rational(rng), small_rational(rng));
            let b = BigRational::one() - &a * &d;
            x.insert(Gen::new(GenKind::A, s), a);
            x.insert(Gen::new(GenKind::B, s), b);
            x.insert(Gen::new(GenKind::C, s), rat(-1));
            x.insert(Gen::new(GenKind::D, s), d);
        }
        for u in 0..n {
            for v in 0..n {
                if !table.get(Gen::new(GenKind::C, u), Gen::new(GenKind::C, v)).eval(&x)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// [`poisson_action_check_twisted`] with the covariant orientation.
pub fn poisson_action_check(phi: &LatticePhi, points: usize, rng: &mut impl Rng) -> Result<ActionRecord> {
    poisson_action_check_twisted(phi, LATTICE_TWIST, points, false, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::phi::solve_first_class_lattice;
    use rand::SeedableRng;

    #[test]
    fn random_sl2_has_unit_determinant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let m = random_sl2(&mut rng);
            assert_eq!(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0], BigRational::one());
        }
    }

    #[test]
    fn covariance_singles_out_the_orientation() {
        let phi = solve_first_class_lattice(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        assert!(poisson_action_check(&phi, 2, &mut rng).unwrap().passed());
        assert!(!poisson_action_check_twisted(&phi, -LATTICE_TWIST, 1, false, &mut rng).unwrap().passed());
        // gauge factor at the identity: both orientations reduce to the table itself
        assert!(poisson_action_check_twisted(&phi, -LATTICE_TWIST, 1, true, &mut rng).unwrap().passed());
    }

    #[test]
    fn jacobi_and_control() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let phi = solve_first_class_lattice(3).unwrap();
        let table = crate::lattice::derive_lattice_table(&phi).unwrap();
        assert!(jacobi_check(&table, 3, &mut rng).unwrap().passed());
        let bad = LatticePhi::from_ints(&[1, -1, 0]).unwrap();
        let table = crate::lattice::derive_lattice_table(&bad).unwrap();
        let rec = jacobi_check(&table, 1, &mut rng).unwrap();
        assert!(rec.first_failure.is_some());
    }

    #[test]
    fn constraints_stay_first_class() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let phi = solve_first_class_lattice(5).unwrap();
        assert!(constraint_invariance_check(&phi, 5, &mut rng).unwrap());
    }
}
