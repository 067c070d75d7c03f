//! Exact Jacobi identity check for the loop bracket at a point.

use std::collections::BTreeMap;

use crate::algebra::{GenKind, RationalFunctionQ as Rf};
use crate::error::Result;

use super::bilocal::{leibniz, mode, BracketRule, LoopMonomial, PointValues, SeriesPoly};
use super::gradient::GeneratorId;
use super::spec::RMatrixSpec;

/// Evaluates nested brackets of entry modes at a fixed point.
pub struct NestedBrackets<'a, R> {
    rule: R,
    spec: RMatrixSpec,
    values: &'a PointValues,
    cache: BTreeMap<(GenKind, LoopMonomial), BracketRule>,
}

impl<'a, R> NestedBrackets<'a, R>
where
    R: Fn(GenKind, GenKind) -> Result<BracketRule> + Copy,
{
    pub fn new(rule: R, spec: RMatrixSpec, values: &'a PointValues) -> Self {
        NestedBrackets { rule, spec, values, cache: BTreeMap::new() }
    }

    /// `{f_m, ζ_k}` for a monomial `ζ` in shifted series.
    fn with_monomial(&mut self, f: GeneratorId, z: &LoopMonomial, k: i64) -> Result<Rf> {
        let key = (f.entry, z.clone());
        if !self.cache.contains_key(&key) {
            let r = leibniz(&SeriesPoly::factor(f.entry, 0, 1), &SeriesPoly::term(Rf::one(), z.clone()), self.rule)?;
            self.cache.insert(key.clone(), r);
        }
        self.cache[&key].eval_modes(&self.spec, f.mode, k, self.values)
    }

    /// `{f, {g, h}}`: the inner bracket is `Σ c Σ_n κ(n) ζ_{p-n} ω_{r+n}`
    /// and the outer one acts on it by the Leibniz rule. Both sums are
    /// finite because `ζ` and `ω` have finite support.
    pub fn nested(&mut self, f: GeneratorId, g: GeneratorId, h: GeneratorId) -> Result<Rf> {
        let inner = (self.rule)(g.entry, h.entry)?;
        let (p, r) = (g.mode, h.mode);
        let mut total = Rf::zero();
        for (key, c) in inner.terms() {
            let zeta = key.z.evaluate(self.values)?;
            let omega = key.w.evaluate(self.values)?;
            // {f, ζ_{p-n}} ω_{r+n}
            for (e, wc) in omega.terms() {
                let n = -e - r;
                let kappa = key.atom.coefficient(n, &self.spec);
                if kappa.is_zero() {
                    continue;
                }
                let fz = self.with_monomial(f, &key.z, p - n)?;
                total = &total + &(&(c * &kappa) * &(&fz * wc));
            }
            // ζ_{p-n} {f, ω_{r+n}}
            for (e, zc) in zeta.terms() {
                let n = p + e;
                let kappa = key.atom.coefficient(n, &self.spec);
                if kappa.is_zero() {
                    continue;
                }
                debug_assert_eq!(&mode(&zeta, p - n), zc);
                let fw = self.with_monomial(f, &key.w, r + n)?;
                total = &total + &(&(c * &kappa) * &(zc * &fw));
            }
        }
        Ok(total)
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
    pub fn jacobiator(&mut self, f: GeneratorId, g: GeneratorId, h: GeneratorId) -> Result<Rf> {
        let a = self.nested(f, g, h)?;
        let b = self.nested(g, h, f)?;
        let c = self.nested(h, f, g)?;
        Ok(&(&a + &b) + &c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loop_poisson::derive::hand_table;
    use crate::loop_poisson::point::LoopPoint;
    use rand::SeedableRng;

    #[test]
    fn jacobi_on_a_few_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let p = LoopPoint::random(&mut rng, 3);
        let values = p.values();
        let mut nb = NestedBrackets::new(hand_table, RMatrixSpec::first_class(), &values);
        let g = |e, m| GeneratorId::new(e, m).unwrap();
        for (x, y, z) in [(GenKind::A, GenKind::B, GenKind::C), (GenKind::B, GenKind::C, GenKind::D), (GenKind::D, GenKind::D, GenKind::A)] {
            let j = nb.jacobiator(g(x, 0), g(y, 1), g(z, -1)).unwrap();
            assert!(j.is_zero(), "{j}");
        }
    }
}
