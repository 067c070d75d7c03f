//! Left and right gradients of the coordinate functions `a_m, b_m, c_m, d_m`
//! on the loop group, with respect to the pairing
//! `(X, Y) = [s^0] tr(X Y)` on loop `sl2`.

use std::fmt;

use crate::algebra::{GenKind, LaurentPoly, RationalFunctionQ as Rf};
use crate::error::{Error, Result};

use super::bilocal::SeriesPoly;
use super::point::LoopPoint;

/// The functional `x_m`: the `m`-th Fourier coefficient of entry `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId {
    pub entry: GenKind,
    pub mode: i64,
}

impl GeneratorId {
    pub fn new(entry: GenKind, mode: i64) -> Result<Self> {
        entry_position(entry)?;
        Ok(GeneratorId { entry, mode })
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.entry.symbol(), self.mode)
    }
}

/// Left gradient: derivative along `x -> e^{tξ} x`; right: along `x e^{tξ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub const LOOP_ENTRIES: [GenKind; 4] = [GenKind::A, GenKind::B, GenKind::C, GenKind::D];

/// Row and column of an entry family.
pub fn entry_position(kind: GenKind) -> Result<(usize, usize)> {
    match kind {
        GenKind::A => Ok((0, 0)),
        GenKind::B => Ok((0, 1)),
        GenKind::C => Ok((1, 0)),
        GenKind::D => Ok((1, 1)),
        other => Err(Error::InvalidConfig(format!("{} is not a loop-group entry", other.symbol()))),
    }
}

pub fn entry_at(row: usize, col: usize) -> GenKind {
    LOOP_ENTRIES[2 * row + col]
}

/// Gradient of `x_m` with the factor `s^{-m}` stripped: a traceless matrix
/// whose entries are linear in the entry families.
pub fn symbolic_gradient(entry: GenKind, side: Side) -> Result<[[SeriesPoly; 2]; 2]> {
    let (i, j) = entry_position(entry)?;
    // Left: column i of P is column j of x. Right: row j of P is row i of x.
    let mut p: [[SeriesPoly; 2]; 2] = Default::default();
    for k in 0..2 {
        match side {
            Side::Left => p[k][i] = SeriesPoly::factor(entry_at(k, j), 0, 1),
            Side::Right => p[j][k] = SeriesPoly::factor(entry_at(i, k), 0, 1),
        }
    }
    let half_trace = p[0][0].add(&p[1][1]).scale(&Rf::from_ratio(1, 2));
    let minus = Rf::from_int(-1);
    p[0][0] = p[0][0].add(&half_trace.scale(&minus));
    p[1][1] = p[1][1].add(&half_trace.scale(&minus));
    Ok(p)
}

/// Evaluated gradient `s^{-m} (P - tr(P)/2)` at a point.
pub fn gradient(g: GeneratorId, side: Side, point: &LoopPoint) -> Result<[[LaurentPoly; 2]; 2]> {
    let sym = symbolic_gradient(g.entry, side)?;
    let values = point.values();
    let mut out: [[LaurentPoly; 2]; 2] = Default::default();
    for (r, row) in sym.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            out[r][c] = x.evaluate(&values)?.mul_s_pow(-g.mode);
        }
    }
    Ok(out)
}

/// `[s^0] tr(X Y)`.
pub fn pairing(x: &[[LaurentPoly; 2]; 2], y: &[[LaurentPoly; 2]; 2]) -> Rf {
    let mut acc = Rf::zero();
    for i in 0..2 {
        for k in 0..2 {
            acc = &acc + &(&x[i][k] * &y[k][i]).coeff(0);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn table_entries() {
        let p = LoopPoint::random(&mut rand_chacha::ChaCha8Rng::seed_from_u64(11), 3);
        let gb = gradient(GeneratorId::new(GenKind::B, 2).unwrap(), Side::Left, &p).unwrap();
        assert_eq!(gb[1][0], p.d().mul_s_pow(-2));
        assert_eq!(gb[0][1], LaurentPoly::zero());
        let ga = gradient(GeneratorId::new(GenKind::A, 0).unwrap(), Side::Right, &p).unwrap();
        assert_eq!(ga[0][1], p.b().clone());
        assert_eq!(ga[1][0], LaurentPoly::zero());
    }

    #[test]
    fn gradients_are_traceless() {
        let p = LoopPoint::random(&mut rand_chacha::ChaCha8Rng::seed_from_u64(11), 3);
        for e in LOOP_ENTRIES {
            for side in [Side::Left, Side::Right] {
                let g = gradient(GeneratorId::new(e, 1).unwrap(), side, &p).unwrap();
                assert!((&g[0][0] + &g[1][1]).is_zero());
            }
        }
    }
}
