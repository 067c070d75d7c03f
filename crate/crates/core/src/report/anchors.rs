//! Topic tags attached to checks, grouped for the markdown report. The
//! guide's `anchors` chapter lists the same tags.

/// `(tag, group, description)`.
pub const ANCHORS: &[(&str, &str, &str)] = &[
    ("loop-first-class-phi", "Loop group", "first-class Cartan coefficients φ_n = 1/(1+q^n)"),
    ("loop-bracket-table", "Loop group", "brackets of A, B, C, D from the twisted r-matrix bracket"),
    ("loop-jacobi", "Loop group", "Jacobi identity of the loop bracket"),
    ("q-virasoro-reduction", "Loop group", "reduction of the loop bracket to q-Virasoro"),
    ("loop-miura", "Loop group", "free-field realization T = Λ(z) + Λ(zq)^{-1}"),
    ("w-structure", "Loop group", "W_N structure constants at N = 2"),
    ("q-specialization", "Loop group", "spot checks at a rational value of q"),
    ("gauge-normal-form", "Difference operators", "gauge normal form and its invariance"),
    ("lattice-phi", "Lattice", "first-class φ on Z/NZ"),
    ("lattice-cybe", "Lattice", "classical Yang-Baxter equation for the lattice r-matrix"),
    ("lattice-bracket-table", "Lattice", "derived bracket table on SL2^N"),
    ("lattice-jacobi", "Lattice", "Jacobi identity on the SL2^N variety"),
    ("twisted-covariance", "Lattice", "Poisson property of (g, x) ↦ τ(g) x g^{-1}"),
    ("discrete-virasoro-reduction", "Lattice", "reduction to the discrete Virasoro bracket"),
    ("discrete-miura", "Lattice", "free-field realization t_n = λ_n + λ_{n+1}^{-1}"),
    ("ftv-chain", "Lattice", "t^(2), s_n and the Faddeev-Takhtajan-Volkov bracket"),
    ("root-of-unity", "Lattice", "φ̂ as a root-of-unity average"),
];

pub fn anchor_group(tag: &str) -> &'static str {
    ANCHORS.iter().find(|(t, _, _)| *t == tag).map(|(_, g, _)| *g).unwrap_or("Other")
}

pub fn is_known_anchor(tag: &str) -> bool {
    ANCHORS.iter().any(|(t, _, _)| *t == tag)
}
