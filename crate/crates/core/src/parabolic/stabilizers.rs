//! The stabilizers `H(D)`, `H′(D)` and `S′(D)`: explicit membership rules and
//! their brute-force counterparts.

use serde::{Deserialize, Serialize};

use super::{blocks_of, l_matrix, Composition, JRoot, RookPlacement};
use crate::actions::{ActionContext, Acting, Carrier};
use crate::budget::Budget;
use crate::error::Result;
use crate::group::ExtensionGroup;
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabilizerVariant {
    /// `H(D) = H_{Gλ_D G}`.
    H,
    /// `H′(D) = H_{Gλ_D U}`.
    HPrime,
}

/// `Some(a)` when `m = aE`.
pub fn scalar_value(m: &Matrix) -> Option<u32> {
    let a = m.get(0, 0);
    let n = m.rows();
    let ok = (0..n).all(|i| (0..n).all(|j| m.get(i, j) == if i == j { a } else { 0 }));
    ok.then_some(a)
}

/// `(h_k, …, h_m)` is one scalar matrix `aE`.
fn scalar_run(blocks: &[Matrix], k: usize, m: usize) -> Option<u32> {
    let a = scalar_value(&blocks[k])?;
    blocks[k + 1..=m].iter().all(|b| scalar_value(b) == Some(a)).then_some(a)
}

/// Membership in `H(γ)`.
pub fn in_h_gamma(comp: &Composition, blocks: &[Matrix], gamma: JRoot) -> bool {
    scalar_run(blocks, comp.block_of(gamma.row), comp.block_of(gamma.col)).is_some()
}

/// Membership in `H′(γ)`: `(h_{k+1}, …, h_m) = aE` and row `i` of `h_k` is `a` on the
/// diagonal and zero elsewhere.
pub fn in_h_prime_gamma(comp: &Composition, blocks: &[Matrix], gamma: JRoot) -> bool {
    let (k, m) = (comp.block_of(gamma.row), comp.block_of(gamma.col));
    let a = match scalar_run(blocks, k + 1, m) {
        Some(a) => a,
        None => return false,
    };
    let i = gamma.row - comp.segment(k).start;
    let hk = &blocks[k];
    (0..hk.cols()).all(|j| hk.get(i, j) == if j == i { a } else { 0 })
}

pub fn in_h(comp: &Composition, h: &Matrix, d: &RookPlacement) -> bool {
    let blocks = blocks_of(comp, h);
    d.roots().iter().all(|&g| in_h_gamma(comp, &blocks, g))
}

pub fn in_h_prime(comp: &Composition, h: &Matrix, d: &RookPlacement) -> bool {
    let blocks = blocks_of(comp, h);
    d.roots().iter().all(|&g| in_h_prime_gamma(comp, &blocks, g))
}

/// `H(D)` or `H′(D)` from the per-root rules, as sorted indices into `L`.
pub fn stabilizer_of_d(g: &ExtensionGroup, comp: &Composition, d: &RookPlacement, variant: StabilizerVariant) -> Vec<u32> {
    (0..g.l().order() as u32)
        .filter(|&i| {
            let h = l_matrix(g, i);
            match variant {
                StabilizerVariant::H => in_h(comp, &h, d),
                StabilizerVariant::HPrime => in_h_prime(comp, &h, d),
            }
        })
        .collect()
}

/// The pointwise stabilizer of `Gλ_D G` or `Gλ_D U`, computed from the span of the orbit.
pub fn stabilizer_brute(g: &ExtensionGroup, comp: &Composition, d: &RookPlacement, variant: StabilizerVariant) -> Vec<u32> {
    let ctx = ActionContext::new(g);
    let (_, lambda) = d.elements(comp);
    let right = match variant {
        StabilizerVariant::H => Acting::G,
        StabilizerVariant::HPrime => Acting::U,
    };
    let span = ctx.orbit_span(Carrier::Dual, &lambda, Acting::G, right);
    ctx.pointwise_stabilizer_span(&span)
}

/// `S′(D)`: the setwise stabilizer of `Gλ_D U` under `Ad*`.
pub fn s_prime_brute(g: &ExtensionGroup, comp: &Composition, d: &RookPlacement, budget: &Budget) -> Result<Vec<u32>> {
    let ctx = ActionContext::new(g);
    let (_, lambda) = d.elements(comp);
    let orbit = ctx.orbit_of(Carrier::Dual, &lambda, Acting::G, Acting::U, budget)?;
    Ok(ctx.setwise_stabilizer_by_rep(&lambda, &orbit))
}
