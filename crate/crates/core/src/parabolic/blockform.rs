//! Coarsenings of `[1, ℓ]` attached to `h ∈ L`, the canonical block form used
//! for GU superclasses, and the root description of `J_h` and `J′_h`.

use serde::{Deserialize, Serialize};

use super::stabilizers::scalar_value;
use super::{block_diag, blocks_of, Composition, JRoot};
use crate::actions::{ActionContext, Acting, Carrier, Flavor, OrbitSpans};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::ExtensionGroup;
use crate::linalg::{Matrix, Subspace};

/// A maximal coarsening of `[1, ℓ]` with the conjugated element in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockForm {
    pub flavor: Flavor,
    /// Inclusive 0-based block ranges `[k, m]`.
    pub segments: Vec<(usize, usize)>,
    /// `r` with `form = r h r^{-1}`.
    pub conjugator: Matrix,
    pub form: Matrix,
    /// For each segment with `k < m`: the scalar `a` and `s_k`, the number of
    /// leading rows of `h_k` equal to `a` times a unit row.
    pub leading: Vec<Option<(u32, usize)>>,
}

/// Left eigenspace `{v : v h = a v}` as row vectors.
fn left_eigenspace(h: &Matrix, a: u32) -> Vec<Vec<u32>> {
    let p = h.modulus();
    let mut m = h.transpose();
    for i in 0..m.rows() {
        m.set(i, i, (m.get(i, i) + p - a % p) % p);
    }
    m.nullspace()
}

/// `[k, m]` may be one segment: GG needs `(h_k, …, h_m)` scalar; GU needs
/// `h_{k+1} = … = h_m = aE` with `a` an eigenvalue of `h_k`.
fn valid_segment(blocks: &[Matrix], k: usize, m: usize, flavor: Flavor) -> Option<u32> {
    if k == m {
        return None;
    }
    let a = scalar_value(&blocks[k + 1])?;
    if blocks[k + 1..=m].iter().any(|b| scalar_value(b) != Some(a)) {
        return None;
    }
    let ok = match flavor {
        Flavor::GG => scalar_value(&blocks[k]) == Some(a),
        _ => !left_eigenspace(&blocks[k], a).is_empty(),
    };
    ok.then_some(a)
}

fn check_in_l(comp: &Composition, h: &Matrix) -> Result<Vec<Matrix>> {
    let n = comp.n();
    if h.rows() != n || h.cols() != n {
        return Err(Error::Input(format!("expected a {n}×{n} matrix")));
    }
    for i in 0..n {
        for j in 0..n {
            if comp.block_of(i) != comp.block_of(j) && h.get(i, j) != 0 {
                return Err(Error::Input(format!("h is not block diagonal of type {comp}")));
            }
        }
    }
    let blocks = blocks_of(comp, h);
    if blocks.iter().any(|b| !b.is_invertible()) {
        return Err(Error::Input("h has a singular diagonal block".into()));
    }
    Ok(blocks)
}

/// The maximal coarsening for `flavor` (GG: scalar segments; GU: segments of
/// type `diag((aE_s 0; Y X), aE, …, aE)`), computed greedily left to right and
/// confirmed by testing every adjacent merge.
pub fn canonical_block_form(comp: &Composition, h: &Matrix, flavor: Flavor) -> Result<BlockForm> {
    let blocks = check_in_l(comp, h)?;
    let p = h.modulus();
    let l = blocks.len();
    let mut segments = Vec::new();
    let mut leading = Vec::new();
    let mut k = 0;
    while k < l {
        let mut m = k;
        let mut a = None;
        while m + 1 < l {
            match valid_segment(&blocks, k, m + 1, flavor) {
                Some(v) => {
                    a = Some(v);
                    m += 1;
                }
                None => break,
            }
        }
        segments.push((k, m));
        leading.push(a);
        k = m + 1;
    }
    for w in segments.windows(2) {
        if valid_segment(&blocks, w[0].0, w[1].1, flavor).is_some() {
            return Err(Error::Axiom(format!("coarsening of {h:?} is not maximal")));
        }
    }
    let mut r_blocks: Vec<Matrix> = blocks.iter().map(|b| Matrix::identity(b.rows(), p)).collect();
    let mut lead = Vec::with_capacity(segments.len());
    for (&(k, _), a) in segments.iter().zip(&leading) {
        lead.push(a.map(|a| {
            let eig = left_eigenspace(&blocks[k], a);
            let s = eig.len();
            r_blocks[k] = complete_basis(eig, blocks[k].rows(), p);
            (a, s)
        }));
    }
    let r = block_diag(comp, &r_blocks, p);
    let form = r.mul(h).mul(&r.inverse().expect("r is invertible"));
    let out = BlockForm {
        flavor,
        segments,
        conjugator: r,
        form,
        leading: lead,
    };
    if flavor != Flavor::GG {
        check_row_form(comp, &out)?;
    }
    Ok(out)
}

/// Rows `v_1, …, v_s` followed by unit rows completing them to a basis.
fn complete_basis(mut rows: Vec<Vec<u32>>, n: usize, p: u32) -> Matrix {
    for j in 0..n {
        if rows.len() == n {
            break;
        }
        let mut e = vec![0u32; n];
        e[j] = 1;
        let mut trial = rows.clone();
        trial.push(e);
        if Matrix::from_rows(&trial, n, p).rank() == trial.len() {
            rows = trial;
        }
    }
    Matrix::from_rows(&rows, n, p)
}

/// The leading block is `(aE_s 0; Y X)` with `(Y | X − aE)` of rank `n_k − s`.
fn check_row_form(comp: &Composition, f: &BlockForm) -> Result<()> {
    let blocks = blocks_of(comp, &f.form);
    let p = f.form.modulus();
    for (&(k, _), lead) in f.segments.iter().zip(&f.leading) {
        if let Some((a, s)) = *lead {
            let hk = &blocks[k];
            let nk = hk.rows();
            let mut shifted = hk.clone();
            for i in 0..nk {
                shifted.set(i, i, (shifted.get(i, i) + p - a) % p);
            }
            let top_zero = (0..s).all(|i| (0..nk).all(|j| shifted.get(i, j) == 0));
            let bottom: Vec<Vec<u32>> = (s..nk).map(|i| shifted.row(i).to_vec()).collect();
            let rank_ok = bottom.is_empty() || Matrix::from_rows(&bottom, nk, p).rank() == nk - s;
            if !top_zero || !rank_ok {
                return Err(Error::Axiom(format!("block {k} is not in the required normal form")));
            }
        }
    }
    Ok(())
}

fn unit(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; d];
    v[i] = 1;
    v
}

/// Outcome of comparing the explicit ideal with the one computed from orbit spans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealCheck {
    pub explicit_dim: usize,
    /// The explicit ideal is spanned by the root vectors it contains.
    pub root_spanned: bool,
    /// `None` when no orbit spans were supplied.
    pub matches_generic: Option<bool>,
}

impl IdealCheck {
    pub fn holds(&self) -> bool {
        self.root_spanned && self.matches_generic != Some(false)
    }
}

#[derive(Clone, Debug)]
pub struct RootsOutside {
    pub form: BlockForm,
    pub explicit: Subspace,
    /// `Δ_h` (GG) or `Δ′_h` (GU) for `form.form`.
    pub roots: Vec<JRoot>,
    pub check: IdealCheck,
}

/// `Δ_h` or `Δ′_h`. The explicit ideal is `J̃` for GG and `Im(Ad_h − 1) + J̃` for GU,
/// evaluated at the canonical form of `h`; when `spans` (orbit spans of the
/// flavor pair on `J*`) is given it is compared with the ideal computed from them.
pub fn roots_outside_ideal(
    g: &ExtensionGroup,
    comp: &Composition,
    h: &Matrix,
    flavor: Flavor,
    spans: Option<&OrbitSpans>,
) -> Result<RootsOutside> {
    if !matches!(flavor, Flavor::GG | Flavor::GU) {
        return Err(Error::Input(format!("no explicit ideal for flavor {flavor}")));
    }
    let form = canonical_block_form(comp, h, flavor)?;
    let p = g.p();
    let roots = comp.roots();
    let d = roots.len();
    let idx = g
        .l()
        .index_of(form.form.data())
        .ok_or_else(|| Error::Input("h is not an element of L".into()))?;
    let mut explicit = tilde_j(comp, &form.segments, p);
    if flavor == Flavor::GU {
        let mut m = g.l().ad(idx);
        for i in 0..d {
            m.set(i, i, (m.get(i, i) + p - 1) % p);
        }
        let cols: Vec<Vec<u32>> = (0..d).map(|j| m.column(j)).collect();
        explicit = explicit.sum(&Subspace::span(&cols, d, p));
    }
    let inside: Vec<bool> = (0..d).map(|i| explicit.contains(&unit(d, i))).collect();
    let root_spanned = inside.iter().filter(|&&b| b).count() == explicit.dim();
    let matches_generic = match spans {
        Some(s) => {
            let ctx = ActionContext::new(g);
            let generic = ctx.ideal_of(idx, flavor, s)?;
            Some(generic.subspace.contains_subspace(&explicit) && explicit.contains_subspace(&generic.subspace))
        }
        None => None,
    };
    let outside = roots.iter().zip(&inside).filter(|(_, &i)| !i).map(|(&r, _)| r).collect();
    Ok(RootsOutside {
        check: IdealCheck {
            explicit_dim: explicit.dim(),
            root_spanned,
            matches_generic,
        },
        form,
        explicit,
        roots: outside,
    })
}

/// `J̃`: the radical of the coarser parabolic, spanned by roots joining different segments.
pub fn tilde_j(comp: &Composition, segments: &[(usize, usize)], p: u32) -> Subspace {
    let roots = comp.roots();
    let seg_of = |b: usize| segments.iter().position(|&(k, m)| k <= b && b <= m).unwrap();
    let vecs: Vec<Vec<u32>> = roots
        .iter()
        .enumerate()
        .filter(|(_, r)| seg_of(comp.block_of(r.row)) != seg_of(comp.block_of(r.col)))
        .map(|(i, _)| unit(roots.len(), i))
        .collect();
    Subspace::span(&vecs, roots.len(), p)
}

/// Orbit spans of the flavor pair on `J*`, as needed by [`roots_outside_ideal`].
pub fn flavor_spans(g: &ExtensionGroup, flavor: Flavor, budget: &Budget) -> Result<OrbitSpans> {
    let ctx = ActionContext::new(g);
    let (left, right) = flavor.sides();
    let orbits = ctx.orbit_enum(Carrier::Dual, left, right, budget)?;
    Ok(OrbitSpans::new(&orbits))
}

/// `{x : π(x) ∈ ω}` where `ω` is the `U×G` (GU) or `G×G` (GG) orbit of `x` in
/// `J/ideal`, returned as a membership test on `J`.
pub fn quotient_orbit_of(
    g: &ExtensionGroup,
    ideal: &Subspace,
    x: &[u32],
    flavor: Flavor,
    budget: &Budget,
) -> Result<impl Fn(&[u32]) -> bool> {
    let ctx = ActionContext::new(g);
    let gens = match flavor {
        Flavor::GG => ctx.generators(Carrier::J, Acting::G, Acting::G),
        _ => ctx.generators(Carrier::J, Acting::U, Acting::G),
    };
    let orbits = ctx.quotient_orbits(ideal, &gens, budget)?;
    let target = orbits.orbit_index(x);
    Ok(move |y: &[u32]| orbits.orbit_index(y) == target)
}
