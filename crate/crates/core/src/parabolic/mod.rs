//! Parabolic subgroups `G = L ⋉ U` of `GL(n, p)` given by block compositions,
//! with J-roots, rook placements and the explicit descriptions of stabilizers,
//! ideals and superclass shapes.

pub mod blockform;
pub mod conjecture;
pub mod rooks;
pub mod shape;
pub mod stabilizers;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::NilpotentAlgebra;
use crate::budget::{checked_pow, Budget};
use crate::error::{Error, Result};
use crate::group::{ExtensionGroup, LGroup};
use crate::linalg::Matrix;
use crate::scalars::fp::{is_prime, primitive_root};

pub use blockform::{canonical_block_form, roots_outside_ideal, BlockForm, IdealCheck};
pub use conjecture::{check_conjecture, check_uu_prop, ConjectureReport, UuPropReport};
pub use rooks::{classify, enumerate_rook_placements, rook_classes, RookClass, RookClassification};
pub use shape::{Cell, Shape};
pub use stabilizers::{in_h, in_h_prime, stabilizer_of_d, StabilizerVariant};

/// Largest `n` accepted for a composition; `L` is enumerated element by element.
pub const MAX_N: usize = 16;

/// Block sizes `n_1, …, n_ℓ` of `[1, n]` with their consecutive segments `I_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Composition {
    blocks: Vec<usize>,
}

impl Composition {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::Input("composition blocks must be positive and non-empty".into()));
        }
        let n: usize = blocks.iter().sum();
        if n > MAX_N {
            return Err(Error::Input(format!("n = {n} exceeds {MAX_N}")));
        }
        Ok(Composition { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// `I_k` as a 0-based range of row indices.
    pub fn segment(&self, k: usize) -> Range<usize> {
        let start: usize = self.blocks[..k].iter().sum();
        start..start + self.blocks[k]
    }

    /// Block containing the 0-based index `i`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (k, &b) in self.blocks.iter().enumerate() {
            acc += b;
            if i < acc {
                return k;
            }
        }
        panic!("index {i} outside [0, {})", self.n())
    }

    /// `Δ_J` in `(row, col)` order.
    pub fn roots(&self) -> Vec<JRoot> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.block_of(i) < self.block_of(j) {
                    out.push(JRoot { row: i, col: j });
                }
            }
        }
        out
    }

    /// Coordinate of `E_γ` in the basis `Δ_J`.
    pub fn root_index(&self, root: JRoot) -> Option<usize> {
        self.roots().iter().position(|&r| r == root)
    }

    /// `J` with basis `Δ_J` and `E_ij E_jk = E_ik`.
    pub fn algebra(&self, p: u32) -> Result<NilpotentAlgebra> {
        let roots = self.roots();
        let d = roots.len();
        let mut mult = vec![vec![vec![]; d]; d];
        for (a, ra) in roots.iter().enumerate() {
            for (b, rb) in roots.iter().enumerate() {
                if ra.col == rb.row {
                    let c = roots
                        .iter()
                        .position(|r| r.row == ra.row && r.col == rb.col)
                        .expect("J is closed under products");
                    mult[a][b] = vec![(c, 1)];
                }
            }
        }
        NilpotentAlgebra::from_sparse(p, d, &mult)
    }

    /// `(|L|, |U|)` without enumerating anything.
    pub fn orders(&self, p: u32) -> (u128, u128) {
        let l = self.blocks.iter().map(|&b| gl_order(b, p)).product();
        (l, checked_pow(p as u64, self.roots().len()))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Comma-separated block sizes, e.g. `2,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad block size {t:?} in composition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(blocks)
    }
}

/// `|GL(b, p)|`.
pub fn gl_order(b: usize, p: u32) -> u128 {
    let q = p as u128;
    let qb = q.pow(b as u32);
    (0..b as u32).map(|i| qb - q.pow(i)).product()
}

/// A matrix position `(row, col)` whose unit lies in `J`. Stored 0-based,
/// displayed and parsed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JRoot {
    pub row: usize,
    pub col: usize,
}

impl JRoot {
    /// From 1-based coordinates as written in matrix notation.
    pub fn new(row: usize, col: usize) -> Self {
        JRoot { row: row - 1, col: col - 1 }
    }
}

impl fmt::Display for JRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

/// A set of J-roots with at most one in any row or column, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RookPlacement {
    roots: Vec<JRoot>,
}

impl RookPlacement {
    pub fn new(comp: &Composition, mut roots: Vec<JRoot>) -> Result<Self> {
        roots.sort();
        roots.dedup();
        let n = comp.n();
        for r in &roots {
            if r.row >= n || r.col >= n || comp.block_of(r.row) >= comp.block_of(r.col) {
                return Err(Error::Input(format!("{r} is not a J-root of type {comp}")));
            }
        }
        for (a, ra) in roots.iter().enumerate() {
            for rb in &roots[a + 1..] {
                if ra.row == rb.row || ra.col == rb.col {
                    return Err(Error::Input(format!("{ra} and {rb} share a row or column")));
                }
            }
        }
        Ok(RookPlacement { roots })
    }

    pub fn empty() -> Self {
        RookPlacement { roots: Vec::new() }
    }

    pub fn roots(&self) -> &[JRoot] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `d_km = |D ∩ (I_k × I_m)|` for `k < m`, row-major over pairs.
    pub fn profile(&self, comp: &Composition) -> Vec<usize> {
        let l = comp.len();
        let mut d = vec![0; l * l];
        for r in &self.roots {
            d[comp.block_of(r.row) * l + comp.block_of(r.col)] += 1;
        }
        let mut out = Vec::new();
        for k in 0..l {
            for m in k + 1..l {
                out.push(d[k * l + m]);
            }
        }
        out
    }

    /// `(x_D, λ_D)` in the coordinates of `Δ_J`; `u_D = 1 + x_D`.
    pub fn elements(&self, comp: &Composition) -> (Vec<u32>, Vec<u32>) {
        let roots = comp.roots();
        let mut x = vec![0u32; roots.len()];
        for r in &self.roots {
            x[roots.iter().position(|q| q == r).expect("validated root")] = 1;
        }
        (x.clone(), x)
    }

    /// Parses `(i,j);(k,l)` with 1-based indices; the empty string is `∅`.
    pub fn parse(comp: &Composition, s: &str) -> Result<Self> {
        let mut roots = Vec::new();
        for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let inner = part
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected (i,j), got {part:?}")))?;
            let mut it = inner.split(',').map(|t| t.trim().parse::<usize>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(i)), Some(Ok(j)), None) if i >= 1 && j >= 1 => roots.push(JRoot::new(i, j)),
                _ => return Err(Error::Parse(format!("bad root {part:?}"))),
            }
        }
        RookPlacement::new(comp, roots)
    }
}

impl fmt::Display for RookPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// All of `GL(b, p)` as row-major `b×b` matrices.
pub fn gl_elements(b: usize, p: u32, budget: &Budget) -> Result<Vec<Matrix>> {
    budget.check("GL block", checked_pow(p as u64, b * b))?;
    let total = (p as u64).pow((b * b) as u32);
    Ok((0..total)
        .map(|c| Matrix::from_flat(b, b, p, crate::linalg::decode(c, b * b, p)))
        .filter(Matrix::is_invertible)
        .collect())
}

/// Transvections `1 + E_ij` and `diag(ω, 1, …, 1)` for a primitive root `ω`.
fn gl_generators(b: usize, p: u32) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..b {
        for j in 0..b {
            if i != j {
                let mut m = Matrix::identity(b, p);
                m.set(i, j, 1);
                out.push(m);
            }
        }
    }
    if p > 2 {
        let mut m = Matrix::identity(b, p);
        m.set(0, 0, primitive_root(p as u64) as u32);
        out.push(m);
    }
    out
}

/// `diag(h_1, …, h_ℓ)` as an `n×n` matrix.
pub fn block_diag(comp: &Composition, blocks: &[Matrix], p: u32) -> Matrix {
    let n = comp.n();
    let mut m = Matrix::zeros(n, n, p);
    for (k, b) in blocks.iter().enumerate() {
        let s = comp.segment(k).start;
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(s + i, s + j, b.get(i, j));
            }
        }
    }
    m
}

/// The diagonal blocks `h_k` of a block-diagonal `h`.
pub fn blocks_of(comp: &Composition, h: &Matrix) -> Vec<Matrix> {
    (0..comp.len())
        .map(|k| {
            let seg = comp.segment(k);
            let rows: Vec<Vec<u32>> = seg.clone().map(|i| seg.clone().map(|j| h.get(i, j)).collect()).collect();
            Matrix::from_rows(&rows, seg.len(), h.modulus())
        })
        .collect()
}

/// The element of `L` with index `i`, as an `n×n` matrix.
pub fn l_matrix(g: &ExtensionGroup, i: u32) -> Matrix {
    let n = (g.l().key(i).len() as f64).sqrt() as usize;
    Matrix::from_flat(n, n, g.p(), g.l().key(i).to_vec())
}

/// The parabolic subgroup of type `comp` in `GL(n, p)`.
pub fn build_parabolic(comp: &Composition, p: u32, budget: &Budget) -> Result<ExtensionGroup> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let (l_order, u_order) = comp.orders(p);
    budget.check("acting group L", l_order)?;
    budget.check("group G", l_order.saturating_mul(u_order))?;
    let factors: Vec<Vec<Matrix>> = comp
        .blocks()
        .iter()
        .map(|&b| gl_elements(b, p, budget))
        .collect::<Result<_>>()?;
    let identities: Vec<Matrix> = comp.blocks().iter().map(|&b| Matrix::identity(b, p)).collect();
    let mut tuples: Vec<Vec<Matrix>> = vec![Vec::new()];
    for f in &factors {
        tuples = tuples
            .into_iter()
            .flat_map(|prefix| {
                f.iter().map(move |m| {
                    let mut t = prefix.clone();
                    t.push(m.clone());
                    t
                })
            })
            .collect();
    }
    let elements: Vec<Matrix> = tuples.iter().map(|t| block_diag(comp, t, p)).collect();
    let mut generators = Vec::new();
    for (k, &b) in comp.blocks().iter().enumerate() {
        for gen in gl_generators(b, p) {
            let mut blocks = identities.clone();
            blocks[k] = gen;
            generators.push(block_diag(comp, &blocks, p));
        }
    }
    let roots: Vec<(usize, usize)> = comp.roots().iter().map(|r| (r.row, r.col)).collect();
    let l = LGroup::from_matrices(p, comp.n(), roots, elements, &generators)?;
    ExtensionGroup::new(comp.algebra(p)?, l, budget)
}
