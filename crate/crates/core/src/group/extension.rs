//! The acting group `L` and the algebra group extension `G = L ⋉ U`.

use std::collections::HashMap;

use super::finite::FiniteGroup;
use crate::algebra::NilpotentAlgebra;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{decode, encode, vec_add, Matrix};

/// Largest `|L|` or `|G|` for which a full Cayley table is built.
pub const TABLE_CAP: usize = 1 << 12;

/// How elements of `L` are keyed and how they act on `J`.
#[derive(Clone, Debug)]
pub enum LKind {
    /// `n×n` invertible matrices acting on a span of matrix units `E_ij`
    /// by matrix multiplication on either side.
    MatrixUnits { n: usize, roots: Vec<(usize, usize)> },
    /// Keys are the flattened left matrix followed by the flattened right matrix.
    Abstract,
}

/// A finite group acting on `J` from both sides; elements sorted by key.
#[derive(Clone, Debug)]
pub struct LGroup {
    p: u32,
    dim: usize,
    kind: LKind,
    keys: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    generators: Vec<u32>,
    identity: u32,
    table: Option<FiniteGroup>,
    actions: Option<Vec<(Matrix, Matrix)>>,
}

impl LGroup {
    pub fn trivial(p: u32, dim: usize) -> Self {
        let id = Matrix::identity(dim, p);
        LGroup::closure_abstract(p, dim, &[(id.clone(), id)], &Budget::default()).unwrap()
    }

    /// Group generated by `(left, right)` matrix pairs acting on coordinates of `J`.
    pub fn closure_abstract(p: u32, dim: usize, gens: &[(Matrix, Matrix)], budget: &Budget) -> Result<Self> {
        for (l, r) in gens {
            if l.rows() != dim || l.cols() != dim || r.rows() != dim || r.cols() != dim {
                return Err(Error::InvalidGroup("action matrix has wrong shape".into()));
            }
            if !l.is_invertible() || !r.is_invertible() {
                return Err(Error::InvalidGroup("action matrix is singular".into()));
            }
        }
        let id = Matrix::identity(dim, p);
        let key_of = |l: &Matrix, r: &Matrix| [l.data(), r.data()].concat();
        let split = |k: &[u32]| {
            let n = dim * dim;
            (
                Matrix::from_flat(dim, dim, p, k[..n].to_vec()),
                Matrix::from_flat(dim, dim, p, k[n..].to_vec()),
            )
        };
        let gen_keys: Vec<Vec<u32>> = gens.iter().map(|(l, r)| key_of(l, r)).collect();
        let keys = bfs_closure(key_of(&id, &id), &gen_keys, budget, |a, b| {
            let (la, ra) = split(a);
            let (lb, rb) = split(b);
            key_of(&la.mul(&lb), &rb.mul(&ra))
        })?;
        LGroup::assemble(p, dim, LKind::Abstract, keys, &gen_keys, key_of(&id, &id))
    }

    /// `L` given by an explicit element list of `n×n` matrices acting on matrix units.
    pub fn from_matrices(
        p: u32,
        n: usize,
        roots: Vec<(usize, usize)>,
        elements: Vec<Matrix>,
        generators: &[Matrix],
    ) -> Result<Self> {
        let dim = roots.len();
        let keys: Vec<Vec<u32>> = elements.iter().map(|m| m.data().to_vec()).collect();
        let gen_keys: Vec<Vec<u32>> = generators.iter().map(|m| m.data().to_vec()).collect();
        LGroup::assemble(
            p,
            dim,
            LKind::MatrixUnits { n, roots },
            keys,
            &gen_keys,
            Matrix::identity(n, p).data().to_vec(),
        )
    }

    fn assemble(
        p: u32,
        dim: usize,
        kind: LKind,
        mut keys: Vec<Vec<u32>>,
        gen_keys: &[Vec<u32>],
        identity_key: Vec<u32>,
    ) -> Result<Self> {
        keys.sort();
        keys.dedup();
        let index: HashMap<Vec<u32>, u32> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
        let lookup = |k: &Vec<u32>| {
            index
                .get(k)
                .copied()
                .ok_or_else(|| Error::InvalidGroup("element missing from L".into()))
        };
        let identity = lookup(&identity_key)?;
        let mut generators: Vec<u32> = gen_keys.iter().map(lookup).collect::<Result<_>>()?;
        generators.sort_unstable();
        generators.dedup();
        let mut l = LGroup {
            p,
            dim,
            kind,
            keys,
            index,
            generators,
            identity,
            table: None,
            actions: None,
        };
        if l.order() <= TABLE_CAP {
            let n = l.order();
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    let k = l.compose(&l.keys[a], &l.keys[b]);
                    table[a * n + b] = *l
                        .index
                        .get(&k)
                        .ok_or_else(|| Error::InvalidGroup("L is not closed under products".into()))?;
                }
            }
            l.table = Some(FiniteGroup::from_table(n, table)?);
            l.actions = Some((0..n as u32).map(|i| l.compute_action(i)).collect());
        }
        Ok(l)
    }

    fn compose(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        match &self.kind {
            LKind::MatrixUnits { n, .. } => {
                let ma = Matrix::from_flat(*n, *n, self.p, a.to_vec());
                let mb = Matrix::from_flat(*n, *n, self.p, b.to_vec());
                ma.mul(&mb).data().to_vec()
            }
            LKind::Abstract => {
                let d = self.dim;
                let (la, ra) = (
                    Matrix::from_flat(d, d, self.p, a[..d * d].to_vec()),
                    Matrix::from_flat(d, d, self.p, a[d * d..].to_vec()),
                );
                let (lb, rb) = (
                    Matrix::from_flat(d, d, self.p, b[..d * d].to_vec()),
                    Matrix::from_flat(d, d, self.p, b[d * d..].to_vec()),
                );
                [la.mul(&lb).data(), rb.mul(&ra).data()].concat()
            }
        }
    }

    fn compute_action(&self, i: u32) -> (Matrix, Matrix) {
        let key = &self.keys[i as usize];
        match &self.kind {
            LKind::MatrixUnits { n, roots } => {
                let h = Matrix::from_flat(*n, *n, self.p, key.clone());
                let pos: HashMap<(usize, usize), usize> = roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
                let d = roots.len();
                let mut left = Matrix::zeros(d, d, self.p);
                let mut right = Matrix::zeros(d, d, self.p);
                for (c, &(i, j)) in roots.iter().enumerate() {
                    // h E_ij = Σ_k h_ki E_kj ;  E_ij h = Σ_k h_jk E_ik
                    for k in 0..*n {
                        let a = h.get(k, i);
                        if a != 0 {
                            let r = *pos.get(&(k, j)).expect("left action leaves J");
                            left.set(r, c, a);
                        }
                        let b = h.get(j, k);
                        if b != 0 {
                            let r = *pos.get(&(i, k)).expect("right action leaves J");
                            right.set(r, c, b);
                        }
                    }
                }
                (left, right)
            }
            LKind::Abstract => {
                let d = self.dim;
                (
                    Matrix::from_flat(d, d, self.p, key[..d * d].to_vec()),
                    Matrix::from_flat(d, d, self.p, key[d * d..].to_vec()),
                )
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &LKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn key(&self, i: u32) -> &[u32] {
        &self.keys[i as usize]
    }

    pub fn index_of(&self, key: &[u32]) -> Option<u32> {
        self.index.get(key).copied()
    }

    /// Cayley table, present when `|L| <= TABLE_CAP`.
    pub fn table(&self) -> Option<&FiniteGroup> {
        self.table.as_ref()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t.mul(a, b),
            None => self.index[&self.compose(&self.keys[a as usize], &self.keys[b as usize])],
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        if let Some(t) = &self.table {
            return t.inv(a);
        }
        let inverted = match &self.kind {
            LKind::MatrixUnits { n, .. } => Matrix::from_flat(*n, *n, self.p, self.keys[a as usize].clone())
                .inverse()
                .expect("L elements are invertible")
                .data()
                .to_vec(),
            LKind::Abstract => {
                let (l, r) = self.compute_action(a);
                [l.inverse().unwrap().data(), r.inverse().unwrap().data()].concat()
            }
        };
        self.index[&inverted]
    }

    /// Matrices of `x ↦ h x` and `x ↦ x h` on coordinates of `J`.
    pub fn action(&self, i: u32) -> (Matrix, Matrix) {
        match &self.actions {
            Some(a) => a[i as usize].clone(),
            None => self.compute_action(i),
        }
    }

    /// `Ad_h(x) = h x h^{-1}`.
    pub fn ad(&self, i: u32) -> Matrix {
        let (left, _) = self.action(i);
        let (_, right_inv) = self.action(self.inv(i));
        left.mul(&right_inv)
    }

    /// `Ad*_h λ = λ ∘ Ad_{h^{-1}}` on dual coordinates: the transpose of `Ad_{h^{-1}}`.
    pub fn ad_dual(&self, i: u32) -> Matrix {
        self.ad(self.inv(i)).transpose()
    }
}

fn bfs_closure(
    identity: Vec<u32>,
    gens: &[Vec<u32>],
    budget: &Budget,
    mul: impl Fn(&[u32], &[u32]) -> Vec<u32>,
) -> Result<Vec<Vec<u32>>> {
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut frontier = vec![identity];
    let mut out = frontier.clone();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul(&x, g);
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), ());
                budget.check("acting group L", seen.len() as u128)?;
                out.push(y.clone());
                frontier.push(y);
            }
        }
    }
    Ok(out)
}

/// `G = L ⋉ U` with elements `h(1+x)` indexed by `l_index * |U| + code(x)`.
#[derive(Clone, Debug)]
pub struct ExtensionGroup {
    algebra: NilpotentAlgebra,
    l: LGroup,
    u_size: u64,
    table: Option<FiniteGroup>,
}

impl ExtensionGroup {
    pub fn new(algebra: NilpotentAlgebra, l: LGroup, budget: &Budget) -> Result<Self> {
        if l.dim() != algebra.dim() || l.p() != algebra.p() {
            return Err(Error::InvalidGroup("L acts on a space of the wrong shape".into()));
        }
        let u_size = algebra.size();
        let order = u_size * l.order() as u128;
        budget.check("group G", order)?;
        let g = ExtensionGroup {
            u_size: u_size as u64,
            algebra,
            l,
            table: None,
        };
        g.check_action_conditions()?;
        let table = if order as usize <= TABLE_CAP {
            Some(g.build_table())
        } else {
            None
        };
        Ok(ExtensionGroup { table, ..g })
    }

    /// Conditions on generators and basis pairs: `h(xy) = (hx)y`, `(xy)h = x(yh)`,
    /// `x(hy) = (xh)y`, and commuting left and right actions.
    pub fn check_action_conditions(&self) -> Result<()> {
        let a = &self.algebra;
        let d = a.dim();
        let basis: Vec<Vec<u32>> = (0..d).map(|i| a.basis_vector(i)).collect();
        let acts: Vec<(Matrix, Matrix)> = self.l.generators().iter().map(|&g| self.l.action(g)).collect();
        for (hl, hr) in &acts {
            for x in &basis {
                for (_, kr) in &acts {
                    if kr.mul_vec(&hl.mul_vec(x)) != hl.mul_vec(&kr.mul_vec(x)) {
                        return Err(Error::InvalidGroup("left and right actions do not commute".into()));
                    }
                }
                for y in &basis {
                    let xy = a.mul_raw(x, y);
                    if hl.mul_vec(&xy) != a.mul_raw(&hl.mul_vec(x), y) {
                        return Err(Error::InvalidGroup("h(xy) != (hx)y".into()));
                    }
                    if hr.mul_vec(&xy) != a.mul_raw(x, &hr.mul_vec(y)) {
                        return Err(Error::InvalidGroup("(xy)h != x(yh)".into()));
                    }
                    if a.mul_raw(x, &hl.mul_vec(y)) != a.mul_raw(&hr.mul_vec(x), y) {
                        return Err(Error::InvalidGroup("x(hy) != (xh)y".into()));
                    }
                }
            }
        }
        Ok(())
    }

    fn build_table(&self) -> FiniteGroup {
        let nl = self.l.order();
        let nu = self.u_size as usize;
        let d = self.algebra.dim();
        let p = self.algebra.p();
        let us: Vec<Vec<u32>> = (0..nu as u64).map(|i| decode(i, d, p)).collect();
        // ad_inv[l][x] = code(Ad_{l^{-1}} x)
        let ad_inv: Vec<Vec<u32>> = (0..nl as u32)
            .map(|l| {
                let m = self.l.ad(self.l.inv(l));
                us.iter().map(|x| encode(&m.mul_vec(x), p) as u32).collect()
            })
            .collect();
        let mut u_table = vec![0u32; nu * nu];
        for (i, x) in us.iter().enumerate() {
            for (j, y) in us.iter().enumerate() {
                let s = vec_add(&vec_add(x, y, p), &self.algebra.mul_raw(x, y), p);
                u_table[i * nu + j] = encode(&s, p) as u32;
            }
        }
        let n = nl * nu;
        FiniteGroup::from_fn(n, |a, b| {
            let (l1, x1) = (a / nu, a % nu);
            let (l2, x2) = (b / nu, b % nu);
            let l = self.l.mul(l1 as u32, l2 as u32) as usize;
            let x = u_table[ad_inv[l2][x1] as usize * nu + x2] as usize;
            l * nu + x
        })
        .expect("semidirect product is a group")
    }

    pub fn algebra(&self) -> &NilpotentAlgebra {
        &self.algebra
    }

    pub fn l(&self) -> &LGroup {
        &self.l
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn u_size(&self) -> u64 {
        self.u_size
    }

    pub fn order(&self) -> u64 {
        self.u_size * self.l.order() as u64
    }

    /// Cayley table of `G`, present when `|G| <= TABLE_CAP`.
    pub fn table(&self) -> Result<&FiniteGroup> {
        self.table.as_ref().ok_or(Error::BudgetExceeded {
            what: "Cayley table of G".into(),
            size: self.order() as u128,
            cap: TABLE_CAP as u64,
        })
    }

    pub fn index(&self, l: u32, x: &[u32]) -> u32 {
        (l as u64 * self.u_size + encode(x, self.p())) as u32
    }

    pub fn split(&self, g: u32) -> (u32, Vec<u32>) {
        let l = (g as u64 / self.u_size) as u32;
        (l, decode(g as u64 % self.u_size, self.dim(), self.p()))
    }

    /// Canonical key: `L` key followed by the coordinates of `x`.
    pub fn key(&self, g: u32) -> Vec<u32> {
        let (l, x) = self.split(g);
        [self.l.key(l), &x[..]].concat()
    }

    /// Indices of the subgroup `L` (elements `h·1`).
    pub fn l_elements(&self) -> Vec<u32> {
        (0..self.l.order() as u32).map(|l| self.index(l, &vec![0; self.dim()])).collect()
    }

    /// Indices of `U` (elements `1+x`).
    pub fn u_elements(&self) -> Vec<u32> {
        (0..self.u_size as u32).map(|x| self.l.identity() * self.u_size as u32 + x).collect()
    }

    /// `g x` for `g = h(1+y)`: `h(x + yx)`.
    pub fn left_act(&self, l: u32, y: &[u32], x: &[u32]) -> Vec<u32> {
        let p = self.p();
        let ux = vec_add(x, &self.algebra.mul_raw(y, x), p);
        self.l.action(l).0.mul_vec(&ux)
    }

    /// `x g` for `g = h(1+y)`: `xh + (xh)y`.
    pub fn right_act(&self, x: &[u32], l: u32, y: &[u32]) -> Vec<u32> {
        let p = self.p();
        let xh = self.l.action(l).1.mul_vec(x);
        vec_add(&xh, &self.algebra.mul_raw(&xh, y), p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ut3;

    #[test]
    fn ut3_as_extension_with_trivial_l() {
        let a = ut3(2);
        let g = ExtensionGroup::new(a.clone(), LGroup::trivial(2, 3), &Budget::default()).unwrap();
        assert_eq!(g.order(), 8);
        let t = g.table().unwrap();
        assert_eq!(t.conjugacy_classes().len(), 5);
        let ut33 = ExtensionGroup::new(ut3(3), LGroup::trivial(3, 3), &Budget::default()).unwrap();
        assert_eq!(ut33.table().unwrap().conjugacy_classes().len(), 11);
    }

    #[test]
    fn borel_gl2_3() {
        // J = span{E12}; L = diagonal torus of GL(2,3)
        let p = 3;
        let alg = NilpotentAlgebra::zero_product(p, 1).unwrap();
        let mut elems = Vec::new();
        for a in 1..3 {
            for b in 1..3 {
                elems.push(Matrix::from_rows(&[vec![a, 0], vec![0, b]], 2, p));
            }
        }
        let gens = vec![
            Matrix::from_rows(&[vec![2, 0], vec![0, 1]], 2, p),
            Matrix::from_rows(&[vec![1, 0], vec![0, 2]], 2, p),
        ];
        let l = LGroup::from_matrices(p, 2, vec![(0, 1)], elems, &gens).unwrap();
        let g = ExtensionGroup::new(alg, l, &Budget::default()).unwrap();
        assert_eq!(g.order(), 12);
        let t = g.table().unwrap();
        // Borel of GL(2,3) is C_2 × S_3: 6 classes
        assert_eq!(t.conjugacy_classes().len(), 6);
        assert!(!t.is_abelian());
    }

    #[test]
    fn bad_action_rejected() {
        // swap the basis of UT(3) on the left only: breaks h(xy) = (hx)y
        let a = ut3(2);
        let swap = Matrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]], 3, 2);
        let l = LGroup::closure_abstract(2, 3, &[(swap, Matrix::identity(3, 2))], &Budget::default()).unwrap();
        assert!(ExtensionGroup::new(a, l, &Budget::default()).is_err());
    }
}
