//! Nilpotent associative algebras `J` over GF(p), the algebra group `U = 1 + J`
//! and the dual space `J*`.

use serde::{Deserialize, Serialize};

use crate::budget::{checked_pow, Budget};
use crate::error::{Error, Result};
use crate::linalg::{decode, dot, encode, vec_add, Matrix, Subspace};
use crate::scalars::fp::is_prime;

/// A finite-dimensional associative nilpotent algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentAlgebra {
    p: u32,
    dim: usize,
    // c[(i * dim + j) * dim + k]: coefficient of e_k in e_i e_j
    constants: Vec<u32>,
    nilpotency_class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement(pub Vec<u32>);

/// A vector of `J*` in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm(pub Vec<u32>);

/// The element `1 + x` of `U`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraGroupElement {
    pub x: AlgebraElement,
}

impl LinearForm {
    pub fn eval(&self, x: &AlgebraElement, p: u32) -> u32 {
        dot(&self.0, &x.0, p)
    }
}

impl NilpotentAlgebra {
    /// Builds and validates an algebra from dense structure constants
    /// `constants[i][j][k]`.
    pub fn new(p: u32, dim: usize, constants: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        if let Some(&bad) = constants.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidAlgebra(format!("coefficient {bad} not reduced mod {p}")));
        }
        let mut alg = NilpotentAlgebra {
            p,
            dim,
            constants,
            nilpotency_class: 0,
        };
        alg.check_associative()?;
        alg.nilpotency_class = alg.compute_nilpotency()?;
        Ok(alg)
    }

    /// Sparse form: `mult[i][j]` lists `(k, coeff)` pairs of `e_i e_j`.
    pub fn from_sparse(p: u32, dim: usize, mult: &[Vec<Vec<(usize, u64)>>]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let mut c = vec![0u32; dim * dim * dim];
        if mult.len() > dim {
            return Err(Error::InvalidAlgebra("too many rows in mult table".into()));
        }
        for (i, row) in mult.iter().enumerate() {
            if row.len() > dim {
                return Err(Error::InvalidAlgebra(format!("row {i} of mult table too long")));
            }
            for (j, entries) in row.iter().enumerate() {
                for &(k, coeff) in entries {
                    if k >= dim {
                        return Err(Error::InvalidAlgebra(format!(
                            "basis index {k} out of range in e_{i} e_{j}"
                        )));
                    }
                    let slot = &mut c[(i * dim + j) * dim + k];
                    *slot = ((*slot as u64 + coeff % p as u64) % p as u64) as u32;
                }
            }
        }
        NilpotentAlgebra::new(p, dim, c)
    }

    /// The algebra with identically zero multiplication.
    pub fn zero_product(p: u32, dim: usize) -> Result<Self> {
        NilpotentAlgebra::new(p, dim, vec![0; dim * dim * dim])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nilpotency_class(&self) -> usize {
        self.nilpotency_class
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Product of raw coordinate vectors.
    pub fn mul_raw(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let d = self.dim;
        let p = self.p as u64;
        let mut acc = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let w = xi as u64 * yj as u64 % p;
                let base = (i * d + j) * d;
                for (k, a) in acc.iter_mut().enumerate() {
                    let c = self.constants[base + k];
                    if c != 0 {
                        *a = (*a + w * c as u64) % p;
                    }
                }
            }
        }
        acc.into_iter().map(|v| v as u32).collect()
    }

    pub fn j_mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.mul_raw(&x.0, &y.0))
    }

    /// Matrix of `x ↦ y x`.
    pub fn left_mult_matrix(&self, y: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| self.mul_raw(y, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(&cols, self.dim, self.p)
    }

    /// Matrix of `x ↦ x y`.
    pub fn right_mult_matrix(&self, y: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| self.mul_raw(&self.basis_vector(j), y))
            .collect();
        Matrix::from_columns(&cols, self.dim, self.p)
    }

    fn check_associative(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let eij = self.mul_raw(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..self.dim {
                    let ek = self.basis_vector(k);
                    let left = self.mul_raw(&eij, &ek);
                    let ejk = self.mul_raw(&self.basis_vector(j), &ek);
                    let right = self.mul_raw(&self.basis_vector(i), &ejk);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest m with J^m = 0.
    fn compute_nilpotency(&self) -> Result<usize> {
        let mut power = Subspace::full(self.dim, self.p);
        for m in 1..=self.dim + 1 {
            if power.dim() == 0 {
                return Ok(m);
            }
            let mut prods = Vec::new();
            for a in power.basis() {
                for j in 0..self.dim {
                    prods.push(self.mul_raw(a, &self.basis_vector(j)));
                }
            }
            power = Subspace::span(&prods, self.dim, self.p);
        }
        Err(Error::InvalidAlgebra("algebra is not nilpotent".into()))
    }

    pub fn u_mul(&self, a: &AlgebraGroupElement, b: &AlgebraGroupElement) -> AlgebraGroupElement {
        // (1+x)(1+y) = 1 + x + y + xy
        let xy = self.mul_raw(&a.x.0, &b.x.0);
        let s = vec_add(&vec_add(&a.x.0, &b.x.0, self.p), &xy, self.p);
        AlgebraGroupElement {
            x: AlgebraElement(s),
        }
    }

    /// `(1+x)^{-1} = 1 + Σ_{k≥1} (-x)^k`.
    pub fn u_inv(&self, a: &AlgebraGroupElement) -> AlgebraGroupElement {
        let p = self.p;
        let neg: Vec<u32> = a.x.0.iter().map(|&v| (p - v) % p).collect();
        let mut term = neg.clone();
        let mut acc = neg.clone();
        while term.iter().any(|&v| v != 0) {
            term = self.mul_raw(&term, &neg);
            acc = vec_add(&acc, &term, p);
        }
        AlgebraGroupElement {
            x: AlgebraElement(acc),
        }
    }

    pub fn u_identity(&self) -> AlgebraGroupElement {
        AlgebraGroupElement {
            x: AlgebraElement(vec![0; self.dim]),
        }
    }

    pub fn size(&self) -> u128 {
        checked_pow(self.p as u64, self.dim)
    }

    /// All elements of `U` in lexicographic coordinate order.
    pub fn enumerate_u(&self, budget: &Budget) -> Result<Vec<AlgebraGroupElement>> {
        budget.check(&format!("U = 1 + J (p^d = {}^{})", self.p, self.dim), self.size())?;
        Ok((0..self.size() as u64)
            .map(|i| AlgebraGroupElement {
                x: AlgebraElement(decode(i, self.dim, self.p)),
            })
            .collect())
    }

    pub fn index_of(&self, x: &[u32]) -> u64 {
        encode(x, self.p)
    }

    /// `J_{λ,rt} = { y : λ(y x) = 0 for all x }`.
    pub fn right_stabilizer(&self, lambda: &LinearForm) -> Subspace {
        // row j: the functional y ↦ λ(y e_j)
        let rows: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .map(|i| dot(&lambda.0, &self.mul_raw(&self.basis_vector(i), &self.basis_vector(j)), self.p))
                    .collect()
            })
            .collect();
        if rows.is_empty() {
            return Subspace::zero(0, self.p);
        }
        let m = Matrix::from_rows(&rows, self.dim, self.p);
        Subspace::span(&m.nullspace(), self.dim, self.p)
    }

    /// `Jλ = { x ↦ λ(x y) : y ∈ J }` as a subspace of `J*`.
    pub fn dual_left_orbit_space(&self, lambda: &LinearForm) -> Subspace {
        let forms: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .map(|i| dot(&lambda.0, &self.mul_raw(&self.basis_vector(i), &self.basis_vector(j)), self.p))
                    .collect()
            })
            .collect();
        Subspace::span(&forms, self.dim, self.p)
    }
}

/// One generator of an abstract acting group `L`, given by its left and right
/// multiplication matrices on `J` (rows act on column coordinate vectors).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ActionGenerator {
    pub left: Vec<Vec<u32>>,
    pub right: Vec<Vec<u32>>,
}

/// On-disk algebra definition.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFile {
    pub p: u32,
    pub dim: usize,
    /// `mult[i][j]` is the sparse list of `[k, coeff]` for `e_i e_j`.
    #[serde(default)]
    pub mult: Vec<Vec<Vec<(usize, u64)>>>,
    /// Optional generators of `L`; absent means `L` is trivial.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub l_generators: Vec<ActionGenerator>,
}

/// Upper bound on the dimension accepted from files; anything larger cannot
/// be enumerated anyway.
pub const MAX_FILE_DIM: usize = 64;

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: AlgebraFile = serde_json::from_str(text)?;
        if f.dim > MAX_FILE_DIM {
            return Err(Error::InvalidAlgebra(format!("dimension {} too large", f.dim)));
        }
        if f.p == 0 || f.p > 1 << 16 {
            return Err(Error::InvalidAlgebra(format!("field size {} out of range", f.p)));
        }
        Ok(f)
    }

    pub fn algebra(&self) -> Result<NilpotentAlgebra> {
        NilpotentAlgebra::from_sparse(self.p, self.dim, &self.mult)
    }

    pub fn from_algebra(alg: &NilpotentAlgebra) -> Self {
        let d = alg.dim();
        let mult = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        (0..d)
                            .filter_map(|k| {
                                let c = alg.constant(i, j, k);
                                (c != 0).then_some((k, c as u64))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        AlgebraFile {
            p: alg.p(),
            dim: d,
            mult,
            l_generators: Vec::new(),
        }
    }
}

/// `UT(3, p)` with basis `(E12, E23, E13)`.
pub fn ut3(p: u32) -> NilpotentAlgebra {
    let mut mult = vec![vec![vec![]; 3]; 3];
    mult[0][1] = vec![(2, 1)];
    NilpotentAlgebra::from_sparse(p, 3, &mult).expect("UT(3) is a valid algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: &[u32]) -> AlgebraElement {
        AlgebraElement(v.to_vec())
    }

    fn u(v: &[u32]) -> AlgebraGroupElement {
        AlgebraGroupElement { x: el(v) }
    }

    #[test]
    fn matrix_unit_products() {
        let j = ut3(2);
        assert_eq!(j.j_mul(&el(&[1, 0, 0]), &el(&[0, 1, 0])), el(&[0, 0, 1]));
        assert_eq!(j.j_mul(&el(&[0, 1, 0]), &el(&[1, 0, 0])), el(&[0, 0, 0]));
        assert_eq!(j.j_mul(&el(&[1, 1, 1]), &el(&[0, 0, 0])), el(&[0, 0, 0]));
        assert_eq!(j.nilpotency_class(), 3);
    }

    #[test]
    fn group_products_and_inverses() {
        let j = ut3(2);
        assert_eq!(j.u_mul(&u(&[1, 0, 0]), &u(&[0, 1, 0])), u(&[1, 1, 1]));
        assert_eq!(j.u_inv(&u(&[1, 0, 0])), u(&[1, 0, 0]));
        let inv = j.u_inv(&u(&[1, 1, 0]));
        assert_eq!(inv, u(&[1, 1, 1]));
        assert_eq!(j.u_mul(&u(&[1, 1, 0]), &inv), j.u_identity());
    }

    #[test]
    fn enumeration_sizes() {
        let b = Budget::default();
        assert_eq!(ut3(2).enumerate_u(&b).unwrap().len(), 8);
        assert_eq!(ut3(3).enumerate_u(&b).unwrap().len(), 27);
        let z = NilpotentAlgebra::zero_product(5, 0).unwrap();
        assert_eq!(z.enumerate_u(&b).unwrap().len(), 1);
        let err = ut3(3).enumerate_u(&Budget::new(10)).unwrap_err();
        assert!(err.to_string().contains("27"), "{err}");
    }

    #[test]
    fn rejects_bad_algebras() {
        // e_0 e_0 = e_0 is idempotent, not nilpotent
        let mult = vec![vec![vec![(0usize, 1u64)]]];
        assert!(NilpotentAlgebra::from_sparse(2, 1, &mult).is_err());
        // e0 e1 = e2 and e1 e2 = e0 breaks nilpotency/associativity
        let mut m = vec![vec![vec![]; 3]; 3];
        m[0][1] = vec![(2, 1)];
        m[1][2] = vec![(0, 1)];
        assert!(NilpotentAlgebra::from_sparse(2, 3, &m).is_err());
        assert!(NilpotentAlgebra::zero_product(4, 2).is_err());
    }

    #[test]
    fn group_axioms_exhaustive() {
        for p in [2, 3] {
            let j = ut3(p);
            let all = j.enumerate_u(&Budget::default()).unwrap();
            let id = j.u_identity();
            for a in &all {
                assert_eq!(j.u_mul(a, &id), *a);
                assert_eq!(j.u_mul(a, &j.u_inv(a)), id);
                for b in &all {
                    let ab = j.u_mul(a, b);
                    assert_eq!(j.u_inv(&ab), j.u_mul(&j.u_inv(b), &j.u_inv(a)));
                    for c in all.iter().step_by(5) {
                        assert_eq!(j.u_mul(&ab, c), j.u_mul(a, &j.u_mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn forms_are_additive() {
        let j = ut3(3);
        let lam = LinearForm(vec![1, 2, 1]);
        let all = j.enumerate_u(&Budget::default()).unwrap();
        for a in &all {
            for b in &all {
                let s = AlgebraElement(vec_add(&a.x.0, &b.x.0, 3));
                assert_eq!(lam.eval(&s, 3), (lam.eval(&a.x, 3) + lam.eval(&b.x, 3)) % 3);
            }
        }
    }

    #[test]
    fn right_stabilizers() {
        let j = ut3(2);
        assert_eq!(j.right_stabilizer(&LinearForm(vec![0, 0, 0])).dim(), 3);
        let e13 = LinearForm(vec![0, 0, 1]);
        let s = j.right_stabilizer(&e13);
        assert_eq!(s, Subspace::span(&[vec![0, 1, 0], vec![0, 0, 1]], 3, 2));
        let e12 = LinearForm(vec![1, 0, 0]);
        assert_eq!(j.right_stabilizer(&e12).dim(), 3);
        // J_{λ,rt}^⊥ = Jλ
        for idx in 0..8 {
            let lam = LinearForm(decode(idx, 3, 2));
            assert_eq!(j.right_stabilizer(&lam).annihilator(), j.dual_left_orbit_space(&lam));
        }
    }

    #[test]
    fn algebra_file_roundtrip() {
        let text = r#"{"p": 2, "dim": 3, "mult": [[[], [[2, 1]], []], [[], [], []], [[], [], []]]}"#;
        let f = AlgebraFile::parse(text).unwrap();
        assert_eq!(f.algebra().unwrap(), ut3(2));
        assert_eq!(AlgebraFile::from_algebra(&ut3(2)).algebra().unwrap(), ut3(2));
        assert!(AlgebraFile::parse(r#"{"p": 2, "dim": 1, "mult": [[[[5, 1]]]]}"#)
            .unwrap()
            .algebra()
            .is_err());
    }
}
