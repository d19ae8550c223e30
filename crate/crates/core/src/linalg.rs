//! Dense linear algebra over GF(p) with deterministic (lowest-index) pivoting.

use crate::scalars::fp::mod_inv;

/// Index of a coordinate vector in lexicographic order (first coordinate most significant).
pub fn encode(coords: &[u32], p: u32) -> u64 {
    coords.iter().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

pub fn decode(mut index: u64, dim: usize, p: u32) -> Vec<u32> {
    let mut out = vec![0u32; dim];
    for slot in out.iter_mut().rev() {
        *slot = (index % p as u64) as u32;
        index /= p as u64;
    }
    out
}

pub fn decode_into(mut index: u64, p: u32, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % p as u64) as u32;
        index /= p as u64;
    }
}

pub fn dot(a: &[u32], b: &[u32], p: u32) -> u32 {
    (a.iter()
        .zip(b)
        .map(|(&x, &y)| x as u64 * y as u64)
        .sum::<u64>()
        % p as u64) as u32
}

pub fn vec_add(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

pub fn vec_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
}

pub fn vec_scale(a: &[u32], s: u32, p: u32) -> Vec<u32> {
    a.iter()
        .map(|&x| (x as u64 * s as u64 % p as u64) as u32)
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Matrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Matrix::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1 % p);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<u32>], rows: usize, p: u32) -> Self {
        let mut m = Matrix::zeros(rows, cols.len(), p);
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    /// Row-major data.
    pub fn from_flat(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, p, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        (0..self.rows).map(|i| dot(self.row(i), v, self.p)).collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + self.p - b) % self.p;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = mod_inv(m.get(r, c) as u64, p).unwrap();
            for j in 0..m.cols {
                let v = m.get(r, j) as u64 * inv % p;
                m.set(r, j, v as u32);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.get(i, j) as u64 + p * p - f * m.get(r, j) as u64) % p;
                    m.set(i, j, v as u32);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % p;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - r.get(row, free)) % p;
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.p);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1 % self.p);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n, self.p);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// A subspace of GF(p)^dim kept in reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    dim: usize,
    p: u32,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(dim: usize, p: u32) -> Self {
        Subspace {
            dim,
            p,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize, p: u32) -> Self {
        Subspace::span(
            &(0..dim)
                .map(|i| {
                    let mut v = vec![0; dim];
                    v[i] = 1;
                    v
                })
                .collect::<Vec<_>>(),
            dim,
            p,
        )
    }

    pub fn span(vectors: &[Vec<u32>], dim: usize, p: u32) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(dim, p);
        }
        let m = Matrix::from_rows(vectors, dim, p);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            dim,
            p,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v + self`: pivot coordinates cleared.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = out[pc] as u64;
            if f == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(row) {
                *o = ((*o as u64 + p * p - f * b as u64) % p) as u32;
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(&vs, self.dim, self.p)
    }

    /// `{x : <b, x> = 0 for all b in self}` under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.dim, self.p);
        }
        let m = Matrix::from_rows(&self.basis, self.dim, self.p);
        Subspace::span(&m.nullspace(), self.dim, self.p)
    }

    /// Coordinates that parametrize the quotient by this subspace.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// All elements, in lexicographic order of their coefficient tuples.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let k = self.basis.len();
        let count = (self.p as u64).pow(k as u32);
        (0..count)
            .map(|idx| {
                let c = decode(idx, k, self.p);
                let mut v = vec![0u32; self.dim];
                for (ci, b) in c.iter().zip(&self.basis) {
                    v = vec_add(&v, &vec_scale(b, *ci, self.p), self.p);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encode_decode() {
        assert_eq!(encode(&[1, 0, 2], 3), 11);
        assert_eq!(decode(11, 3, 3), vec![1, 0, 2]);
        assert_eq!(decode(0, 0, 5), Vec::<u32>::new());
    }

    #[test]
    fn inverse_and_rank() {
        let m = Matrix::from_rows(&[vec![1, 2], vec![3, 4]], 2, 5);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2, 5));
        let s = Matrix::from_rows(&[vec![1, 2], vec![2, 4]], 2, 5);
        assert!(s.inverse().is_none());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn annihilator_of_line() {
        let s = Subspace::span(&[vec![1, 1, 0]], 3, 2);
        let a = s.annihilator();
        assert_eq!(a.dim(), 2);
        for b in a.basis() {
            assert_eq!(dot(b, &[1, 1, 0], 2), 0);
        }
        assert_eq!(a.annihilator(), s);
    }

    proptest! {
        #[test]
        fn nullspace_is_kernel(rows in proptest::collection::vec(proptest::collection::vec(0u32..5, 4), 1..5)) {
            let m = Matrix::from_rows(&rows, 4, 5);
            let ns = m.nullspace();
            prop_assert_eq!(ns.len() + m.rank(), 4);
            for v in ns {
                prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn reduce_is_canonical(
            gens in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..3),
            v in proptest::collection::vec(0u32..3, 4),
            w in proptest::collection::vec(0u32..3, 3),
        ) {
            let s = Subspace::span(&gens, 4, 3);
            let mut shifted = v.clone();
            for (c, b) in w.iter().zip(s.basis()) {
                shifted = vec_add(&shifted, &vec_scale(b, *c, 3), 3);
            }
            prop_assert_eq!(s.reduce(&v), s.reduce(&shifted));
        }
    }
}
