//! Class functions, brute-force induction and character tables by Dixon's method.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::finite::{ConjugacyClasses, FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::fp::{is_prime, mod_inv, mod_pow, primitive_root};
use crate::scalars::{Cyclotomic, Rational};

/// Values of a class function, one per conjugacy class (in class order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        ClassFunction { values }
    }

    pub fn constant(v: i64, classes: usize, order: u32) -> Self {
        ClassFunction {
            values: vec![Cyclotomic::from_int(v, order); classes],
        }
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v.scale(q)).collect(),
        }
    }

    pub fn lift(&self, order: u32) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v.lift(order)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }
}

/// `<f, g> = (1/|G|) Σ_classes |C| f(C) conj(g(C))`.
pub fn inner_product(classes: &ConjugacyClasses, f: &ClassFunction, g: &ClassFunction) -> Cyclotomic {
    let order: usize = classes.members.iter().map(Vec::len).sum();
    let mut acc: Option<Cyclotomic> = None;
    for c in 0..classes.len() {
        let term = (&f.values[c] * &g.values[c].conj()).scale(&Rational::from_integer(BigInt::from(classes.size(c))));
        acc = Some(match acc {
            None => term,
            Some(a) => &a + &term,
        });
    }
    acc.expect("group has at least one class")
        .scale(&Rational::new(BigInt::one(), BigInt::from(order)))
}

/// Induces a function on `h` (values aligned with `h.embed`) to `g`, evaluated at the
/// class representatives of `classes`, by the literal formula
/// `Ind(x) = (1/|H|) Σ_{s in G} f°(s x s^{-1})`.
pub fn induce_brute(
    g: &FiniteGroup,
    classes: &ConjugacyClasses,
    h: &Subgroup,
    values: &[Cyclotomic],
) -> ClassFunction {
    assert_eq!(values.len(), h.order());
    let order = values.first().map(Cyclotomic::order).unwrap_or(1);
    let inv_h = Rational::new(BigInt::one(), BigInt::from(h.order()));
    let mut out = Vec::with_capacity(classes.len());
    let mut counts = vec![0u64; h.order()];
    for &x in &classes.reps {
        counts.iter_mut().for_each(|c| *c = 0);
        for s in 0..g.order() as u32 {
            if let Some(i) = h.locate(g.conj(s, x)) {
                counts[i as usize] += 1;
            }
        }
        let mut acc = Cyclotomic::zero(order);
        for (i, &c) in counts.iter().enumerate() {
            if c != 0 {
                acc = &acc + &values[i].scale(&Rational::from_integer(BigInt::from(c)));
            }
        }
        out.push(acc.scale(&inv_h));
    }
    ClassFunction { values: out }
}

/// Irreducible characters over the conjugacy classes of a group.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub classes: ConjugacyClasses,
    /// Sorted by degree, then by coefficient vectors.
    pub irreducibles: Vec<ClassFunction>,
    /// Exponent of the group; all values live in Q(ζ_order).
    pub order: u32,
    pub aux_prime: u64,
    identity_class: usize,
}

impl CharacterTable {
    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles
            .iter()
            .map(|chi| {
                let id = self.identity_class();
                let q = chi.values[id].to_rational().expect("degree is rational");
                q.to_integer().try_into().expect("degree fits in u64")
            })
            .collect()
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }
}

/// Smallest prime `l ≡ 1 (mod e)` with `l^2 > 4|G|`.
pub fn auxiliary_prime(exponent: u64, group_order: u64) -> Result<u64> {
    const LIMIT: u64 = 1_000_000;
    let mut l = exponent + 1;
    while l < LIMIT {
        if l * l > 4 * group_order && is_prime(l) {
            return Ok(l);
        }
        l += exponent;
    }
    Err(Error::NoAuxiliaryPrime(LIMIT))
}

/// Character table by simultaneous eigenspaces of the class matrices over GF(l),
/// lifted to cyclotomic values through eigenvalue multiplicities.
pub fn dixon_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let n = g.order() as u64;
    let e = g.exponent();
    let ell = auxiliary_prime(e, n)?;
    let lp = ell as u32;
    let id_class = classes.class_of[g.identity() as usize] as usize;

    // a[j][k][l] = #{x in C_j : x^{-1} g_l in C_k}
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (j, cj) in classes.members.iter().enumerate() {
        for (l, &gl) in classes.reps.iter().enumerate() {
            for &x in cj {
                let k = classes.class_of[g.mul(g.inv(x), gl) as usize] as usize;
                a[j][k][l] += 1;
            }
        }
    }
    let class_matrix = |j: usize| {
        let mut m = Matrix::zeros(r, r, lp);
        for k in 0..r {
            for l in 0..r {
                m.set(k, l, (a[j][k][l] % ell) as u32);
            }
        }
        m
    };

    // Simultaneous eigenspaces, each stored as a column basis.
    let mut spaces: Vec<Vec<Vec<u32>>> = vec![identity_columns(r)];
    for j in 0..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        if j == id_class {
            continue;
        }
        let m = class_matrix(j);
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split_space(&m, &space, lp)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::Dixon(format!(
            "found {} eigenspaces for {} classes",
            spaces.len(),
            r
        )));
    }

    let inv_class = |l: usize| classes.class_of[g.inv(classes.reps[l]) as usize] as usize;
    let orders: Vec<u64> = classes.reps.iter().map(|&x| g.element_order(x)).collect();
    // power maps: class of rep^k
    let power_class = |l: usize, k: u64| classes.class_of[g.pow(classes.reps[l], k) as usize] as usize;
    let z = primitive_root(ell);
    let zeta_e = mod_pow(z, (ell - 1) / e, ell);

    let mut irreducibles = Vec::with_capacity(r);
    for space in &spaces {
        let v = &space[0];
        let v0 = v[id_class] as u64;
        let v0_inv = mod_inv(v0, ell).ok_or_else(|| Error::Dixon("eigenvector vanishes at identity".into()))?;
        let w: Vec<u64> = v.iter().map(|&x| x as u64 * v0_inv % ell).collect();
        // Σ_l w_l w_{l*} / h_l = |G| / d^2
        let mut s = 0u64;
        for l in 0..r {
            let hl = mod_inv(classes.size(l) as u64 % ell, ell).unwrap();
            s = (s + w[l] * w[inv_class(l)] % ell * hl) % ell;
        }
        let s_inv = mod_inv(s, ell).ok_or_else(|| Error::Dixon("degenerate norm".into()))?;
        let d2 = n % ell * s_inv % ell;
        let d = (1..=((n as f64).sqrt() as u64 + 1))
            .find(|&d| d * d % ell == d2 && d * d <= n)
            .ok_or_else(|| Error::Dixon("no admissible degree".into()))?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|l| {
                let hl = mod_inv(classes.size(l) as u64 % ell, ell).unwrap();
                w[l] * d % ell * hl % ell
            })
            .collect();

        let mut values = Vec::with_capacity(r);
        for l in 0..r {
            let o = orders[l];
            let zeta_o = mod_pow(zeta_e, e / o, ell);
            let o_inv = mod_inv(o % ell, ell).unwrap();
            let mut counts = vec![0i64; e as usize];
            for k in 0..o {
                let mut m = 0u64;
                for jj in 0..o {
                    let root = mod_pow(zeta_o, (o - (jj * k) % o) % o, ell);
                    m = (m + chi_mod[power_class(l, jj)] * root) % ell;
                }
                m = m * o_inv % ell;
                if m > d {
                    return Err(Error::Dixon(format!("multiplicity {m} exceeds degree {d}")));
                }
                counts[(k * (e / o)) as usize] += m as i64;
            }
            values.push(Cyclotomic::from_power_counts(e as u32, &counts));
        }
        irreducibles.push((d, ClassFunction { values }));
    }
    irreducibles.sort_by(|(da, a), (db, b)| {
        da.cmp(db).then_with(|| {
            a.values
                .iter()
                .zip(&b.values)
                .map(|(x, y)| x.cmp_coeffs(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    let table = CharacterTable {
        classes,
        irreducibles: irreducibles.into_iter().map(|(_, c)| c).collect(),
        order: e as u32,
        aux_prime: ell,
        identity_class: id_class,
    };
    check_orthonormal(&table)?;
    Ok(table)
}

fn identity_columns(r: usize) -> Vec<Vec<u32>> {
    (0..r)
        .map(|i| {
            let mut v = vec![0u32; r];
            v[i] = 1;
            v
        })
        .collect()
}

/// Splits an `m`-invariant subspace (column basis) into eigenspaces of `m`.
fn split_space(m: &Matrix, basis: &[Vec<u32>], p: u32) -> Result<Vec<Vec<Vec<u32>>>> {
    let k = basis.len();
    let r = m.rows();
    let b = Matrix::from_columns(basis, r, p);
    let mb = m.mul(&b);
    // pick k rows on which B is invertible
    let (_, pivot_rows) = b.transpose().rref();
    let select = |mat: &Matrix| {
        let rows: Vec<Vec<u32>> = pivot_rows.iter().map(|&i| mat.row(i).to_vec()).collect();
        Matrix::from_rows(&rows, k, p)
    };
    let bp_inv = select(&b)
        .inverse()
        .ok_or_else(|| Error::Dixon("basis restriction is singular".into()))?;
    let restricted = bp_inv.mul(&select(&mb));
    let mut found = 0;
    let mut out = Vec::new();
    for lambda in 0..p {
        if found == k {
            break;
        }
        let mut shifted = restricted.clone();
        for i in 0..k {
            shifted.set(i, i, (shifted.get(i, i) + p - lambda) % p);
        }
        let null = shifted.nullspace();
        if null.is_empty() {
            continue;
        }
        found += null.len();
        let cols: Vec<Vec<u32>> = null.iter().map(|c| b.mul_vec(c)).collect();
        out.push(cols);
    }
    if found != k {
        return Err(Error::Dixon("class matrix is not diagonalizable over the auxiliary field".into()));
    }
    Ok(out)
}

fn check_orthonormal(t: &CharacterTable) -> Result<()> {
    let n = t.irreducibles.len();
    for i in 0..n {
        for j in i..n {
            let ip = inner_product(&t.classes, &t.irreducibles[i], &t.irreducibles[j]);
            let expect = if i == j { Rational::one() } else { Rational::zero() };
            if ip.to_rational() != Some(expect) {
                return Err(Error::Dixon(format!("characters {i} and {j} are not orthonormal")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees_sorted(g: &FiniteGroup) -> Vec<u64> {
        let mut d = dixon_table(g).unwrap().degrees();
        d.sort();
        d
    }

    #[test]
    fn cyclic_three() {
        let t = dixon_table(&FiniteGroup::cyclic(3)).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        // some character takes the value ζ_3 at the generator class
        let z = Cyclotomic::zeta_pow(3, 1);
        assert!(t.irreducibles.iter().any(|c| c.values.contains(&z)));
    }

    #[test]
    fn small_tables() {
        assert_eq!(degrees_sorted(&FiniteGroup::trivial()), vec![1]);
        assert_eq!(degrees_sorted(&FiniteGroup::symmetric(3)), vec![1, 1, 2]);
        assert_eq!(degrees_sorted(&FiniteGroup::symmetric(4)), vec![1, 1, 2, 3, 3]);
        assert_eq!(degrees_sorted(&FiniteGroup::dihedral(4)), vec![1, 1, 1, 1, 2]);
        assert_eq!(degrees_sorted(&FiniteGroup::dihedral(5)), vec![1, 1, 2, 2]);
    }

    #[test]
    fn regular_character_by_induction() {
        let g = FiniteGroup::symmetric(3);
        let t = dixon_table(&g).unwrap();
        let triv = g.subgroup(&[g.identity()]).unwrap();
        let reg = induce_brute(&g, &t.classes, &triv, &[Cyclotomic::one(1)]);
        // reg = Σ χ(1) χ
        let degs = t.degrees();
        let mut sum = ClassFunction::constant(0, t.classes.len(), t.order);
        for (chi, &d) in t.irreducibles.iter().zip(&degs) {
            sum = sum.add(&chi.scale(&Rational::from_integer(BigInt::from(d))));
        }
        assert_eq!(reg, sum);
    }

    #[test]
    fn induction_is_transitive() {
        // 1 < C_2 < S_3 through the trivial character: Ind_1^G 1 equals Ind_{C2}^G Ind_1^{C2} 1
        let g = FiniteGroup::symmetric(3);
        let cl = g.conjugacy_classes();
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let c2 = g.subgroup(&[g.identity(), t]).unwrap();
        let triv = g.subgroup(&[g.identity()]).unwrap();
        let direct = induce_brute(&g, &cl, &triv, &[Cyclotomic::one(1)]);
        let c2_cl = c2.group.conjugacy_classes();
        let c2_triv = c2.group.subgroup(&[c2.group.identity()]).unwrap();
        let inner = induce_brute(&c2.group, &c2_cl, &c2_triv, &[Cyclotomic::one(1)]);
        let per_elem: Vec<Cyclotomic> = (0..2u32)
            .map(|i| inner.values[c2_cl.class_of[i as usize] as usize].clone())
            .collect();
        let two_step = induce_brute(&g, &cl, &c2, &per_elem);
        assert_eq!(direct, two_step);
    }

    #[test]
    fn frobenius_reciprocity() {
        let g = FiniteGroup::symmetric(4);
        let t = dixon_table(&g).unwrap();
        // A_4 = elements of order 1, 2 (double transpositions) and 3
        let elems: Vec<u32> = g.generate(&(0..24).filter(|&x| g.element_order(x) == 3).collect::<Vec<_>>());
        assert_eq!(elems.len(), 12);
        let h = g.subgroup(&elems).unwrap();
        let ht = dixon_table(&h.group).unwrap();
        for theta in &ht.irreducibles {
            let per_elem: Vec<Cyclotomic> = (0..h.order())
                .map(|i| theta.values[ht.classes.class_of[i] as usize].clone())
                .collect();
            let ind = induce_brute(&g, &t.classes, &h, &per_elem);
            for chi in &t.irreducibles {
                let lhs = inner_product(&t.classes, &ind, chi);
                let res = ClassFunction::new(
                    ht.classes.reps.iter().map(|&y| chi.values[t.classes.class_of[h.embed[y as usize] as usize] as usize].clone()).collect(),
                );
                let rhs = inner_product(&ht.classes, theta, &res);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
