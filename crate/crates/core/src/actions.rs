//! Two-sided actions of `L`, `U` and `G` on `J` and `J*`: orbits, stabilizers,
//! invariant ideals and quotient orbits.
//!
//! Conventions: `g x` and `x g` are the products in `J`; on the dual,
//! `(gλ)(x) = λ(x g)` and `(λg)(x) = λ(g x)`, so that `U_{λ,rt} = 1 + J_{λ,rt}`
//! is the stabilizer of the right action and `Ad*_h λ = hλh^{-1} = λ ∘ Ad_{h^{-1}}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::{checked_pow, Budget};
use crate::error::{Error, Result};
use crate::group::ExtensionGroup;
use crate::linalg::{decode, encode, Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    DI,
    GG,
    GU,
    UU,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::DI => "DI",
            Flavor::GG => "GG",
            Flavor::GU => "GU",
            Flavor::UU => "UU",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "DI" => Ok(Flavor::DI),
            "GG" => Ok(Flavor::GG),
            "GU" => Ok(Flavor::GU),
            "UU" => Ok(Flavor::UU),
            other => Err(Error::Input(format!("unknown flavor {other:?}"))),
        }
    }
}

impl Flavor {
    /// Acting pair on `J*` whose orbits parametrize supercharacters.
    pub fn sides(self) -> (Acting, Acting) {
        match self {
            Flavor::GG => (Acting::G, Acting::G),
            Flavor::GU => (Acting::G, Acting::U),
            Flavor::UU | Flavor::DI => (Acting::U, Acting::U),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Acting {
    Trivial,
    U,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    J,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Orbits of a group of linear maps on `J`, `J*`, or a quotient `J/I`.
///
/// Elements are coded by the lexicographic index of their free coordinates
/// (all coordinates when there is no ideal); a representative is the least member.
#[derive(Clone, Debug)]
pub struct OrbitSet {
    p: u32,
    dim: usize,
    ideal: Subspace,
    free: Vec<usize>,
    orbit_of: Vec<u32>,
    pub reps: Vec<Vec<u32>>,
    pub members: Vec<Vec<u64>>,
}

impl OrbitSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn size(&self, i: usize) -> usize {
        self.members[i].len()
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn code(&self, v: &[u32]) -> u64 {
        let r = self.ideal.reduce(v);
        let coords: Vec<u32> = self.free.iter().map(|&c| r[c]).collect();
        encode(&coords, self.p)
    }

    /// The reduced vector with the given code.
    pub fn vector(&self, code: u64) -> Vec<u32> {
        let coords = decode(code, self.free.len(), self.p);
        let mut v = vec![0u32; self.dim];
        for (&c, &x) in self.free.iter().zip(&coords) {
            v[c] = x;
        }
        v
    }

    pub fn orbit_index(&self, v: &[u32]) -> usize {
        self.orbit_of[self.code(v) as usize] as usize
    }

    pub fn member_vectors(&self, i: usize) -> Vec<Vec<u32>> {
        self.members[i].iter().map(|&c| self.vector(c)).collect()
    }

    /// Sorted orbit sizes.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.members.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }
}

/// Precomputed action matrices for an extension group.
#[derive(Clone, Debug)]
pub struct ActionContext<'a> {
    g: &'a ExtensionGroup,
    /// `y` such that the `1+y` generate `U`.
    u_gens: Vec<Vec<u32>>,
}

impl<'a> ActionContext<'a> {
    pub fn new(g: &'a ExtensionGroup) -> Self {
        let d = g.dim();
        let u_gens = (0..d).map(|i| g.algebra().basis_vector(i)).collect();
        ActionContext { g, u_gens }
    }

    pub fn group(&self) -> &ExtensionGroup {
        self.g
    }

    pub fn p(&self) -> u32 {
        self.g.p()
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// Matrix of `x ↦ g x` on `J` for `g = h(1+y)`.
    pub fn primal_left(&self, l: u32, y: &[u32]) -> Matrix {
        let (hl, _) = self.g.l().action(l);
        hl.mul(&self.one_plus(&self.g.algebra().left_mult_matrix(y)))
    }

    /// Matrix of `x ↦ x g` on `J` for `g = h(1+y)`.
    pub fn primal_right(&self, l: u32, y: &[u32]) -> Matrix {
        let (_, hr) = self.g.l().action(l);
        self.one_plus(&self.g.algebra().right_mult_matrix(y)).mul(&hr)
    }

    fn one_plus(&self, m: &Matrix) -> Matrix {
        let mut out = m.clone();
        let p = self.p();
        for i in 0..self.dim() {
            out.set(i, i, (out.get(i, i) + 1) % p);
        }
        out
    }

    /// The matrix by which `g = h(1+y)` acts on `carrier` from `side`.
    pub fn matrix(&self, carrier: Carrier, side: Side, l: u32, y: &[u32]) -> Matrix {
        match (carrier, side) {
            (Carrier::J, Side::Left) => self.primal_left(l, y),
            (Carrier::J, Side::Right) => self.primal_right(l, y),
            (Carrier::Dual, Side::Left) => self.primal_right(l, y).transpose(),
            (Carrier::Dual, Side::Right) => self.primal_left(l, y).transpose(),
        }
    }

    pub fn act(&self, carrier: Carrier, side: Side, l: u32, y: &[u32], v: &[u32]) -> Vec<u32> {
        self.matrix(carrier, side, l, y).mul_vec(v)
    }

    /// Generating matrices for `left × right` acting on `carrier`.
    pub fn generators(&self, carrier: Carrier, left: Acting, right: Acting) -> Vec<Matrix> {
        let zero = vec![0u32; self.dim()];
        let id = self.g.l().identity();
        let mut out = Vec::new();
        for (side, acting) in [(Side::Left, left), (Side::Right, right)] {
            if acting == Acting::Trivial {
                continue;
            }
            for y in &self.u_gens {
                out.push(self.matrix(carrier, side, id, y));
            }
            if acting == Acting::G {
                for &h in self.g.l().generators() {
                    out.push(self.matrix(carrier, side, h, &zero));
                }
            }
        }
        out
    }

    /// `Ad_h` on `J`.
    pub fn ad(&self, h: u32) -> Matrix {
        self.g.l().ad(h)
    }

    /// `Ad*_h` on `J*`.
    pub fn ad_dual(&self, h: u32) -> Matrix {
        self.g.l().ad_dual(h)
    }

    pub fn orbit_enum(&self, carrier: Carrier, left: Acting, right: Acting, budget: &Budget) -> Result<OrbitSet> {
        let gens = self.generators(carrier, left, right);
        orbits_of(&gens, &Subspace::zero(self.dim(), self.p()), self.dim(), self.p(), budget)
    }

    /// Orbits on `J/ideal` of the group generated by `gens` (which must preserve `ideal`).
    pub fn quotient_orbits(&self, ideal: &Subspace, gens: &[Matrix], budget: &Budget) -> Result<OrbitSet> {
        orbits_of(gens, ideal, self.dim(), self.p(), budget)
    }

    /// The single orbit of `start` under `left × right`, as a set of codes.
    pub fn orbit_of(
        &self,
        carrier: Carrier,
        start: &[u32],
        left: Acting,
        right: Acting,
        budget: &Budget,
    ) -> Result<HashSet<u64>> {
        let gens = self.generators(carrier, left, right);
        single_orbit(&gens, start, self.p(), budget)
    }

    /// Span of the orbit of `start`: the least subspace containing it and
    /// invariant under the generators.
    pub fn orbit_span(&self, carrier: Carrier, start: &[u32], left: Acting, right: Acting) -> Subspace {
        let gens = self.generators(carrier, left, right);
        invariant_closure(&gens, &[start.to_vec()], self.dim(), self.p())
    }

    /// `{h ∈ L : Ad*_h μ = μ for all μ in forms}` by direct evaluation.
    pub fn pointwise_stabilizer(&self, forms: &[Vec<u32>]) -> Vec<u32> {
        (0..self.g.l().order() as u32)
            .filter(|&h| {
                let m = self.ad_dual(h);
                forms.iter().all(|f| m.mul_vec(f) == *f)
            })
            .collect()
    }

    /// Same set, testing only a basis of `span`.
    pub fn pointwise_stabilizer_span(&self, span: &Subspace) -> Vec<u32> {
        self.pointwise_stabilizer(span.basis())
    }

    /// `{h ∈ L : Ad*_h maps the set onto itself}`, checked on every member.
    pub fn setwise_stabilizer(&self, members: &[Vec<u32>]) -> Vec<u32> {
        let p = self.p();
        let set: HashSet<u64> = members.iter().map(|v| encode(v, p)).collect();
        (0..self.g.l().order() as u32)
            .filter(|&h| {
                let m = self.ad_dual(h);
                members.iter().all(|f| set.contains(&encode(&m.mul_vec(f), p)))
            })
            .collect()
    }

    /// Setwise stabilizer of an orbit of a pair normalized by `L` (such as
    /// `G×U`): `Ad*_h` permutes these orbits, so testing one member suffices.
    pub fn setwise_stabilizer_by_rep(&self, rep: &[u32], orbit: &HashSet<u64>) -> Vec<u32> {
        let p = self.p();
        (0..self.g.l().order() as u32)
            .filter(|&h| orbit.contains(&encode(&self.ad_dual(h).mul_vec(rep), p)))
            .collect()
    }

    /// `J^{flavor}_h`: the annihilator of the sum of spans of those flavor
    /// orbits in `J*` that `h` fixes pointwise.
    pub fn ideal_of(&self, h: u32, flavor: Flavor, dual_orbits: &OrbitSpans) -> Result<InvariantIdeal> {
        let m = self.ad_dual(h);
        let mut vectors = Vec::new();
        for span in &dual_orbits.spans {
            if span.basis().iter().all(|b| m.mul_vec(b) == *b) {
                vectors.extend(span.basis().iter().cloned());
            }
        }
        let v = Subspace::span(&vectors, self.dim(), self.p());
        let ideal = InvariantIdeal {
            h,
            flavor,
            subspace: v.annihilator(),
        };
        self.check_ideal(&ideal)?;
        Ok(ideal)
    }

    /// Two-sided ideal of `J`, with the flavor's invariance under `L`.
    pub fn check_ideal(&self, ideal: &InvariantIdeal) -> Result<()> {
        let alg = self.g.algebra();
        let s = &ideal.subspace;
        for b in s.basis() {
            for y in &self.u_gens {
                if !s.contains(&alg.mul_raw(y, b)) || !s.contains(&alg.mul_raw(b, y)) {
                    return Err(Error::Axiom(format!(
                        "{} ideal of h={} is not a two-sided ideal",
                        ideal.flavor, ideal.h
                    )));
                }
            }
            for &g in self.g.l().generators() {
                let (hl, hr) = self.g.l().action(g);
                let right_ok = s.contains(&hr.mul_vec(b));
                let left_ok = s.contains(&hl.mul_vec(b));
                let ok = match ideal.flavor {
                    Flavor::GG => left_ok && right_ok,
                    Flavor::GU => right_ok,
                    Flavor::UU | Flavor::DI => true,
                };
                if !ok {
                    return Err(Error::Axiom(format!(
                        "{} ideal of h={} is not invariant under L",
                        ideal.flavor, ideal.h
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Spans of all orbits of an orbit set on `J*`, cached for ideal computations.
#[derive(Clone, Debug)]
pub struct OrbitSpans {
    pub spans: Vec<Subspace>,
}

impl OrbitSpans {
    pub fn new(orbits: &OrbitSet) -> Self {
        let spans = (0..orbits.len())
            .map(|i| Subspace::span(&orbits.member_vectors(i), orbits.dim, orbits.p))
            .collect();
        OrbitSpans { spans }
    }
}

/// One of the ideals `J_h`, `J′_h`, `J″_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantIdeal {
    pub h: u32,
    pub flavor: Flavor,
    pub subspace: Subspace,
}

impl InvariantIdeal {
    /// `π_h(x)`: the canonical representative of `x + ideal`.
    pub fn project(&self, x: &[u32]) -> Vec<u32> {
        self.subspace.reduce(x)
    }
}

fn orbits_of(gens: &[Matrix], ideal: &Subspace, dim: usize, p: u32, budget: &Budget) -> Result<OrbitSet> {
    let free = ideal.free_coordinates();
    let total = checked_pow(p as u64, free.len());
    budget.check("orbit carrier", total)?;
    let total = total as u64;
    let mut set = OrbitSet {
        p,
        dim,
        ideal: ideal.clone(),
        free,
        orbit_of: vec![u32::MAX; total as usize],
        reps: Vec::new(),
        members: Vec::new(),
    };
    let mut queue = VecDeque::new();
    for start in 0..total {
        if set.orbit_of[start as usize] != u32::MAX {
            continue;
        }
        let id = set.reps.len() as u32;
        set.orbit_of[start as usize] = id;
        queue.push_back(start);
        let mut members = vec![start];
        while let Some(c) = queue.pop_front() {
            let v = set.vector(c);
            for m in gens {
                let w = set.code(&m.mul_vec(&v));
                if set.orbit_of[w as usize] == u32::MAX {
                    set.orbit_of[w as usize] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        set.reps.push(set.vector(start));
        set.members.push(members);
    }
    Ok(set)
}

fn single_orbit(gens: &[Matrix], start: &[u32], p: u32, budget: &Budget) -> Result<HashSet<u64>> {
    let d = start.len();
    let mut seen = HashSet::from([encode(start, p)]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for m in gens {
            let w = m.mul_vec(&v);
            if seen.insert(encode(&w, p)) {
                budget.check("single orbit", seen.len() as u128)?;
                queue.push_back(w);
            }
        }
    }
    debug_assert!(seen.iter().all(|&c| decode(c, d, p).len() == d));
    Ok(seen)
}

/// Least subspace containing `seeds` and invariant under every matrix in `gens`.
pub fn invariant_closure(gens: &[Matrix], seeds: &[Vec<u32>], dim: usize, p: u32) -> Subspace {
    let mut span = Subspace::span(seeds, dim, p);
    let mut pending: Vec<Vec<u32>> = span.basis().to_vec();
    while let Some(v) = pending.pop() {
        for m in gens {
            let w = m.mul_vec(&v);
            if !span.contains(&w) {
                span = span.sum(&Subspace::span(std::slice::from_ref(&w), dim, p));
                pending.push(w);
            }
        }
    }
    span
}

/// Orbits computed from full element lists of `U` or `G` (no generators); the
/// reference against which generator-based orbits are checked.
pub fn orbit_enum_full(
    ctx: &ActionContext,
    carrier: Carrier,
    left: Acting,
    right: Acting,
    budget: &Budget,
) -> Result<Vec<Vec<u64>>> {
    let g = ctx.group();
    let d = ctx.dim();
    let p = ctx.p();
    let elements = |a: Acting| -> Vec<(u32, Vec<u32>)> {
        let us: Vec<Vec<u32>> = (0..g.u_size()).map(|i| decode(i, d, p)).collect();
        match a {
            Acting::Trivial => vec![(g.l().identity(), vec![0; d])],
            Acting::U => us.into_iter().map(|y| (g.l().identity(), y)).collect(),
            Acting::G => (0..g.l().order() as u32)
                .flat_map(|l| us.iter().map(move |y| (l, y.clone())))
                .collect(),
        }
    };
    let lm: Vec<Matrix> = elements(left).iter().map(|(l, y)| ctx.matrix(carrier, Side::Left, *l, y)).collect();
    let rm: Vec<Matrix> = elements(right).iter().map(|(l, y)| ctx.matrix(carrier, Side::Right, *l, y)).collect();
    let total = checked_pow(p as u64, d);
    budget.check("orbit carrier", total)?;
    let mut assigned: HashMap<u64, usize> = HashMap::new();
    let mut out: Vec<Vec<u64>> = Vec::new();
    for c in 0..total as u64 {
        if assigned.contains_key(&c) {
            continue;
        }
        let v = decode(c, d, p);
        let mut orbit: Vec<u64> = Vec::new();
        for a in &lm {
            let av = a.mul_vec(&v);
            for b in &rm {
                let w = encode(&b.mul_vec(&av), p);
                if let std::collections::hash_map::Entry::Vacant(e) = assigned.entry(w) {
                    e.insert(out.len());
                    orbit.push(w);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ut3, LinearForm, NilpotentAlgebra};
    use crate::group::LGroup;

    fn ut3_group(p: u32) -> ExtensionGroup {
        ExtensionGroup::new(ut3(p), LGroup::trivial(p, 3), &Budget::default()).unwrap()
    }

    fn borel_gl2_3() -> ExtensionGroup {
        let p = 3;
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
        ExtensionGroup::new(NilpotentAlgebra::zero_product(p, 1).unwrap(), l, &Budget::default()).unwrap()
    }

    #[test]
    fn right_action_example() {
        // λ = E13*, u = 1+E12: λu(x) = λ(ux) has coordinates (0, 1, 1)
        let g = ut3_group(2);
        let ctx = ActionContext::new(&g);
        let lam = vec![0, 0, 1];
        let out = ctx.act(Carrier::Dual, Side::Right, g.l().identity(), &[1, 0, 0], &lam);
        assert_eq!(out, vec![0, 1, 1]);
        // pointwise oracle
        for (i, e) in (0..3).map(|i| (i, g.algebra().basis_vector(i))).collect::<Vec<_>>() {
            let ux = ctx.act(Carrier::J, Side::Left, g.l().identity(), &[1, 0, 0], &e);
            assert_eq!(out[i], LinearForm(lam.clone()).eval(&crate::algebra::AlgebraElement(ux), 2));
        }
    }

    #[test]
    fn orbit_counts() {
        let g = ut3_group(2);
        let ctx = ActionContext::new(&g);
        let o = ctx.orbit_enum(Carrier::J, Acting::U, Acting::U, &Budget::default()).unwrap();
        assert_eq!(o.sizes(), vec![1, 1, 2, 2, 2]);
        let g3 = ut3_group(3);
        let ctx3 = ActionContext::new(&g3);
        assert_eq!(ctx3.orbit_enum(Carrier::J, Acting::U, Acting::U, &Budget::default()).unwrap().len(), 11);
        let b = borel_gl2_3();
        let cb = ActionContext::new(&b);
        let ob = cb.orbit_enum(Carrier::J, Acting::G, Acting::G, &Budget::default()).unwrap();
        assert_eq!(ob.sizes(), vec![1, 2]);
    }

    #[test]
    fn generator_orbits_match_full_orbits() {
        for g in [ut3_group(2), ut3_group(3), borel_gl2_3()] {
            let ctx = ActionContext::new(&g);
            for carrier in [Carrier::J, Carrier::Dual] {
                for (l, r) in [(Acting::U, Acting::U), (Acting::G, Acting::U), (Acting::G, Acting::G), (Acting::U, Acting::Trivial)] {
                    let fast = ctx.orbit_enum(carrier, l, r, &Budget::default()).unwrap();
                    let full = orbit_enum_full(&ctx, carrier, l, r, &Budget::default()).unwrap();
                    assert_eq!(fast.members, full);
                }
            }
        }
    }

    #[test]
    fn stabilizers_and_ideals_on_borel() {
        let g = borel_gl2_3();
        let ctx = ActionContext::new(&g);
        let all = (0..4).collect::<Vec<u32>>();
        assert_eq!(ctx.pointwise_stabilizer(&[vec![0]]), all);
        let dual = ctx.orbit_enum(Carrier::Dual, Acting::G, Acting::G, &Budget::default()).unwrap();
        let spans = OrbitSpans::new(&dual);
        // h = diag(1,2) scales E12 by 2, so only λ = 0 is fixed and the ideal is J
        let h = g.l().index_of(&[1, 0, 0, 2]).unwrap();
        let ideal = ctx.ideal_of(h, Flavor::GG, &spans).unwrap();
        assert_eq!(ideal.subspace.dim(), 1);
        let id = ctx.ideal_of(g.l().identity(), Flavor::GG, &spans).unwrap();
        assert_eq!(id.subspace.dim(), 0);
        // scalar h acts trivially
        let s = g.l().index_of(&[2, 0, 0, 2]).unwrap();
        assert_eq!(ctx.ideal_of(s, Flavor::GG, &spans).unwrap().subspace.dim(), 0);
        let q = ctx
            .quotient_orbits(&Subspace::full(1, 3), &ctx.generators(Carrier::J, Acting::G, Acting::G), &Budget::default())
            .unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn orbit_stabilizer_for_left_u_on_dual() {
        let g = ut3_group(3);
        let ctx = ActionContext::new(&g);
        let budget = Budget::default();
        let us: Vec<Vec<u32>> = (0..27).map(|i| decode(i, 3, 3)).collect();
        for c in 0..27u64 {
            let lam = decode(c, 3, 3);
            let orbit = ctx.orbit_of(Carrier::Dual, &lam, Acting::U, Acting::Trivial, &budget).unwrap();
            let stab = us
                .iter()
                .filter(|y| ctx.act(Carrier::Dual, Side::Left, 0, y, &lam) == lam)
                .count();
            assert_eq!(orbit.len() * stab, 27);
        }
    }

    #[test]
    fn span_and_literal_stabilizers_agree() {
        let g = borel_gl2_3();
        let ctx = ActionContext::new(&g);
        let dual = ctx.orbit_enum(Carrier::Dual, Acting::U, Acting::U, &Budget::default()).unwrap();
        for i in 0..dual.len() {
            let members = dual.member_vectors(i);
            let span = ctx.orbit_span(Carrier::Dual, &dual.reps[i], Acting::U, Acting::U);
            assert_eq!(ctx.pointwise_stabilizer(&members), ctx.pointwise_stabilizer_span(&span));
            let set: HashSet<u64> = dual.members[i].iter().copied().collect();
            assert_eq!(ctx.setwise_stabilizer(&members), ctx.setwise_stabilizer_by_rep(&dual.reps[i], &set));
        }
    }
}
