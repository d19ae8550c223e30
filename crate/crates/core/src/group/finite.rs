//! Finite groups given by a Cayley table over canonical element indices.

use std::collections::VecDeque;

use crate::error::{Error, Result};

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    identity: u32,
}

/// Conjugacy classes ordered by their canonical (least-index) representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub reps: Vec<u32>,
    pub members: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }
}

/// A subgroup re-indexed as a group in its own right.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FiniteGroup,
    /// subgroup index -> parent index (ascending)
    pub embed: Vec<u32>,
    locate: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.embed.len()
    }

    /// Subgroup index of a parent element, if it lies in the subgroup.
    pub fn locate(&self, parent: u32) -> Option<u32> {
        match self.locate[parent as usize] {
            ABSENT => None,
            i => Some(i),
        }
    }

    pub fn contains(&self, parent: u32) -> bool {
        self.locate[parent as usize] != ABSENT
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication oracle on `0..order`.
    ///
    /// Checks that an identity exists and every element has an inverse;
    /// associativity is assumed from the oracle.
    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                if c >= order {
                    return Err(Error::InvalidGroup(format!("product {a}*{b} out of range")));
                }
                table[a * order + b] = c as u32;
            }
        }
        FiniteGroup::from_table(order, table)
    }

    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != order * order {
            return Err(Error::InvalidGroup("table has wrong size".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] as usize == a && table[a * order + e] as usize == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = vec![ABSENT; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row
                .iter()
                .position(|&c| c as usize == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses[a] = b as u32;
        }
        Ok(FiniteGroup {
            order,
            table,
            inverses,
            identity: identity as u32,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(1, vec![0]).unwrap()
    }

    /// The cyclic group Z/n.
    pub fn cyclic(n: usize) -> Self {
        FiniteGroup::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    /// The symmetric group on `k` points, elements as permutations in lexicographic order.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &Vec<usize>| perms.binary_search(p).unwrap();
        FiniteGroup::from_fn(perms.len(), |a, b| {
            // (a*b)(i) = a(b(i))
            let c: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
            index(&c)
        })
        .unwrap()
    }

    /// The dihedral group of order `2n` (rotations r^i at 0..n, reflections after).
    pub fn dihedral(n: usize) -> Self {
        FiniteGroup::from_fn(2 * n, |a, b| {
            let (sa, ia) = (a / n, a % n);
            let (sb, ib) = (b / n, b % n);
            let i = if sa == 0 { (ia + ib) % n } else { (ia + n - ib) % n };
            ((sa ^ sb) * n) + i
        })
        .unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// `s g s^{-1}`.
    #[inline]
    pub fn conj(&self, s: u32, g: u32) -> u32 {
        self.mul(self.mul(s, g), self.inv(s))
    }

    pub fn pow(&self, g: u32, k: u64) -> u32 {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: u32) -> u64 {
        let mut k = 1;
        let mut cur = g;
        while cur != self.identity {
            cur = self.mul(cur, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order as u32).fold(1u64, |acc, g| num_integer::lcm(acc, self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        self.orbits_under_conjugation(&(0..self.order as u32).collect::<Vec<_>>(), &(0..self.order as u32).collect::<Vec<_>>())
    }

    /// Orbits of `actors` (by conjugation) on the union `set`, which must be invariant.
    pub fn orbits_under_conjugation(&self, set: &[u32], actors: &[u32]) -> ConjugacyClasses {
        let mut class_of = vec![ABSENT; self.order];
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for &g in &sorted {
            if class_of[g as usize] != ABSENT {
                continue;
            }
            let c = reps.len() as u32;
            let mut cls = Vec::new();
            for &s in actors {
                let y = self.conj(s, g);
                if class_of[y as usize] == ABSENT {
                    class_of[y as usize] = c;
                    cls.push(y);
                }
            }
            cls.sort_unstable();
            reps.push(g);
            members.push(cls);
        }
        ConjugacyClasses {
            reps,
            members,
            class_of,
        }
    }

    /// Subgroup generated by `gens`, as ascending parent indices.
    pub fn generate(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[self.identity as usize] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A small generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for g in 0..self.order as u32 {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.generate(&gens);
            }
        }
        gens
    }

    pub fn subgroup(&self, elems: &[u32]) -> Result<Subgroup> {
        let mut embed = elems.to_vec();
        embed.sort_unstable();
        embed.dedup();
        let mut locate = vec![ABSENT; self.order];
        for (i, &e) in embed.iter().enumerate() {
            if e as usize >= self.order {
                return Err(Error::NotASubgroup(format!("element {e} out of range")));
            }
            locate[e as usize] = i as u32;
        }
        if locate[self.identity as usize] == ABSENT {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let n = embed.len();
        let mut table = vec![0u32; n * n];
        for (i, &a) in embed.iter().enumerate() {
            for (j, &b) in embed.iter().enumerate() {
                let c = locate[self.mul(a, b) as usize];
                if c == ABSENT {
                    return Err(Error::NotASubgroup(format!(
                        "product of {a} and {b} leaves the subset"
                    )));
                }
                table[i * n + j] = c;
            }
        }
        Ok(Subgroup {
            group: FiniteGroup::from_table(n, table)?,
            embed,
            locate,
        })
    }

    /// Whether every element of `actors` normalizes the subset `h`.
    pub fn normalizes(&self, actors: &[u32], h: &[u32]) -> bool {
        let mut inside = vec![false; self.order];
        for &x in h {
            inside[x as usize] = true;
        }
        actors
            .iter()
            .all(|&k| h.iter().all(|&x| inside[self.conj(k, x) as usize]))
    }
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
