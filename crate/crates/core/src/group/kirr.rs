//! Orbit sums of irreducible characters of a normal subgroup under conjugation.

use super::character::{dixon_table, CharacterTable, ClassFunction};
use super::finite::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// The `K`-irreducible characters of `H ⊴ K`: sums over `K`-orbits on `Irr(H)`.
#[derive(Clone, Debug)]
pub struct KIrreducibles {
    pub subgroup: Subgroup,
    pub table: CharacterTable,
    /// Orbit sums, as class functions on the classes of `table`.
    pub sums: Vec<ClassFunction>,
    /// Indices into `table.irreducibles` forming each orbit.
    pub orbits: Vec<Vec<usize>>,
    /// Number of `K`-conjugacy classes of the parent group contained in `H`.
    pub k_classes_in_h: usize,
}

impl KIrreducibles {
    /// Value of the `i`-th orbit sum at a parent element of `H`.
    pub fn value_at(&self, i: usize, parent: u32) -> Option<&crate::scalars::Cyclotomic> {
        let y = self.subgroup.locate(parent)?;
        let c = self.table.classes.class_of[y as usize] as usize;
        Some(&self.sums[i].values[c])
    }
}

/// `actors` (elements of `group`) act on `Irr(H)` by `ψ^k(y) = ψ(k^{-1} y k)`.
pub fn k_irreducible_characters(group: &FiniteGroup, actors: &[u32], h: &[u32]) -> Result<KIrreducibles> {
    if !group.normalizes(actors, h) {
        return Err(Error::NotNormal);
    }
    let subgroup = group.subgroup(h)?;
    let table = dixon_table(&subgroup.group)?;
    let classes = &table.classes;
    let r = classes.len();

    // class permutation induced by each actor (k^{-1} y k)
    let mut perms: Vec<Vec<usize>> = Vec::new();
    for &k in actors {
        let kinv = group.inv(k);
        let perm: Vec<usize> = classes
            .reps
            .iter()
            .map(|&y| {
                let z = group.conj(kinv, subgroup.embed[y as usize]);
                classes.class_of[subgroup.locate(z).unwrap() as usize] as usize
            })
            .collect();
        if !perms.contains(&perm) {
            perms.push(perm);
        }
    }

    let mut orbit_of = vec![usize::MAX; r];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..table.irreducibles.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![i];
        orbit_of[i] = id;
        for perm in &perms {
            let twisted: Vec<_> = perm.iter().map(|&c| table.irreducibles[i].values[c].clone()).collect();
            let j = table
                .irreducibles
                .iter()
                .position(|chi| chi.values == twisted)
                .ok_or_else(|| Error::Dixon("conjugate character missing from table".into()))?;
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = id;
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let sums: Vec<ClassFunction> = orbits
        .iter()
        .map(|o| {
            o[1..]
                .iter()
                .fold(table.irreducibles[o[0]].clone(), |acc, &j| acc.add(&table.irreducibles[j]))
        })
        .collect();

    // K-classes inside H: orbits of the class permutations on H-classes
    let mut seen = vec![false; r];
    let mut k_classes_in_h = 0;
    for c in 0..r {
        if seen[c] {
            continue;
        }
        k_classes_in_h += 1;
        let mut stack = vec![c];
        seen[c] = true;
        while let Some(x) = stack.pop() {
            for perm in &perms {
                if !seen[perm[x]] {
                    seen[perm[x]] = true;
                    stack.push(perm[x]);
                }
            }
        }
    }
    if k_classes_in_h != sums.len() {
        return Err(Error::Dixon(format!(
            "{} orbit sums but {} classes of the acting group inside the subgroup",
            sums.len(),
            k_classes_in_h
        )));
    }
    Ok(KIrreducibles {
        subgroup,
        table,
        sums,
        orbits,
        k_classes_in_h,
    })
}
