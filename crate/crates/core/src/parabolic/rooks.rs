//! Rook placements in `Δ_J` and their classification by block profile.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Composition, JRoot, RookPlacement};
use crate::actions::{ActionContext, Acting, Carrier};
use crate::budget::Budget;
use crate::error::Result;
use crate::group::ExtensionGroup;

/// All rook placements in `roots`, sorted.
pub fn placements_in(comp: &Composition, roots: &[JRoot]) -> Vec<RookPlacement> {
    fn go(roots: &[JRoot], start: usize, current: &mut Vec<JRoot>, out: &mut Vec<Vec<JRoot>>) {
        out.push(current.clone());
        for i in start..roots.len() {
            let r = roots[i];
            if current.iter().all(|c| c.row != r.row && c.col != r.col) {
                current.push(r);
                go(roots, i + 1, current, out);
                current.pop();
            }
        }
    }
    let mut raw = Vec::new();
    go(roots, 0, &mut Vec::new(), &mut raw);
    let mut out: Vec<RookPlacement> = raw
        .into_iter()
        .map(|r| RookPlacement::new(comp, r).expect("constructed placements are valid"))
        .collect();
    out.sort();
    out
}

pub fn enumerate_rook_placements(comp: &Composition) -> Vec<RookPlacement> {
    placements_in(comp, &comp.roots())
}

/// Placements sharing one profile `(d_km)`; `members[0]` is the least.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RookClass {
    pub profile: Vec<usize>,
    pub members: Vec<RookPlacement>,
}

impl RookClass {
    pub fn representative(&self) -> &RookPlacement {
        &self.members[0]
    }
}

/// Classes of the given placements by profile, ordered by representative.
pub fn classes_of(comp: &Composition, placements: Vec<RookPlacement>) -> Vec<RookClass> {
    let mut by_profile: BTreeMap<Vec<usize>, Vec<RookPlacement>> = BTreeMap::new();
    for d in placements {
        by_profile.entry(d.profile(comp)).or_default().push(d);
    }
    let mut out: Vec<RookClass> = by_profile
        .into_iter()
        .map(|(profile, mut members)| {
            members.sort();
            RookClass { profile, members }
        })
        .collect();
    out.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    out
}

pub fn rook_classes(comp: &Composition) -> Vec<RookClass> {
    classes_of(comp, enumerate_rook_placements(comp))
}

/// Rook classes checked against the `G×G` orbits on `J` and `J*`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RookClassification {
    pub composition: String,
    pub p: u32,
    pub classes: Vec<RookClass>,
    pub orbits_j: usize,
    pub orbits_dual: usize,
    /// Every orbit on `J` contains `x_D` for some `D`, and `x_D`, `x_{D′}`
    /// share an orbit exactly when `D`, `D′` share a profile.
    pub j_consistent: bool,
    /// The same statements for `λ_D` on `J*`.
    pub dual_consistent: bool,
}

impl RookClassification {
    pub fn holds(&self) -> bool {
        self.j_consistent && self.dual_consistent && self.orbits_j == self.classes.len() && self.orbits_dual == self.classes.len()
    }
}

pub fn classify(g: &ExtensionGroup, comp: &Composition, budget: &Budget) -> Result<RookClassification> {
    let ctx = ActionContext::new(g);
    let classes = rook_classes(comp);
    let mut consistent = [true, true];
    let mut counts = [0, 0];
    for (slot, carrier) in [Carrier::J, Carrier::Dual].into_iter().enumerate() {
        let orbits = ctx.orbit_enum(carrier, Acting::G, Acting::G, budget)?;
        counts[slot] = orbits.len();
        let mut hit = vec![None; orbits.len()];
        let point = |d: &RookPlacement| {
            let (x, lambda) = d.elements(comp);
            if carrier == Carrier::J {
                x
            } else {
                lambda
            }
        };
        for (c, class) in classes.iter().enumerate() {
            let first = orbits.orbit_index(&point(&class.members[0]));
            for d in &class.members {
                let o = orbits.orbit_index(&point(d));
                if o != first {
                    consistent[slot] = false;
                }
                match hit[o] {
                    None => hit[o] = Some(c),
                    Some(prev) if prev != c => consistent[slot] = false,
                    _ => {}
                }
            }
        }
        if hit.iter().any(Option::is_none) {
            consistent[slot] = false;
        }
    }
    Ok(RookClassification {
        composition: comp.to_string(),
        p: g.p(),
        classes,
        orbits_j: counts[0],
        orbits_dual: counts[1],
        j_consistent: consistent[0],
        dual_consistent: consistent[1],
    })
}
