//! The `x ↦ r a x b r^{-1}` classification of `J` against rook placements, and
//! the two-block comparison of the UU theory with the irreducible characters.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::rooks::enumerate_rook_placements;
use super::{build_parabolic, Composition, JRoot, RookPlacement};
use crate::actions::{ActionContext, Acting, Carrier};
use crate::budget::{checked_pow, Budget};
use crate::error::Result;
use crate::group::finite::permutations;
use crate::group::{dixon_table, inner_product, ClassFunction};
use crate::linalg::decode;
use crate::supertheory::{build_theory, canonical_partition, BuildOptions, Flavor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub composition: String,
    pub p: u32,
    pub j_size: u64,
    /// Number of classes of `J` under `x ~ r a x b r^{-1}`.
    pub classes: usize,
    pub rook_placements: usize,
    pub weyl_classes: usize,
    /// Every class contains some `x_D`.
    pub part1: bool,
    /// Coordinates of an `x` equivalent to no `x_D`.
    pub part1_witness: Option<Vec<u32>>,
    /// `x_D ~ x_{D′}` exactly when `D` and `D′` are Weyl-conjugate.
    pub part2: bool,
    pub part2_witness: Option<String>,
    pub verdict: String,
}

/// Permutations of `[0, n)` that preserve every block of `comp`.
pub fn weyl_group(comp: &Composition) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![(0..comp.n()).collect()];
    for k in 0..comp.len() {
        let seg = comp.segment(k);
        let perms = permutations(seg.len());
        out = out
            .into_iter()
            .flat_map(|w| {
                let seg = seg.clone();
                perms.iter().map(move |s| {
                    let mut w2 = w.clone();
                    for (i, &t) in s.iter().enumerate() {
                        w2[seg.start + i] = seg.start + t;
                    }
                    w2
                })
            })
            .collect();
    }
    out
}

fn weyl_act(comp: &Composition, w: &[usize], d: &RookPlacement) -> RookPlacement {
    let roots = d.roots().iter().map(|r| JRoot { row: w[r.row], col: w[r.col] }).collect();
    RookPlacement::new(comp, roots).expect("the Weyl group preserves rook placements")
}

pub fn check_conjecture(comp: &Composition, p: u32, budget: &Budget) -> Result<ConjectureReport> {
    let (l_order, u_order) = comp.orders(p);
    budget.check("L × U × U", l_order.saturating_mul(u_order).saturating_mul(u_order))?;
    let g = build_parabolic(comp, p, budget)?;
    let ctx = ActionContext::new(&g);
    let mut gens = ctx.generators(Carrier::J, Acting::U, Acting::U);
    gens.extend(g.l().generators().iter().map(|&r| ctx.ad(r)));
    let d = g.dim();
    let orbits = ctx.quotient_orbits(&crate::linalg::Subspace::zero(d, p), &gens, budget)?;

    let placements = enumerate_rook_placements(comp);
    let orbit_of_d: Vec<usize> = placements.iter().map(|pl| orbits.orbit_index(&pl.elements(comp).0)).collect();
    let hit: BTreeSet<usize> = orbit_of_d.iter().copied().collect();
    let part1_witness = (0..orbits.len()).find(|o| !hit.contains(o)).map(|o| orbits.reps[o].clone());

    let weyl = weyl_group(comp);
    let mut weyl_class: BTreeMap<RookPlacement, usize> = BTreeMap::new();
    let mut weyl_classes = 0;
    for pl in &placements {
        if weyl_class.contains_key(pl) {
            continue;
        }
        for w in &weyl {
            weyl_class.insert(weyl_act(comp, w, pl), weyl_classes);
        }
        weyl_classes += 1;
    }
    let mut part2_witness = None;
    'outer: for (i, a) in placements.iter().enumerate() {
        for (j, b) in placements.iter().enumerate().skip(i + 1) {
            let equivalent = orbit_of_d[i] == orbit_of_d[j];
            let conjugate = weyl_class[a] == weyl_class[b];
            if equivalent != conjugate {
                part2_witness = Some(format!(
                    "D = {{{a}}} and D' = {{{b}}}: equivalent = {equivalent}, Weyl-conjugate = {conjugate}"
                ));
                break 'outer;
            }
        }
    }
    let (part1, part2) = (part1_witness.is_none(), part2_witness.is_none());
    let verdict = if part1 && part2 {
        format!("both parts verified by exhaustive search for type ({comp}) over GF({p})")
    } else {
        format!("counterexample found for type ({comp}) over GF({p})")
    };
    Ok(ConjectureReport {
        composition: comp.to_string(),
        p,
        j_size: checked_pow(p as u64, d) as u64,
        classes: orbits.len(),
        rook_placements: placements.len(),
        weyl_classes,
        part1,
        part1_witness: part1_witness.map(|c| decode(crate::linalg::encode(&c, p), d, p)),
        part2,
        part2_witness,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UuPropReport {
    pub composition: String,
    pub p: u32,
    pub conjugacy_classes: usize,
    pub superclasses: usize,
    pub partition_equal: bool,
    pub single_constituent: bool,
    pub witness: Option<String>,
}

impl UuPropReport {
    pub fn holds(&self) -> bool {
        self.partition_equal && self.single_constituent
    }
}

/// Compares the UU theory of a parabolic with the conjugacy classes and the
/// irreducible characters of `G`.
pub fn check_uu_prop(comp: &Composition, p: u32, budget: &Budget) -> Result<UuPropReport> {
    let g = build_parabolic(comp, p, budget)?;
    let opts = BuildOptions {
        budget: *budget,
        ..Default::default()
    };
    let t = build_theory(&g, Flavor::UU, &opts)?;
    let table = g.table()?;
    let ct = dixon_table(table)?;
    let mut classes: Vec<Vec<u32>> = ct.classes.members.iter().map(|m| {
        let mut m = m.clone();
        m.sort_unstable();
        m
    }).collect();
    classes.sort();
    let partition_equal = canonical_partition(&t.superclasses) == classes;
    let mut witness = (!partition_equal).then(|| "superclass partition differs from the conjugacy classes".to_string());
    let mut single = true;
    for (a, row) in t.element_values.iter().enumerate() {
        let chi = ClassFunction::new(ct.classes.reps.iter().map(|&r| row[r as usize].clone()).collect());
        let n = ct
            .irreducibles
            .iter()
            .filter(|psi| !inner_product(&ct.classes, &chi, psi).is_zero())
            .count();
        if n != 1 {
            single = false;
            witness.get_or_insert_with(|| format!("supercharacter {a} has {n} irreducible constituents"));
        }
    }
    Ok(UuPropReport {
        composition: comp.to_string(),
        p,
        conjugacy_classes: ct.classes.len(),
        superclasses: t.superclasses.len(),
        partition_equal,
        single_constituent: single,
        witness,
    })
}
