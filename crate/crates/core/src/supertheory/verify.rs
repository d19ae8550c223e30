//! Exact verification of the supercharacter-theory axioms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Superclass, SupercharacterTheory};
use crate::error::Result;
use crate::group::{dixon_table, inner_product, ClassFunction, ExtensionGroup};
use crate::scalars::{Cyclotomic, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: String,
    pub name: String,
    pub status: CheckStatus,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.id == id)
    }

    fn push(&mut self, id: &str, name: &str, witness: Option<String>) {
        self.checks.push(CheckOutcome {
            id: id.into(),
            name: name.into(),
            status: if witness.is_none() { CheckStatus::Pass } else { CheckStatus::Fail },
            witness,
        });
    }
}

/// Runs checks (a)–(e), and (f) when `check_irr` is set.
pub fn verify_theory(t: &SupercharacterTheory, g: &ExtensionGroup, check_irr: bool) -> Result<VerificationReport> {
    let view = TheoryView {
        n: t.n,
        identity: t.identity,
        element_values: &t.element_values,
        superclasses: &t.superclasses,
    };
    verify_view(&view, g, check_irr)
}

/// The parts of a theory the axioms are stated in terms of.
#[derive(Clone, Copy, Debug)]
pub struct TheoryView<'a> {
    pub n: u32,
    pub identity: u32,
    pub element_values: &'a [Vec<Cyclotomic>],
    pub superclasses: &'a [Superclass],
}

pub fn verify_view(t: &TheoryView, g: &ExtensionGroup, check_irr: bool) -> Result<VerificationReport> {
    let order = g.order() as usize;
    let mut report = VerificationReport::default();
    if t.identity as usize >= order
        || t.element_values.iter().any(|row| row.len() != order)
        || t.superclasses.iter().any(|k| k.members.is_empty() || k.members.iter().any(|&m| m as usize >= order))
    {
        return Err(crate::error::Error::Input("theory does not match the order of G".into()));
    }

    // (b) constancy first: (a) can then be evaluated superclass-wise
    let mut constancy = None;
    'outer: for (a, row) in t.element_values.iter().enumerate() {
        for (b, k) in t.superclasses.iter().enumerate() {
            let v0 = &row[k.members[0] as usize];
            if let Some(&m) = k.members.iter().find(|&&m| row[m as usize] != *v0) {
                constancy = Some(format!(
                    "character {a} takes {} at element {} and {} at element {} of superclass {b}",
                    v0, k.members[0], row[m as usize], m
                ));
                break 'outer;
            }
        }
    }
    let constant = constancy.is_none();

    // (a) orthogonality
    let weights: Vec<(usize, Vec<u32>)> = if constant {
        t.superclasses.iter().map(|k| (k.members.len(), vec![k.members[0]])).collect()
    } else {
        (0..order as u32).map(|e| (1, vec![e])).collect()
    };
    let mut orth = None;
    'pairs: for i in 0..t.element_values.len() {
        for j in i + 1..t.element_values.len() {
            let ip = weighted_product(&t.element_values[i], &t.element_values[j], &weights, t.n);
            if !ip.is_zero() {
                orth = Some(format!("<chi_{i}, chi_{j}> * |G| = {ip}"));
                break 'pairs;
            }
        }
    }
    report.push("a", "pairwise orthogonality", orth);
    report.push("b", "constant on superclasses", constancy);

    // (c) counts
    let (na, nb) = (t.element_values.len(), t.superclasses.len());
    report.push(
        "c",
        "|A| = |B|",
        (na != nb).then(|| format!("|A| = {na}, |B| = {nb}")),
    );

    // (d) partition with {1}
    let mut seen = vec![0u32; order];
    for k in t.superclasses {
        for &m in &k.members {
            seen[m as usize] += 1;
        }
    }
    let partition = if let Some(e) = seen.iter().position(|&c| c != 1) {
        Some(format!("element {e} lies in {} superclasses", seen[e]))
    } else if !t.superclasses.iter().any(|k| k.members == [t.identity]) {
        Some("{1} is not a superclass".into())
    } else {
        None
    };
    report.push("d", "partition of G containing {1}", partition);

    // (e) degrees
    let degrees: Vec<Cyclotomic> = t.element_values.iter().map(|row| row[t.identity as usize].clone()).collect();
    let degree_fail = degrees.iter().enumerate().find_map(|(a, d)| match d.to_rational() {
        Some(q) if q.is_integer() && q.is_positive() => None,
        _ => Some(format!("chi_{a}(1) = {d}")),
    });
    report.push("e", "degrees are positive integers", degree_fail);

    // (f) irreducible constituents
    if check_irr {
        let table = g.table()?;
        let ct = dixon_table(table)?;
        let chis: Vec<ClassFunction> = t
            .element_values
            .iter()
            .map(|row| ClassFunction::new(ct.classes.reps.iter().map(|&r| row[r as usize].clone()).collect()))
            .collect();
        let mut fail = None;
        for (i, psi) in ct.irreducibles.iter().enumerate() {
            let hits: Vec<usize> = chis
                .iter()
                .enumerate()
                .filter(|(_, chi)| !inner_product(&ct.classes, chi, psi).is_zero())
                .map(|(a, _)| a)
                .collect();
            if hits.len() != 1 {
                fail = Some(format!("irreducible {i} is a constituent of supercharacters {hits:?}"));
                break;
            }
        }
        report.push("f", "each irreducible in exactly one supercharacter", fail);
    } else {
        report.checks.push(CheckOutcome {
            id: "f".into(),
            name: "each irreducible in exactly one supercharacter".into(),
            status: CheckStatus::Skipped,
            witness: None,
        });
    }
    Ok(report)
}

/// `Σ w · f(x) · conj(g(x))` over weighted sample points.
fn weighted_product(f: &[Cyclotomic], g: &[Cyclotomic], weights: &[(usize, Vec<u32>)], n: u32) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(n);
    for (w, pts) in weights {
        let x = pts[0] as usize;
        if f[x].is_zero() || g[x].is_zero() {
            continue;
        }
        let term = (&f[x] * &g[x].conj()).scale(&Rational::from_integer(BigInt::from(*w)));
        acc = &acc + &term;
    }
    acc
}

/// `<χ, χ>` computed element-wise over `G`, as an exact rational.
pub fn norm(values: &[Cyclotomic], n: u32) -> Option<Rational> {
    let weights: Vec<(usize, Vec<u32>)> = (0..values.len() as u32).map(|e| (1, vec![e])).collect();
    let s = weighted_product(values, values, &weights, n);
    s.to_rational()
        .map(|q| q * Rational::new(BigInt::one(), BigInt::from(values.len())))
        .filter(|q| !q.is_zero() || values.iter().all(Cyclotomic::is_zero))
}
