//! The DI, GG, GU and UU supercharacter theories of `G = L ⋉ U`.

pub mod closed;
pub mod verify;

use std::collections::HashMap;

use crate::actions::{ActionContext, Acting, Carrier, OrbitSet, OrbitSpans};
pub use crate::actions::Flavor;
use crate::algebra::NilpotentAlgebra;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{ConjugacyClasses, ExtensionGroup, FiniteGroup, LGroup};
use crate::linalg::{decode, encode, Matrix, Subspace};
use crate::scalars::{Cyclotomic, Rational};

use closed::{ad_code_table, closed_rsum, closed_single, lambda_u_size, ratio, Epsilon, OrbitSums, ThetaOnL};
pub use verify::{verify_theory, verify_view, CheckOutcome, CheckStatus, TheoryView, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// `ε = ζ_N^{(N/p)·k}` with this `k`.
    pub epsilon_power: u32,
    pub budget: Budget,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            epsilon_power: 1,
            budget: Budget::default(),
        }
    }
}

/// One element `α = (θ, λ)` of the parameter set.
#[derive(Clone, Debug)]
pub struct Parameter {
    pub lambda: Vec<u32>,
    /// Codes of the flavor orbit of `λ` in `J*` (`GλG`, `GλU` or `UλU`).
    pub orbit: Vec<u64>,
    pub theta: ThetaOnL,
    pub coefficient: Rational,
    pub lambda_u: u64,
}

/// One superclass `K_β`, `β = (h, ω)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Superclass {
    pub h: u32,
    /// Canonical representative of `ω` in `J/ideal`.
    pub omega: Vec<u32>,
    pub ideal_dim: usize,
    /// Sorted element indices of `G`.
    pub members: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct SupercharacterTheory {
    pub flavor: Flavor,
    pub n: u32,
    pub epsilon: Epsilon,
    pub parameters: Vec<Parameter>,
    pub superclasses: Vec<Superclass>,
    /// `values[α][β]`: value of `χ_α` at the least member of `K_β`.
    pub values: Vec<Vec<Cyclotomic>>,
    /// `element_values[α][g]` for every element of `G`.
    pub element_values: Vec<Vec<Cyclotomic>>,
    /// Index of the identity of `G`.
    pub identity: u32,
}

impl SupercharacterTheory {
    /// Position of the superclass `{1}`, if present.
    pub fn identity_superclass(&self) -> Option<usize> {
        self.superclasses.iter().position(|k| k.members == [self.identity])
    }

    /// `χ_α(1)` for every parameter.
    pub fn degrees(&self) -> Vec<Cyclotomic> {
        self.element_values.iter().map(|row| row[self.identity as usize].clone()).collect()
    }
}

/// Everything a build needs about `G`, computed once.
pub struct Workspace<'a> {
    pub g: &'a ExtensionGroup,
    pub ctx: ActionContext<'a>,
    pub g_table: &'a FiniteGroup,
    pub g_classes: ConjugacyClasses,
    pub l_table: &'a FiniteGroup,
    pub l_classes: ConjugacyClasses,
    pub eps: Epsilon,
    pub ad_codes: Vec<Vec<u32>>,
    pub budget: Budget,
}

impl<'a> Workspace<'a> {
    pub fn new(g: &'a ExtensionGroup, opts: &BuildOptions) -> Result<Self> {
        let g_table = g.table()?;
        let l_table = g
            .l()
            .table()
            .ok_or_else(|| Error::BudgetExceeded {
                what: "Cayley table of L".into(),
                size: g.l().order() as u128,
                cap: crate::group::extension::TABLE_CAP as u64,
            })?;
        let n = num_integer::lcm(g.p() as u64, g_table.exponent()) as u32;
        let ctx = ActionContext::new(g);
        let ad_codes = ad_code_table(&ctx);
        Ok(Workspace {
            g,
            g_classes: g_table.conjugacy_classes(),
            l_classes: l_table.conjugacy_classes(),
            eps: Epsilon::new(n, g.p(), opts.epsilon_power)?,
            ctx,
            g_table,
            l_table,
            ad_codes,
            budget: opts.budget,
        })
    }

    fn l_all(&self) -> Vec<u32> {
        (0..self.l_table.order() as u32).collect()
    }

    /// Values of the closed formula for a parameter at every element of `G`.
    pub fn closed_values(&self, flavor: Flavor, param: &Parameter) -> Vec<Cyclotomic> {
        let forms: Vec<Vec<u32>> = param.orbit.iter().map(|&c| decode(c, self.ctx.dim(), self.ctx.p())).collect();
        let sums = OrbitSums::new(&forms, self.ctx.dim(), self.ctx.p());
        let nu = self.g.u_size();
        (0..self.g.order() as u32)
            .map(|e| {
                let (h, x) = self.g.split(e);
                match flavor {
                    Flavor::GG | Flavor::DI => closed_single(&self.eps, &param.coefficient, &param.theta, &sums, h, &x),
                    Flavor::GU | Flavor::UU => closed_rsum(
                        self.l_table,
                        &self.ad_codes,
                        &self.eps,
                        &param.coefficient,
                        &param.theta,
                        &sums,
                        h,
                        e as u64 % nu,
                    ),
                }
            })
            .collect()
    }
}

/// Builds the GG, GU or UU theory of `G` (DI is routed to [`build_di`] on `U`).
pub fn build_theory(g: &ExtensionGroup, flavor: Flavor, opts: &BuildOptions) -> Result<SupercharacterTheory> {
    if flavor == Flavor::DI {
        return build_di(g.algebra(), opts);
    }
    let ws = Workspace::new(g, opts)?;
    let parameters = build_parameters(&ws, flavor)?;
    let superclasses = build_superclasses(&ws, flavor)?;
    let element_values: Vec<Vec<Cyclotomic>> = parameters.iter().map(|a| ws.closed_values(flavor, a)).collect();
    Ok(assemble(flavor, &ws, parameters, superclasses, element_values))
}

fn assemble(
    flavor: Flavor,
    ws: &Workspace,
    parameters: Vec<Parameter>,
    superclasses: Vec<Superclass>,
    element_values: Vec<Vec<Cyclotomic>>,
) -> SupercharacterTheory {
    let values = element_values
        .iter()
        .map(|row| superclasses.iter().map(|k| row[k.members[0] as usize].clone()).collect())
        .collect();
    SupercharacterTheory {
        flavor,
        n: ws.eps.n,
        epsilon: ws.eps,
        parameters,
        superclasses,
        values,
        element_values,
        identity: ws.g_table.identity(),
    }
}

/// Orbits of the flavor pair on `J*`, and the coarser orbits of that pair
/// together with `Ad*_L` (one per `L`-conjugation class of flavor orbits).
pub fn dual_orbits(ws: &Workspace, flavor: Flavor) -> Result<(OrbitSet, OrbitSet)> {
    let (left, right) = flavor.sides();
    let fine = ws.ctx.orbit_enum(Carrier::Dual, left, right, &ws.budget)?;
    let mut gens = ws.ctx.generators(Carrier::Dual, left, right);
    gens.extend(ws.g.l().generators().iter().map(|&h| ws.ctx.ad_dual(h)));
    let coarse = ws
        .ctx
        .quotient_orbits(&Subspace::zero(ws.ctx.dim(), ws.ctx.p()), &gens, &ws.budget)?;
    Ok((fine, coarse))
}

fn build_parameters(ws: &Workspace, flavor: Flavor) -> Result<Vec<Parameter>> {
    let (fine, coarse) = dual_orbits(ws, flavor)?;
    let l_all = ws.l_all();
    let mut cache: HashMap<(Vec<u32>, Vec<u32>), crate::group::KIrreducibles> = HashMap::new();
    let mut out = Vec::new();
    for lambda in &coarse.reps {
        let oi = fine.orbit_index(lambda);
        let members = fine.member_vectors(oi);
        let h0 = ws.ctx.pointwise_stabilizer(&members);
        let s = match flavor {
            Flavor::GG => l_all.clone(),
            _ => {
                let set = fine.members[oi].iter().copied().collect();
                ws.ctx.setwise_stabilizer_by_rep(lambda, &set)
            }
        };
        let key = (h0.clone(), s.clone());
        if !cache.contains_key(&key) {
            let k = crate::group::k_irreducible_characters(ws.l_table, &s, &h0)?;
            cache.insert(key.clone(), k);
        }
        let kirr = &cache[&key];
        let lambda_u = lambda_u_size(&ws.ctx, lambda);
        let l = ws.l_table.order() as u128;
        let coefficient = match flavor {
            Flavor::GG => ratio(l * l * lambda_u as u128, (h0.len() * members.len()) as u128),
            Flavor::GU => ratio(l * lambda_u as u128, (h0.len() * members.len()) as u128),
            Flavor::UU | Flavor::DI => ratio(lambda_u as u128, (h0.len() * members.len()) as u128),
        };
        let mut params: Vec<Parameter> = kirr
            .sums
            .iter()
            .map(|sum| {
                let values = kirr
                    .subgroup
                    .embed
                    .iter()
                    .enumerate()
                    .map(|(i, _)| sum.values[kirr.table.classes.class_of[i] as usize].clone())
                    .collect();
                Parameter {
                    lambda: lambda.clone(),
                    orbit: fine.members[oi].clone(),
                    theta: ThetaOnL {
                        subgroup: kirr.subgroup.clone(),
                        values,
                    },
                    coefficient: coefficient.clone(),
                    lambda_u,
                }
            })
            .collect();
        params.sort_by(|a, b| compare_values(&a.theta.values, &b.theta.values));
        out.extend(params);
    }
    Ok(out)
}

fn compare_values(a: &[Cyclotomic], b: &[Cyclotomic]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp_coeffs(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// The ideal `J_h`, `J′_h` or `J″_h` for every `L`-class representative.
pub fn ideals(ws: &Workspace, flavor: Flavor) -> Result<Vec<crate::actions::InvariantIdeal>> {
    let (left, right) = flavor.sides();
    let dual = ws.ctx.orbit_enum(Carrier::Dual, left, right, &ws.budget)?;
    let spans = OrbitSpans::new(&dual);
    ws.l_classes
        .reps
        .iter()
        .map(|&h| ws.ctx.ideal_of(h, flavor, &spans))
        .collect()
}

fn build_superclasses(ws: &Workspace, flavor: Flavor) -> Result<Vec<Superclass>> {
    let g = ws.g;
    let p = ws.ctx.p();
    let ideals = ideals(ws, flavor)?;
    let mut out = Vec::new();
    for (ci, ideal) in ideals.iter().enumerate() {
        let h = ws.l_classes.reps[ci];
        let mut gens: Vec<Matrix> = match flavor {
            Flavor::GG => ws.ctx.generators(Carrier::J, Acting::G, Acting::G),
            Flavor::GU => ws.ctx.generators(Carrier::J, Acting::U, Acting::G),
            Flavor::UU | Flavor::DI => ws.ctx.generators(Carrier::J, Acting::U, Acting::U),
        };
        if flavor != Flavor::GG {
            for r in 0..ws.l_table.order() as u32 {
                if ws.l_table.conj(r, h) == h {
                    gens.push(ws.ctx.ad(r));
                }
            }
        }
        let q = ws.ctx.quotient_orbits(&ideal.subspace, &gens, &ws.budget)?;
        let kernel = ideal.subspace.elements();
        for oi in 0..q.len() {
            let mut preimage = Vec::new();
            for v in q.member_vectors(oi) {
                for k in &kernel {
                    preimage.push(encode(&crate::linalg::vec_add(&v, k, p), p));
                }
            }
            let mut members: Vec<u32> = match flavor {
                Flavor::GG => ws.l_classes.members[ci]
                    .iter()
                    .flat_map(|&h2| preimage.iter().map(move |&x| (h2, x)))
                    .map(|(h2, x)| h2 * g.u_size() as u32 + x as u32)
                    .collect(),
                _ => {
                    let mut m = Vec::new();
                    for pc in 0..ws.l_table.order() as u32 {
                        let hc = ws.l_table.conj(pc, h);
                        for &x in &preimage {
                            let ax = ws.ad_codes[pc as usize][x as usize];
                            m.push(hc * g.u_size() as u32 + ax);
                        }
                    }
                    m
                }
            };
            members.sort_unstable();
            members.dedup();
            out.push(Superclass {
                h,
                omega: q.reps[oi].clone(),
                ideal_dim: ideal.subspace.dim(),
                members,
            });
        }
    }
    Ok(out)
}

/// The Diaconis–Isaacs theory of `U = 1 + J`: superclasses `1 + UxU` and characters
/// induced from `ξ_λ` on `U_{λ,rt}`, computed by brute-force induction.
pub fn build_di(algebra: &NilpotentAlgebra, opts: &BuildOptions) -> Result<SupercharacterTheory> {
    let g = ExtensionGroup::new(algebra.clone(), LGroup::trivial(algebra.p(), algebra.dim()), &opts.budget)?;
    let ws = Workspace::new(&g, opts)?;
    let primal = ws.ctx.orbit_enum(Carrier::J, Acting::U, Acting::U, &ws.budget)?;
    let superclasses: Vec<Superclass> = (0..primal.len())
        .map(|i| Superclass {
            h: 0,
            omega: primal.reps[i].clone(),
            ideal_dim: 0,
            members: primal.members[i].iter().map(|&c| c as u32).collect(),
        })
        .collect();
    let dual = ws.ctx.orbit_enum(Carrier::Dual, Acting::U, Acting::U, &ws.budget)?;
    let trivial_l = ws.l_table.subgroup(&[0])?;
    let mut parameters = Vec::new();
    let mut element_values = Vec::new();
    for (i, lambda) in dual.reps.iter().enumerate() {
        let theta = ThetaOnL {
            subgroup: trivial_l.clone(),
            values: vec![Cyclotomic::one(1)],
        };
        let ind = closed::induced_oracle(&ws.ctx, ws.g_table, &ws.g_classes, &theta, lambda, false, &ws.eps, &ws.budget)?;
        element_values.push(
            (0..g.order() as usize)
                .map(|e| ind.values[ws.g_classes.class_of[e] as usize].clone())
                .collect(),
        );
        let lambda_u = lambda_u_size(&ws.ctx, lambda);
        parameters.push(Parameter {
            lambda: lambda.clone(),
            orbit: dual.members[i].clone(),
            theta,
            coefficient: ratio(lambda_u as u128, dual.size(i) as u128),
            lambda_u,
        });
    }
    Ok(assemble(Flavor::DI, &ws, parameters, superclasses, element_values))
}

/// Compares the closed formula with brute-force induction of the defining
/// character (`Σ_p ξ_{θ,pλ}` for GG/GU, `ξ_{θ,λ}` for UU/DI) at every element of `G`.
/// Returns one witness string per mismatching parameter.
pub fn oracle_mismatches(g: &ExtensionGroup, t: &SupercharacterTheory, opts: &BuildOptions) -> Result<Vec<String>> {
    let ws = Workspace::new(g, opts)?;
    let summed = matches!(t.flavor, Flavor::GG | Flavor::GU);
    let mut out = Vec::new();
    for (a, param) in t.parameters.iter().enumerate() {
        let ind = closed::induced_oracle(&ws.ctx, ws.g_table, &ws.g_classes, &param.theta, &param.lambda, summed, &ws.eps, &ws.budget)?;
        let row = &t.element_values[a];
        if let Some(e) = (0..row.len()).find(|&e| row[e] != ind.values[ws.g_classes.class_of[e] as usize]) {
            out.push(format!(
                "parameter {a} (lambda {:?}): closed {} vs induced {} at element {e}",
                param.lambda,
                row[e],
                ind.values[ws.g_classes.class_of[e] as usize]
            ));
        }
    }
    Ok(out)
}

/// For GG parameters: the GG closed formula against the general `r`-sum formula
/// with `H0 = H_{GλG}` and the sum over `GλU`.
pub fn gg_specialization_mismatches(g: &ExtensionGroup, t: &SupercharacterTheory, opts: &BuildOptions) -> Result<Vec<String>> {
    let ws = Workspace::new(g, opts)?;
    let mut out = Vec::new();
    for (a, param) in t.parameters.iter().enumerate() {
        let gu_orbit = ws.ctx.orbit_of(Carrier::Dual, &param.lambda, Acting::G, Acting::U, &ws.budget)?;
        let mut orbit: Vec<u64> = gu_orbit.into_iter().collect();
        orbit.sort_unstable();
        let l = ws.l_table.order() as u128;
        let general = Parameter {
            coefficient: ratio(
                l * param.lambda_u as u128,
                (param.theta.subgroup.order() * orbit.len()) as u128,
            ),
            orbit,
            ..param.clone()
        };
        let vals = ws.closed_values(Flavor::GU, &general);
        if let Some(e) = (0..vals.len()).find(|&e| vals[e] != t.element_values[a][e]) {
            out.push(format!("parameter {a}: specialized {} vs general {} at element {e}", t.element_values[a][e], vals[e]));
        }
    }
    Ok(out)
}

/// The counting identity behind `|A| = |B|` for GG: the number of pairs
/// `(L-class in H_{GλG}, G×G orbit)` counted from both sides.
pub fn gg_counting_identity(g: &ExtensionGroup, opts: &BuildOptions) -> Result<(usize, usize)> {
    let ws = Workspace::new(g, opts)?;
    let dual = ws.ctx.orbit_enum(Carrier::Dual, Acting::G, Acting::G, &ws.budget)?;
    let mut left = 0;
    for i in 0..dual.len() {
        let h0 = ws.ctx.pointwise_stabilizer(&dual.member_vectors(i));
        let inside = ws.l_classes.reps.iter().enumerate().filter(|(c, _)| {
            ws.l_classes.members[*c].iter().all(|m| h0.binary_search(m).is_ok())
        });
        left += inside.count();
    }
    let gens = ws.ctx.generators(Carrier::J, Acting::G, Acting::G);
    let mut right = 0;
    for ideal in ideals(&ws, Flavor::GG)? {
        right += ws.ctx.quotient_orbits(&ideal.subspace, &gens, &ws.budget)?.len();
    }
    Ok((left, right))
}

/// `H_{GλU} = H_{Gλ}` and `H_{UλU} = H_{Uλ}` for every orbit representative,
/// comparing pointwise stabilizers of the orbit spans. Returns the failures.
pub fn stabilizer_coincidences(g: &ExtensionGroup, budget: &Budget) -> Result<Vec<String>> {
    let ctx = ActionContext::new(g);
    let mut out = Vec::new();
    for (left, label) in [(Acting::G, "G"), (Acting::U, "U")] {
        let orbits = ctx.orbit_enum(Carrier::Dual, left, Acting::U, budget)?;
        for lambda in &orbits.reps {
            let two = ctx.pointwise_stabilizer_span(&ctx.orbit_span(Carrier::Dual, lambda, left, Acting::U));
            let one = ctx.pointwise_stabilizer_span(&ctx.orbit_span(Carrier::Dual, lambda, left, Acting::Trivial));
            if one != two {
                out.push(format!(
                    "lambda {lambda:?}: |H_{{{label}λU}}| = {} but |H_{{{label}λ}}| = {}",
                    two.len(),
                    one.len()
                ));
            }
        }
    }
    Ok(out)
}

/// A partition of `G` as a canonical sorted list of sorted blocks.
pub fn canonical_partition(classes: &[Superclass]) -> Vec<Vec<u32>> {
    let mut blocks: Vec<Vec<u32>> = classes.iter().map(|k| k.members.clone()).collect();
    blocks.sort();
    blocks
}

/// Whether every block of `fine` lies inside a block of `coarse`.
pub fn refines(fine: &[Superclass], coarse: &[Superclass], order: usize) -> bool {
    let mut block_of = vec![usize::MAX; order];
    for (i, k) in coarse.iter().enumerate() {
        for &m in &k.members {
            block_of[m as usize] = i;
        }
    }
    fine.iter().all(|k| {
        let b = block_of[k.members[0] as usize];
        k.members.iter().all(|&m| block_of[m as usize] == b)
    })
}

#[cfg(test)]
mod tests;
