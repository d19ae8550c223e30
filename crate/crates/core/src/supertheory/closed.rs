//! Closed supercharacter formulas and the induced-character oracle they are tested against.

use num_bigint::BigInt;
use num_traits::One;

use crate::actions::{ActionContext, Acting, Carrier, Side};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{induce_brute, ClassFunction, ConjugacyClasses, FiniteGroup, Subgroup};
use crate::linalg::{decode, dot, encode, Subspace};
use crate::scalars::{Cyclotomic, Rational};

/// The additive character `ε = ζ_N^{(N/p)k}` of `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Epsilon {
    pub n: u32,
    pub p: u32,
    pub power: u32,
}

impl Epsilon {
    pub fn new(n: u32, p: u32, power: u32) -> Result<Self> {
        if !n.is_multiple_of(p) {
            return Err(Error::Input(format!("N = {n} is not a multiple of p = {p}")));
        }
        if power.is_multiple_of(p) {
            return Err(Error::Input(format!("epsilon power {power} is divisible by p = {p}")));
        }
        Ok(Epsilon { n, p, power: power % p })
    }

    fn step(&self) -> usize {
        ((self.n / self.p) * self.power % self.n) as usize
    }

    /// `ε^j`.
    pub fn pow(&self, j: u32) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.n, (self.step() * j as usize) as i64)
    }

    /// `Σ_j counts[j] ε^j` for `counts` indexed by `GF(p)`.
    pub fn sum(&self, counts: &[i64]) -> Cyclotomic {
        let mut raw = vec![0i64; self.n as usize];
        for (j, &c) in counts.iter().enumerate() {
            raw[(self.step() * j) % self.n as usize] += c;
        }
        Cyclotomic::from_power_counts(self.n, &raw)
    }
}

/// For every `x ∈ J`, the distribution of `μ(x)` over `μ` in an orbit of `J*`.
#[derive(Clone, Debug)]
pub struct OrbitSums {
    p: u32,
    counts: Vec<Vec<i64>>,
}

impl OrbitSums {
    pub fn new(orbit: &[Vec<u32>], dim: usize, p: u32) -> Self {
        let total = (p as u64).pow(dim as u32);
        let counts = (0..total)
            .map(|c| {
                let x = decode(c, dim, p);
                let mut v = vec![0i64; p as usize];
                for mu in orbit {
                    v[dot(mu, &x, p) as usize] += 1;
                }
                v
            })
            .collect();
        OrbitSums { p, counts }
    }

    pub fn at(&self, x: &[u32]) -> &[i64] {
        &self.counts[encode(x, self.p) as usize]
    }

    pub fn at_code(&self, code: u64) -> &[i64] {
        &self.counts[code as usize]
    }
}

/// A class function `θ` on a subgroup `H0 ≤ L`, with `θ̇` extended by zero.
#[derive(Clone, Debug)]
pub struct ThetaOnL {
    pub subgroup: Subgroup,
    /// Value at each element of `subgroup.embed`.
    pub values: Vec<Cyclotomic>,
}

impl ThetaOnL {
    pub fn dot_at(&self, h: u32) -> Option<&Cyclotomic> {
        self.subgroup.locate(h).map(|i| &self.values[i as usize])
    }
}

/// GG flavor: `c · θ̇(h) · Σ_{μ∈O} ε^{μ(x)}`.
pub fn closed_single(eps: &Epsilon, coef: &Rational, theta: &ThetaOnL, sums: &OrbitSums, h: u32, x: &[u32]) -> Cyclotomic {
    match theta.dot_at(h) {
        None => Cyclotomic::zero(eps.n),
        Some(t) => (&t.lift(lcm_order(t.order(), eps.n)) * &eps.sum(sums.at(x))).scale(coef),
    }
}

/// `c · Σ_{r∈L} θ̇(r h r^{-1}) Σ_{μ∈O} ε^{μ(Ad_r x)}`, with `ad_codes[r][code(x)] = code(Ad_r x)`.
pub fn closed_rsum(
    l_table: &FiniteGroup,
    ad_codes: &[Vec<u32>],
    eps: &Epsilon,
    coef: &Rational,
    theta: &ThetaOnL,
    sums: &OrbitSums,
    h: u32,
    x_code: u64,
) -> Cyclotomic {
    // accumulate ε-counts per element of H0 hit by r h r^{-1}
    let mut acc: Vec<Option<Vec<i64>>> = vec![None; theta.subgroup.order()];
    for r in 0..l_table.order() as u32 {
        let c = l_table.conj(r, h);
        if let Some(i) = theta.subgroup.locate(c) {
            let counts = sums.at_code(ad_codes[r as usize][x_code as usize] as u64);
            let slot = acc[i as usize].get_or_insert_with(|| vec![0; counts.len()]);
            for (a, b) in slot.iter_mut().zip(counts) {
                *a += b;
            }
        }
    }
    let mut total = Cyclotomic::zero(eps.n);
    for (i, counts) in acc.iter().enumerate() {
        if let Some(counts) = counts {
            let t = &theta.values[i];
            let term = &t.lift(lcm_order(t.order(), eps.n)) * &eps.sum(counts);
            total = &total + &term;
        }
    }
    total.scale(coef)
}

fn lcm_order(a: u32, b: u32) -> u32 {
    num_integer::lcm(a, b)
}

/// `ad_codes[r][code(x)] = code(Ad_r x)` for every `r ∈ L`.
pub fn ad_code_table(ctx: &ActionContext) -> Vec<Vec<u32>> {
    let g = ctx.group();
    let d = ctx.dim();
    let p = ctx.p();
    let total = g.u_size();
    (0..g.l().order() as u32)
        .map(|r| {
            let m = ctx.ad(r);
            (0..total).map(|c| encode(&m.mul_vec(&decode(c, d, p)), p) as u32).collect()
        })
        .collect()
}

/// The character `ξ_{θ,λ}` (or the sum `Σ_{p∈L} ξ_{θ,pλ}`) on `G_{0,λ} = H0 ⋉ U_{λ,rt}`,
/// as a subgroup of the Cayley table of `G` with one value per element.
pub fn xi_character(
    ctx: &ActionContext,
    g_table: &FiniteGroup,
    theta: &ThetaOnL,
    lambda: &[u32],
    summed: bool,
    eps: &Epsilon,
    budget: &Budget,
) -> Result<(Subgroup, Vec<Cyclotomic>)> {
    let g = ctx.group();
    let p = ctx.p();
    let zero = vec![0u32; ctx.dim()];
    // H0 ⊆ H_λ, and H0 ⊆ H_{Gλ} for the summed variant
    let fixed: Vec<Vec<u32>> = if summed {
        ctx.orbit_of(Carrier::Dual, lambda, Acting::G, Acting::Trivial, budget)?
            .into_iter()
            .map(|c| decode(c, ctx.dim(), p))
            .collect()
    } else {
        vec![lambda.to_vec()]
    };
    for &h in &theta.subgroup.embed {
        let m = ctx.ad_dual(h);
        if fixed.iter().any(|mu| m.mul_vec(mu) != *mu) {
            return Err(Error::StabilizerPrecondition);
        }
    }
    let rt: Subspace = g.algebra().right_stabilizer(&crate::algebra::LinearForm(lambda.to_vec()));
    let rt_elems = rt.elements();
    let forms: Vec<Vec<u32>> = if summed {
        (0..g.l().order() as u32)
            .map(|l| ctx.act(Carrier::Dual, Side::Left, l, &zero, lambda))
            .collect()
    } else {
        vec![lambda.to_vec()]
    };
    let mut elems = Vec::with_capacity(theta.subgroup.order() * rt_elems.len());
    for &h in &theta.subgroup.embed {
        for y in &rt_elems {
            elems.push(g.index(h, y));
        }
    }
    let sub = g_table.subgroup(&elems)?;
    let values = sub
        .embed
        .iter()
        .map(|&e| {
            let (h, y) = g.split(e);
            let t = theta.dot_at(h).expect("element of H0");
            let mut counts = vec![0i64; p as usize];
            for mu in &forms {
                counts[dot(mu, &y, p) as usize] += 1;
            }
            &t.lift(lcm_order(t.order(), eps.n)) * &eps.sum(&counts)
        })
        .collect();
    Ok((sub, values))
}

/// Induced character of `ξ` (or of its `L`-sum) to `G`, on the classes of `G`.
pub fn induced_oracle(
    ctx: &ActionContext,
    g_table: &FiniteGroup,
    g_classes: &ConjugacyClasses,
    theta: &ThetaOnL,
    lambda: &[u32],
    summed: bool,
    eps: &Epsilon,
    budget: &Budget,
) -> Result<ClassFunction> {
    let (sub, values) = xi_character(ctx, g_table, theta, lambda, summed, eps, budget)?;
    Ok(induce_brute(g_table, g_classes, &sub, &values))
}

/// `|λU| = |U| / |U_{λ,rt}|`.
pub fn lambda_u_size(ctx: &ActionContext, lambda: &[u32]) -> u64 {
    let rt = ctx
        .group()
        .algebra()
        .right_stabilizer(&crate::algebra::LinearForm(lambda.to_vec()));
    (ctx.p() as u64).pow((ctx.dim() - rt.dim()) as u32)
}

pub fn ratio(num: u128, den: u128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Rational {
    Rational::one()
}
