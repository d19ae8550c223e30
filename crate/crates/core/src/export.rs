//! JSON and CSV forms of theories and character tables.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraFile, NilpotentAlgebra};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{CharacterTable, ExtensionGroup, LGroup};
use crate::linalg::Matrix;
use crate::parabolic::{build_parabolic, Composition};
use crate::scalars::Cyclotomic;
use crate::supertheory::{verify_view, Flavor, Superclass, SupercharacterTheory, TheoryView, VerificationReport};

pub const FORMAT_VERSION: u32 = 1;

/// Largest cyclotomic order accepted from a file; real builds stay far below.
pub const MAX_FILE_ORDER: u32 = 1 << 12;

/// Where `G` comes from: a parabolic type or an algebra definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSource {
    Parabolic { blocks: Vec<usize>, p: u32 },
    Algebra { definition: AlgebraFile },
}

impl GroupSource {
    pub fn build(&self, budget: &Budget) -> Result<ExtensionGroup> {
        match self {
            GroupSource::Parabolic { blocks, p } => build_parabolic(&Composition::new(blocks.clone())?, *p, budget),
            GroupSource::Algebra { definition } => {
                let alg = definition.algebra()?;
                let l = if definition.l_generators.is_empty() {
                    LGroup::trivial(alg.p(), alg.dim())
                } else {
                    let gens = definition
                        .l_generators
                        .iter()
                        .map(|g| Ok((square(&g.left, alg.dim(), alg.p())?, square(&g.right, alg.dim(), alg.p())?)))
                        .collect::<Result<Vec<_>>>()?;
                    LGroup::closure_abstract(alg.p(), alg.dim(), &gens, budget)?
                };
                ExtensionGroup::new(alg, l, budget)
            }
        }
    }

    /// The group a theory of `flavor` lives on: `U` alone for DI.
    pub fn build_for(&self, flavor: Flavor, budget: &Budget) -> Result<ExtensionGroup> {
        let g = self.build(budget)?;
        if flavor == Flavor::DI {
            let alg: NilpotentAlgebra = g.algebra().clone();
            let l = LGroup::trivial(alg.p(), alg.dim());
            return ExtensionGroup::new(alg, l, budget);
        }
        Ok(g)
    }

    pub fn describe(&self) -> String {
        match self {
            GroupSource::Parabolic { blocks, p } => {
                let b: Vec<String> = blocks.iter().map(|x| x.to_string()).collect();
                format!("parabolic ({}) over GF({p})", b.join(","))
            }
            GroupSource::Algebra { definition } => {
                format!("algebra of dimension {} over GF({})", definition.dim, definition.p)
            }
        }
    }
}

fn square(rows: &[Vec<u32>], dim: usize, p: u32) -> Result<Matrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidGroup(format!("action matrix must be {dim}×{dim}")));
    }
    let reduced: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
    Ok(Matrix::from_rows(&reduced, dim, p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterRecord {
    pub lambda: Vec<u32>,
    pub orbit_size: usize,
    /// `|H0|`, the order of the subgroup carrying `θ`.
    pub h0_order: usize,
    /// `θ` on the elements of `H0` (indices into `L`).
    pub h0: Vec<u32>,
    pub theta: Vec<String>,
    pub coefficient: String,
}

/// Serialized theory: everything needed to re-run the axiom checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryFile {
    pub format: u32,
    pub source: GroupSource,
    pub flavor: Flavor,
    pub epsilon_power: u32,
    /// Cyclotomic order of every value.
    pub n: u32,
    pub group_order: u64,
    pub identity: u32,
    pub parameters: Vec<ParameterRecord>,
    pub superclasses: Vec<Superclass>,
    /// `values[α][β]` at the least member of `K_β`.
    pub values: Vec<Vec<String>>,
    /// `element_values[α][g]` for every `g ∈ G`.
    pub element_values: Vec<Vec<String>>,
    pub report: VerificationReport,
}

impl TheoryFile {
    pub fn new(
        t: &SupercharacterTheory,
        g: &ExtensionGroup,
        source: GroupSource,
        epsilon_power: u32,
        report: VerificationReport,
    ) -> Self {
        let strings = |rows: &[Vec<Cyclotomic>]| -> Vec<Vec<String>> {
            rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
        };
        TheoryFile {
            format: FORMAT_VERSION,
            source,
            flavor: t.flavor,
            epsilon_power,
            n: t.n,
            group_order: g.order(),
            identity: t.identity,
            parameters: t
                .parameters
                .iter()
                .map(|a| ParameterRecord {
                    lambda: a.lambda.clone(),
                    orbit_size: a.orbit.len(),
                    h0_order: a.theta.subgroup.order(),
                    h0: a.theta.subgroup.embed.clone(),
                    theta: a.theta.values.iter().map(|c| c.to_string()).collect(),
                    coefficient: a.coefficient.to_string(),
                })
                .collect(),
            superclasses: t.superclasses.clone(),
            values: strings(&t.values),
            element_values: strings(&t.element_values),
            report,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: TheoryFile = serde_json::from_str(text)?;
        if f.format != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format version {}", f.format)));
        }
        if f.n == 0 || f.n > MAX_FILE_ORDER {
            return Err(Error::Parse(format!("cyclotomic order {} out of range", f.n)));
        }
        Ok(f)
    }

    fn parse_rows(&self, rows: &[Vec<String>]) -> Result<Vec<Vec<Cyclotomic>>> {
        rows.iter()
            .map(|r| r.iter().map(|s| Cyclotomic::parse(s, self.n)).collect())
            .collect()
    }

    /// Rebuilds `G`, checks the stored data against it and re-runs the axioms.
    pub fn reverify(&self, budget: &Budget, check_irr: bool) -> Result<VerificationReport> {
        let g = self.source.build_for(self.flavor, budget)?;
        if g.order() != self.group_order {
            return Err(Error::Input(format!(
                "file records |G| = {} but the source builds |G| = {}",
                self.group_order,
                g.order()
            )));
        }
        let element_values = self.parse_rows(&self.element_values)?;
        let values = self.parse_rows(&self.values)?;
        if values.len() != element_values.len() || values.iter().any(|r| r.len() != self.superclasses.len()) {
            return Err(Error::Input("value matrix has the wrong shape".into()));
        }
        let view = TheoryView {
            n: self.n,
            identity: self.identity,
            element_values: &element_values,
            superclasses: &self.superclasses,
        };
        let report = verify_view(&view, &g, check_irr)?;
        for (a, row) in values.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let rep = self.superclasses[b].members[0] as usize;
                if element_values[a][rep] != *v {
                    return Err(Error::Axiom(format!(
                        "value matrix entry ({a}, {b}) disagrees with the element values"
                    )));
                }
            }
        }
        Ok(report)
    }

    /// The value matrix with complex entries to 12 significant digits.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::from("parameter");
        for b in 0..self.superclasses.len() {
            out.push_str(&format!(",K{b}"));
        }
        out.push('\n');
        for (a, row) in self.parse_rows(&self.values)?.iter().enumerate() {
            out.push_str(&format!("chi{a}"));
            for v in row {
                out.push(',');
                out.push_str(&complex_string(v));
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// `x` to `digits` significant digits, without exponent for moderate sizes.
pub fn sig_digits(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i64;
    if !(-5..15).contains(&mag) {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i64 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `re` for exactly real values, otherwise `re+imi` or `re-imi`.
pub fn complex_string(c: &Cyclotomic) -> String {
    let (re, im) = c.to_complex();
    if *c == c.conj() {
        return sig_digits(re, 12);
    }
    let re_s = sig_digits(re, 12);
    let im_s = sig_digits(im.abs(), 12);
    format!("{re_s}{}{im_s}i", if im < 0.0 { '-' } else { '+' })
}

/// A Dixon character table in JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableFile {
    pub group_order: usize,
    pub n: u32,
    pub class_reps: Vec<u32>,
    pub class_sizes: Vec<usize>,
    pub characters: Vec<Vec<String>>,
}

impl CharacterTableFile {
    pub fn new(ct: &CharacterTable) -> Self {
        CharacterTableFile {
            group_order: ct.classes.members.iter().map(Vec::len).sum(),
            n: ct.order,
            class_reps: ct.classes.reps.clone(),
            class_sizes: (0..ct.classes.len()).map(|c| ct.classes.size(c)).collect(),
            characters: ct
                .irreducibles
                .iter()
                .map(|chi| chi.values.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }
}
