//! Acceptance criteria 1–10, one PASS/FAIL line each.
//!
//! Every numeric comparison is exact (cyclotomic or integer equality); the only
//! tolerances are the wall-clock caps below. A sub-check tagged as a documented
//! conflict compares against a stated value that exhaustive computation
//! contradicts: it prints FAIL but does not fail the run.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use superchar::group::{dixon_table, inner_product, CharacterTable, ExtensionGroup, FiniteGroup, LGroup};
use superchar::linalg::Matrix;
use superchar::parabolic::stabilizers::{s_prime_brute, scalar_value, stabilizer_brute};
use superchar::parabolic::{
    build_parabolic, check_conjecture, check_uu_prop, classify, l_matrix, stabilizer_of_d, Composition, RookPlacement,
    Shape, StabilizerVariant,
};
use superchar::scalars::Cyclotomic;
use superchar::supertheory::{
    build_di, build_theory, gg_counting_identity, gg_specialization_mismatches, oracle_mismatches,
    stabilizer_coincidences, verify_theory, BuildOptions, Flavor, SupercharacterTheory,
};
use superchar::Budget;

const CAP_C1: Duration = Duration::from_secs(1);
const CAP_C2: Duration = Duration::from_secs(5);
const CAP_C3: Duration = Duration::from_secs(30);
const CAP_C4: Duration = Duration::from_secs(600);
const CAP_C7: Duration = Duration::from_secs(120);
const CAP_C8: Duration = Duration::from_secs(60);
const CAP_C9: Duration = Duration::from_secs(600);

fn unlimited() -> Budget {
    Budget::new(u64::MAX)
}

struct Sub {
    name: String,
    pass: bool,
    detail: String,
    documented_conflict: bool,
}

#[derive(Default)]
struct Criterion {
    subs: Vec<Sub>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.subs.push(Sub {
            name: name.into(),
            pass,
            detail: detail.into(),
            documented_conflict: false,
        });
    }

    /// A stated value that exhaustive computation contradicts; see the ledger.
    fn check_stated(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.check(name, pass, detail);
        self.subs.last_mut().unwrap().documented_conflict = true;
    }

    fn timed(&mut self, start: Instant, cap: Duration) {
        let t = start.elapsed();
        self.check("runtime", t < cap, format!("{:.2}s < {}s", t.as_secs_f64(), cap.as_secs()));
    }

    fn error(&mut self, name: &str, e: superchar::Error) {
        self.check(name, false, format!("error: {e}"));
    }
}

fn comp(s: &str) -> Composition {
    s.parse().expect("valid composition")
}

fn degrees(t: &SupercharacterTheory) -> Vec<i64> {
    let mut d: Vec<i64> = t
        .element_values
        .iter()
        .map(|row| {
            let q = row[t.identity as usize].to_rational().expect("degree is rational");
            i64::try_from(q.to_integer()).expect("small degree")
        })
        .collect();
    d.sort_unstable();
    d
}

fn sizes(t: &SupercharacterTheory) -> Vec<usize> {
    let mut s: Vec<usize> = t.superclasses.iter().map(|k| k.members.len()).collect();
    s.sort_unstable();
    s
}

fn di_ut3(c: &mut Criterion, p: u32, count: usize) -> Option<SupercharacterTheory> {
    let opts = BuildOptions::default();
    let alg = comp("1,1,1").algebra(p).expect("UT(3) algebra");
    let t = match build_di(&alg, &opts) {
        Ok(t) => t,
        Err(e) => {
            c.error("build", e);
            return None;
        }
    };
    let (a, b) = (t.parameters.len(), t.superclasses.len());
    c.check("counts", a == count && b == count, format!("|A| = {a}, |B| = {b}"));
    let g = ExtensionGroup::new(alg.clone(), LGroup::trivial(p, alg.dim()), &opts.budget).expect("UT(3) group");
    match verify_theory(&t, &g, true) {
        Ok(r) => {
            let failed: Vec<&str> = r.checks.iter().filter(|x| x.witness.is_some()).map(|x| x.id.as_str()).collect();
            c.check("axioms (a)-(f)", r.passed(), format!("failing: {failed:?}"));
        }
        Err(e) => c.error("axioms (a)-(f)", e),
    }
    Some(t)
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    if let Some(t) = di_ut3(&mut c, 2, 5) {
        let s = sizes(&t);
        c.check("superclass sizes {1,1,2,2,2}", s == [1, 1, 2, 2, 2], format!("{s:?}"));
        let d = degrees(&t);
        c.check_stated("degrees {1,1,2,2,2}", d == [1, 1, 2, 2, 2], format!("computed {d:?}"));
        c.check("degrees match the D4 table {1,1,1,1,2}", d == [1, 1, 1, 1, 2], format!("{d:?}"));
    }
    c.timed(start, CAP_C1);
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    di_ut3(&mut c, 3, 11);
    c.timed(start, CAP_C2);
    c
}

/// Indices of `L` whose matrix matches `shape`.
fn shape_set(g: &ExtensionGroup, shape: &Shape) -> Vec<u32> {
    (0..g.l().order() as u32).filter(|&i| shape.matches(&l_matrix(g, i))).collect()
}

fn l_set(g: &ExtensionGroup, f: impl Fn(&Matrix) -> bool) -> Vec<u32> {
    (0..g.l().order() as u32).filter(|&i| f(&l_matrix(g, i))).collect()
}

fn rows(m: &Matrix) -> String {
    let r: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    r.join(" / ")
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

const H_PRIME_222: &str = "a 0 . . . . / * x . . . . / . . a 0 . . / . . 0 a . . / . . . . a 0 / . . . . 0 a";
const S_PRIME_222: &str = "x 0 . . . . / * x . . . . / . . * * . . / . . * * . . / . . . . x 0 / . . . . * x";
const H_11211: &str = "a . . . . . / . a . . . . / . . * * . . / . . * * . . / . . . . c . / . . . . . c";

fn criterion_3() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for p in [2, 3] {
        let c222 = comp("2,2,2");
        let g = match build_parabolic(&c222, p, &unlimited()) {
            Ok(g) => g,
            Err(e) => {
                c.error("build (2,2,2)", e);
                continue;
            }
        };
        let d = RookPlacement::parse(&c222, "(1,6)").expect("valid placement");
        let h = stabilizer_of_d(&g, &c222, &d, StabilizerVariant::H);
        let scalars = l_set(&g, |m| scalar_value(m).is_some());
        let brute = sorted(stabilizer_brute(&g, &c222, &d, StabilizerVariant::H));
        c.check(
            format!("p={p} H(D) of (2,2,2) is scalar"),
            h == scalars && h == brute,
            format!("|H(D)| = {}, scalars = {}, brute = {}", h.len(), scalars.len(), brute.len()),
        );

        let hp = stabilizer_of_d(&g, &c222, &d, StabilizerVariant::HPrime);
        let hp_shape = shape_set(&g, &Shape::parse(H_PRIME_222).unwrap());
        let hp_brute = sorted(stabilizer_brute(&g, &c222, &d, StabilizerVariant::HPrime));
        c.check(
            format!("p={p} H'(D) of (2,2,2) matches its shape"),
            hp == hp_shape && hp == hp_brute,
            format!("rule {}, shape {}, brute {}", hp.len(), hp_shape.len(), hp_brute.len()),
        );

        match s_prime_brute(&g, &c222, &d, &unlimited()) {
            Ok(sp) => {
                let sp = sorted(sp);
                let sp_shape = shape_set(&g, &Shape::parse(S_PRIME_222).unwrap());
                let derived = l_set(&g, |m| m.get(0, 1) == 0);
                let extra = sp.iter().find(|i| sp_shape.binary_search(i).is_err());
                c.check_stated(
                    format!("p={p} S'(D) of (2,2,2) matches its displayed shape"),
                    sp == sp_shape,
                    format!(
                        "brute {}, shape {}, first element outside the shape {:?}",
                        sp.len(),
                        sp_shape.len(),
                        extra.map(|&i| rows(&l_matrix(&g, i)))
                    ),
                );
                c.check(
                    format!("p={p} S'(D) of (2,2,2) is h1 lower triangular, h2 and h3 free"),
                    sp == derived,
                    format!("brute {}, derived {}", sp.len(), derived.len()),
                );
            }
            Err(e) => c.error("S'(D)", e),
        }

        let c11211 = comp("1,1,2,1,1");
        let g = match build_parabolic(&c11211, p, &unlimited()) {
            Ok(g) => g,
            Err(e) => {
                c.error("build (1,1,2,1,1)", e);
                continue;
            }
        };
        let d = RookPlacement::parse(&c11211, "(1,2);(5,6)").expect("valid placement");
        let h = stabilizer_of_d(&g, &c11211, &d, StabilizerVariant::H);
        let shape = shape_set(&g, &Shape::parse(H_11211).unwrap());
        let brute = sorted(stabilizer_brute(&g, &c11211, &d, StabilizerVariant::H));
        c.check(
            format!("p={p} H(D) of (1,1,2,1,1) is diag(a,a,B,c,c)"),
            h == shape && h == brute,
            format!("rule {}, shape {}, brute {}", h.len(), shape.len(), brute.len()),
        );
    }
    c.timed(start, CAP_C3);
    c
}

const FLAVORS: [Flavor; 3] = [Flavor::GG, Flavor::GU, Flavor::UU];

fn criterion_4_groups() -> Vec<(&'static str, &'static str, u32, u64)> {
    vec![
        ("Borel GL(2,3)", "1,1", 3, 12),
        ("parabolic (2,1) GL(3,2)", "2,1", 2, 24),
        ("Borel GL(3,2)", "1,1,1", 2, 8),
        ("parabolic (2,2) GL(4,2)", "2,2", 2, 576),
    ]
}

/// Criteria 4, 5 and 6 share their builds.
fn criteria_4_to_6() -> (Criterion, Criterion, Criterion) {
    let (mut c4, mut c5, mut c6) = (Criterion::default(), Criterion::default(), Criterion::default());
    let start = Instant::now();
    let opts = BuildOptions::default();
    for (name, blocks, p, order) in criterion_4_groups() {
        let g = match build_parabolic(&comp(blocks), p, &opts.budget) {
            Ok(g) => g,
            Err(e) => {
                c4.error(name, e);
                continue;
            }
        };
        c4.check(format!("{name} order"), g.order() == order, format!("|G| = {}", g.order()));
        for flavor in FLAVORS {
            let t = match build_theory(&g, flavor, &opts) {
                Ok(t) => t,
                Err(e) => {
                    c4.error(&format!("{name} {flavor}"), e);
                    continue;
                }
            };
            match verify_theory(&t, &g, true) {
                Ok(r) => {
                    let failed: Vec<&str> =
                        r.checks.iter().filter(|x| x.witness.is_some()).map(|x| x.id.as_str()).collect();
                    c4.check(
                        format!("{name} {flavor}"),
                        r.passed() && t.parameters.len() == t.superclasses.len(),
                        format!("|A| = |B| = {}, failing {failed:?}", t.parameters.len()),
                    );
                }
                Err(e) => c4.error(&format!("{name} {flavor}"), e),
            }
            match oracle_mismatches(&g, &t, &opts) {
                Ok(m) => c5.check(
                    format!("{name} {flavor} closed formula = induction"),
                    m.is_empty(),
                    m.first().cloned().unwrap_or_else(|| format!("{} parameters", t.parameters.len())),
                ),
                Err(e) => c5.error(&format!("{name} {flavor}"), e),
            }
            if flavor == Flavor::GG {
                match gg_specialization_mismatches(&g, &t, &opts) {
                    Ok(m) => c5.check(
                        format!("{name} GG specialized formula"),
                        m.is_empty(),
                        m.first().cloned().unwrap_or_default(),
                    ),
                    Err(e) => c5.error(&format!("{name} GG specialized formula"), e),
                }
                match gg_counting_identity(&g, &opts) {
                    Ok((lhs, rhs)) => c5.check(format!("{name} GG parameter count"), lhs == rhs, format!("{lhs} vs {rhs}")),
                    Err(e) => c5.error(&format!("{name} GG parameter count"), e),
                }
            }
        }
        match stabilizer_coincidences(&g, &opts.budget) {
            Ok(m) => c6.check(name, m.is_empty(), m.first().cloned().unwrap_or_default()),
            Err(e) => c6.error(name, e),
        }
    }
    c4.timed(start, CAP_C4);
    (c4, c5, c6)
}

/// All compositions of `n`.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for (p, max_n) in [(2, 4), (3, 3)] {
        for n in 1..=max_n {
            for blocks in compositions(n) {
                let cp = Composition::new(blocks).unwrap();
                let r = build_parabolic(&cp, p, &unlimited()).and_then(|g| classify(&g, &cp, &unlimited()));
                match r {
                    Ok(r) => c.check(
                        format!("({cp}) p={p}"),
                        r.holds(),
                        format!("classes {}, orbits on J {}, on J* {}", r.classes.len(), r.orbits_j, r.orbits_dual),
                    ),
                    Err(e) => c.error(&format!("({cp}) p={p}"), e),
                }
            }
        }
    }
    c.timed(start, CAP_C7);
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for (blocks, p) in [("1,1", 2), ("1,1", 3), ("2,1", 2)] {
        match check_uu_prop(&comp(blocks), p, &unlimited()) {
            Ok(r) => c.check(
                format!("({blocks}) p={p}"),
                r.holds(),
                format!(
                    "{} classes, {} superclasses, {}",
                    r.conjugacy_classes,
                    r.superclasses,
                    r.witness.unwrap_or_else(|| "single constituents".into())
                ),
            ),
            Err(e) => c.error(&format!("({blocks}) p={p}"), e),
        }
    }
    c.timed(start, CAP_C8);
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for (blocks, p) in [("2,2", 2), ("2,1", 2), ("2,1", 3)] {
        match check_conjecture(&comp(blocks), p, &unlimited()) {
            Ok(r) => c.check(
                format!("({blocks}) p={p}"),
                r.part1 && r.part2,
                format!("{} classes, {} Weyl classes", r.classes, r.weyl_classes),
            ),
            Err(e) => c.error(&format!("({blocks}) p={p}"), e),
        }
    }
    match check_conjecture(&comp("3,1"), 2, &unlimited()) {
        Ok(r) => c.check("(3,1) p=2 report", true, r.verdict),
        Err(e) => c.error("(3,1) p=2 report", e),
    }
    c.timed(start, CAP_C9);
    c
}

/// Both orthogonality relations and the degree sum, all exact.
fn table_checks(ct: &CharacterTable, order: usize) -> std::result::Result<(), String> {
    let k = ct.classes.len();
    if ct.irreducibles.len() != k {
        return Err(format!("{} characters for {k} classes", ct.irreducibles.len()));
    }
    for (i, a) in ct.irreducibles.iter().enumerate() {
        for (j, b) in ct.irreducibles.iter().enumerate() {
            let ip = inner_product(&ct.classes, a, b);
            if ip != Cyclotomic::from_int((i == j) as i64, ct.order) {
                return Err(format!("<chi{i}, chi{j}> = {ip}"));
            }
        }
    }
    for x in 0..k {
        for y in 0..k {
            let mut s = Cyclotomic::zero(ct.order);
            for chi in &ct.irreducibles {
                s = s.add(&chi.values[x].mul(&chi.values[y].conj()));
            }
            let expect = if x == y { (order / ct.classes.size(x)) as i64 } else { 0 };
            if s != Cyclotomic::from_int(expect, ct.order) {
                return Err(format!("column sum ({x}, {y}) = {s}"));
            }
        }
    }
    let sum: u64 = ct.degrees().iter().map(|d| d * d).sum();
    if sum != order as u64 {
        return Err(format!("sum of squared degrees {sum} != {order}"));
    }
    Ok(())
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::default();
    let mut groups: Vec<(String, FiniteGroup, usize)> = (1..=6).map(|n| (format!("C{n}"), FiniteGroup::cyclic(n), n)).collect();
    groups.push(("S3".into(), FiniteGroup::symmetric(3), 3));
    groups.push(("D4".into(), FiniteGroup::dihedral(4), 5));
    let ut = build_parabolic(&comp("1,1,1"), 2, &Budget::default()).expect("UT(3,2)");
    groups.push(("UT(3,2)".into(), ut.table().expect("table").clone(), 5));
    for (name, g, classes) in groups {
        match dixon_table(&g) {
            Ok(ct) => {
                let r = table_checks(&ct, g.order()).and_then(|()| {
                    (ct.classes.len() == classes)
                        .then_some(())
                        .ok_or_else(|| format!("{} classes, expected {classes}", ct.classes.len()))
                });
                let degs: BTreeSet<u64> = ct.degrees().into_iter().collect();
                c.check(name, r.is_ok(), r.err().unwrap_or_else(|| format!("degrees {degs:?}")));
            }
            Err(e) => c.error(&name, e),
        }
    }
    c
}

fn main() -> ExitCode {
    // Tolerate the standard libtest flags cargo passes through.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    if filter.as_deref().is_some_and(|f| !"acceptance".contains(f)) {
        return ExitCode::SUCCESS;
    }

    let mut out = std::io::stdout().lock();
    let mut results: Vec<(u32, &str, Criterion)> = Vec::new();
    let mut emit = |id: u32, title: &'static str, c: Criterion, results: &mut Vec<(u32, &'static str, Criterion)>| {
        let pass = c.subs.iter().all(|s| s.pass);
        let conflict_only = !pass && c.subs.iter().all(|s| s.pass || s.documented_conflict);
        let tag = match (pass, conflict_only) {
            (true, _) => "PASS",
            (false, true) => "FAIL (documented conflict)",
            (false, false) => "FAIL",
        };
        writeln!(out, "criterion {id:>2} {title}: {tag}").unwrap();
        for s in c.subs.iter().filter(|s| !s.pass) {
            writeln!(out, "    {} failed: {}", s.name, s.detail).unwrap();
        }
        results.push((id, title, c));
    };

    emit(1, "DI theory of UT(3,2)", criterion_1(), &mut results);
    emit(2, "DI theory of UT(3,3)", criterion_2(), &mut results);
    emit(3, "stabilizer examples", criterion_3(), &mut results);
    let (c4, c5, c6) = criteria_4_to_6();
    emit(4, "GG/GU/UU theories verify", c4, &mut results);
    emit(5, "closed formulas equal induction", c5, &mut results);
    emit(6, "one- and two-sided stabilizers agree", c6, &mut results);
    emit(7, "rook classes equal G×G orbits", criterion_7(), &mut results);
    emit(8, "UU theory of two-block parabolics", criterion_8(), &mut results);
    emit(9, "rook-placement conjecture", criterion_9(), &mut results);
    emit(10, "Dixon tables", criterion_10(), &mut results);

    writeln!(out, "\ndetails").unwrap();
    for (id, _, c) in &results {
        for s in &c.subs {
            let mark = if s.pass { "ok  " } else { "FAIL" };
            writeln!(out, "  [{id:>2}] {mark} {}: {}", s.name, s.detail).unwrap();
        }
    }
    let unexpected = results
        .iter()
        .flat_map(|(_, _, c)| &c.subs)
        .filter(|s| !s.pass && !s.documented_conflict)
        .count();
    writeln!(out, "\ntest result: {} unexpected failure(s)", unexpected).unwrap();
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
