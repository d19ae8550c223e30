//! `superchar`: build and check supercharacter theories from the shell.
//!
//! Exit codes: 0 pass, 2 axiom failure or counterexample, 3 budget exceeded,
//! 4 bad input, 1 anything else.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use superchar::algebra::AlgebraFile;
use superchar::export::{GroupSource, TheoryFile};
use superchar::parabolic::{build_parabolic, check_conjecture, classify, rook_classes, Composition};
use superchar::supertheory::{build_theory, verify_theory, BuildOptions, CheckStatus, Flavor, VerificationReport};
use superchar::{Budget, Error};

#[derive(Parser, Debug)]
#[command(name = "superchar", version, about = "Supercharacter theories of algebra group extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a theory, verify it and optionally write JSON and CSV.
    Build(BuildArgs),
    /// Re-run the axiom checks on a theory file.
    Verify(VerifyArgs),
    /// Rook-placement classes of a parabolic, optionally checked against orbits.
    Rooks(RooksArgs),
    /// Exhaustive check of the rook-placement conjecture for one parabolic.
    Conjecture(ConjectureArgs),
}

#[derive(Args, Debug)]
struct BudgetArg {
    /// Enumeration cap; defaults to $SUPERCHAR_BUDGET or 2^20.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
}

impl BudgetArg {
    fn get(&self) -> Budget {
        self.budget.map(Budget::new).unwrap_or_else(Budget::from_env)
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SourceArg {
    /// Block sizes of a parabolic, e.g. `2,1`.
    #[arg(long, alias = "blocks")]
    parabolic: Option<Composition>,
    /// Algebra definition file (JSON).
    #[arg(long)]
    algebra: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    source: SourceArg,
    /// Field size; required with --parabolic, must agree with the file otherwise.
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value = "GG")]
    flavor: Flavor,
    /// Replace the additive character ε by ε^k (k prime to p).
    #[arg(long, default_value_t = 1)]
    epsilon_power: u32,
    /// Also check that every supercharacter is a sum of irreducibles.
    #[arg(long)]
    check_irr: bool,
    /// Theory JSON destination; the CSV goes next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long)]
    check_irr: bool,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Args, Debug)]
struct RooksArgs {
    #[arg(long, alias = "parabolic")]
    blocks: Composition,
    /// When given, compare the classes with the G×G orbits on J and J*.
    #[arg(long)]
    p: Option<u32>,
    /// Write the classification as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Args, Debug)]
struct ConjectureArgs {
    #[arg(long, alias = "parabolic")]
    blocks: Composition,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArg,
}

/// Failure of a command: either an engine error or a completed check that failed.
enum Failure {
    Engine(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
    exit_code: u8,
}

fn classify_error(e: &Error) -> (&'static str, u8) {
    match e {
        Error::Axiom(_) => ("axiom", 2),
        Error::BudgetExceeded { .. } => ("budget", 3),
        Error::Parse(_)
        | Error::Input(_)
        | Error::NotPrime(_)
        | Error::InvalidAlgebra(_)
        | Error::InvalidGroup(_)
        | Error::Io(_) => ("input", 4),
        _ => ("internal", 1),
    }
}

fn report_failure(kind: &str, message: String, code: u8) -> ExitCode {
    let r = ErrorReport {
        error: kind,
        message,
        exit_code: code,
    };
    eprintln!("{}", serde_json::to_string(&r).expect("error report serializes"));
    ExitCode::from(code)
}

/// Writes through a temp file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Error> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn print_report(report: &VerificationReport) {
    for c in &report.checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        match &c.witness {
            Some(w) => println!("({}) {:<50} {status}: {w}", c.id, c.name),
            None => println!("({}) {:<50} {status}", c.id, c.name),
        }
    }
}

fn verdict(report: &VerificationReport) -> &'static str {
    if report.passed() {
        "PASS"
    } else {
        "FAIL"
    }
}

fn group_source(args: &BuildArgs) -> Result<GroupSource, Error> {
    if let Some(comp) = &args.source.parabolic {
        let p = args.p.ok_or_else(|| Error::Input("--parabolic needs --p".into()))?;
        return Ok(GroupSource::Parabolic {
            blocks: comp.blocks().to_vec(),
            p,
        });
    }
    let path = args.source.algebra.as_ref().expect("clap enforces one source");
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let definition = AlgebraFile::parse(&text)?;
    if let Some(p) = args.p {
        if p != definition.p {
            return Err(Error::Input(format!("--p {p} disagrees with the algebra file (p = {})", definition.p)));
        }
    }
    Ok(GroupSource::Algebra { definition })
}

fn cmd_build(args: BuildArgs) -> Outcome {
    let budget = args.budget.get();
    let source = group_source(&args)?;
    let g = source.build(&budget)?;
    let opts = BuildOptions {
        epsilon_power: args.epsilon_power,
        budget,
    };
    let t = build_theory(&g, args.flavor, &opts)?;
    let host = source.build_for(args.flavor, &budget)?;
    let report = verify_theory(&t, &host, args.check_irr)?;
    let file = TheoryFile::new(&t, &host, source, args.epsilon_power, report.clone());
    if let Some(out) = &args.out {
        write_atomic(out, &file.to_json()?)?;
        write_atomic(&out.with_extension("csv"), &file.to_csv()?)?;
    }
    print_report(&report);
    println!(
        "flavor={} |A|={} |B|={} verified={}",
        args.flavor,
        t.parameters.len(),
        t.superclasses.len(),
        verdict(&report)
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check("theory fails the supercharacter axioms".into()))
    }
}

fn cmd_verify(args: VerifyArgs) -> Outcome {
    let text = fs::read_to_string(&args.file).map_err(|e| Error::Io(format!("{}: {e}", args.file.display())))?;
    let file = TheoryFile::from_json(&text)?;
    let report = file.reverify(&args.budget.get(), args.check_irr)?;
    print_report(&report);
    println!(
        "flavor={} |A|={} |B|={} verified={}",
        file.flavor,
        file.parameters.len(),
        file.superclasses.len(),
        verdict(&report)
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} fails the supercharacter axioms", args.file.display())))
    }
}

fn cmd_rooks(args: RooksArgs) -> Outcome {
    let comp = &args.blocks;
    let roots = comp.roots();
    let pairs: Vec<String> = (0..comp.len())
        .flat_map(|k| (k + 1..comp.len()).map(move |m| format!("d{}{}", k + 1, m + 1)))
        .collect();
    let classes = rook_classes(comp);
    println!("type ({comp}): {} J-roots, {} classes", roots.len(), classes.len());
    println!("{:<20} {:>8}  representative", pairs.join(" "), "members");
    for c in &classes {
        let profile: Vec<String> = c.profile.iter().map(|v| v.to_string()).collect();
        println!("{:<20} {:>8}  {{{}}}", profile.join(" "), c.members.len(), c.representative());
    }
    let Some(p) = args.p else {
        if let Some(out) = &args.out {
            write_atomic(out, &to_json(&classes)?)?;
        }
        return Ok(());
    };
    let budget = args.budget.get();
    let g = build_parabolic(comp, p, &budget)?;
    let cl = classify(&g, comp, &budget)?;
    if let Some(out) = &args.out {
        write_atomic(out, &to_json(&cl)?)?;
    }
    println!(
        "GF({p}): G×G orbits on J = {}, on J* = {}, classes = {}, consistent = {}",
        cl.orbits_j,
        cl.orbits_dual,
        cl.classes.len(),
        cl.j_consistent && cl.dual_consistent
    );
    if cl.holds() {
        Ok(())
    } else {
        Err(Failure::Check("rook classes do not match the G×G orbits".into()))
    }
}

fn cmd_conjecture(args: ConjectureArgs) -> Outcome {
    let r = check_conjecture(&args.blocks, args.p, &args.budget.get())?;
    if let Some(out) = &args.out {
        write_atomic(out, &to_json(&r)?)?;
    }
    println!("type ({}) over GF({}), |J| = {}", r.composition, r.p, r.j_size);
    println!(
        "classes = {}, rook placements = {}, Weyl classes = {}",
        r.classes, r.rook_placements, r.weyl_classes
    );
    match &r.part1_witness {
        None => println!("part 1: holds"),
        Some(w) => println!("part 1: fails at x = {w:?}"),
    }
    match &r.part2_witness {
        None => println!("part 2: holds"),
        Some(w) => println!("part 2: fails for {w}"),
    }
    println!("{}", r.verdict);
    if r.part1 && r.part2 {
        Ok(())
    } else {
        Err(Failure::Check(r.verdict.clone()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report_failure("input", e.to_string().trim().to_string(), 4),
    };
    let outcome = match cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Rooks(a) => cmd_rooks(a),
        Command::Conjecture(a) => cmd_conjecture(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => report_failure("axiom", msg, 2),
        Err(Failure::Engine(e)) => {
            let (kind, code) = classify_error(&e);
            report_failure(kind, e.to_string(), code)
        }
    }
}
