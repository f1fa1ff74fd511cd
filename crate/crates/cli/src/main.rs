//! `homtwist`: verify, twist, and export finite-dimensional Hom-bialgebras.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 the input could not be
//! read or named something unknown, 3 a precondition (flavor, window, missing
//! structure) does not hold.

use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homtwist::axioms::{check_hom_module, check_suite, Suite};
use homtwist::correspondence::check_twist_lift_commutes;
use homtwist::io::{parse_algebra, write_algebra, AlgebraFile, ReportFile};
use homtwist::library::instance;
use homtwist::quasitriangular::{check_qhybe, twist_rmatrix, validate_rmatrix, RMatrix};
use homtwist::rep::{check_grid_on, Grid};
use homtwist::twist::{build_twisted_hopf, monoidal_flavor_note, validate_twist, Twist};
use homtwist::{CheckRecord, Error, Flavor, HomModule, Outcome, VerificationReport};

#[derive(Parser)]
#[command(
    name = "homtwist",
    version,
    about = "Exact checks and Drinfeld twists for Hom-bialgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of an algebra file.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Twist a monoidal Hom-bialgebra by one of its named twists.
    Twist {
        path: PathBuf,
        #[arg(long = "twist")]
        name: String,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Check coherence of the module categories over a grid of indices.
    Repcheck {
        path: PathBuf,
        /// Index ranges `I_RANGE J_RANGE`, each written `lo..hi` (inclusive).
        #[arg(long, num_args = 2, value_names = ["I_RANGE", "J_RANGE"], allow_hyphen_values = true, default_values = ["-2..2", "-2..2"])]
        grid: Vec<String>,
        /// Comma-separated subset of `trivial,regular,random,file`. The trivial
        /// module is always included as the unit object.
        #[arg(long, default_value = "trivial,regular,random")]
        modules: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Write a built-in example as an algebra file.
    ExportExample {
        name: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FlavorArg::Monoidal)]
        flavor: FlavorArg,
    },
    /// List the built-in examples.
    ListExamples,
}

#[derive(clap::Args)]
struct ReportArgs {
    /// Where to write the machine-readable report.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print passing checks too.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Algebra,
    Coalgebra,
    Bialgebra,
    Hopf,
    Module,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Monoidal,
    Plain,
    Classical,
}

/// Everything that ends a command early, with its exit code.
enum Failure {
    Checks(VerificationReport),
    Parse(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Rejected(r) | Error::TheoremViolation(r) => Failure::Checks(*r),
            Error::Parse(_) | Error::UnknownName(_) => Failure::Parse(e.to_string()),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

type CmdResult = Result<VerificationReport, Failure>;

fn read_file(path: &Path) -> Result<AlgebraFile, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    parse_algebra(&text).map_err(|e| match e {
        Error::Parse(m) => Failure::Parse(format!("{}: {m}", path.display())),
        other => Failure::from(other),
    })
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail =
        |e: std::io::Error| Failure::Precondition(format!("cannot write {}: {e}", path.display()));
    let mut builder = tempfile::Builder::new();
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        builder.permissions(fs::Permissions::from_mode(0o644));
    }
    let mut tmp = builder.tempfile_in(dir).map_err(fail)?;
    tmp.write_all(text.as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

fn modules_for_suite(file: &AlgebraFile) -> Result<Vec<HomModule>, Failure> {
    let h = &file.algebra;
    let mut mods = vec![HomModule::trivial(h), HomModule::regular(h)?];
    mods.extend(file.modules.iter().cloned());
    Ok(mods)
}

/// Validates the file's twists and R-matrices, keeping the valid ones.
fn named_elements(
    file: &AlgebraFile,
    report: &mut VerificationReport,
) -> (Vec<Twist>, Vec<RMatrix>) {
    let h = &file.algebra;
    let mut twists = Vec::new();
    if h.flavor() == Flavor::Monoidal {
        for (name, sigma) in &file.twists {
            match validate_twist(h, name, sigma.clone()) {
                Ok(tw) => {
                    report.extend_prefixed(&format!("twist:{name}"), tw.report.clone());
                    twists.push(tw);
                }
                Err(e) => record_error(report, &format!("twist:{name}"), e),
            }
        }
    } else if !file.twists.is_empty() {
        report.push(CheckRecord::note(
            "twists",
            "twists of a monoidal Hom-bialgebra",
            "skipped: the algebra is not monoidal",
        ));
    }
    let mut rms = Vec::new();
    for (name, r) in &file.rmatrices {
        match validate_rmatrix(h, name, r.clone()) {
            Ok(rm) => {
                report.extend_prefixed(&format!("rmatrix:{name}"), rm.report.clone());
                report.extend_prefixed(&format!("rmatrix:{name}"), check_qhybe(h, &rm));
                rms.push(rm);
            }
            Err(e) => record_error(report, &format!("rmatrix:{name}"), e),
        }
    }
    (twists, rms)
}

fn record_error(report: &mut VerificationReport, prefix: &str, e: Error) {
    match e {
        Error::Rejected(r) | Error::TheoremViolation(r) => report.extend_prefixed(prefix, *r),
        other => report.push(CheckRecord::fail(
            prefix,
            "candidate is usable",
            other.to_string(),
        )),
    }
}

fn verify(path: &Path, suite: SuiteArg) -> CmdResult {
    let file = read_file(path)?;
    let h = &file.algebra;
    let mut report = VerificationReport::new();
    let module_suite = |report: &mut VerificationReport| -> Result<(), Failure> {
        for m in modules_for_suite(&file)? {
            report.extend_prefixed(&format!("module:{}", m.name), check_hom_module(h, &m)?);
        }
        Ok(())
    };
    match suite {
        SuiteArg::Algebra => report.extend(check_suite(h, Suite::Algebra)?),
        SuiteArg::Coalgebra => report.extend(check_suite(h, Suite::Coalgebra)?),
        SuiteArg::Bialgebra => report.extend(check_suite(h, Suite::Bialgebra)?),
        SuiteArg::Hopf => report.extend(check_suite(h, Suite::Hopf)?),
        SuiteArg::Module => module_suite(&mut report)?,
        SuiteArg::All => {
            report.extend(check_suite(h, Suite::All)?);
            module_suite(&mut report)?;
            named_elements(&file, &mut report);
        }
    }
    Ok(report)
}

fn twist(path: &Path, name: &str, out: &Path) -> CmdResult {
    let file = read_file(path)?;
    let h = &file.algebra;
    if h.flavor() != Flavor::Monoidal {
        return Err(Failure::Precondition(format!(
            "{} is {}, twisting needs a monoidal Hom-bialgebra",
            h.name(),
            h.flavor()
        )));
    }
    let sigma = file.twist(name)?.clone();
    let tw = validate_twist(h, name, sigma)?;
    let mut report = VerificationReport::new();
    report.extend_prefixed("twist", tw.report.clone());
    let (hs, antipode) = build_twisted_hopf(h, &tw)?;
    report.extend_prefixed("twisted", check_suite(&hs, Suite::All)?);
    report.push(monoidal_flavor_note(&hs));
    if let Some(sa) = &antipode {
        let text = if sa.printed {
            "printed bracketing".to_string()
        } else {
            format!("bracketing {}", sa.bracketing)
        };
        report.push(CheckRecord::note(
            "twisted.antipode-bracketing",
            "S^σ formula",
            text,
        ));
    }
    report.extend(check_twist_lift_commutes(h, &tw)?);
    let mut twisted_r = Vec::new();
    for (rname, r) in &file.rmatrices {
        let rm = validate_rmatrix(h, rname, r.clone())?;
        let rs = twist_rmatrix(h, &tw, &rm, &hs)?;
        report.extend_prefixed(&format!("rmatrix:{}", rs.name), rs.report.clone());
        report.extend_prefixed(&format!("rmatrix:{}", rs.name), check_qhybe(&hs, &rs));
        if tw.is_trivial(h) {
            let same = rs.r() == rm.r();
            report.push(CheckRecord::expect(
                &format!("rmatrix:{}/trivial-twist", rs.name),
                "R^{1⊗1} = R",
                same,
                || "R changed".into(),
            ));
        }
        twisted_r.push((rs.name.clone(), rs.r().clone()));
    }
    let result = AlgebraFile {
        algebra: hs,
        twists: Vec::new(),
        rmatrices: twisted_r,
        modules: file.modules.clone(),
    };
    write_atomic(out, &write_algebra(&result))?;
    Ok(report)
}

fn parse_range(s: &str) -> Result<RangeInclusive<i32>, Failure> {
    let bad = || Failure::Parse(format!("range `{s}` is not of the form lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn repcheck(path: &Path, grid: &[String], spec: &str, seed: u64) -> CmdResult {
    let file = read_file(path)?;
    let h = &file.algebra;
    let grid = Grid {
        i: parse_range(&grid[0])?,
        j: parse_range(&grid[1])?,
        seed,
        ..Grid::default()
    };
    let mut modules = vec![HomModule::trivial(h)];
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "trivial" => {}
            "regular" => modules.push(HomModule::regular(h)?),
            "random" => modules.push(HomModule::random(h, seed)?),
            "file" => modules.extend(file.modules.iter().cloned()),
            other => return Err(Failure::Parse(format!("unknown module kind `{other}`"))),
        }
    }
    let mut report = VerificationReport::new();
    let (twists, rms) = named_elements(&file, &mut report);
    if !report.all_passed() {
        return Ok(report);
    }
    report.extend(check_grid_on(h, &modules, &rms, &twists, &grid)?);
    Ok(report)
}

fn export(name: &str, out: &Path, flavor: FlavorArg) -> CmdResult {
    let inst = instance(name)?;
    let named = |rms: &[RMatrix]| {
        rms.iter()
            .map(|r| (r.name.clone(), r.r().clone()))
            .collect()
    };
    let file = match flavor {
        FlavorArg::Monoidal => AlgebraFile {
            algebra: inst.monoidal.clone(),
            twists: inst
                .twists
                .iter()
                .map(|t| (t.name.clone(), t.sigma().clone()))
                .collect(),
            rmatrices: named(&inst.rmatrices),
            modules: inst
                .module_algebras
                .iter()
                .map(|a| a.module.clone())
                .collect(),
        },
        FlavorArg::Plain => AlgebraFile {
            rmatrices: named(&inst.plain_rmatrices),
            ..AlgebraFile::new(inst.plain.clone())
        },
        FlavorArg::Classical => AlgebraFile::new(inst.classical.clone()),
    };
    write_atomic(out, &write_algebra(&file))?;
    let mut report = VerificationReport::new();
    report.push(CheckRecord::note(
        "export",
        "built-in example",
        format!("wrote {} to {}", file.algebra.name(), out.display()),
    ));
    Ok(report)
}

fn print_report(report: &VerificationReport, verbose: bool) {
    for c in &report.checks {
        match &c.outcome {
            Outcome::Pass if verbose => println!("PASS {}", c.id),
            Outcome::Pass => {}
            Outcome::Fail(f) => println!("FAIL {} [{}] {}", c.id, c.anchor, f),
            Outcome::Note { text } => println!("NOTE {} {}", c.id, text),
        }
    }
    if report.passed() + report.failed() > 0 {
        println!("{} passed, {} failed", report.passed(), report.failed());
    }
}

fn finish(command: &str, result: CmdResult, args: Option<&ReportArgs>) -> ExitCode {
    let (report, code) = match result {
        Ok(r) => {
            let code = if r.all_passed() { 0 } else { 1 };
            (r, code)
        }
        Err(Failure::Checks(r)) => (r, 1),
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Precondition(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(3);
        }
    };
    print_report(&report, args.is_some_and(|a| a.verbose));
    if let Some(path) = args.and_then(|a| a.report.as_deref()) {
        if let Err(Failure::Precondition(m) | Failure::Parse(m)) =
            write_atomic(path, &ReportFile::new(command, &report).to_text())
        {
            eprintln!("error: {m}");
            return ExitCode::from(3);
        }
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify { path, suite, out } => finish("verify", verify(path, *suite), Some(out)),
        Command::Twist {
            path,
            name,
            out,
            report,
        } => finish("twist", twist(path, name, out), Some(report)),
        Command::Repcheck {
            path,
            grid,
            modules,
            seed,
            report,
        } => finish(
            "repcheck",
            repcheck(path, grid, modules, *seed),
            Some(report),
        ),
        Command::ExportExample { name, out, flavor } => {
            finish("export-example", export(name, out, *flavor), None)
        }
        Command::ListExamples => {
            for inst in homtwist::library::library() {
                println!("{}", inst.name);
            }
            ExitCode::SUCCESS
        }
    }
}
