use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tournament_core::decomp::{
    acyclic_components, is_acyclically_indecomposable, is_indecomposable, monomorphic_components,
};
use tournament_core::embed::find_embedding;
use tournament_core::families::{checked_family, family, schmerl_trotter, witness, FamilyKind, StKind};
use tournament_core::io::{parse_tournament, write_tournament};
use tournament_core::profile::{growth_of_sum, series_fit, sum_profile_sequence, Cap, SeriesFit, SumSpec};
use tournament_core::verify::{self, DecompositionParams, SuiteReport};
use tournament_core::{canonical_form, profile, ChainSpec, Tournament};

#[derive(Parser)]
#[command(name = "tourney", version, about = "Decomposition, families and profiles of finite tournaments")]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member, a Schmerl–Trotter tournament or a named witness.
    Gen(GenArgs),
    /// Acyclic and monomorphic decomposition of a tournament file.
    Decompose { file: PathBuf },
    /// Profile prefix of a tournament file.
    Profile {
        file: PathBuf,
        #[arg(long)]
        max: usize,
    },
    /// Profile of a lexicographic sum of chains.
    SumProfile {
        #[arg(long)]
        index: PathBuf,
        /// Comma-separated capacities, `inf` for unbounded.
        #[arg(long)]
        caps: String,
        #[arg(long)]
        max: usize,
        /// Fit the generating series with this many denominator factors.
        #[arg(long)]
        fit: Option<usize>,
    },
    /// Search for an embedding of PATTERN into HOST.
    Embed { pattern: PathBuf, host: PathBuf },
    /// One representative per isomorphism class.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        filter: Option<Filter>,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, conflicts_with_all = ["witness", "st"], requires = "n")]
    family: Option<FamilyKind>,
    /// Chain length.
    #[arg(long)]
    n: Option<usize>,
    /// Build over the descending chain.
    #[arg(long, requires = "family")]
    desc: bool,
    /// Output the acyclic quotient.
    #[arg(long, requires = "family")]
    checked: bool,
    #[arg(long, conflicts_with = "st")]
    witness: Option<String>,
    #[arg(long, requires = "h")]
    st: Option<StKind>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    AcyclicallyIndecomposable,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Decomposition,
    Formulas,
    Incomparability,
    Duality,
    Compactness,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Largest size (decomposition, formulas).
    #[arg(long)]
    n_max: Option<usize>,
    /// Random samples above the exhaustive range (decomposition).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Host chain length (incomparability).
    #[arg(long)]
    host_size: Option<usize>,
    /// Chain length of the checked members (compactness).
    #[arg(long)]
    n: Option<usize>,
    /// Largest tournament size scanned (compactness).
    #[arg(long)]
    size_bound: Option<usize>,
    /// Longest chain (duality).
    #[arg(long)]
    n_max_chain: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Failure modes mapped to exit codes.
enum Failure {
    /// Exit code 1.
    SuiteFailed,
    /// Exit code 2.
    Error(String),
}

impl From<tournament_core::Error> for Failure {
    fn from(e: tournament_core::Error) -> Self {
        Failure::Error(e.to_string())
    }
}

fn read_tournament(path: &Path) -> Result<Tournament, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
    parse_tournament(&text).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Error(format!("{}: {e}", p.display()))),
        None => {
            // A closed pipe is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn print_json(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("plain data");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn rows(t: &Tournament) -> Vec<String> {
    write_tournament(t, &[]).lines().skip(1).map(str::to_string).collect()
}

fn gen(a: GenArgs) -> Result<(), Failure> {
    let (t, label) = if let Some(kind) = a.family {
        let n = a.n.expect("clap requires --n with --family");
        let chain = if a.desc {
            ChainSpec::descending(n)
        } else {
            ChainSpec::ascending(n)
        };
        let t = if a.checked {
            checked_family(kind, &chain)?
        } else {
            family(kind, &chain)?
        };
        let label = format!(
            "{}family {kind} over the {} chain of length {n}",
            if a.checked { "checked " } else { "" },
            if a.desc { "descending" } else { "ascending" }
        );
        (t, label)
    } else if let Some(name) = &a.witness {
        (witness(name)?, format!("witness {name}"))
    } else if let Some(st) = a.st {
        let h = a.h.expect("clap requires --h with --st");
        (schmerl_trotter(st, h)?, format!("{st:?}_{} tournament", 2 * h + 1))
    } else {
        return Err(Failure::Error("gen needs --family, --witness or --st".into()));
    };
    emit(&write_tournament(&t, &[&label]), a.output.as_deref())
}

fn decompose(file: &Path) -> Result<(), Failure> {
    let t = read_tournament(file)?;
    let d = acyclic_components(&t)?;
    print_json(&json!({
        "blocks": d.blocks,
        "spectrum": d.spectrum,
        "quotient": { "n": d.quotient.order(), "rows": rows(&d.quotient) },
        "acyclically_indecomposable": is_acyclically_indecomposable(&t),
        "indecomposable": is_indecomposable(&t),
        "monomorphic_components": monomorphic_components(&t)?,
    }));
    Ok(())
}

fn parse_caps(s: &str) -> Result<Vec<Cap>, Failure> {
    s.split(',')
        .map(|c| c.parse::<Cap>().map_err(Failure::Error))
        .collect()
}

fn sum_profile_cmd(index: &Path, caps: &str, max: usize, fit: Option<usize>) -> Result<(), Failure> {
    let spec = SumSpec::new(read_tournament(index)?, parse_caps(caps)?)?;
    let series = sum_profile_sequence(&spec, max)?;
    let growth = growth_of_sum(&spec)?;
    let mut out = json!({ "values": series.values, "growth": growth });
    if let Some(k) = fit {
        let (status, numerator) = match series_fit(&series.values, k)? {
            SeriesFit::Polynomial(p) => ("POLYNOMIAL", json!(p)),
            SeriesFit::NotPolynomial => ("NOT_POLYNOMIAL", Value::Null),
        };
        out["fit"] = json!({ "k": k, "status": status, "numerator": numerator });
    }
    print_json(&out);
    Ok(())
}

fn enumerate(n: usize, filter: Option<Filter>) -> Result<(), Failure> {
    let mut reps = verify::enumerate_tournaments(n)?;
    if let Some(Filter::AcyclicallyIndecomposable) = filter {
        reps.retain(is_acyclically_indecomposable);
    }
    let list: Vec<Value> = reps
        .iter()
        .map(|t| json!({ "code": canonical_form(t).to_hex(), "rows": rows(t) }))
        .collect();
    print_json(&json!({
        "n": n,
        "filter": filter.map(|_| "acyclically-indecomposable"),
        "count": list.len(),
        "tournaments": list,
    }));
    Ok(())
}

fn run_suite(a: &VerifyArgs) -> Result<SuiteReport, Failure> {
    Ok(match a.suite {
        Suite::Decomposition => {
            let mut p = DecompositionParams::new(a.n_max.unwrap_or(6));
            p.samples = a.samples.unwrap_or(p.samples);
            p.seed = a.seed.unwrap_or(p.seed);
            verify::check_decomposition(p)?
        }
        Suite::Formulas => verify::check_profile_formulas(a.n_max.unwrap_or(7))?,
        Suite::Incomparability => verify::check_incomparability(a.host_size.unwrap_or(14))?,
        Suite::Duality => verify::check_duality(a.n_max_chain.unwrap_or(5))?,
        Suite::Compactness => verify::check_compactness(a.n.unwrap_or(2), a.size_bound.unwrap_or(8))?,
    })
}

fn verify_cmd(a: VerifyArgs) -> Result<(), Failure> {
    let report = run_suite(&a)?;
    emit(&(report.to_json() + "\n"), a.output.as_deref())?;
    eprintln!(
        "suite {}: {} in {:.3}s",
        report.suite,
        if report.passed { "passed" } else { "FAILED" },
        report.elapsed.as_secs_f64()
    );
    if report.passed {
        Ok(())
    } else {
        Err(Failure::SuiteFailed)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Decompose { file } => decompose(&file),
        Command::Profile { file, max } => {
            let t = read_tournament(&file)?;
            print_json(&json!(profile::profile_sequence(&t, max)?.values));
            Ok(())
        }
        Command::SumProfile { index, caps, max, fit } => sum_profile_cmd(&index, &caps, max, fit),
        Command::Embed { pattern, host } => {
            let (p, h) = (read_tournament(&pattern)?, read_tournament(&host)?);
            let w = find_embedding(&p, &h);
            print_json(&json!({ "embeds": w.is_some(), "witness": w }));
            Ok(())
        }
        Command::Enumerate { n, filter } => enumerate(n, filter),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::SuiteFailed) => ExitCode::from(1),
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
