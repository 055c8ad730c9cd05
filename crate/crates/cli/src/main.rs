use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use twistloop::harness::{
    cmd_catalog, cmd_check, cmd_commute, cmd_free, cmd_grade, cmd_index, cmd_psi, example_suites, exit_code, resolve,
    run_job, Job, Options, PsiMode, Report, DEFAULT_SEED, SEED_ENV,
};
use twistloop::{Error, Result};

#[derive(Parser)]
#[command(name = "twistloop", version, about = "Exact checks for twisted loop algebras and their commutative subalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random trials for index and regularity searches.
    #[arg(long, global = true, default_value_t = 50)]
    trials: usize,
    /// Window size N; defaults to 2m times the largest generator degree.
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Clone)]
struct Target {
    /// Catalog id or path to an algebra definition.
    #[arg(long, default_value = "sl2")]
    algebra: String,
    /// Automorphism name, or path to a matrix file.
    #[arg(long, default_value = "id")]
    auto: String,
    /// Use ζ = ζ_m^k.
    #[arg(long, default_value_t = 1)]
    zeta: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Z0,
    Zt,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi identity, automorphism and grading checks.
    Check(Target),
    /// Eigenbasis, graded components and contractions.
    Grade(Target),
    /// Index of the algebra and of its zero contraction.
    Index(Target),
    /// Pairwise commutativity of the generators in a window.
    Commute {
        #[command(flatten)]
        target: Target,
        /// Skip the two built-in non-reductive examples.
        #[arg(long)]
        no_examples: bool,
    },
    /// Free generation of the generators in a window.
    Free(Target),
    /// Collapse identities under t ↦ 1.
    Psi {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "z0")]
        mode: Mode,
        /// Largest j in the identities.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// List the catalog, or export one entry as JSON.
    Catalog {
        #[arg(value_parser = ["list", "export"], default_value = "list")]
        action: String,
        id: Option<String>,
    },
    /// Run a job file, or re-render a saved report file.
    Report {
        /// Job file to run.
        #[arg(long, conflicts_with = "input")]
        job: Option<String>,
        /// Saved reports to render.
        #[arg(long)]
        input: Option<String>,
    },
}

fn read_json(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::parse(format!("{path}:{}:{}", e.line(), e.column()), e.to_string()))
}

/// A path is read as JSON; anything else is a name.
fn spec_value(s: &str) -> Result<Value> {
    if Path::new(s).is_file() {
        read_json(s)
    } else {
        Ok(Value::String(s.to_string()))
    }
}

fn run(cli: &Cli) -> Result<Option<Vec<Report>>> {
    let g = &cli.global;
    let opts = Options { seed: g.seed, trials: g.trials, window: g.window };
    let setup = |t: &Target| resolve(&spec_value(&t.algebra)?, &spec_value(&t.auto)?, t.zeta);
    let reports = match &cli.command {
        Command::Check(t) => vec![cmd_check(&spec_value(&t.algebra)?, &spec_value(&t.auto)?, t.zeta, &opts)?],
        Command::Grade(t) => vec![cmd_grade(&setup(t)?, &opts)],
        Command::Index(t) => vec![cmd_index(&setup(t)?, &opts)],
        Command::Commute { target, no_examples } => {
            let mut out = vec![cmd_commute(&setup(target)?, &opts)?];
            if !no_examples {
                out.extend(example_suites(&opts)?);
            }
            out
        }
        Command::Free(t) => vec![cmd_free(&setup(t)?, &opts)?],
        Command::Psi { target, mode, bound } => {
            let mode = match mode {
                Mode::Z0 => PsiMode::Z0,
                Mode::Zt => PsiMode::Zt,
            };
            vec![cmd_psi(&setup(target)?, mode, *bound, &opts)?]
        }
        Command::Catalog { action, id } => {
            let all = cmd_catalog()?;
            let rows = all.as_array().cloned().unwrap_or_default();
            if action == "export" {
                let id = id.as_deref().ok_or_else(|| Error::parse("catalog export", "missing id"))?;
                let row = rows.iter().find(|r| r["id"] == id).ok_or_else(|| Error::UnknownCatalog(id.into()))?;
                println!("{}", serde_json::to_string_pretty(&row["definition"]).expect("serializable"));
            } else if g.json {
                println!("{}", serde_json::to_string_pretty(&all).expect("serializable"));
            } else {
                for r in &rows {
                    let autos: Vec<&str> = r["automorphisms"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
                    println!("{:<12} dim {:<3} {}  [{}]", r["id"].as_str().unwrap_or(""), r["dim"], r["description"].as_str().unwrap_or(""), autos.join(", "));
                }
            }
            return Ok(None);
        }
        Command::Report { job, input } => match (job, input) {
            (Some(path), _) => run_job(&Job::from_json(&read_json(path)?)?, &opts)?,
            (None, Some(path)) => serde_json::from_value(read_json(path)?).map_err(|e| Error::parse(path.as_str(), e.to_string()))?,
            (None, None) => return Err(Error::parse("report", "pass --job or --input")),
        },
    };
    Ok(Some(reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(reports)) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
            } else {
                for r in &reports {
                    print!("{}", r.to_text(12));
                }
            }
            ExitCode::from(exit_code(&reports) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
