use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use tortkara_cli::{run_suite, Expr, Suite};
use tortkara_core::{guard, pwl, span, AreaTree, HallBasis, HallKind, RhoMethod, SpanReport};

#[derive(Parser)]
#[command(name = "tortkara", version, about = "Exact computations with areas, shuffles and Hall coordinates")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Maximum number of terms an operation may produce.
    #[arg(long, global = true, env = guard::TERM_LIMIT_ENV)]
    term_limit: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Lyndon,
    Hall,
}

impl From<Basis> for HallKind {
    fn from(b: Basis) -> Self {
        match b {
            Basis::Lyndon => HallKind::Lyndon,
            Basis::Hall => HallKind::StandardHall,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Core,
    Dynkin,
    Lambda,
    Tortkara,
    Pwl,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpanKind {
    Areas,
    Leftbracket,
    Special,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression such as "1/2*sh(1,2) + 1/2*area(1,2)".
    Eval {
        expr: String,
        /// Alphabet size; defaults to the largest letter used.
        #[arg(long)]
        d: Option<u32>,
    },
    /// Emit P_h, S_h and zeta_h for a Hall basis.
    Tables {
        #[arg(long, value_enum, default_value_t = Basis::Lyndon)]
        basis: Basis,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=9))]
        d: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
    },
    /// Emit rho(S_h) for a Hall basis.
    RhoTable {
        #[arg(long, value_enum, default_value_t = Basis::Lyndon)]
        basis: Basis,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=9))]
        d: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=9))]
        d: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
    },
    /// Iterated discrete area of a CSV path along an area tree such as "a(a(1,2),1)".
    DiscreteArea {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        tree: String,
    },
    /// Truncated signature of the piecewise-linear path in a CSV file.
    Signature {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
    },
    /// Rank checks on the area span; exits 1 if the rank falls short.
    SpanCheck {
        #[arg(value_enum)]
        kind: SpanKind,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=9))]
        d: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
    },
}

enum Failure {
    Verification,
    Usage(String),
}

impl From<tortkara_core::Error> for Failure {
    fn from(e: tortkara_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(path: &PathBuf) -> Result<tortkara_core::TimeSeries, Failure> {
    let f = File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(pwl::load_timeseries(f)?)
}

fn print_report(r: &SpanReport, format: Format) {
    match format {
        Format::Json => println!("{}", r.to_json()),
        Format::Table => println!("d={} n={} generators={} rank={} target={} full_rank={}", r.d, r.n, r.generators, r.rank, r.target, r.full_rank),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Eval { expr, d } => {
            let e = Expr::parse(&expr)?;
            let d = d.unwrap_or(e.max_letter() as u32);
            let x = e.eval(d)?;
            match format {
                Format::Json => println!("{}", x.to_json()),
                Format::Table => println!("{x}"),
            }
        }
        Command::Tables { basis, d, level } => {
            let b = HallBasis::new(d, level as usize, basis.into())?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&b.table_rows()).expect("rows serialize")),
                Format::Table => print!("{}", b.table_text()),
            }
        }
        Command::RhoTable { basis, d, level } => {
            let b = HallBasis::new(d, level as usize, basis.into())?;
            let rows: Vec<(String, String, tortkara_core::TensorElem)> = (0..b.len())
                .map(|id| (b.element(id).word.to_notation(d), b.bracket_notation(id), b.s(id).rho(RhoMethod::Recursive)))
                .collect();
            match format {
                Format::Json => {
                    let v: Vec<_> = rows.iter().map(|(h, p, r)| json!({ "h": h, "bracket": p, "rho": r.to_records() })).collect();
                    println!("{}", serde_json::Value::Array(v));
                }
                Format::Table => {
                    let w = rows.iter().map(|(h, _, _)| h.len()).max().unwrap_or(1);
                    for (h, _, r) in &rows {
                        println!("{h:<w$}  {r}");
                    }
                }
            }
        }
        Command::Verify { suite, d, level } => {
            let suites: Vec<Suite> = match suite {
                SuiteArg::Core => vec![Suite::Core],
                SuiteArg::Dynkin => vec![Suite::Dynkin],
                SuiteArg::Lambda => vec![Suite::Lambda],
                SuiteArg::Tortkara => vec![Suite::Tortkara],
                SuiteArg::Pwl => vec![Suite::Pwl],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let checks: Vec<_> = suites.into_iter().flat_map(|s| run_suite(s, d, level as usize)).collect();
            match format {
                Format::Json => println!("{}", serde_json::Value::Array(checks.iter().map(|c| c.to_json()).collect())),
                Format::Table => {
                    for c in &checks {
                        let tag = match (c.passed, c.report_only) {
                            (true, true) => "INFO",
                            (true, false) => "PASS",
                            (false, _) => "FAIL",
                        };
                        println!("{tag} {:<9} {}: {}", c.suite, c.name, c.detail);
                    }
                }
            }
            if checks.iter().any(|c| !c.passed) {
                return Err(Failure::Verification);
            }
        }
        Command::DiscreteArea { csv, tree } => {
            let x = load(&csv)?;
            let t = AreaTree::parse(&tree)?;
            let s = pwl::discrete_area_tree(&t, &x)?;
            match format {
                Format::Json => println!("{}", s.to_json()),
                Format::Table => {
                    for (k, v) in s.values().iter().enumerate() {
                        println!("{k}\t{v}");
                    }
                    println!("final\t{}", s.last());
                }
            }
        }
        Command::Signature { csv, level } => {
            let x = load(&csv)?;
            let g = pwl::signature_pwl(&x, level as usize)?;
            match format {
                Format::Json => println!("{}", g.to_json()),
                Format::Table => println!("{g}"),
            }
        }
        Command::SpanCheck { kind, d, level } => {
            let n = level as usize;
            let r = match kind {
                SpanKind::Areas => span::areas_generate_check(d, n)?,
                SpanKind::Leftbracket => span::leftbracket_span_check(d, n)?,
                SpanKind::Special => span::special_tree_reduction(n, d)?,
            };
            print_report(&r, format);
            if !r.full_rank {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(limit) = cli.term_limit {
        guard::set_term_limit(limit);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
