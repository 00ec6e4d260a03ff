use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lattice_screening::decompose::{catalog, Family};
use lattice_screening::io::{parse_lattice_file, LatticeFile};
use lattice_screening::report::{self, Input, Report};
use lattice_screening::{Error, LatticeVector};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "lattice-screening", version, about = "Screeners and screening pairs of integral lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Lattice file: JSON {"gram": ..., "scale": ...} or a bare integer block.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// All screeners, with ZΦ, L_Φ and the structural checks.
    Screeners(Common),
    /// Orthogonal decomposition into rescaled simply laced components.
    Decompose(Common),
    /// Extended root system of the screeners.
    Classify(Common),
    /// Rank-2 normal form and predicted screener list.
    Rank2(Common),
    /// Screening-pair data for one momentum or for every screener.
    Pairs {
        #[command(flatten)]
        common: Common,
        /// Momentum coordinates such as "1,0,-1"; defaults to every screener.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
        /// Largest r1 or r2 in the type IV search.
        #[arg(long, default_value_t = 50)]
        max_r: i64,
    },
    /// Gram matrix of a rescaled catalog lattice.
    Catalog {
        /// Family letter (A, D, E), optionally with the rank, as in D4 or D_4.
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 1)]
        scale: i64,
        /// Print a lattice file instead of a report.
        #[arg(long)]
        lattice: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare all_screeners with a brute-force box search on random lattices.
    OracleCheck {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Largest rank drawn.
        #[arg(long, default_value_t = 4)]
        rank: usize,
        /// Largest absolute Gram entry drawn.
        #[arg(long, default_value_t = 8)]
        max_entry: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

struct Failure {
    status: u8,
    code: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            status: e.exit_status() as u8,
            code: e.code(),
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        status: EXIT_USAGE,
        code: "E_USAGE",
        message,
    }
}

fn read_input(path: &PathBuf) -> Result<(Vec<u8>, LatticeFile), Failure> {
    let raw = std::fs::read(path).map_err(|e| Failure {
        status: EXIT_PARSE,
        code: "E_IO",
        message: format!("{}: {e}", path.display()),
    })?;
    let text = String::from_utf8(raw.clone()).map_err(|e| Failure {
        status: EXIT_PARSE,
        code: "E_PARSE",
        message: format!("{}: {e}", path.display()),
    })?;
    let file = parse_lattice_file(&text)?;
    Ok((raw, file))
}

fn parse_vector(text: &str) -> Result<LatticeVector, Failure> {
    let body = text.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|e| usage(format!("--vector {text:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()
        .map(LatticeVector::new)
}

fn parse_kind(kind: &str, rank: Option<usize>) -> Result<(Family, usize), Failure> {
    let mut chars = kind.trim().chars();
    let letter = chars.next().ok_or_else(|| usage("--type is empty".into()))?;
    let family: Family = letter.to_string().parse()?;
    let rest = chars.as_str().trim_start_matches('_');
    let n = match (rest.is_empty(), rank) {
        (true, Some(n)) => n,
        (true, None) => return Err(usage(format!("--type {kind} needs --rank"))),
        (false, r) => {
            let n: usize = rest.parse().map_err(|_| usage(format!("cannot read a rank from --type {kind}")))?;
            if r.is_some_and(|r| r != n) {
                return Err(usage(format!("--type {kind} conflicts with --rank {}", r.unwrap())));
            }
            n
        }
    };
    Ok((family, n))
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

fn format_name(f: Format) -> String {
    match f {
        Format::Json => "json".into(),
        Format::Text => "text".into(),
    }
}

fn with_input(
    common: &Common,
    mut args: BTreeMap<String, String>,
    run: impl FnOnce(&Input, BTreeMap<String, String>) -> lattice_screening::Result<Report>,
) -> Result<(), Failure> {
    let (raw, file) = read_input(&common.input)?;
    let lattice = file.lattice()?;
    args.insert("input".into(), common.input.display().to_string());
    args.insert("format".into(), format_name(common.format));
    let input = Input {
        file: &file,
        lattice: &lattice,
        raw: &raw,
    };
    let report = run(&input, args)?;
    for w in &report.warnings {
        eprintln!("warning[{}]: {}", w.code, w.message);
    }
    emit(&report, common.format);
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let args = BTreeMap::new();
    match cli.command {
        Command::Screeners(c) => with_input(&c, args, report::cmd_screeners),
        Command::Decompose(c) => with_input(&c, args, report::cmd_decompose),
        Command::Classify(c) => with_input(&c, args, report::cmd_classify),
        Command::Rank2(c) => with_input(&c, args, report::cmd_rank2),
        Command::Pairs { common, vector, max_r } => {
            if max_r < 1 {
                return Err(usage("--max-r must be positive".into()));
            }
            let v = vector.as_deref().map(parse_vector).transpose()?;
            let mut args = args;
            args.insert("max-r".into(), max_r.to_string());
            if let Some(v) = &v {
                args.insert("vector".into(), v.to_string());
            }
            with_input(&common, args, |input, args| report::cmd_pairs(input, v.as_ref(), max_r, args))
        }
        Command::Catalog {
            kind,
            rank,
            scale,
            lattice,
            format,
        } => {
            let (family, n) = parse_kind(&kind, rank)?;
            let mut args = args;
            args.insert("type".into(), format!("{}_{n}", family.letter()));
            args.insert("scale".into(), scale.to_string());
            args.insert("format".into(), format_name(format));
            if lattice {
                let file = LatticeFile {
                    gram: catalog(family, n, scale)?.gram().clone(),
                    name: Some(format!("{}_{n}({scale})", family.letter())),
                    scale: None,
                };
                println!("{}", file.to_json());
            } else {
                emit(&report::cmd_catalog(family, n, scale, args)?, format);
            }
            Ok(())
        }
        Command::OracleCheck {
            seed,
            cases,
            rank,
            max_entry,
            format,
        } => {
            if rank < 1 || max_entry < 1 || cases < 1 {
                return Err(usage("--cases, --rank and --max-entry must be positive".into()));
            }
            let mut args = args;
            args.insert("seed".into(), seed.to_string());
            args.insert("cases".into(), cases.to_string());
            args.insert("rank".into(), rank.to_string());
            args.insert("max-entry".into(), max_entry.to_string());
            args.insert("format".into(), format_name(format));
            let (report, times) = report::cmd_oracle_check(seed, cases, rank, max_entry, args);
            for (case, t) in report.results["cases"].as_array().into_iter().flatten().zip(&times) {
                eprintln!(
                    "case {:>4}: rank {}, {} screeners, {:.3} ms",
                    case["index"],
                    case["gram"].as_array().map_or(0, Vec::len),
                    case["library_count"],
                    t.as_secs_f64() * 1e3
                );
            }
            let total: std::time::Duration = times.iter().sum();
            let status = report.results["status"].as_str().unwrap_or("FAIL").to_string();
            eprintln!("oracle-check: {status} ({cases} cases, {:.3} s)", total.as_secs_f64());
            emit(&report, format);
            if status == "PASS" {
                Ok(())
            } else {
                Err(Failure {
                    status: EXIT_MISMATCH,
                    code: "E_MISMATCH",
                    message: format!("{} discrepancies", report.results["discrepancies"]),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(f.status)
        }
    }
}
