use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankforge::composed::{compose, Gadget};
use rankforge::data::DataSet;
use rankforge::linalg::format_rational;
use rankforge::nonneg::{find_incompatible_decomposition, rank_plus_bounds, Certificate};
use rankforge::report::{rank_report, RankReport};
use rankforge::sampling::{check_uniform, exact_distribution, protocol_from_certificate};
use rankforge::solve::{
    binary_rank, boolean_rank, export_exact_cover, fooling_number, uniform_cover_number, ExactResult, SearchBudget,
    Witness, ONE_SET_WORK_LIMIT,
};
use rankforge::suite::{run_suite, CheckStatus, CHECKS};
use rankforge::{Error, PartialMatrix};
use serde_json::json;

const EXIT_PARTIAL: u8 = 2;

#[derive(Parser)]
#[command(name = "rankforge", version, about = "Exact rank measures of total and partial 0-1 matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BudgetArgs {
    /// Search nodes per solver call.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_nodes: u64,
    /// Wall-clock seconds per solver call.
    #[arg(long, global = true, default_value_t = 60.0)]
    max_seconds: f64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Binary,
    Boolean,
    Fooling,
    Uniform,
    Nonnegative,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetArg {
    And,
    Ip2,
}

#[derive(Subcommand)]
enum Command {
    /// Every measure of one matrix, with the rank chain checked.
    Rank {
        file: PathBuf,
        /// Extra nonnegative certificates (JSON); bundled ones are matched
        /// automatically.
        #[arg(long = "cert")]
        certs: Vec<PathBuf>,
    },
    /// A single measure.
    Solve {
        #[arg(value_enum)]
        measure: MeasureArg,
        file: PathBuf,
        /// Largest multiplicity for the uniform cover number.
        #[arg(long, default_value_t = 2)]
        t_max: usize,
        #[arg(long = "cert")]
        certs: Vec<PathBuf>,
    },
    /// Runs the golden checks on the bundled data.
    VerifyPaper {
        /// Check to skip (repeatable).
        #[arg(long)]
        skip: Vec<String>,
        /// List check names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Writes a generated matrix.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Kronecker product of two matrices.
    Tensor { a: PathBuf, b: PathBuf },
    /// Joint law of the sampling protocol of a certificate.
    Sample { cert: PathBuf },
    /// Binary rank as an exact-cover instance (JSON).
    ExportCover { file: PathBuf },
    /// Searches for an r-term decomposition with pairwise incompatible
    /// supports.
    FindIncompatible {
        file: PathBuf,
        #[arg(long, short)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// f ∘ gⁿ with f = 1 on weight n/2, 0 on weight 0, * elsewhere.
    Composed {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GadgetArg::And)]
        gadget: GadgetArg,
        /// Block width for IP2.
        #[arg(long, default_value_t = 2)]
        b: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// k-fold tensor power of a matrix file.
    TensorPower {
        file: PathBuf,
        #[arg(long, short)]
        k: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn budget(args: &BudgetArgs) -> Result<SearchBudget, Error> {
    if args.max_nodes == 0 || args.max_seconds.is_nan() || args.max_seconds <= 0.0 || args.threads == Some(0) {
        return Err(Error::Precondition("budgets must be positive".into()));
    }
    let threads = args.threads.unwrap_or_else(|| SearchBudget::default().threads);
    Ok(SearchBudget::new(args.max_nodes, args.max_seconds, threads))
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<PartialMatrix, Error> {
    PartialMatrix::parse(&read(path)?)
}

fn read_cert(path: &Path) -> Result<Certificate, Error> {
    Certificate::from_json(&read(path)?).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Error> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Error::Format(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let budget = budget(&cli.budget)?;
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Rank { file, certs } => {
            let m = read_matrix(file)?;
            let mut all = DataSet::from_env()?.certificates_for(&m);
            for c in certs {
                all.push(read_cert(c)?);
            }
            let report = rank_report(&m, &budget, &all)?;
            if json {
                print_json(&report);
            } else {
                print_rank(&report);
            }
            Ok(if report.all_proved() { 0 } else { EXIT_PARTIAL })
        }
        Command::Solve { measure, file, t_max, certs } => {
            let m = read_matrix(file)?;
            let result = match measure {
                MeasureArg::Binary => binary_rank(&m, &budget),
                MeasureArg::Boolean => boolean_rank(&m, &budget),
                MeasureArg::Fooling => fooling_number(&m, &budget),
                MeasureArg::Uniform => uniform_cover_number(&m, *t_max, &budget),
                MeasureArg::Nonnegative => {
                    let mut all = DataSet::from_env()?.certificates_for(&m);
                    for c in certs {
                        all.push(read_cert(c)?);
                    }
                    rank_plus_bounds(&m, &budget, &all)?.result
                }
            };
            result.validate(&m)?;
            if json {
                print_json(&result);
            } else {
                print_result(&result);
            }
            Ok(if result.is_proved() { 0 } else { EXIT_PARTIAL })
        }
        Command::VerifyPaper { skip, list } => {
            if *list {
                for name in CHECKS {
                    println!("{name}");
                }
                return Ok(0);
            }
            if let Some(bad) = skip.iter().find(|s| !CHECKS.contains(&s.as_str())) {
                return Err(Error::Precondition(format!("unknown check {bad:?}")));
            }
            let data = DataSet::from_env()?;
            let results = run_suite(&data, &budget, skip);
            if json {
                print_json(&results);
            } else {
                for r in &results {
                    let tag = match r.status {
                        CheckStatus::Pass => "PASS",
                        CheckStatus::Fail => "FAIL",
                        CheckStatus::Skipped => "SKIP",
                    };
                    println!("{tag} {:<20} {:>8.3}s  {}", r.name, r.seconds, r.detail);
                }
            }
            let failed = results.iter().any(|r| r.status == CheckStatus::Fail);
            Ok(u8::from(failed))
        }
        Command::Generate { kind } => match kind {
            GenerateKind::Composed { n, gadget, b, output } => {
                let g = match gadget {
                    GadgetArg::And => Gadget::and(),
                    GadgetArg::Ip2 => Gadget::ip2(*b)?,
                };
                let inst = compose(*n, g)?;
                emit(output.as_deref(), &format!("{}{}", inst.header(), inst.matrix.format()))?;
                Ok(0)
            }
            GenerateKind::TensorPower { file, k, output } => {
                let m = read_matrix(file)?.tensor_power(*k)?;
                emit(output.as_deref(), &m.format())?;
                Ok(0)
            }
        },
        Command::Tensor { a, b } => {
            let m = read_matrix(a)?.tensor(&read_matrix(b)?)?;
            print!("{}", m.format());
            Ok(0)
        }
        Command::Sample { cert } => {
            let cert = read_cert(cert)?;
            let p = protocol_from_certificate(&cert)?;
            let dist = exact_distribution(&p);
            let report = check_uniform(&p, &cert.target)?;
            let rows: Vec<Vec<String>> = (0..dist.n_rows())
                .map(|r| (0..dist.n_cols()).map(|c| format_rational(dist.get(r, c))).collect())
                .collect();
            if json {
                print_json(&json!({ "protocol": p, "distribution": rows, "uniformity": report }));
            } else {
                println!("transcripts: {}", p.transcripts.len());
                for row in &rows {
                    println!("{}", row.join(" "));
                }
                println!("uniform on Ones: {} (each One {})", report.uniform, format_rational(&report.expected));
                for (r, c, q) in &report.violations {
                    println!("  violation at ({r},{c}): {q}");
                }
            }
            Ok(if report.uniform { 0 } else { 1 })
        }
        Command::ExportCover { file } => {
            let inst = export_exact_cover(&read_matrix(file)?, ONE_SET_WORK_LIMIT)?;
            print_json(&inst);
            Ok(0)
        }
        Command::FindIncompatible { file, r } => {
            let m = read_matrix(file)?;
            match find_incompatible_decomposition(&m, *r, &budget)? {
                Some(cert) => {
                    println!("{}", cert.to_json());
                    Ok(0)
                }
                None => {
                    if json {
                        print_json(&json!({ "found": false }));
                    } else {
                        println!("no decomposition found");
                    }
                    Ok(EXIT_PARTIAL)
                }
            }
        }
    }
}

fn interval(r: &ExactResult) -> String {
    match r.value {
        Some(v) => v.to_string(),
        None => format!("{}..{} (budget exhausted)", r.lower, r.upper),
    }
}

fn print_rank(report: &RankReport) {
    println!("matrix: {}x{}{}", report.n_rows, report.n_cols, if report.total { "" } else { " (partial)" });
    let opt = |v: Option<usize>| v.map_or_else(|| "n/a (partial matrix)".to_string(), |v| v.to_string());
    println!("real rank:         {}", opt(report.real_rank));
    println!("gf2 rank:          {}", opt(report.gf2_rank));
    println!("fooling number:    {}", interval(&report.fooling));
    println!("boolean rank:      {}", interval(&report.boolean));
    println!("nonnegative rank:  {}", interval(&report.nonnegative));
    println!("binary rank:       {}", interval(&report.binary));
    if let Some(c) = &report.certificate {
        println!("best certificate:  {:?} with {} terms", c.kind, c.size);
    }
    if let Some(w) = &report.binary.witness {
        print_witness(w);
    }
}

fn print_result(r: &ExactResult) {
    println!("{:?}: {}", r.measure, interval(r));
    println!("nodes: {}", r.nodes);
    if let Some(w) = &r.witness {
        print_witness(w);
    }
}

fn print_witness(w: &Witness) {
    let set = |s: &rankforge::bitset::BitSet| format!("{:?}", s.to_vec());
    match w {
        Witness::Partition { rects } | Witness::Cover { rects } | Witness::UniformCover { rects, .. } => {
            let kind = match w {
                Witness::Partition { .. } => "partition".to_string(),
                Witness::Cover { .. } => "cover".to_string(),
                Witness::UniformCover { multiplicity, .. } => format!("uniform cover, multiplicity {multiplicity}"),
                Witness::Fooling { .. } => unreachable!(),
            };
            println!("witness ({kind}, 0-origin rows x cols):");
            for r in rects {
                println!("  {} x {}", set(r.rows()), set(r.cols()));
            }
        }
        Witness::Fooling { cells } => println!("witness (fooling set, 0-origin): {cells:?}"),
    }
}
