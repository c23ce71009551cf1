//! `rggdim` — generate torus RGGs, test their latent dimension, and run
//! seeded Monte Carlo grids.
//!
//! Exit codes: 0 success, 2 usage error, 3 edge-list parse error,
//! 4 degenerate variance. All numeric output uses 17 significant digits so
//! every float round-trips exactly.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rggdim::dimtest::{run_test, scan_m0, ScanOutcome, TestResult};
use rggdim::edgelist::{parse_edge_list, write_edge_list, EdgeListDocument};
use rggdim::geometry::{generate_rgg, RggParams};
use rggdim::graph::AdjacencyMatrix;
use rggdim::simulate::{estimate_rejection_rate_with_threads, SimConfig};
use rggdim::Error;

#[derive(Parser)]
#[command(
    name = "rggdim",
    version,
    about = "Dimension testing for torus random geometric graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a torus RGG and write it as an edge list.
    Generate(GenerateArgs),
    /// Test one hypothesized dimension on an edge-list file.
    Test(TestArgs),
    /// Test a range of hypothesized dimensions on one graph.
    Scan(ScanArgs),
    /// Estimate empirical rejection rates over seeded replicates.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Node count.
    #[arg(long)]
    n: usize,
    /// Latent dimension.
    #[arg(long)]
    m: usize,
    /// Connection radius in [0, 0.5].
    #[arg(long)]
    r: f64,
    /// Stream seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TestArgs {
    /// Edge-list file to test.
    #[arg(long)]
    input: PathBuf,
    /// Hypothesized dimension.
    #[arg(long)]
    m0: u32,
    /// Significance level.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Node count override (isolated nodes cannot be inferred from edges).
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(Args)]
struct ScanArgs {
    /// Edge-list file to test.
    #[arg(long)]
    input: PathBuf,
    /// Smallest hypothesized dimension.
    #[arg(long = "m0-min")]
    m0_min: u32,
    /// Largest hypothesized dimension.
    #[arg(long = "m0-max")]
    m0_max: u32,
    /// Significance level.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Node count override.
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Node counts (comma list for a grid).
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Data-generating dimensions (comma list for a grid).
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    /// Connection radii (comma list for a grid).
    #[arg(long, value_delimiter = ',', required = true)]
    r: Vec<f64>,
    /// Hypothesized dimension under test.
    #[arg(long)]
    m0: u32,
    /// Significance level.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Replicates per cell.
    #[arg(long, default_value_t = 1000)]
    reps: u64,
    /// Master seed; replicate i draws from the child stream (seed, i).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the available parallelism). The output
    /// does not depend on this.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum CmdError {
    Usage(String),
    Io(String),
    Parse(String),
    Degenerate(String),
}

impl CmdError {
    fn code(&self) -> u8 {
        match self {
            CmdError::Usage(_) => 2,
            CmdError::Io(_) => 1,
            CmdError::Parse(_) => 3,
            CmdError::Degenerate(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Usage(m) | CmdError::Io(m) | CmdError::Parse(m) | CmdError::Degenerate(m) => {
                m
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Test(args) => cmd_test(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

/// 17 significant digits; round-trips any finite f64.
fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CmdError> {
    let params = RggParams::new(args.n, args.m, args.r, args.seed)
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    let (_, adjacency) = generate_rgg(&params).map_err(|e| CmdError::Usage(e.to_string()))?;
    let header = format!(
        "rgg n={} m={} r={} seed={}",
        params.n,
        params.m,
        f17(params.r),
        params.seed
    );
    let mut buf = Vec::new();
    write_edge_list(&mut buf, &adjacency, &[header])
        .map_err(|e| CmdError::Io(format!("serializing edge list: {e}")))?;
    fs::write(&args.out, buf)
        .map_err(|e| CmdError::Io(format!("writing {}: {e}", args.out.display())))?;
    Ok(())
}

fn load_graph(input: &PathBuf, nodes: Option<usize>) -> Result<AdjacencyMatrix, CmdError> {
    let bytes =
        fs::read(input).map_err(|e| CmdError::Io(format!("reading {}: {e}", input.display())))?;
    let doc = parse_edge_list(&bytes).map_err(|e| match e {
        Error::Parse { .. } | Error::Encoding => CmdError::Parse(e.to_string()),
        other => CmdError::Parse(other.to_string()),
    })?;
    warn_ignored_tokens(&doc);
    doc.to_matrix(nodes)
        .map_err(|e| CmdError::Usage(e.to_string()))
}

fn warn_ignored_tokens(doc: &EdgeListDocument) {
    if doc.ignored_extra_tokens > 0 {
        eprintln!(
            "warning: ignored trailing tokens on {} line(s); edge weights are not used",
            doc.ignored_extra_tokens
        );
    }
}

fn test_result_json(t: &TestResult) -> String {
    format!(
        "{{\"n\":{},\"m0\":{},\"alpha\":{},\"d_n\":{},\"sigma2_hat\":{},\"statistic\":{},\"p_value\":{},\"reject\":{}}}",
        t.n,
        t.m0,
        f17(t.alpha),
        f17(t.d_n),
        f17(t.sigma2_hat),
        f17(t.statistic),
        f17(t.p_value),
        t.reject
    )
}

const TEST_CSV_HEADER: &str = "n,m0,alpha,d_n,sigma2_hat,statistic,p_value,reject";
const SCAN_CSV_HEADER: &str = "m0,d_n,sigma2_hat,statistic,p_value,reject";

fn cmd_test(args: TestArgs) -> Result<(), CmdError> {
    let graph = load_graph(&args.input, args.nodes)?;
    match run_test(&graph, args.m0, args.alpha) {
        Ok(result) => {
            match args.format {
                Format::Json => println!("{}", test_result_json(&result)),
                Format::Csv => {
                    println!("{TEST_CSV_HEADER}");
                    println!(
                        "{},{},{},{},{},{},{},{}",
                        result.n,
                        result.m0,
                        f17(result.alpha),
                        f17(result.d_n),
                        f17(result.sigma2_hat),
                        f17(result.statistic),
                        f17(result.p_value),
                        result.reject
                    );
                }
            }
            Ok(())
        }
        Err(Error::DegenerateVariance { sigma2_hat }) => {
            let counts = rggdim::motifs::motif_counts_fast(&graph);
            let d_n = rggdim::dimtest::compute_dn(&counts, args.m0);
            match args.format {
                Format::Json => println!(
                    "{{\"status\":\"degenerate_variance\",\"n\":{},\"m0\":{},\"alpha\":{},\"d_n\":{},\"sigma2_hat\":{}}}",
                    graph.n(),
                    args.m0,
                    f17(args.alpha),
                    f17(d_n),
                    f17(sigma2_hat)
                ),
                Format::Csv => {
                    println!("{TEST_CSV_HEADER}");
                    println!(
                        "{},{},{},{},{},,,degenerate",
                        graph.n(),
                        args.m0,
                        f17(args.alpha),
                        f17(d_n),
                        f17(sigma2_hat)
                    );
                }
            }
            Err(CmdError::Degenerate(format!(
                "variance estimate is not positive (sigma2_hat = {sigma2_hat})"
            )))
        }
        Err(other) => Err(CmdError::Usage(other.to_string())),
    }
}

fn cmd_scan(args: ScanArgs) -> Result<(), CmdError> {
    if args.m0_min < 1 || args.m0_min > args.m0_max {
        return Err(CmdError::Usage(format!(
            "need 1 <= m0-min <= m0-max, got {}..{}",
            args.m0_min, args.m0_max
        )));
    }
    let graph = load_graph(&args.input, args.nodes)?;
    let m0_values: Vec<u32> = (args.m0_min..=args.m0_max).collect();
    let outcomes =
        scan_m0(&graph, &m0_values, args.alpha).map_err(|e| CmdError::Usage(e.to_string()))?;

    println!("{SCAN_CSV_HEADER}");
    let mut tested = 0usize;
    for outcome in &outcomes {
        match outcome {
            ScanOutcome::Tested(t) => {
                tested += 1;
                println!(
                    "{},{},{},{},{},{}",
                    t.m0,
                    f17(t.d_n),
                    f17(t.sigma2_hat),
                    f17(t.statistic),
                    f17(t.p_value),
                    t.reject
                );
            }
            ScanOutcome::Degenerate {
                m0,
                d_n,
                sigma2_hat,
            } => {
                println!("{},{},{},,,degenerate", m0, f17(*d_n), f17(*sigma2_hat));
            }
        }
    }
    if tested == 0 && !outcomes.is_empty() {
        return Err(CmdError::Degenerate(
            "variance estimate is not positive at every scanned m0".into(),
        ));
    }
    Ok(())
}

const SIM_CSV_HEADER: &str =
    "n,m,r,m0,alpha,reps,seed,rejections,degenerate_count,rejection_rate,std_error";

fn cmd_simulate(args: SimulateArgs) -> Result<(), CmdError> {
    if args.n.is_empty() || args.m.is_empty() || args.r.is_empty() {
        return Err(CmdError::Usage(
            "need at least one value each for --n, --m, --r".into(),
        ));
    }
    let threads = match args.threads {
        Some(0) => return Err(CmdError::Usage("thread count must be at least 1".into())),
        Some(t) => t,
        None => std::thread::available_parallelism()
            .map(|t| t.get())
            .unwrap_or(1),
    };

    // Validate the full grid before printing anything.
    let mut configs = Vec::new();
    for &r in &args.r {
        for &n in &args.n {
            for &m in &args.m {
                let config = SimConfig {
                    n,
                    m,
                    r,
                    m0: args.m0,
                    alpha: args.alpha,
                    reps: args.reps,
                    seed: args.seed,
                };
                config
                    .validate()
                    .map_err(|e| CmdError::Usage(e.to_string()))?;
                configs.push(config);
            }
        }
    }

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{SIM_CSV_HEADER}").map_err(|e| CmdError::Io(e.to_string()))?;
    let mut exhausted_cells = 0usize;
    for config in &configs {
        let prefix = format!(
            "{},{},{},{},{},{},{}",
            config.n,
            config.m,
            f17(config.r),
            config.m0,
            f17(config.alpha),
            config.reps,
            config.seed
        );
        match estimate_rejection_rate_with_threads(config, threads) {
            Ok(report) => writeln!(
                out,
                "{prefix},{},{},{},{}",
                report.rejections,
                report.degenerate_count,
                f17(report.rejection_rate),
                f17(report.std_error)
            )
            .map_err(|e| CmdError::Io(e.to_string()))?,
            Err(Error::AllReplicatesDegenerate { reps }) => {
                exhausted_cells += 1;
                writeln!(out, "{prefix},0,{reps},,").map_err(|e| CmdError::Io(e.to_string()))?;
            }
            Err(other) => return Err(CmdError::Usage(other.to_string())),
        }
    }
    drop(out);
    if exhausted_cells > 0 {
        return Err(CmdError::Degenerate(format!(
            "{exhausted_cells} grid cell(s) had degenerate variance on every replicate"
        )));
    }
    Ok(())
}
