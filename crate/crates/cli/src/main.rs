//! `colreduce`: reduce, solve, verify and compare graph-coloring instances.
//!
//! Exit codes: 0 success / decision true, 1 decision false, 2 usage or
//! input error, 3 timeout, 4 internal invariant violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use colreduce::dimacs::{emit_col, parse_col};
use colreduce::random::gen_gnp;
use colreduce::reduction::{lift_witness, project_witness, reduce, SizeReport};
use colreduce::sat_route::compare_routes;
use colreduce::solver::{solve, SolveStatus, DEFAULT_BUDGET};
use colreduce::{is_proper_coloring, Coloring, Error, Graph};

mod witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
enum Status {
    Success = 0,
    DecisionFalse = 1,
    Usage = 2,
    Timeout = 3,
    Internal = 4,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

/// A failure carrying the exit status it maps to.
#[derive(Debug)]
struct Failure {
    status: Status,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Usage,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = if err.is_internal() { Status::Internal } else { Status::Usage };
        Failure {
            status,
            message: err.to_string(),
        }
    }
}

type CliResult = Result<Status, Failure>;

#[derive(Parser)]
#[command(name = "colreduce", version, about = "k-colorability to 3-colorability reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a k-coloring instance to a 3-coloring instance.
    Reduce {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Reduction map sidecar (JSON).
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Decide k-colorability exactly.
    Solve {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET.as_secs_f64())]
        timeout: f64,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check that a witness is a proper k-coloring.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Solve both sides of the reduction and translate witnesses across it.
    Roundtrip {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET.as_secs_f64())]
        timeout: f64,
    },
    /// Compare the direct reduction with the route through CNF.
    Compare {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Generate a random graph.
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnp,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Reduce { k, input, output, map } => cmd_reduce(k, &input, &output, map.as_deref()),
        Command::Solve {
            k,
            input,
            timeout,
            witness,
        } => cmd_solve(k, &input, timeout, witness.as_deref()),
        Command::Verify { k, input, witness } => cmd_verify(k, &input, &witness),
        Command::Roundtrip { k, input, timeout } => cmd_roundtrip(k, &input, timeout),
        Command::Compare { k, input, output } => cmd_compare(k, &input, &output),
        Command::Gen {
            model: Model::Gnp,
            n,
            p,
            seed,
            output,
        } => cmd_gen(n, p, seed, &output),
    };
    match result {
        Ok(status) => status.into(),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.status.into()
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|err| Failure::usage(format!("{}: {err}", path.display())))?;
    parse_col(&text).map_err(|err| Failure::usage(format!("{}: {err}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|err| Failure::usage(format!("{}: {err}", path.display())))
}

fn budget(seconds: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(seconds)
        .map_err(|_| Failure::usage(format!("invalid timeout {seconds}")))
}

fn cmd_reduce(k: usize, input: &Path, output: &Path, map_path: Option<&Path>) -> CliResult {
    let g = read_graph(input)?;
    let (g_prime, map) = reduce(&g, k)?;
    write_file(output, &emit_col(&g_prime))?;
    if let Some(path) = map_path {
        write_file(path, &map.to_json())?;
    }
    println!("{}", SizeReport::from_reduction(&g_prime, &map));
    Ok(Status::Success)
}

fn cmd_solve(k: usize, input: &Path, timeout: f64, witness_path: Option<&Path>) -> CliResult {
    let g = read_graph(input)?;
    let out = solve(&g, k, budget(timeout)?);
    let nodes = out.stats.nodes;
    match out.status {
        SolveStatus::Colorable(c) => {
            println!("colorable with {k} colors ({nodes} nodes)");
            if let Some(path) = witness_path {
                write_file(path, &witness::emit(&c))?;
            }
            Ok(Status::Success)
        }
        SolveStatus::Uncolorable => {
            println!("not colorable with {k} colors ({nodes} nodes)");
            Ok(Status::DecisionFalse)
        }
        SolveStatus::Timeout => {
            println!("timeout after {nodes} nodes");
            Ok(Status::Timeout)
        }
    }
}

fn cmd_verify(k: usize, input: &Path, witness_path: &Path) -> CliResult {
    let g = read_graph(input)?;
    let text = fs::read_to_string(witness_path)
        .map_err(|err| Failure::usage(format!("{}: {err}", witness_path.display())))?;
    let colors = witness::parse(&text, g.vertex_count())
        .map_err(|err| Failure::usage(format!("{}: {err}", witness_path.display())))?;
    if k == 0 {
        return Err(Failure::usage("palette size must be positive"));
    }
    let Ok(coloring) = Coloring::new(k, colors) else {
        println!("witness uses a color outside 0..{k}");
        return Ok(Status::DecisionFalse);
    };
    if is_proper_coloring(&g, &coloring)? {
        println!("proper {k}-coloring");
        Ok(Status::Success)
    } else {
        println!("not a proper coloring");
        Ok(Status::DecisionFalse)
    }
}

fn cmd_roundtrip(k: usize, input: &Path, timeout: f64) -> CliResult {
    let g = read_graph(input)?;
    let budget = budget(timeout)?;
    let (g_prime, map) = reduce(&g, k)?;

    let source = solve(&g, k, budget);
    let target = solve(&g_prime, 3, budget);
    let (Ok(source_yes), Ok(target_yes)) = (source.decision(), target.decision()) else {
        println!("timeout");
        return Ok(Status::Timeout);
    };
    println!("source {k}-colorable: {source_yes}; reduced 3-colorable: {target_yes}");
    if source_yes != target_yes {
        println!("decisions disagree");
        return Ok(Status::DecisionFalse);
    }
    if let Some(c) = source.witness() {
        let lifted = lift_witness(&g, c, &g_prime, &map)?;
        if project_witness(&g, &g_prime, &map, &lifted)? != *c {
            return Err(Failure {
                status: Status::Internal,
                message: "projecting the lifted witness did not return the original".into(),
            });
        }
        println!("lifted source witness verifies");
    }
    if let Some(c3) = target.witness() {
        project_witness(&g, &g_prime, &map, c3)?;
        println!("projected reduced witness verifies");
    }
    Ok(Status::Success)
}

fn cmd_compare(k: usize, input: &Path, output: &Path) -> CliResult {
    let g = read_graph(input)?;
    let record = compare_routes(&g, k, Some(DEFAULT_BUDGET))?;
    write_file(output, &record.to_json())?;
    println!(
        "direct: {} vertices, {} edges; via CNF: {} vertices, {} edges",
        record.sane.vertices, record.sane.edges, record.sat_route.vertices, record.sat_route.edges
    );
    Ok(Status::Success)
}

fn cmd_gen(n: usize, p: f64, seed: u64, output: &Path) -> CliResult {
    let g = gen_gnp(n, p, seed)?;
    write_file(output, &emit_col(&g))?;
    Ok(Status::Success)
}
