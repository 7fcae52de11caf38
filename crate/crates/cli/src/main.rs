//! `seqseg` — estimate independence points of aligned categorical
//! sequences by penalized maximum likelihood.
//!
//! Three subcommands: `segment` an alignment file, `simulate` a sample
//! from a block Markov design, and `evaluate` recovery over an (n, c)
//! grid. Results go to stdout as one JSON object (or TSV on request);
//! progress notes go to stderr. Exit codes: 0 on success, 2 for usage
//! errors, 1 for data errors.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use seqseg::design::resolve_blocks;
use seqseg::evaluate::{self, EvalConfig, EvalSolver};
use seqseg::io;
use seqseg::report::build_report;
use seqseg::Result;

use seqseg_core::{
    simulate::simulate, solve_bruteforce, solve_dp, solve_hierarchical, IntervalScorer,
    PenaltyConfig, PenaltyFamily, SimulationDesign, DEFAULT_BRUTE_MAX_COLS,
};

// ----------------------------------------------------------------- options

#[derive(Debug, Parser)]
#[command(name = "seqseg", version, about = "Segment aligned categorical sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Segment an alignment file and report the chosen cuts.
    Segment(SegmentArgs),
    /// Draw a sample from a design and write it as a matrix file.
    Simulate(SimulateArgs),
    /// Sweep sample sizes and penalty scales, measuring recovery.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Matrix,
    Fasta,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PenaltyArg {
    Theoretical,
    Empirical,
    EmpiricalFloored,
}

impl PenaltyArg {
    fn family(self) -> PenaltyFamily {
        match self {
            PenaltyArg::Theoretical => PenaltyFamily::Theoretical,
            PenaltyArg::Empirical => PenaltyFamily::Empirical,
            PenaltyArg::EmpiricalFloored => PenaltyFamily::EmpiricalFloored,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolverArg {
    Dp,
    Hier,
    Brute,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EvalSolverArg {
    Dp,
    Hier,
}

impl EvalSolverArg {
    fn solver(self) -> EvalSolver {
        match self {
            EvalSolverArg::Dp => EvalSolver::Dp,
            EvalSolverArg::Hier => EvalSolver::Hier,
        }
    }
}

fn parse_positive_f64(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be a positive finite number"))
    }
}

fn parse_positive_usize(s: &str) -> std::result::Result<usize, String> {
    let v: usize = s
        .parse()
        .map_err(|_| format!("`{s}` is not an integer"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be at least 1"))
    }
}

#[derive(Debug, Args)]
struct SegmentArgs {
    /// Alignment file to segment.
    #[arg(long)]
    input: PathBuf,
    /// Input layout.
    #[arg(long, value_enum, default_value_t = FormatArg::Matrix)]
    format: FormatArg,
    /// Cell separator for matrix inputs.
    #[arg(long, default_value_t = '\t')]
    delimiter: char,
    /// Penalty family.
    #[arg(long, value_enum, default_value_t = PenaltyArg::EmpiricalFloored)]
    penalty: PenaltyArg,
    /// Penalty scale c > 0.
    #[arg(long, value_parser = parse_positive_f64, default_value_t = 1.0)]
    c: f64,
    /// Optimizer.
    #[arg(long, value_enum, default_value_t = SolverArg::Dp)]
    solver: SolverArg,
    /// Print the per-block table as TSV instead of the JSON report.
    #[arg(long)]
    tsv: bool,
    /// Leave wall-clock timing out of the report (byte-stable reruns).
    #[arg(long)]
    omit_timing: bool,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Built-in design name or TOML design file.
    #[arg(long)]
    design: String,
    /// Number of rows to draw.
    #[arg(long, value_parser = parse_positive_usize)]
    n: usize,
    /// Stream seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Matrix file to write.
    #[arg(long)]
    out: PathBuf,
    /// Truth file to write (default: `<out>.truth`).
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Cell separator for the matrix file.
    #[arg(long, default_value_t = '\t')]
    delimiter: char,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Built-in design name or TOML design file.
    #[arg(long)]
    design: String,
    /// Sample sizes, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_positive_usize,
          default_values_t = vec![100, 1000])]
    n_grid: Vec<usize>,
    /// Penalty scales, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_positive_f64,
          default_values_t = vec![1.0, 0.5, 0.1, 0.05])]
    c_grid: Vec<f64>,
    /// Replicates per (n, c) cell.
    #[arg(long, value_parser = parse_positive_usize, default_value_t = 20)]
    replicates: usize,
    /// Optimizer (brute force is not admissible on a grid).
    #[arg(long, value_enum, default_value_t = EvalSolverArg::Dp)]
    solver: EvalSolverArg,
    /// Penalty family.
    #[arg(long, value_enum, default_value_t = PenaltyArg::EmpiricalFloored)]
    penalty: PenaltyArg,
    /// Base seed; replicate r uses stream seed `seed + r`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print per-replicate rows as TSV instead of the JSON report.
    #[arg(long)]
    tsv: bool,
    /// Print per-cell recovery rates as TSV instead of the JSON report.
    #[arg(long)]
    rates_tsv: bool,
    /// Report 0 ms everywhere (byte-stable reruns).
    #[arg(long)]
    omit_timing: bool,
}

// ---------------------------------------------------------------- commands

fn run_segment(args: &SegmentArgs) -> Result<()> {
    let align = match args.format {
        FormatArg::Matrix => io::load_matrix(&args.input, args.delimiter)?,
        FormatArg::Fasta => io::load_fasta(&args.input)?,
    };
    eprintln!(
        "loaded {} rows x {} columns from {}",
        align.rows(),
        align.cols(),
        args.input.display()
    );
    let penalty = PenaltyConfig::new(args.penalty.family(), args.c)?;
    let scorer = IntervalScorer::new(&align, penalty);
    let start = Instant::now();
    let (seg, solver_name) = match args.solver {
        SolverArg::Dp => (solve_dp(&scorer), "dp"),
        SolverArg::Hier => (solve_hierarchical(&scorer), "hier"),
        SolverArg::Brute => (solve_bruteforce(&scorer, DEFAULT_BRUTE_MAX_COLS)?, "brute"),
    };
    let wall_ms = if args.omit_timing {
        None
    } else {
        Some(start.elapsed().as_millis() as u64)
    };
    let report = build_report(
        &args.input.display().to_string(),
        solver_name,
        &scorer,
        &seg,
        wall_ms,
    );
    eprintln!(
        "{} found {} cuts, objective {}",
        solver_name,
        report.cuts.len(),
        report.objective
    );
    if args.tsv {
        print!("{}", report.blocks_tsv());
    } else {
        print!("{}", report.to_json());
    }
    Ok(())
}

/// What `simulate` just wrote, echoed to stdout.
#[derive(Debug, Serialize)]
struct SimulateSummary {
    design: String,
    n: usize,
    m: usize,
    seed: u64,
    out: String,
    truth: String,
    true_cuts: Vec<usize>,
}

fn run_simulate(args: &SimulateArgs) -> Result<()> {
    let blocks = resolve_blocks(&args.design)?;
    let design = SimulationDesign::new(args.n, blocks, args.seed)?;
    let (align, cuts) = simulate(&design);
    io::write_matrix(&args.out, &align, args.delimiter)?;
    let truth_path = args
        .truth
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.truth", args.out.display())));
    io::write_truth(&truth_path, &cuts)?;
    eprintln!(
        "wrote {} rows x {} columns to {}",
        align.rows(),
        align.cols(),
        args.out.display()
    );
    let summary = SimulateSummary {
        design: args.design.clone(),
        n: align.rows(),
        m: align.cols(),
        seed: args.seed,
        out: args.out.display().to_string(),
        truth: truth_path.display().to_string(),
        true_cuts: cuts,
    };
    let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    json.push('\n');
    print!("{json}");
    Ok(())
}

fn run_evaluate(args: &EvaluateArgs) -> Result<()> {
    let blocks = resolve_blocks(&args.design)?;
    let config = EvalConfig {
        design: args.design.clone(),
        n_grid: args.n_grid.clone(),
        c_grid: args.c_grid.clone(),
        replicates: args.replicates,
        solver: args.solver.solver(),
        family: args.penalty.family(),
        seed: args.seed,
        timing: !args.omit_timing,
    };
    let report = evaluate::run(&config, &blocks)?;
    eprintln!(
        "swept {} cells x {} replicates on {}",
        report.rates.len(),
        args.replicates,
        args.design
    );
    match (args.tsv, args.rates_tsv) {
        (false, false) => print!("{}", report.to_json()),
        (true, false) => print!("{}", report.rows_tsv()),
        (false, true) => print!("{}", report.rates_tsv()),
        (true, true) => {
            print!("{}", report.rows_tsv());
            println!();
            print!("{}", report.rates_tsv());
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Segment(args) => run_segment(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Evaluate(args) => run_evaluate(args),
    };
    if let Err(e) = outcome {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
