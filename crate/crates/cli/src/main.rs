use std::fmt::Write as _;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use mpmc_core::dichotomic::{ds_run, DsStats};
use mpmc_core::instances::{
    build_aggregation_network, export_breakpoints_csv, parse_breakpoints_csv, parse_face_graph, parse_pmax,
    synth_parametrize, write_pmax, RunStats, DEFAULT_AGGREGATION_LAMBDA_MAX, SYNTH_DEFAULT_INTERVAL,
};
use mpmc_core::maxflow::Solver;
use mpmc_core::pbfs::{self, PbfsStats};
use mpmc_core::verify::{random_monotone_network_of_size, verify_solution, SinkMode};
use mpmc_core::{BreakpointFunction, ParametricNetwork};

#[derive(Parser)]
#[command(name = "mpmc", version, about = "Breakpoints of source-sink monotone parametric minimum cuts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the breakpoint of every vertex.
    Solve {
        #[arg(long, value_enum)]
        alg: Alg,
        #[arg(long)]
        input: PathBuf,
        /// Approximation factor of the dichotomic scheme.
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        /// Breakpoint CSV, standard output if omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Check a breakpoint CSV against independent static solves.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        breakpoints: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Write a parametric instance.
    Generate {
        #[command(subcommand)]
        kind: Generate,
    },
    /// Time algorithms on one instance and print a CSV table.
    Bench {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "pbfs,ds-ibfs")]
        algs: Vec<String>,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// Give the source arcs of a constant network random affine capacities.
    Synth {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        y: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = SYNTH_DEFAULT_INTERVAL.0)]
        lambda_min: f64,
        #[arg(long, default_value_t = SYNTH_DEFAULT_INTERVAL.1)]
        lambda_max: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Aggregation network of a face graph.
    Agg {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_AGGREGATION_LAMBDA_MAX)]
        lambda_max: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random monotone network as used by the property tests.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Decreasing sink capacities instead of constant ones.
        #[arg(long)]
        decreasing: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alg {
    Pbfs,
    DsIbfs,
    DsPrf,
}

impl Alg {
    fn name(self) -> &'static str {
        match self {
            Alg::Pbfs => "pbfs",
            Alg::DsIbfs => "ds-ibfs",
            Alg::DsPrf => "ds-prf",
        }
    }

    fn parse(name: &str) -> Result<Alg, Failure> {
        Alg::from_str(name, true).map_err(|_| Failure::Input(format!("unknown algorithm {name:?}")))
    }
}

enum Failure {
    /// Bad flags, unreadable or malformed input.
    Input(String),
    /// A solver gave up or an assertion fired.
    Internal(String),
    /// Verification found violations.
    Rejected,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
            Failure::Rejected => 3,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ParametricNetwork, Failure> {
    parse_pmax(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Writes every file or none: contents are produced before the first write.
fn write_all(files: &[(&Path, String)]) -> Result<(), Failure> {
    for (path, text) in files {
        fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

enum Stats {
    Pbfs(PbfsStats),
    Ds(DsStats),
}

struct Run {
    beta: BreakpointFunction,
    stats: Stats,
    elapsed: Duration,
}

fn run_alg(net: &ParametricNetwork, alg: Alg, epsilon: f64) -> Result<Run, Failure> {
    if alg == Alg::Pbfs && epsilon != 0.0 {
        return Err(Failure::Input("--epsilon applies to the dichotomic scheme only".into()));
    }
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| match alg {
        Alg::Pbfs => pbfs::run(net).map(|o| (o.beta, Stats::Pbfs(o.stats))).map_err(|e| e.to_string()),
        Alg::DsIbfs | Alg::DsPrf => {
            let solver = if alg == Alg::DsIbfs { Solver::Ibfs } else { Solver::Prf };
            ds_run(net, solver, epsilon).map(|o| (o.beta, Stats::Ds(o.stats))).map_err(|e| e.to_string())
        }
    }));
    let elapsed = start.elapsed();
    match outcome {
        Ok(Ok((beta, stats))) => Ok(Run { beta, stats, elapsed }),
        Ok(Err(message)) => Err(Failure::Internal(message)),
        Err(_) => Err(Failure::Internal(format!("{} aborted", alg.name()))),
    }
}

fn run_stats(run: &Run) -> RunStats {
    match &run.stats {
        Stats::Pbfs(s) => RunStats {
            breakpoints: s.breakpoints,
            adoptions: s.adoptions,
            bottleneck_edges: s.bottleneck_edges,
            init_ms: ms(s.init_time),
            loop_ms: ms(s.loop_time),
            ..RunStats::default()
        },
        Stats::Ds(s) => RunStats {
            breakpoints: s.breakpoints,
            loop_ms: ms(run.elapsed),
            contracted_vertices: s.total_contracted_vertices,
            contraction_ms: ms(s.contraction_time),
            ..RunStats::default()
        },
    }
}

fn solve(alg: Alg, input: &Path, epsilon: f64, output: Option<&Path>, stats: Option<&Path>) -> Result<(), Failure> {
    if !(epsilon >= 0.0) {
        return Err(Failure::Input(format!("epsilon must be nonnegative, got {epsilon}")));
    }
    let net = load(input)?;
    let run = run_alg(&net, alg, epsilon)?;
    let csv = export_breakpoints_csv(&run.beta);
    let mut files = Vec::new();
    if let Some(path) = stats {
        files.push((path, run_stats(&run).to_json()));
    }
    match output {
        Some(path) => files.push((path, csv)),
        None => print!("{csv}"),
    }
    write_all(&files)
}

fn verify(input: &Path, breakpoints: &Path, tol: f64) -> Result<(), Failure> {
    let net = load(input)?;
    let beta = parse_breakpoints_csv(&read(breakpoints)?, net.lambda_min())
        .map_err(|e| Failure::Input(format!("{}: {e}", breakpoints.display())))?;
    let report = verify_solution(&net, &beta, tol).map_err(|e| Failure::Input(e.to_string()))?;
    print!("{report}");
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Rejected)
    }
}

fn generate(kind: Generate) -> Result<(), Failure> {
    let invalid = |e: &dyn std::fmt::Display| Failure::Input(e.to_string());
    let (net, out) = match kind {
        Generate::Synth { input, y, seed, lambda_min, lambda_max, out } => {
            let base = load(&input)?;
            let net = synth_parametrize(&base, y, seed, (lambda_min, lambda_max)).map_err(|e| invalid(&e))?;
            (net, out)
        }
        Generate::Agg { input, lambda_max, out } => {
            let graph = parse_face_graph(&read(&input)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
            (build_aggregation_network(&graph, lambda_max).map_err(|e| invalid(&e))?, out)
        }
        Generate::Random { n, seed, decreasing, out } => {
            if n < 2 {
                return Err(Failure::Input(format!("--n must be at least 2, got {n}")));
            }
            let mode = if decreasing { SinkMode::Decreasing } else { SinkMode::Constant };
            (random_monotone_network_of_size(n, seed, mode), out)
        }
    };
    write_all(&[(&out, write_pmax(&net))])
}

fn median(mut times: Vec<Duration>) -> Duration {
    times.sort();
    let k = times.len();
    if k % 2 == 1 {
        times[k / 2]
    } else {
        (times[k / 2 - 1] + times[k / 2]) / 2
    }
}

fn ratio(x: f64, y: f64) -> String {
    if y == 0.0 {
        String::new()
    } else {
        format!("{:.3}", x / y)
    }
}

fn bench(input: &Path, algs: &[String], repeat: usize) -> Result<(), Failure> {
    if repeat == 0 {
        return Err(Failure::Input("--repeat must be at least 1".into()));
    }
    let algs = algs.iter().map(|a| Alg::parse(a)).collect::<Result<Vec<_>, _>>()?;
    let net = load(input)?;
    let mut table = String::from("alg,time_ms,BP,Ad/BP,Loop/Init,Bot/BP,Dist,Vert,Contr%\n");
    for alg in algs {
        let mut times = Vec::with_capacity(repeat);
        let mut last = None;
        for _ in 0..repeat {
            let run = run_alg(&net, alg, 0.0)?;
            times.push(run.elapsed);
            last = Some(run);
        }
        let run = last.expect("at least one repetition");
        let time = median(times);
        let bp = run.beta.breakpoint_count() as f64;
        let row = match &run.stats {
            Stats::Pbfs(s) => format!(
                "{},{:.3},{},{},{},{},{:.3},,",
                alg.name(),
                ms(time),
                s.breakpoints,
                ratio(s.adoptions as f64, bp),
                ratio(ms(s.loop_time), ms(s.init_time)),
                ratio(s.bottleneck_edges as f64, bp),
                s.mean_adopted_distance(),
            ),
            Stats::Ds(s) => format!(
                "{},{:.3},{},,,,,{},{:.1}",
                alg.name(),
                ms(time),
                s.breakpoints,
                ratio(s.total_contracted_vertices as f64, net.n() as f64),
                100.0 * s.contraction_time.as_secs_f64() / run.elapsed.as_secs_f64().max(f64::MIN_POSITIVE),
            ),
        };
        writeln!(table, "{row}").expect("writing to a string");
    }
    print!("{table}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Solve { alg, input, epsilon, output, stats } => {
            solve(alg, &input, epsilon, output.as_deref(), stats.as_deref())
        }
        Command::Verify { input, breakpoints, tol } => verify(&input, &breakpoints, tol),
        Command::Generate { kind } => generate(kind),
        Command::Bench { input, algs, repeat } => bench(&input, &algs, repeat),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Input(message) | Failure::Internal(message) => eprintln!("error: {message}"),
                Failure::Rejected => {}
            }
            ExitCode::from(failure.code())
        }
    }
}
