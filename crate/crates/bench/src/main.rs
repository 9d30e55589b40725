use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use optirefine::sdp::{build_gpkc_sdp, solve_sdp_with, SolverOptions};
use optirefine::{Algorithm, RefinementInstance, VertexSet};
use optirefine_bench::experiment::{
    run_experiment, solve_once, write_csv, ExperimentSpec, ObjectiveKind, RunOptions,
};
use optirefine_bench::io::{
    load_edge_list, load_vertex_set, write_communities, write_edge_list, IdMap,
};
use optirefine_bench::ratio::{
    approx_ratio_curve, parse_tau_grid, pinned_ratio, RatioGrid, RatioProblem,
};
use optirefine_bench::sbm::{generate_sbm, SbmPreset};
use optirefine_bench::{BenchError, Result};

#[derive(Parser)]
#[command(
    name = "optirefine",
    version,
    about = "Refine a vertex set by flipping exactly k vertices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one instance and print a JSON record.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        /// Initial set U, one vertex id per line. Empty when omitted.
        #[arg(long)]
        initial: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        /// greedy, sdp, blackbox-peel, blackbox-sdp, blackbox-greedy,
        /// blackbox-local-random, blackbox-local-greedy, exhaustive, random.
        #[arg(long)]
        algo: Algorithm,
        #[arg(long, value_enum)]
        objective: ObjectiveKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Hyperplane roundings for SDP algorithms (default max(100, ⌈n ln n⌉)).
        #[arg(long)]
        repeats: Option<usize>,
        /// Wall-clock budget in seconds for the SDP solve.
        #[arg(long)]
        time_limit: Option<f64>,
        /// JSON output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also solve the relaxation with the same seed and write its vectors.
        #[arg(long)]
        dump_sdp: Option<PathBuf>,
    },
    /// Run an experiment spec (TOML) and write its CSV.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        /// Overrides the spec's output path; stdout when neither is set.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a preset block-model graph.
    Sbm {
        #[arg(long, value_enum)]
        preset: SbmPreset,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_communities: Option<PathBuf>,
    },
    /// Worst-case approximation ratio over a grid of τ = |U|/n values.
    RatioCurve {
        #[arg(long, value_enum)]
        problem: RatioProblem,
        /// `a,b,c` or `start:stop:step`.
        #[arg(long, default_value = "0.05:0.95:0.05")]
        tau_grid: String,
        /// With --eta, evaluates at fixed (γ, η) instead of maximizing.
        #[arg(long, requires = "eta")]
        gamma: Option<f64>,
        #[arg(long, requires = "gamma")]
        eta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn names(set: &VertexSet, ids: &IdMap) -> Vec<String> {
    set.iter().map(|v| ids.name(v).to_owned()).collect()
}

#[allow(clippy::too_many_arguments)]
fn solve(
    graph: &Path,
    initial: Option<&Path>,
    k: usize,
    algo: Algorithm,
    objective: ObjectiveKind,
    seed: u64,
    repeats: Option<usize>,
    time_limit: Option<f64>,
    out: Option<&Path>,
    dump_sdp: Option<&Path>,
) -> Result<bool> {
    let (g, ids) = load_edge_list(graph)?;
    let u = match initial {
        Some(p) => load_vertex_set(p, &ids)?,
        None => VertexSet::empty(g.n()),
    };
    let options = RunOptions {
        time_limit_s: time_limit,
        rounding_repetitions: repeats,
        ..RunOptions::default()
    };
    let dataset = graph
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let record = solve_once(&dataset, &g, &u, k, objective, algo, seed, &options);

    if let Some(path) = dump_sdp {
        let inst = RefinementInstance::new(&g, u.clone(), k, objective.measure())?;
        let opts = SolverOptions {
            tol: options.sdp_tol,
            seed,
            time_limit: time_limit.map(std::time::Duration::from_secs_f64),
            ..SolverOptions::default()
        };
        let solution = solve_sdp_with(&build_gpkc_sdp(&inst), &opts);
        solution.write_text(BufWriter::new(File::create(path)?))?;
    }

    let final_set = match &record.chosen {
        Some(c) => Some(names(&u.sym_diff(c)?, &ids)),
        None => None,
    };
    let json = serde_json::json!({
        "dataset": record.dataset,
        "algorithm": record.algorithm,
        "objective": objective.as_str(),
        "k": k,
        "seed": seed,
        "before": record.before,
        "after": record.after,
        "relative_increase": record.relative_increase(),
        "wall_time_s": record.wall_time.as_secs_f64(),
        "flags": record.flags,
        "chosen": record.chosen.as_ref().map(|c| names(c, &ids)),
        "final_set": final_set,
    });
    let mut w = output(out)?;
    serde_json::to_writer_pretty(&mut w, &json).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(record.after.is_some())
}

fn bench(spec: &Path, out: Option<&Path>) -> Result<()> {
    let mut spec = ExperimentSpec::load(spec)?;
    if let Some(out) = out {
        spec.output = Some(out.to_owned());
    }
    let records = run_experiment(&spec)?;
    if spec.output.is_none() {
        write_csv(&records, io::stdout().lock())?;
    }
    let failed = records.iter().filter(|r| r.after.is_none()).count();
    if failed > 0 {
        log::warn!("{failed} of {} rows produced no value", records.len());
    }
    Ok(())
}

fn sbm(
    preset: SbmPreset,
    seed: u64,
    out_graph: &Path,
    out_communities: Option<&Path>,
) -> Result<()> {
    let (g, communities) = generate_sbm(&preset.config(seed))?;
    let ids = IdMap::identity(g.n());
    write_edge_list(&g, &ids, File::create(out_graph)?)?;
    if let Some(path) = out_communities {
        write_communities(&communities, &ids, File::create(path)?)?;
    }
    log::info!("{}: n = {}, m = {}", preset.name(), g.n(), g.m());
    Ok(())
}

fn ratio_curve(
    problem: RatioProblem,
    tau_grid: &str,
    pinned: Option<(f64, f64)>,
    out: Option<&Path>,
) -> Result<()> {
    let taus = parse_tau_grid(tau_grid).map_err(BenchError::Config)?;
    let mut w = csv::Writer::from_writer(output(out)?);
    w.write_record(["tau", "ratio", "gamma", "eta"])?;
    match pinned {
        Some((gamma, eta)) => {
            for tau in taus {
                let ratio = pinned_ratio(problem, tau, gamma, eta);
                w.write_record([tau, ratio, gamma, eta].map(|x| x.to_string()))?;
            }
        }
        None => {
            for p in approx_ratio_curve(problem, &taus, &RatioGrid::default()) {
                w.write_record([p.tau, p.ratio, p.gamma, p.eta].map(|x| x.to_string()))?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            graph,
            initial,
            k,
            algo,
            objective,
            seed,
            repeats,
            time_limit,
            out,
            dump_sdp,
        } => solve(
            &graph,
            initial.as_deref(),
            k,
            algo,
            objective,
            seed,
            repeats,
            time_limit,
            out.as_deref(),
            dump_sdp.as_deref(),
        )
        .map(|ok| {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }),
        Command::Bench { spec, out } => bench(&spec, out.as_deref()).map(|()| ExitCode::SUCCESS),
        Command::Sbm {
            preset,
            seed,
            out_graph,
            out_communities,
        } => sbm(preset, seed, &out_graph, out_communities.as_deref()).map(|()| ExitCode::SUCCESS),
        Command::RatioCurve {
            problem,
            tau_grid,
            gamma,
            eta,
            out,
        } => ratio_curve(problem, &tau_grid, gamma.zip(eta), out.as_deref())
            .map(|()| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })
}
