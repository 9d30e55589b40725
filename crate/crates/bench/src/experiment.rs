//! Seeded batch experiments.
//!
//! A spec (TOML) names a dataset, an initial-set rule, an optional
//! perturbation, a budget schedule, the objective and a list of algorithms.
//! Every `(k, repeat, algorithm)` cell runs independently with seed
//! `derive_seed([spec.seed, hash_label(algorithm), k, repeat])`; cells run
//! in parallel and rows come back in spec order.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use optirefine::densest::{dskr_blackbox, greedy_dskr, sdp_dskr_with, Peel, SdpDks};
use optirefine::maxcut::{
    greedy_maxcutkr, maxcutkr_blackbox, sdp_maxcutkr_with, GreedyMaxCut, GwMaxCut,
    LocalSearchMaxCut, LocalStart,
};
use optirefine::rng::{derive_seed, hash_label, stream_rng};
use optirefine::sdp::{default_repetitions, SolverOptions};
use optirefine::{
    cut_value, density, Algorithm, Flag, Graph, Objective, PartitionMeasure, RefinementInstance,
    VertexSet,
};
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{BenchError, Result};
use crate::io::{load_communities, load_edge_list, load_vertex_set};
use crate::metrics::{jaccard, perturb_remove, relative_increase};
use crate::oracle::{brute_force_dskr, brute_force_maxcutkr};
use crate::sbm::{generate_sbm, SbmConfig, SbmPreset};

pub const CSV_HEADER: [&str; 11] = [
    "dataset",
    "algorithm",
    "objective",
    "k",
    "seed",
    "before",
    "after",
    "relative_increase",
    "jaccard",
    "wall_time_s",
    "flags",
];

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    /// Dataset label in the CSV; defaults to the preset name or the graph
    /// file stem.
    pub name: Option<String>,
    pub dataset: DatasetSpec,
    pub initial: InitialRule,
    #[serde(default)]
    pub perturbation: Perturbation,
    pub k: KSchedule,
    pub objective: ObjectiveKind,
    #[serde(default)]
    pub algorithms: Vec<String>,
    #[serde(default = "one")]
    pub repeats: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub options: RunOptions,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DatasetSpec {
    /// A named preset, regenerated for every repeat.
    Preset { preset: SbmPreset },
    /// A custom block model, regenerated for every repeat.
    Sbm {
        community_sizes: Vec<usize>,
        intra_p: Vec<f64>,
        inter_p: f64,
    },
    /// An edge list, optionally with a `vertex community` file.
    EdgeList {
        graph: PathBuf,
        communities: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialRule {
    /// A ground-truth community; presets default to their designated one.
    Community {
        index: Option<usize>,
    },
    /// A vertex-set file resolved through the edge list's ids.
    File {
        path: PathBuf,
    },
    Empty,
    /// Every vertex joins `U` independently with probability 1/2.
    RandomPartition,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Perturbation {
    #[default]
    None,
    /// Removes `k` random members of `U` before solving; the removed set
    /// becomes the Jaccard reference and the `init` algorithm.
    RemoveKRandom,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum KSchedule {
    Absolute(Vec<usize>),
    /// Percentages of the initial `|U|`, rounded to the nearest integer,
    /// at least 1.
    Percent(Vec<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveKind {
    Density,
    Cut,
}

impl ObjectiveKind {
    pub fn measure(self) -> PartitionMeasure {
        match self {
            ObjectiveKind::Density => PartitionMeasure::KDensify,
            ObjectiveKind::Cut => PartitionMeasure::MaxCutKR,
        }
    }

    pub fn objective(self) -> Objective {
        match self {
            ObjectiveKind::Density => Objective::Density,
            ObjectiveKind::Cut => Objective::Cut,
        }
    }

    pub fn as_str(self) -> &'static str {
        self.objective().as_str()
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunOptions {
    /// SDP algorithms are skipped (flagged row) above this many vertices.
    pub sdp_max_n: usize,
    /// Wall-clock budget per SDP solve; other algorithms are flagged when
    /// they exceed it.
    pub time_limit_s: Option<f64>,
    /// Hyperplane roundings per SDP run; `None` uses `max(100, ⌈n ln n⌉)`.
    pub rounding_repetitions: Option<usize>,
    pub sdp_tol: f64,
    /// Adds a `random` row averaging uniform k-subsets.
    pub random_baseline: bool,
    pub random_draws: usize,
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            sdp_max_n: 3000,
            time_limit_s: None,
            rounding_repetitions: None,
            sdp_tol: 1e-4,
            random_baseline: true,
            random_draws: 5,
            parallel: true,
        }
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRecord {
    pub dataset: String,
    pub algorithm: String,
    pub objective: ObjectiveKind,
    pub k: usize,
    pub seed: u64,
    pub before: f64,
    /// `None` when the run was skipped or failed.
    pub after: Option<f64>,
    pub jaccard: Option<f64>,
    pub wall_time: Duration,
    pub flags: Vec<String>,
    pub repeat: usize,
    pub chosen: Option<VertexSet>,
}

impl MetricsRecord {
    /// `None` if the run produced no value or `before` is not positive.
    pub fn relative_increase(&self) -> Option<f64> {
        self.after.and_then(|a| relative_increase(self.before, a))
    }

    fn csv_fields(&self) -> [String; 11] {
        let opt = |v: Option<f64>| v.map_or_else(String::new, |x| x.to_string());
        let rel = match (self.after, self.relative_increase()) {
            (None, _) => String::new(),
            (Some(_), None) => "undefined".to_owned(),
            (Some(_), Some(r)) => r.to_string(),
        };
        [
            self.dataset.clone(),
            self.algorithm.clone(),
            self.objective.as_str().to_owned(),
            self.k.to_string(),
            self.seed.to_string(),
            self.before.to_string(),
            opt(self.after),
            rel,
            opt(self.jaccard),
            format!("{:.6}", self.wall_time.as_secs_f64()),
            self.flags.join(";"),
        ]
    }
}

impl ExperimentSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = toml::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Reads a spec; relative paths inside it resolve against the file's
    /// directory.
    pub fn load(path: &Path) -> Result<Self> {
        let mut spec = Self::from_toml(&std::fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        match &mut spec.dataset {
            DatasetSpec::EdgeList { graph, communities } => {
                fix(graph);
                if let Some(c) = communities {
                    fix(c);
                }
            }
            DatasetSpec::Preset { .. } | DatasetSpec::Sbm { .. } => {}
        }
        if let InitialRule::File { path } = &mut spec.initial {
            fix(path);
        }
        if let Some(out) = &mut spec.output {
            fix(out);
        }
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(BenchError::Spec(m.to_owned()));
        match &self.k {
            KSchedule::Absolute(v) if v.is_empty() => return bad("empty k schedule"),
            KSchedule::Percent(v) if v.is_empty() => return bad("empty k schedule"),
            KSchedule::Percent(v) if v.iter().any(|p| p.is_nan() || *p <= 0.0) => {
                return bad("percentages must be positive")
            }
            _ => {}
        }
        if self.repeats == 0 {
            return bad("repeats must be at least 1");
        }
        if self.options.random_draws == 0 {
            return bad("random_draws must be at least 1");
        }
        for a in &self.algorithms {
            a.parse::<Algorithm>().map_err(BenchError::Spec)?;
        }
        if let DatasetSpec::Sbm {
            community_sizes,
            intra_p,
            inter_p,
        } = &self.dataset
        {
            SbmConfig {
                community_sizes: community_sizes.clone(),
                intra_p: intra_p.clone(),
                inter_p: *inter_p,
                seed: 0,
            }
            .validate()?;
        }
        Ok(())
    }

    pub fn dataset_name(&self) -> String {
        if let Some(name) = &self.name {
            return name.clone();
        }
        match &self.dataset {
            DatasetSpec::Preset { preset } => preset.name().to_owned(),
            DatasetSpec::Sbm { .. } => "sbm".to_owned(),
            DatasetSpec::EdgeList { graph, .. } => graph
                .file_stem()
                .map_or_else(|| "graph".to_owned(), |s| s.to_string_lossy().into_owned()),
        }
    }
}

/// Graph and initial set of one repeat.
struct Prepared {
    graph: Graph,
    initial: VertexSet,
}

fn prepare(spec: &ExperimentSpec, repeat: usize) -> Result<Prepared> {
    let data_seed = derive_seed(&[spec.seed, hash_label("dataset"), repeat as u64]);
    let (graph, communities, ids, preset) = match &spec.dataset {
        DatasetSpec::Preset { preset } => {
            let (g, c) = generate_sbm(&preset.config(data_seed))?;
            (g, c, None, Some(*preset))
        }
        DatasetSpec::Sbm {
            community_sizes,
            intra_p,
            inter_p,
        } => {
            let cfg = SbmConfig {
                community_sizes: community_sizes.clone(),
                intra_p: intra_p.clone(),
                inter_p: *inter_p,
                seed: data_seed,
            };
            let (g, c) = generate_sbm(&cfg)?;
            (g, c, None, None)
        }
        DatasetSpec::EdgeList { graph, communities } => {
            let (g, ids) = load_edge_list(graph)?;
            let c = match communities {
                Some(path) => load_communities(path, &ids)?,
                None => Vec::new(),
            };
            (g, c, Some(ids), None)
        }
    };
    let n = graph.n();
    let initial = match &spec.initial {
        InitialRule::Community { index } => {
            let i = index
                .or(preset.map(SbmPreset::initial_community))
                .ok_or_else(|| {
                    BenchError::Spec("initial community index required for this dataset".into())
                })?;
            communities.get(i).cloned().ok_or_else(|| {
                BenchError::Spec(format!(
                    "no community {i} ({} available)",
                    communities.len()
                ))
            })?
        }
        InitialRule::File { path } => {
            let ids = ids.ok_or_else(|| {
                BenchError::Spec("an initial-set file needs an edge-list dataset".into())
            })?;
            load_vertex_set(path, &ids)?
        }
        InitialRule::Empty => VertexSet::empty(n),
        InitialRule::RandomPartition => {
            let mut rng = stream_rng(
                derive_seed(&[spec.seed, hash_label("initial"), repeat as u64]),
                0,
            );
            VertexSet::from_ids(n, (0..n).filter(|_| rng.random_bool(0.5)))?
        }
    };
    Ok(Prepared { graph, initial })
}

fn budgets(schedule: &KSchedule, initial_size: usize) -> Vec<usize> {
    match schedule {
        KSchedule::Absolute(v) => v.clone(),
        KSchedule::Percent(v) => v
            .iter()
            .map(|p| ((p / 100.0 * initial_size as f64).round() as usize).max(1))
            .collect(),
    }
}

/// What one algorithm run produced.
struct Outcome {
    chosen: VertexSet,
    after: f64,
    jaccard: Option<f64>,
    flags: Vec<Flag>,
}

struct Cell<'a> {
    objective: ObjectiveKind,
    options: &'a RunOptions,
    graph: &'a Graph,
    /// `U` handed to the algorithm (after any perturbation).
    initial: &'a VertexSet,
    reference: Option<&'a VertexSet>,
    k: usize,
    seed: u64,
}

impl Cell<'_> {
    fn value(&self, c: &VertexSet) -> Result<f64> {
        let s = self.initial.sym_diff(c)?;
        Ok(match self.objective {
            ObjectiveKind::Density => density(self.graph, &s),
            ObjectiveKind::Cut => cut_value(self.graph, &s),
        })
    }

    fn solver_options(&self) -> SolverOptions {
        let o = self.options;
        SolverOptions {
            tol: o.sdp_tol,
            seed: self.seed,
            time_limit: o.time_limit_s.map(Duration::from_secs_f64),
            ..SolverOptions::default()
        }
    }

    fn repetitions(&self) -> usize {
        self.options
            .rounding_repetitions
            .unwrap_or_else(|| default_repetitions(self.graph.n()))
    }

    fn run(&self, algorithm: Algorithm) -> Result<Outcome> {
        if algorithm == Algorithm::Random {
            return self.random_baseline();
        }
        let (g, u, k) = (self.graph, self.initial.clone(), self.k);
        let inst = RefinementInstance::new(g, u, k, self.objective.measure())?;
        let unsupported = || {
            BenchError::Spec(format!(
                "{algorithm} does not apply to the {} objective",
                self.objective.as_str()
            ))
        };
        let (chosen, flags) = match (self.objective, algorithm) {
            (_, Algorithm::Init) => {
                let r = self
                    .reference
                    .ok_or_else(|| BenchError::Spec("init needs a perturbation".into()))?;
                (r.clone(), Vec::new())
            }
            (ObjectiveKind::Density, Algorithm::Greedy) => split_d(greedy_dskr(&inst)),
            (ObjectiveKind::Density, Algorithm::Sdp) => split_d(sdp_dskr_with(
                &inst,
                self.repetitions(),
                self.seed,
                &self.solver_options(),
            )?),
            (ObjectiveKind::Density, Algorithm::BlackboxPeel) => {
                split_d(dskr_blackbox(&inst, &Peel)?)
            }
            (ObjectiveKind::Density, Algorithm::BlackboxSdp) => {
                let solver = SdpDks {
                    repetitions: self.repetitions(),
                    seed: self.seed,
                    options: self.solver_options(),
                };
                split_d(dskr_blackbox(&inst, &solver)?)
            }
            (ObjectiveKind::Density, Algorithm::Exhaustive) => {
                (brute_force_dskr(&inst)?.0, Vec::new())
            }
            (ObjectiveKind::Cut, Algorithm::Greedy) => split_c(greedy_maxcutkr(&inst)),
            (ObjectiveKind::Cut, Algorithm::Sdp) => split_c(sdp_maxcutkr_with(
                &inst,
                self.repetitions(),
                self.seed,
                &self.solver_options(),
            )?),
            (ObjectiveKind::Cut, Algorithm::BlackboxGreedy) => {
                split_c(maxcutkr_blackbox(&inst, &GreedyMaxCut))
            }
            (ObjectiveKind::Cut, Algorithm::BlackboxLocalRandom) => split_c(maxcutkr_blackbox(
                &inst,
                &LocalSearchMaxCut {
                    start: LocalStart::Random(self.seed),
                },
            )),
            (ObjectiveKind::Cut, Algorithm::BlackboxLocalGreedy) => split_c(maxcutkr_blackbox(
                &inst,
                &LocalSearchMaxCut {
                    start: LocalStart::Greedy,
                },
            )),
            (ObjectiveKind::Cut, Algorithm::BlackboxSdp) => {
                let solver = GwMaxCut {
                    rounds: 20,
                    seed: self.seed,
                    tol: self.options.sdp_tol,
                    local_search: false,
                };
                split_c(maxcutkr_blackbox(&inst, &solver))
            }
            (ObjectiveKind::Cut, Algorithm::Exhaustive) => {
                (brute_force_maxcutkr(&inst)?.0, Vec::new())
            }
            _ => return Err(unsupported()),
        };
        Ok(Outcome {
            after: self.value(&chosen)?,
            jaccard: self.reference.map(|r| jaccard(&chosen, r)),
            chosen,
            flags,
        })
    }

    /// Mean over `random_draws` uniform k-subsets. The first draw is kept as
    /// the reported set.
    fn random_baseline(&self) -> Result<Outcome> {
        let (n, k) = (self.graph.n(), self.k);
        if k == 0 || k > n {
            return Err(optirefine::Error::InvalidBudget { k, n }.into());
        }
        let draws = self.options.random_draws;
        let mut total = 0.0;
        let mut jac = 0.0;
        let mut first = None;
        for d in 0..draws {
            let mut rng = stream_rng(self.seed, d as u64);
            let c = VertexSet::from_ids(n, sample(&mut rng, n, k))?;
            total += self.value(&c)?;
            if let Some(r) = self.reference {
                jac += jaccard(&c, r);
            }
            first.get_or_insert(c);
        }
        Ok(Outcome {
            chosen: first.expect("at least one draw"),
            after: total / draws as f64,
            jaccard: self.reference.map(|_| jac / draws as f64),
            flags: Vec::new(),
        })
    }
}

fn split_d(r: optirefine::DensestResult) -> (VertexSet, Vec<Flag>) {
    (r.chosen, r.flags)
}

fn split_c(r: optirefine::CutResult) -> (VertexSet, Vec<Flag>) {
    (r.chosen, r.flags)
}

/// `(Û, removed)` per `(k slot, repeat)`, or why the removal failed.
type Perturbed = HashMap<(usize, usize), std::result::Result<(VertexSet, VertexSet), String>>;

struct Task {
    k_index: usize,
    repeat: usize,
    algorithm: String,
}

/// Runs every cell of `spec` and returns the rows in spec order: budgets,
/// then repeats, then algorithms (with `random` last). Failures become
/// flagged rows. Nothing is written.
pub fn run_records(spec: &ExperimentSpec) -> Result<Vec<MetricsRecord>> {
    spec.validate()?;
    if spec.algorithms.is_empty() {
        return Ok(Vec::new());
    }
    let prepared: Vec<Prepared> = (0..spec.repeats)
        .map(|r| prepare(spec, r))
        .collect::<Result<_>>()?;
    let mut algorithms = spec.algorithms.clone();
    if spec.options.random_baseline && !algorithms.iter().any(|a| a == "random") {
        algorithms.push("random".to_owned());
    }
    let schedule: Vec<Vec<usize>> = prepared
        .iter()
        .map(|p| budgets(&spec.k, p.initial.len()))
        .collect();
    let slots = schedule[0].len();

    let mut perturbed: HashMap<
        (usize, usize),
        std::result::Result<(VertexSet, VertexSet), String>,
    > = HashMap::new();
    if spec.perturbation == Perturbation::RemoveKRandom {
        for (r, p) in prepared.iter().enumerate() {
            for (i, &k) in schedule[r].iter().enumerate() {
                let seed = derive_seed(&[spec.seed, hash_label("perturb"), k as u64, r as u64]);
                perturbed.insert(
                    (i, r),
                    perturb_remove(&p.initial, k, seed).map_err(|e| e.to_string()),
                );
            }
        }
    }

    let tasks: Vec<Task> = (0..slots)
        .flat_map(|i| (0..spec.repeats).map(move |r| (i, r)))
        .flat_map(|(i, r)| {
            algorithms.iter().map(move |a| Task {
                k_index: i,
                repeat: r,
                algorithm: a.clone(),
            })
        })
        .collect();
    let dataset = spec.dataset_name();
    let run = |t: &Task| {
        run_task(
            spec,
            &dataset,
            &prepared[t.repeat],
            schedule[t.repeat][t.k_index],
            t,
            &perturbed,
        )
    };
    Ok(if spec.options.parallel {
        tasks.par_iter().map(run).collect()
    } else {
        tasks.iter().map(run).collect()
    })
}

fn run_task(
    spec: &ExperimentSpec,
    dataset: &str,
    prepared: &Prepared,
    k: usize,
    task: &Task,
    perturbed: &Perturbed,
) -> MetricsRecord {
    let algorithm: Algorithm = task.algorithm.parse().expect("validated");
    let seed = derive_seed(&[
        spec.seed,
        hash_label(&task.algorithm),
        k as u64,
        task.repeat as u64,
    ]);
    let g = &prepared.graph;
    let mut record = MetricsRecord {
        dataset: dataset.to_owned(),
        algorithm: task.algorithm.clone(),
        objective: spec.objective,
        k,
        seed,
        before: 0.0,
        after: None,
        jaccard: None,
        wall_time: Duration::ZERO,
        flags: Vec::new(),
        repeat: task.repeat,
        chosen: None,
    };
    let (initial, reference) = match perturbed.get(&(task.k_index, task.repeat)) {
        None => (&prepared.initial, None),
        Some(Ok((rest, removed))) => (rest, Some(removed)),
        Some(Err(e)) => {
            record.before = spec.objective.objective().evaluate(g, &prepared.initial);
            record.flags.push(Flag::Failed(e.clone()).to_string());
            return record;
        }
    };
    record.before = spec.objective.objective().evaluate(g, initial);
    if algorithm.uses_sdp() && g.n() > spec.options.sdp_max_n {
        record
            .flags
            .push(Flag::Skipped(format!("n>{}", spec.options.sdp_max_n)).to_string());
        return record;
    }
    let cell = Cell {
        objective: spec.objective,
        options: &spec.options,
        graph: g,
        initial,
        reference,
        k,
        seed,
    };
    cell.record_into(&mut record, algorithm, &task.algorithm, task.repeat);
    record
}

impl Cell<'_> {
    fn record_into(
        &self,
        record: &mut MetricsRecord,
        algorithm: Algorithm,
        label: &str,
        repeat: usize,
    ) {
        let k = self.k;
        let started = Instant::now();
        let outcome = self.run(algorithm);
        record.wall_time = started.elapsed();
        match outcome {
            Ok(o) => {
                if o.chosen.len() != k {
                    record.flags.push(
                        Flag::Failed(format!("|C|={} but k={k}", o.chosen.len())).to_string(),
                    );
                } else {
                    record.after = Some(o.after);
                    record.jaccard = o.jaccard;
                    record.chosen = Some(o.chosen);
                }
                record.flags.extend(o.flags.iter().map(Flag::to_string));
            }
            Err(e) => {
                log::warn!("{label} k={k} repeat={repeat}: {e}");
                record.flags.push(Flag::Failed(e.to_string()).to_string());
            }
        }
        if let Some(limit) = self.options.time_limit_s {
            if !algorithm.uses_sdp() && record.wall_time.as_secs_f64() > limit {
                record.flags.push("over-time-limit".to_owned());
            }
        }
    }
}

/// Runs one algorithm on one instance, as the `solve` command does.
/// Failures come back as flagged records, like batch rows.
#[allow(clippy::too_many_arguments)]
pub fn solve_once(
    dataset: &str,
    graph: &Graph,
    initial: &VertexSet,
    k: usize,
    objective: ObjectiveKind,
    algorithm: Algorithm,
    seed: u64,
    options: &RunOptions,
) -> MetricsRecord {
    let mut record = MetricsRecord {
        dataset: dataset.to_owned(),
        algorithm: algorithm.as_str().to_owned(),
        objective,
        k,
        seed,
        before: objective.objective().evaluate(graph, initial),
        after: None,
        jaccard: None,
        wall_time: Duration::ZERO,
        flags: Vec::new(),
        repeat: 0,
        chosen: None,
    };
    let cell = Cell {
        objective,
        options,
        graph,
        initial,
        reference: None,
        k,
        seed,
    };
    cell.record_into(&mut record, algorithm, algorithm.as_str(), 0);
    record
}

pub fn write_csv<W: Write>(records: &[MetricsRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.csv_fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Runs the spec and writes the CSV to `spec.output` when set.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<MetricsRecord>> {
    let records = run_records(spec)?;
    if let Some(path) = &spec.output {
        write_csv(&records, std::fs::File::create(path)?)?;
    }
    Ok(records)
}

/// Mean relative increase of `algorithm` at budget `k` over the rows that
/// have one.
pub fn mean_relative_increase(records: &[MetricsRecord], algorithm: &str, k: usize) -> Option<f64> {
    let values: Vec<f64> = records
        .iter()
        .filter(|r| r.algorithm == algorithm && r.k == k)
        .filter_map(MetricsRecord::relative_increase)
        .collect();
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}
