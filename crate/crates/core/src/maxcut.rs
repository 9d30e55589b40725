//! Max-cut refinement: pick `k` vertices `C` maximizing `cut(U △ C)`, plus
//! the unconstrained max-cut baselines used as black boxes.

use std::time::Instant;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{RefinementInstance, RefinementSolver};
use crate::objective::{cut_value, Objective};
use crate::result::{Algorithm, CutResult, Flag};
use crate::rng::stream_rng;
use crate::sdp::{
    build_gpkc_sdp, gw_maxcut, rounding_driver, solve_sdp_with, GpkcSdp, PartitionMeasure,
    SolverOptions,
};
use crate::set::{Assignment, VertexSet};
use crate::state::{greedy_refine, PartitionState};

/// An unconstrained max-cut solver.
pub trait MaxCutSolver {
    fn solve_maxcut(&self, g: &Graph) -> Assignment;

    fn label(&self) -> Algorithm {
        Algorithm::Blackbox
    }
}

impl<F> MaxCutSolver for F
where
    F: Fn(&Graph) -> Assignment,
{
    fn solve_maxcut(&self, g: &Graph) -> Assignment {
        self(g)
    }
}

/// [`greedy_maxcut`] as a [`MaxCutSolver`].
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyMaxCut;

impl MaxCutSolver for GreedyMaxCut {
    fn solve_maxcut(&self, g: &Graph) -> Assignment {
        greedy_maxcut(g)
    }

    fn label(&self) -> Algorithm {
        Algorithm::BlackboxGreedy
    }
}

/// Where [`LocalSearchMaxCut`] starts.
#[derive(Clone, Copy, Debug)]
pub enum LocalStart {
    /// Uniformly random sides drawn from the seed.
    Random(u64),
    /// The output of [`greedy_maxcut`].
    Greedy,
}

#[derive(Clone, Copy, Debug)]
pub struct LocalSearchMaxCut {
    pub start: LocalStart,
}

impl MaxCutSolver for LocalSearchMaxCut {
    fn solve_maxcut(&self, g: &Graph) -> Assignment {
        let init = match self.start {
            LocalStart::Random(seed) => random_assignment(g.n(), seed),
            LocalStart::Greedy => greedy_maxcut(g),
        };
        local_search_maxcut(g, &init)
    }

    fn label(&self) -> Algorithm {
        match self.start {
            LocalStart::Random(_) => Algorithm::BlackboxLocalRandom,
            LocalStart::Greedy => Algorithm::BlackboxLocalGreedy,
        }
    }
}

/// Goemans–Williamson: the unconstrained relaxation followed by the best of
/// `rounds` hyperplane roundings, each optionally polished by
/// [`local_search_maxcut`].
#[derive(Clone, Debug)]
pub struct GwMaxCut {
    pub rounds: usize,
    pub seed: u64,
    pub tol: f64,
    pub local_search: bool,
}

impl Default for GwMaxCut {
    fn default() -> Self {
        GwMaxCut {
            rounds: 20,
            seed: 0,
            tol: 1e-4,
            local_search: false,
        }
    }
}

impl MaxCutSolver for GwMaxCut {
    fn solve_maxcut(&self, g: &Graph) -> Assignment {
        let p = GpkcSdp::unconstrained(g, PartitionMeasure::MaxCutKR);
        let sol = gw_maxcut(g, self.tol);
        let (best, _) = rounding_driver(
            &p,
            &sol,
            self.rounds.max(1),
            self.seed,
            |o| {
                if self.local_search {
                    local_search_maxcut(g, &o.assignment).to_set()
                } else {
                    o.assignment.to_set()
                }
            },
            |s| cut_value(g, s),
        );
        Assignment::from_set(&best)
    }

    fn label(&self) -> Algorithm {
        Algorithm::BlackboxSdp
    }
}

pub fn random_assignment(n: usize, seed: u64) -> Assignment {
    use rand::Rng;
    let mut rng = stream_rng(seed, 0);
    Assignment::from_values(
        (0..n)
            .map(|_| if rng.random_bool(0.5) { 1 } else { -1 })
            .collect(),
    )
    .expect("entries are ±1")
}

fn make_result(
    g: &Graph,
    initial: &VertexSet,
    chosen: VertexSet,
    algorithm: Algorithm,
    started: Instant,
    flags: Vec<Flag>,
) -> CutResult {
    let final_set = initial.sym_diff(&chosen).expect("same universe");
    CutResult {
        cut_before: cut_value(g, initial),
        cut_after: cut_value(g, &final_set),
        chosen,
        final_set,
        algorithm,
        wall_time: started.elapsed(),
        flags,
    }
}

/// One step of [`greedy_fix_cut_traced`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixStep {
    pub vertex: usize,
    pub removal: bool,
    pub size_before: usize,
    pub cut_before: f64,
    pub cut_after: f64,
}

/// Greedy repair of `C₀` to exactly `k` vertices: while `|C| < k` add the
/// vertex maximizing `cut(U △ (C ∪ {u}))`, while `|C| > k` remove the one
/// maximizing `cut(U △ (C ∖ {u}))`. Ties go to the smallest id.
pub fn greedy_fix_cut(g: &Graph, initial: &VertexSet, k: usize, start: &VertexSet) -> VertexSet {
    greedy_fix_cut_traced(g, initial, k, start).0
}

pub fn greedy_fix_cut_traced(
    g: &Graph,
    initial: &VertexSet,
    k: usize,
    start: &VertexSet,
) -> (VertexSet, Vec<FixStep>) {
    let n = g.n();
    assert!(k <= n);
    let mut chosen = start.clone();
    let mut state = PartitionState::new(g, initial.sym_diff(start).expect("same universe"));
    let mut trace = Vec::new();
    while chosen.len() != k {
        let removal = chosen.len() > k;
        let mut best: Option<(usize, f64)> = None;
        for u in (0..n).filter(|&u| chosen.contains(u) == removal) {
            let value = state.value_if_toggled(u, Objective::Cut);
            if best.is_none_or(|(_, b)| value > b) {
                best = Some((u, value));
            }
        }
        let (u, _) = best.expect("a candidate exists while |C| != k");
        let step = FixStep {
            vertex: u,
            removal,
            size_before: chosen.len(),
            cut_before: state.cut(),
            cut_after: 0.0,
        };
        chosen.toggle(u);
        state.toggle(u);
        trace.push(FixStep {
            cut_after: state.cut(),
            ..step
        });
    }
    state.debug_validate();
    (chosen, trace)
}

/// Refinement through an unconstrained max-cut solver.
///
/// The solver's cut side `T` gives `C₀ = T △ U` or `T △ Ū`, whichever is
/// smaller, which [`greedy_fix_cut`] brings to size `k`. Budgets above
/// `n/2` are solved as `n − k` and complemented; the cut is unchanged
/// because `cut(U △ C) = cut(U △ (V ∖ C))`.
pub fn maxcutkr_blackbox<S: MaxCutSolver + ?Sized>(
    inst: &RefinementInstance<'_>,
    solver: &S,
) -> CutResult {
    let started = Instant::now();
    let (g, u, k) = (inst.graph(), inst.initial_set(), inst.k());
    let n = g.n();
    let complemented = 2 * k > n;
    let budget = if complemented { n - k } else { k };
    let t = solver.solve_maxcut(g).to_set();
    let a = t.sym_diff(u).expect("same universe");
    let b = a.complement();
    let start = if b.len() < a.len() { b } else { a };
    let mut chosen = greedy_fix_cut(g, u, budget, &start);
    if complemented {
        chosen = chosen.complement();
    }
    make_result(g, u, chosen, solver.label(), started, Vec::new())
}

/// Constrained SDP, hyperplane rounding and [`greedy_fix_cut`], keeping the
/// best of `repetitions` repaired roundings.
pub fn sdp_maxcutkr(
    inst: &RefinementInstance<'_>,
    repetitions: usize,
    seed: u64,
) -> Result<CutResult> {
    sdp_maxcutkr_with(inst, repetitions, seed, &SolverOptions::default())
}

pub fn sdp_maxcutkr_with(
    inst: &RefinementInstance<'_>,
    repetitions: usize,
    seed: u64,
    options: &SolverOptions,
) -> Result<CutResult> {
    if inst.measure() != PartitionMeasure::MaxCutKR {
        return Err(Error::Precondition(
            "sdp_maxcutkr needs the MaxCutKR measure".into(),
        ));
    }
    let started = Instant::now();
    let (g, u, k) = (inst.graph(), inst.initial_set(), inst.k());
    let p = build_gpkc_sdp(inst);
    let sol = solve_sdp_with(&p, options);
    let flags = if sol.converged {
        Vec::new()
    } else {
        vec![Flag::Unconverged]
    };
    let (chosen, _) = rounding_driver(
        &p,
        &sol,
        repetitions,
        seed,
        |o| greedy_fix_cut(g, u, k, &o.changed),
        |c| cut_value(g, &u.sym_diff(c).expect("same universe")),
    );
    Ok(make_result(g, u, chosen, Algorithm::Sdp, started, flags))
}

/// Greedy heuristic with the cut objective.
pub fn greedy_maxcutkr(inst: &RefinementInstance<'_>) -> CutResult {
    let started = Instant::now();
    let chosen = greedy_refine(inst.graph(), inst.initial_set(), inst.k(), Objective::Cut);
    make_result(
        inst.graph(),
        inst.initial_set(),
        chosen,
        Algorithm::Greedy,
        started,
        Vec::new(),
    )
}

/// Places vertices in id order, each on the side that cuts more weight to
/// the vertices already placed (`+1` on ties).
pub fn greedy_maxcut(g: &Graph) -> Assignment {
    let n = g.n();
    let mut side = vec![0i8; n];
    for v in 0..n {
        let (mut plus, mut minus) = (0.0, 0.0);
        for (u, w) in g.neighbors(v) {
            match side[u] {
                1 => plus += w,
                -1 => minus += w,
                _ => {}
            }
        }
        side[v] = if minus >= plus { 1 } else { -1 };
    }
    Assignment::from_values(side).expect("every vertex placed")
}

/// Order in which [`local_search_maxcut_ordered`] visits vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepOrder {
    ById,
    /// A fixed random permutation drawn from the seed.
    Shuffled(u64),
}

/// Change in cut weight if `v` switches sides.
fn flip_gain(g: &Graph, x: &Assignment, v: usize) -> f64 {
    let side = x.get(v);
    g.neighbors(v)
        .map(|(u, w)| if x.get(u) == side { w } else { -w })
        .sum()
}

/// 1-flip local search: sweep the vertices in id order, flipping any whose
/// move strictly increases the cut, until a full sweep changes nothing.
pub fn local_search_maxcut(g: &Graph, init: &Assignment) -> Assignment {
    local_search_maxcut_ordered(g, init, SweepOrder::ById)
}

pub fn local_search_maxcut_ordered(g: &Graph, init: &Assignment, order: SweepOrder) -> Assignment {
    let n = g.n();
    assert_eq!(init.len(), n);
    let mut x = init.clone();
    let mut visit: Vec<usize> = (0..n).collect();
    if let SweepOrder::Shuffled(seed) = order {
        visit.shuffle(&mut stream_rng(seed, 0));
    }
    loop {
        let mut changed = false;
        for &v in &visit {
            // Guard against flipping on rounding noise with fractional weights.
            if flip_gain(g, &x, v) > 1e-12 * (1.0 + g.weighted_degree(v)) {
                x.flip(v);
                changed = true;
            }
        }
        if !changed {
            return x;
        }
    }
}

/// MaxCut with `|S| = k` via a refinement solver run with `U = ∅`.
pub fn maxcutcc_via_maxcutkr<S: RefinementSolver + ?Sized>(
    g: &Graph,
    k: usize,
    solver: &S,
) -> Result<VertexSet> {
    let inst = RefinementInstance::new(g, VertexSet::empty(g.n()), k, PartitionMeasure::MaxCutKR)?;
    solver.solve(&inst)
}
