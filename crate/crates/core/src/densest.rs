//! Densest-subgraph refinement: pick `k` vertices `C` maximizing `d(U △ C)`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::instance::{RefinementInstance, RefinementSolver};
use crate::objective::{density, weighted_degree_in, Objective};
use crate::result::{Algorithm, DensestResult, Flag};
use crate::sdp::{
    build_gpkc_sdp, rounding_driver, solve_sdp_with, PartitionMeasure, RoundingOutcome,
    SolverOptions,
};
use crate::set::VertexSet;
use crate::state::{greedy_refine, PartitionState};

/// A densest-k-subgraph solver: returns exactly `k` vertices.
pub trait DksSolver {
    fn solve_dks(&self, g: &Graph, k: usize) -> Result<VertexSet>;

    fn label(&self) -> Algorithm {
        Algorithm::Blackbox
    }
}

impl<F> DksSolver for F
where
    F: Fn(&Graph, usize) -> Result<VertexSet>,
{
    fn solve_dks(&self, g: &Graph, k: usize) -> Result<VertexSet> {
        self(g, k)
    }
}

/// [`peel_dks`] as a [`DksSolver`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Peel;

impl DksSolver for Peel {
    fn solve_dks(&self, g: &Graph, k: usize) -> Result<VertexSet> {
        if k == 0 || k > g.n() {
            return Err(Error::InvalidBudget { k, n: g.n() });
        }
        Ok(peel_dks(g, k))
    }

    fn label(&self) -> Algorithm {
        Algorithm::BlackboxPeel
    }
}

/// DkS through [`sdp_dskr`] with an empty initial set.
#[derive(Clone, Debug)]
pub struct SdpDks {
    pub repetitions: usize,
    pub seed: u64,
    pub options: SolverOptions,
}

impl DksSolver for SdpDks {
    fn solve_dks(&self, g: &Graph, k: usize) -> Result<VertexSet> {
        dks_via_dskr(g, k, &|inst: &RefinementInstance<'_>| {
            sdp_dskr_with(inst, self.repetitions, self.seed, &self.options).map(|r| r.chosen)
        })
    }

    fn label(&self) -> Algorithm {
        Algorithm::BlackboxSdp
    }
}

fn make_result(
    g: &Graph,
    initial: &VertexSet,
    chosen: VertexSet,
    algorithm: Algorithm,
    started: Instant,
    flags: Vec<Flag>,
) -> DensestResult {
    let final_set = initial.sym_diff(&chosen).expect("same universe");
    DensestResult {
        density_before: density(g, initial),
        density_after: density(g, &final_set),
        chosen,
        final_set,
        algorithm,
        wall_time: started.elapsed(),
        flags,
    }
}

/// Greedy heuristic: `k` rounds, each adding the vertex that maximizes the
/// density of `U △ (C ∪ {u})`.
pub fn greedy_dskr(inst: &RefinementInstance<'_>) -> DensestResult {
    let started = Instant::now();
    let chosen = greedy_refine(
        inst.graph(),
        inst.initial_set(),
        inst.k(),
        Objective::Density,
    );
    make_result(
        inst.graph(),
        inst.initial_set(),
        chosen,
        Algorithm::Greedy,
        started,
        Vec::new(),
    )
}

#[derive(Clone, Copy, PartialEq)]
struct Key(f64, usize);

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Greedy peeling: repeatedly delete a vertex of minimum weighted degree in
/// the remaining graph (smallest id on ties) until `k` remain.
///
/// Runs in O((n + m) log n) with a lazy-deletion heap.
pub fn peel_dks(g: &Graph, k: usize) -> VertexSet {
    let n = g.n();
    assert!(k >= 1 && k <= n, "peel_dks needs 1 <= k <= n");
    let mut degree: Vec<f64> = (0..n).map(|v| g.weighted_degree(v)).collect();
    let mut alive = VertexSet::full(n);
    let mut heap: BinaryHeap<Reverse<Key>> = (0..n).map(|v| Reverse(Key(degree[v], v))).collect();
    while alive.len() > k {
        let Reverse(Key(d, v)) = heap.pop().expect("heap holds every live vertex");
        if !alive.contains(v) || d.to_bits() != degree[v].to_bits() {
            continue;
        }
        alive.remove(v);
        for (u, w) in g.neighbors(v) {
            if alive.contains(u) {
                degree[u] -= w;
                heap.push(Reverse(Key(degree[u], u)));
            }
        }
    }
    alive
}

/// k-Densify through a DkS solver.
///
/// Contracts `U` into a supernode `i*` (edge weights into `i*` summed),
/// asks the solver for `k + 1` vertices `U′` of the contracted graph, and
/// returns `U′ ∖ {i*}` if the supernode was chosen. Otherwise it drops the
/// vertex of `U′` with the smallest weighted degree in `G[U ∪ U′]`.
pub fn kdensify_via_dks<S: DksSolver + ?Sized>(
    g: &Graph,
    initial: &VertexSet,
    k: usize,
    solver: &S,
) -> Result<VertexSet> {
    let n = g.n();
    if initial.universe_size() != n {
        return Err(Error::UniverseMismatch {
            left: n,
            right: initial.universe_size(),
        });
    }
    if initial.is_empty() {
        return Err(Error::Precondition(
            "the initial set must be non-empty".into(),
        ));
    }
    if k > n - initial.len() {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds n - |U| = {}",
            n - initial.len()
        )));
    }
    if k == 0 {
        return Ok(VertexSet::empty(n));
    }

    let outside: Vec<usize> = initial.complement().to_vec();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in outside.iter().enumerate() {
        index[v] = i;
    }
    let star = outside.len();
    let mut builder = GraphBuilder::with_capacity(star + 1, g.m());
    for e in g.edges() {
        match (initial.contains(e.u), initial.contains(e.v)) {
            (false, false) => builder.add_edge(index[e.u], index[e.v], e.w)?,
            (true, false) => builder.add_edge(index[e.v], star, e.w)?,
            (false, true) => builder.add_edge(index[e.u], star, e.w)?,
            (true, true) => {}
        }
    }
    let contracted = builder.build();

    let picked = solver.solve_dks(&contracted, k + 1)?;
    if picked.universe_size() != star + 1 || picked.len() != k + 1 {
        return Err(Error::Precondition(format!(
            "DkS solver returned {} vertices, expected {}",
            picked.len(),
            k + 1
        )));
    }
    let mut chosen =
        VertexSet::from_ids(n, picked.iter().filter(|&i| i != star).map(|i| outside[i]))?;
    if picked.contains(star) {
        return Ok(chosen);
    }
    let span = initial.union(&chosen)?;
    let mut drop: Option<(usize, f64)> = None;
    for v in chosen.iter() {
        let d = weighted_degree_in(g, v, &span)?;
        if drop.is_none_or(|(_, best)| d < best) {
            drop = Some((v, d));
        }
    }
    chosen.remove(drop.expect("k + 1 >= 1 candidates").0);
    Ok(chosen)
}

/// DS-kR through [`kdensify_via_dks`]. Budgets above `|U|` are outside the
/// approximation guarantee; they are run anyway, logged and flagged.
pub fn dskr_blackbox<S: DksSolver + ?Sized>(
    inst: &RefinementInstance<'_>,
    solver: &S,
) -> Result<DensestResult> {
    let started = Instant::now();
    let (g, u, k) = (inst.graph(), inst.initial_set(), inst.k());
    // With U = ∅ the problem is DkS itself.
    let chosen = if u.is_empty() {
        solver.solve_dks(g, k)?
    } else {
        kdensify_via_dks(g, u, k, solver)?
    };
    let mut flags = Vec::new();
    if k > u.len() && !u.is_empty() {
        log::warn!(
            "k = {k} exceeds |U| = {}; implied c = {:.3}",
            u.len(),
            k as f64 / u.len() as f64
        );
        flags.push(Flag::OutOfRegime);
    }
    Ok(make_result(g, u, chosen, solver.label(), started, flags))
}

/// Repairs a rounded solution to exactly `k` changed vertices.
///
/// With `T = {i : x̄ᵢ = 1}`: if `|C| < k`, vertices outside `C ∪ T` with
/// the largest weighted degree into `T` are added one at a time. If
/// `|C| > k`, members of `C ∖ T` are removed first (largest degree into `T`
/// first), then vertices of minimum weighted degree in `G[C ∩ T]`.
pub fn fix_c_dense(
    g: &Graph,
    initial: &VertexSet,
    k: usize,
    outcome: &RoundingOutcome,
) -> VertexSet {
    let n = g.n();
    assert!(k <= n);
    let mut chosen = outcome.changed.clone();
    let mut t = PartitionState::new(g, outcome.positive_side());

    let pick = |t: &PartitionState<'_>, eligible: &dyn Fn(usize) -> bool, largest: bool| {
        let mut best: Option<(usize, f64)> = None;
        for v in (0..n).filter(|&v| eligible(v)) {
            let d = t.deg_into(v);
            let better = match best {
                None => true,
                Some((_, b)) if largest => d > b,
                Some((_, b)) => d < b,
            };
            if better {
                best = Some((v, d));
            }
        }
        best.map(|(v, _)| v)
    };

    while chosen.len() < k {
        let v = pick(&t, &|v| !chosen.contains(v) && !t.contains(v), true)
            // Only reachable outside the k <= n - |U| regime: un-keep the
            // members of U that contribute least.
            .or_else(|| pick(&t, &|v| !chosen.contains(v) && initial.contains(v), false))
            .expect("k <= n leaves a vertex to add");
        chosen.insert(v);
        t.toggle(v);
    }

    while chosen.len() > k {
        match pick(&t, &|v| chosen.contains(v) && !t.contains(v), true) {
            Some(v) => {
                chosen.remove(v);
                t.toggle(v);
            }
            None => break,
        }
    }
    if chosen.len() > k {
        let core = chosen.intersection(t.set()).expect("same universe");
        let mut inner = PartitionState::new(g, core);
        while chosen.len() > k {
            let v = pick(&inner, &|v| inner.contains(v), false).expect("C ∩ T is non-empty");
            inner.toggle(v);
            chosen.remove(v);
        }
    }
    chosen
}

/// SDP relaxation, hyperplane rounding and [`fix_c_dense`], keeping the
/// densest of `repetitions` repaired roundings.
pub fn sdp_dskr(
    inst: &RefinementInstance<'_>,
    repetitions: usize,
    seed: u64,
) -> Result<DensestResult> {
    sdp_dskr_with(inst, repetitions, seed, &SolverOptions::default())
}

pub fn sdp_dskr_with(
    inst: &RefinementInstance<'_>,
    repetitions: usize,
    seed: u64,
    options: &SolverOptions,
) -> Result<DensestResult> {
    if inst.measure() != PartitionMeasure::KDensify {
        return Err(Error::Precondition(
            "sdp_dskr needs the KDensify measure".into(),
        ));
    }
    let started = Instant::now();
    let (g, u, k) = (inst.graph(), inst.initial_set(), inst.k());
    let p = build_gpkc_sdp(inst);
    let sol = solve_sdp_with(&p, options);
    let mut flags = Vec::new();
    if !sol.converged {
        flags.push(Flag::Unconverged);
    }
    if k > u.len() || k > g.n() - u.len() {
        flags.push(Flag::OutOfRegime);
    }
    let (chosen, _) = rounding_driver(
        &p,
        &sol,
        repetitions,
        seed,
        |o| fix_c_dense(g, u, k, o),
        |c| density(g, &u.sym_diff(c).expect("same universe")),
    );
    Ok(make_result(g, u, chosen, Algorithm::Sdp, started, flags))
}

/// DkS via a DS-kR solver run with `U = ∅`.
pub fn dks_via_dskr<S: RefinementSolver + ?Sized>(
    g: &Graph,
    k: usize,
    solver: &S,
) -> Result<VertexSet> {
    let inst = RefinementInstance::new(g, VertexSet::empty(g.n()), k, PartitionMeasure::KDensify)?;
    solver.solve(&inst)
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub best: DensestResult,
    /// `(k, density_after)` for every `k` in the sweep.
    pub curve: Vec<(usize, f64)>,
}

/// Runs `solver` for every budget `1..=k_max` and keeps the densest result
/// (smallest `k` on ties).
pub fn sweep_k<F>(inst: &RefinementInstance<'_>, k_max: usize, solver: F) -> Result<SweepResult>
where
    F: Fn(&RefinementInstance<'_>) -> Result<DensestResult> + Sync,
{
    if k_max == 0 || k_max > inst.n() {
        return Err(Error::InvalidBudget {
            k: k_max,
            n: inst.n(),
        });
    }
    let results: Vec<DensestResult> = (1..=k_max)
        .into_par_iter()
        .map(|k| solver(&inst.with_k(k)?))
        .collect::<Result<_>>()?;
    let curve = results
        .iter()
        .map(|r| (r.chosen.len(), r.density_after))
        .collect();
    let best = results
        .into_iter()
        .reduce(|a, b| {
            if b.density_after > a.density_after {
                b
            } else {
                a
            }
        })
        .expect("k_max >= 1");
    Ok(SweepResult { best, curve })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::induced_weight;
    use crate::sdp::GpkcSdp;
    use crate::set::Assignment;

    fn set(n: usize, ids: &[usize]) -> VertexSet {
        VertexSet::from_ids(n, ids.iter().copied()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_unweighted(n, (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn greedy_star_adds_leaf() {
        let g = Graph::from_unweighted(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let inst =
            RefinementInstance::new(&g, set(5, &[0]), 1, PartitionMeasure::KDensify).unwrap();
        let r = greedy_dskr(&inst);
        assert_eq!(r.chosen.to_vec(), vec![1]);
        assert_eq!(r.density_after, 0.5);
    }

    #[test]
    fn greedy_full_budget_complements() {
        let g = complete(5);
        let u = set(5, &[1, 3]);
        let inst = RefinementInstance::new(&g, u.clone(), 5, PartitionMeasure::KDensify).unwrap();
        let r = greedy_dskr(&inst);
        assert_eq!(r.chosen, VertexSet::full(5));
        assert_eq!(r.final_set, u.complement());
    }

    #[test]
    fn peel_k5() {
        let g = complete(5);
        let s = peel_dks(&g, 3);
        assert_eq!(s.to_vec(), vec![2, 3, 4]);
        assert_eq!(induced_weight(&g, &s), 3.0);
    }

    #[test]
    fn peel_lollipop_keeps_clique() {
        // K4 on 0..4 plus the pendant path 3-4-5-6.
        let g = Graph::from_unweighted(
            7,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
            ],
        )
        .unwrap();
        assert_eq!(peel_dks(&g, 4).to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn kdensify_forced_and_apex_cases() {
        let g = complete(4);
        let c = kdensify_via_dks(&g, &set(4, &[2]), 3, &Peel).unwrap();
        assert_eq!(c.to_vec(), vec![0, 1, 3]);

        // Triangles {0,1,2} and {3,4,5}; edge 0-4 makes 4 the apex.
        let g = Graph::from_unweighted(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 4)])
            .unwrap();
        let c = kdensify_via_dks(&g, &set(6, &[0, 1, 2]), 1, &Peel).unwrap();
        assert_eq!(c.to_vec(), vec![4]);
    }

    #[test]
    fn kdensify_preconditions() {
        let g = complete(4);
        assert!(kdensify_via_dks(&g, &VertexSet::empty(4), 1, &Peel).is_err());
        assert!(kdensify_via_dks(&g, &set(4, &[0, 1]), 3, &Peel).is_err());
    }

    #[test]
    fn blackbox_flags_large_budgets() {
        let g = complete(6);
        let inst =
            RefinementInstance::new(&g, set(6, &[0]), 2, PartitionMeasure::KDensify).unwrap();
        let r = dskr_blackbox(&inst, &Peel).unwrap();
        assert_eq!(r.flags, vec![Flag::OutOfRegime]);
        assert_eq!(r.algorithm, Algorithm::BlackboxPeel);
        let empty = RefinementInstance::new(&g, VertexSet::empty(6), 2, PartitionMeasure::KDensify)
            .unwrap();
        let r = dskr_blackbox(&empty, &Peel).unwrap();
        assert_eq!((r.chosen, r.flags), (peel_dks(&g, 2), vec![]));
    }

    fn outcome(n: usize, x0: &VertexSet, positive: &[usize]) -> RoundingOutcome {
        let assignment = Assignment::from_set(&set(n, positive));
        let changed = assignment.disagreement(&Assignment::from_set(x0)).unwrap();
        RoundingOutcome {
            assignment,
            changed,
            objective_before_fix: 0.0,
        }
    }

    #[test]
    fn fix_dense_identity_and_forced_removal() {
        let g = complete(6);
        let u = set(6, &[0, 1, 2]);
        // x̄ keeps 0, 1 and adds 3, 4: C = {2, 3, 4}.
        let o = outcome(6, &u, &[0, 1, 3, 4]);
        assert_eq!(fix_c_dense(&g, &u, 3, &o), o.changed);
        // k = 2: the single member of C ∖ T (vertex 2) goes back into T.
        let fixed = fix_c_dense(&g, &u, 2, &o);
        assert_eq!(fixed.to_vec(), vec![3, 4]);
    }

    #[test]
    fn fix_dense_grows_by_degree_into_t() {
        // 5 touches T = {0, 1} twice, 4 once, 3 never.
        let g = Graph::from_unweighted(6, [(0, 1), (0, 5), (1, 5), (1, 4)]).unwrap();
        let u = set(6, &[0, 1]);
        let o = outcome(6, &u, &[0, 1]);
        assert_eq!(fix_c_dense(&g, &u, 1, &o).to_vec(), vec![5]);
        assert_eq!(fix_c_dense(&g, &u, 2, &o).to_vec(), vec![4, 5]);
    }

    #[test]
    fn fix_dense_peels_within_c_and_t() {
        // U = ∅, x̄ adds {0, 1, 2, 3}; 3 is only weakly attached.
        let g = Graph::from_unweighted(5, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let u = VertexSet::empty(5);
        let o = outcome(5, &u, &[0, 1, 2, 3]);
        assert_eq!(fix_c_dense(&g, &u, 3, &o).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn sdp_full_budget_complements() {
        let g = complete(5);
        let u = set(5, &[0, 4]);
        let inst = RefinementInstance::new(&g, u.clone(), 5, PartitionMeasure::KDensify).unwrap();
        let r = sdp_dskr(&inst, 20, 1).unwrap();
        assert_eq!(r.final_set, u.complement());
        assert!(r.flags.contains(&Flag::OutOfRegime));
    }

    #[test]
    fn sdp_requires_densify_measure() {
        let g = complete(4);
        let inst =
            RefinementInstance::new(&g, set(4, &[0]), 1, PartitionMeasure::MaxCutKR).unwrap();
        assert!(sdp_dskr(&inst, 10, 0).is_err());
    }

    #[test]
    fn reverse_reduction_matches_direct_peel() {
        let g =
            Graph::from_unweighted(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        let via = dks_via_dskr(&g, 3, &|inst: &RefinementInstance<'_>| {
            Ok(peel_dks(inst.graph(), inst.k()))
        })
        .unwrap();
        assert_eq!(via, peel_dks(&g, 3));
        let k5 = complete(5);
        let greedy = dks_via_dskr(&k5, 3, &|inst: &RefinementInstance<'_>| {
            Ok(greedy_dskr(inst).chosen)
        })
        .unwrap();
        assert_eq!(induced_weight(&k5, &greedy), 3.0);
    }

    #[test]
    fn sdp_dks_solver_returns_k_vertices() {
        let g = complete(6);
        let solver = SdpDks {
            repetitions: 10,
            seed: 3,
            options: SolverOptions::default(),
        };
        assert_eq!(solver.solve_dks(&g, 2).unwrap().len(), 2);
        let p = GpkcSdp::constrained(
            &g,
            Assignment::uniform(6, -1),
            2,
            PartitionMeasure::KDensify,
        );
        assert_eq!(p.rhs_linear(), Some(2.0));
    }

    #[test]
    fn sweep_is_max_of_runs() {
        let g = Graph::from_unweighted(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (3, 5)])
            .unwrap();
        let inst =
            RefinementInstance::new(&g, set(6, &[0]), 1, PartitionMeasure::KDensify).unwrap();
        let sweep = sweep_k(&inst, 4, |i| Ok(greedy_dskr(i))).unwrap();
        assert_eq!(sweep.curve.len(), 4);
        let max = sweep.curve.iter().map(|c| c.1).fold(f64::MIN, f64::max);
        assert_eq!(sweep.best.density_after, max);
        let single = sweep_k(&inst, 1, |i| Ok(greedy_dskr(i))).unwrap();
        assert_eq!(single.best.chosen, greedy_dskr(&inst).chosen);
    }
}
