//! Incrementally maintained vertex set `T` with its induced weight and cut.

use crate::graph::Graph;
use crate::objective::{cut_value, induced_weight, Objective};
use crate::set::VertexSet;

/// Tracks `T`, the weighted degree of every vertex into `T`, `w(E[T])` and
/// `cut(T)`. Toggling a vertex costs O(deg).
#[derive(Clone, Debug)]
pub struct PartitionState<'g> {
    graph: &'g Graph,
    set: VertexSet,
    deg_into: Vec<f64>,
    inner: f64,
    cut: f64,
}

impl<'g> PartitionState<'g> {
    pub fn new(graph: &'g Graph, set: VertexSet) -> Self {
        assert_eq!(graph.n(), set.universe_size());
        let mut deg_into = vec![0.0; graph.n()];
        for u in set.iter() {
            for (v, w) in graph.neighbors(u) {
                deg_into[v] += w;
            }
        }
        let inner = induced_weight(graph, &set);
        let cut = cut_value(graph, &set);
        PartitionState {
            graph,
            set,
            deg_into,
            inner,
            cut,
        }
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn into_set(self) -> VertexSet {
        self.set
    }

    pub fn contains(&self, v: usize) -> bool {
        self.set.contains(v)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// Weight of edges from `v` into `T` (excluding `v` itself).
    pub fn deg_into(&self, v: usize) -> f64 {
        self.deg_into[v]
    }

    pub fn inner_weight(&self) -> f64 {
        self.inner
    }

    pub fn cut(&self) -> f64 {
        self.cut
    }

    pub fn density(&self) -> f64 {
        if self.set.is_empty() {
            0.0
        } else {
            self.inner / self.set.len() as f64
        }
    }

    pub fn value(&self, objective: Objective) -> f64 {
        match objective {
            Objective::Density => self.density(),
            Objective::InducedWeight => self.inner,
            Objective::Cut => self.cut,
        }
    }

    fn toggled(&self, v: usize) -> (f64, f64, usize) {
        let d = self.deg_into[v];
        let total = self.graph.weighted_degree(v);
        if self.set.contains(v) {
            (
                self.inner - d,
                self.cut + 2.0 * d - total,
                self.set.len() - 1,
            )
        } else {
            (
                self.inner + d,
                self.cut + total - 2.0 * d,
                self.set.len() + 1,
            )
        }
    }

    /// Objective value of `T △ {v}` without modifying the state.
    pub fn value_if_toggled(&self, v: usize, objective: Objective) -> f64 {
        let (inner, cut, len) = self.toggled(v);
        match objective {
            Objective::Density if len == 0 => 0.0,
            Objective::Density => inner / len as f64,
            Objective::InducedWeight => inner,
            Objective::Cut => cut,
        }
    }

    pub fn toggle(&mut self, v: usize) {
        let (inner, cut, _) = self.toggled(v);
        self.inner = inner;
        self.cut = cut;
        let delta = if self.set.contains(v) { -1.0 } else { 1.0 };
        self.set.toggle(v);
        for (u, w) in self.graph.neighbors(v) {
            self.deg_into[u] += delta * w;
        }
    }

    /// Checks the maintained totals against a full recomputation.
    pub fn debug_validate(&self) {
        if cfg!(debug_assertions) {
            let scale = 1.0 + self.graph.total_weight();
            let inner = induced_weight(self.graph, &self.set);
            let cut = cut_value(self.graph, &self.set);
            debug_assert!(
                (inner - self.inner).abs() <= 1e-9 * scale,
                "inner weight drifted"
            );
            debug_assert!((cut - self.cut).abs() <= 1e-9 * scale, "cut drifted");
        }
    }
}

/// The greedy refinement heuristic: starting from `C = ∅`, run `k` rounds,
/// each adding the vertex `u ∉ C` that maximizes `objective(U △ (C ∪ {u}))`.
/// Ties go to the smallest id.
pub fn greedy_refine(g: &Graph, initial: &VertexSet, k: usize, objective: Objective) -> VertexSet {
    let n = g.n();
    assert!(k <= n);
    let mut state = PartitionState::new(g, initial.clone());
    let mut chosen = VertexSet::empty(n);
    for _ in 0..k {
        let mut best: Option<(usize, f64)> = None;
        for u in 0..n {
            if chosen.contains(u) {
                continue;
            }
            let value = state.value_if_toggled(u, objective);
            if best.is_none_or(|(_, b)| value > b) {
                best = Some((u, value));
            }
        }
        let (u, _) = best.expect("k <= n leaves a candidate");
        chosen.insert(u);
        state.toggle(u);
    }
    state.debug_validate();
    chosen
}
