use serde::Serialize;

use crate::graph::Graph;
use crate::set::{Assignment, VertexSet};

/// Expected-ratio constant of hyperplane rounding for cut-type terms:
/// `min over 0 < θ <= π of (2/π)·θ/(1 - cos θ)`, truncated.
pub const ALPHA: f64 = 0.87856;

/// Companion constant for the densify terms:
/// `min over 0 <= θ < arccos(-1/3) of (2/π)·(2π - 3θ)/(1 + 3 cos θ)`, truncated.
pub const BETA: f64 = 0.79607;

/// Quadratic partition measures `Σ_{(i,j)∈E} w(i,j)·(c0 + c1·xᵢ + c2·xⱼ + c3·xᵢxⱼ)`
/// over ±1 assignments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PartitionMeasure {
    /// Weight of edges inside the `+1` side.
    KDensify,
    /// Weight of edges crossing the partition.
    MaxCutKR,
    /// Weight of edges not crossing the partition.
    MaxUncutKC,
    /// Weight of edges with at least one endpoint on the `+1` side.
    VcKC,
}

impl PartitionMeasure {
    /// `(c0, c1, c2, c3)`.
    pub fn coefficients(self) -> [f64; 4] {
        match self {
            PartitionMeasure::KDensify => [0.25, 0.25, 0.25, 0.25],
            PartitionMeasure::MaxCutKR => [0.5, 0.0, 0.0, -0.5],
            PartitionMeasure::MaxUncutKC => [0.5, 0.0, 0.0, 0.5],
            PartitionMeasure::VcKC => [0.75, 0.25, 0.25, -0.25],
        }
    }

    /// Per-edge term for endpoint values `xi`, `xj` (either ±1 or their
    /// relaxed inner products).
    pub fn edge_term(self, xi: f64, xj: f64, xij: f64) -> f64 {
        let [c0, c1, c2, c3] = self.coefficients();
        c0 + c1 * xi + c2 * xj + c3 * xij
    }

    pub fn evaluate(self, g: &Graph, x: &Assignment) -> f64 {
        assert_eq!(g.n(), x.len());
        g.edges()
            .iter()
            .map(|e| {
                let (xi, xj) = (x.get(e.u) as f64, x.get(e.v) as f64);
                e.w * self.edge_term(xi, xj, xi * xj)
            })
            .sum()
    }

    /// Value of the partition whose `+1` side is `s`.
    pub fn evaluate_set(self, g: &Graph, s: &VertexSet) -> f64 {
        self.evaluate(g, &Assignment::from_set(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{cut_value, induced_weight};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn constants_bound_their_defining_minima() {
        let steps = 2_000_000;
        let mut alpha = f64::INFINITY;
        let mut beta = f64::INFINITY;
        let limit = (-1.0f64 / 3.0).acos();
        for i in 1..=steps {
            let t = PI * i as f64 / steps as f64;
            alpha = alpha.min(2.0 / PI * t / (1.0 - t.cos()));
            let s = limit * (i - 1) as f64 / steps as f64;
            beta = beta.min(2.0 / PI * (2.0 * PI - 3.0 * s) / (1.0 + 3.0 * s.cos()));
        }
        assert!(alpha > ALPHA && alpha - ALPHA < 1e-5, "alpha = {alpha}");
        assert!(beta > BETA && beta - BETA < 1e-5, "beta = {beta}");
    }

    proptest! {
        #[test]
        fn measures_match_set_functions(
            raw in proptest::collection::vec((0usize..8, 0usize..8, 1u32..4), 0..25),
            mask in proptest::collection::vec(any::<bool>(), 8),
        ) {
            let edges: Vec<_> = raw.into_iter().filter(|(u, v, _)| u != v)
                .map(|(u, v, w)| (u, v, w as f64)).collect();
            let g = Graph::from_edges(8, edges).unwrap();
            let s = VertexSet::from_ids(8, (0..8).filter(|&i| mask[i])).unwrap();
            let total = g.total_weight();
            let cut = cut_value(&g, &s);
            let inside = induced_weight(&g, &s);
            let outside = induced_weight(&g, &s.complement());
            prop_assert_eq!(PartitionMeasure::KDensify.evaluate_set(&g, &s), inside);
            prop_assert_eq!(PartitionMeasure::MaxCutKR.evaluate_set(&g, &s), cut);
            prop_assert_eq!(PartitionMeasure::MaxUncutKC.evaluate_set(&g, &s), total - cut);
            prop_assert_eq!(PartitionMeasure::VcKC.evaluate_set(&g, &s), total - outside);
        }
    }
}
