use crate::graph::Graph;
use crate::instance::RefinementInstance;
use crate::set::Assignment;

use super::PartitionMeasure;

/// The vector relaxation
///
/// ```text
/// max  Σ_{(i,j)∈E} w(i,j)·(c0 + c1·v₀·vᵢ + c2·v₀·vⱼ + c3·vᵢ·vⱼ)
/// s.t. Σᵢ x⁰ᵢ vᵢ·v₀ = n − 2k
///      Σᵢⱼ x⁰ᵢ x⁰ⱼ vᵢ·vⱼ = (2k − n)²
///      ‖vᵢ‖ = 1,  i = 0..n
/// ```
///
/// where `x⁰` encodes the initial set. Without a budget the two cardinality
/// constraints are dropped.
#[derive(Clone, Debug)]
pub struct GpkcSdp<'g> {
    graph: &'g Graph,
    x0: Assignment,
    k: Option<usize>,
    measure: PartitionMeasure,
}

impl<'g> GpkcSdp<'g> {
    pub fn constrained(
        graph: &'g Graph,
        x0: Assignment,
        k: usize,
        measure: PartitionMeasure,
    ) -> Self {
        assert_eq!(graph.n(), x0.len());
        assert!(k <= graph.n());
        GpkcSdp {
            graph,
            x0,
            k: Some(k),
            measure,
        }
    }

    /// Relaxation without cardinality constraints; `x⁰ = −1`.
    pub fn unconstrained(graph: &'g Graph, measure: PartitionMeasure) -> Self {
        GpkcSdp {
            graph,
            x0: Assignment::uniform(graph.n(), -1),
            k: None,
            measure,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn x0(&self) -> &Assignment {
        &self.x0
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn measure(&self) -> PartitionMeasure {
        self.measure
    }

    /// `n − 2k`.
    pub fn rhs_linear(&self) -> Option<f64> {
        self.k.map(|k| self.n() as f64 - 2.0 * k as f64)
    }

    /// `(2k − n)²`.
    pub fn rhs_quadratic(&self) -> Option<f64> {
        self.rhs_linear().map(|b| b * b)
    }
}

pub fn build_gpkc_sdp<'g>(inst: &RefinementInstance<'g>) -> GpkcSdp<'g> {
    GpkcSdp::constrained(
        inst.graph(),
        Assignment::from_set(inst.initial_set()),
        inst.k(),
        inst.measure(),
    )
}
