use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sdp::PartitionMeasure;
use crate::set::VertexSet;

/// A graph, an initial set `U`, a budget `k` and the measure to maximize.
#[derive(Clone, Debug)]
pub struct RefinementInstance<'g> {
    graph: &'g Graph,
    initial_set: VertexSet,
    k: usize,
    measure: PartitionMeasure,
}

impl<'g> RefinementInstance<'g> {
    /// Requires `1 <= k <= n` and `initial_set` over the graph's vertices.
    pub fn new(
        graph: &'g Graph,
        initial_set: VertexSet,
        k: usize,
        measure: PartitionMeasure,
    ) -> Result<Self> {
        let n = graph.n();
        if initial_set.universe_size() != n {
            return Err(Error::UniverseMismatch {
                left: n,
                right: initial_set.universe_size(),
            });
        }
        if k == 0 || k > n {
            return Err(Error::InvalidBudget { k, n });
        }
        Ok(RefinementInstance {
            graph,
            initial_set,
            k,
            measure,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn initial_set(&self) -> &VertexSet {
        &self.initial_set
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn measure(&self) -> PartitionMeasure {
        self.measure
    }

    pub fn with_k(&self, k: usize) -> Result<Self> {
        RefinementInstance::new(self.graph, self.initial_set.clone(), k, self.measure)
    }
}

/// Anything that maps an instance to a refinement set `C`.
pub trait RefinementSolver {
    fn solve(&self, inst: &RefinementInstance<'_>) -> Result<VertexSet>;
}

impl<F> RefinementSolver for F
where
    F: Fn(&RefinementInstance<'_>) -> Result<VertexSet>,
{
    fn solve(&self, inst: &RefinementInstance<'_>) -> Result<VertexSet> {
        self(inst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_budgets_and_universes() {
        let g = Graph::empty(4);
        let u = VertexSet::empty(4);
        assert!(RefinementInstance::new(&g, u.clone(), 0, PartitionMeasure::KDensify).is_err());
        assert!(RefinementInstance::new(&g, u.clone(), 5, PartitionMeasure::KDensify).is_err());
        assert!(
            RefinementInstance::new(&g, VertexSet::empty(3), 1, PartitionMeasure::KDensify)
                .is_err()
        );
        let inst = RefinementInstance::new(&g, u, 4, PartitionMeasure::MaxCutKR).unwrap();
        assert_eq!(inst.k(), 4);
    }
}
