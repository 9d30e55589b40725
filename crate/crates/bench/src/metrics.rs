//! Perturbation and comparison metrics.

use optirefine::rng::stream_rng;
use optirefine::VertexSet;
use rand::seq::index::sample;

use crate::error::{BenchError, Result};

/// Removes `k` members of `u` drawn uniformly without replacement.
/// Returns `(u ∖ removed, removed)`.
pub fn perturb_remove(u: &VertexSet, k: usize, seed: u64) -> Result<(VertexSet, VertexSet)> {
    if k > u.len() {
        return Err(BenchError::Config(format!(
            "cannot remove {k} of {} vertices",
            u.len()
        )));
    }
    let members = u.to_vec();
    let mut rng = stream_rng(seed, 0);
    let picked = sample(&mut rng, members.len(), k)
        .into_iter()
        .map(|i| members[i]);
    let removed = VertexSet::from_ids(u.universe_size(), picked)?;
    Ok((u.difference(&removed)?, removed))
}

/// `(after − before) / before`, or `None` when `before` is not positive.
pub fn relative_increase(before: f64, after: f64) -> Option<f64> {
    (before > 0.0).then(|| (after - before) / before)
}

/// `|A ∩ B| / |A ∪ B|`, with `J(∅, ∅) = 1`.
pub fn jaccard(a: &VertexSet, b: &VertexSet) -> f64 {
    let inter = a.intersection_len(b);
    let union = a.len() + b.len() - inter;
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

/// Pairwise [`jaccard`] similarities.
pub fn jaccard_matrix(sets: &[VertexSet]) -> Vec<Vec<f64>> {
    sets.iter()
        .map(|a| sets.iter().map(|b| jaccard(a, b)).collect())
        .collect()
}
