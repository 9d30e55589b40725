//! Stochastic block model and G(n, m) generators.

use optirefine::rng::stream_rng;
use optirefine::{Graph, GraphBuilder, VertexSet};
use rand::Rng;
use serde::Deserialize;

use crate::error::{BenchError, Result};

#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct SbmConfig {
    pub community_sizes: Vec<usize>,
    /// Edge probability inside each community.
    pub intra_p: Vec<f64>,
    pub inter_p: f64,
    pub seed: u64,
}

impl SbmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.community_sizes.len() != self.intra_p.len() {
            return Err(BenchError::Config(format!(
                "{} community sizes but {} intra probabilities",
                self.community_sizes.len(),
                self.intra_p.len()
            )));
        }
        if self.community_sizes.contains(&0) {
            return Err(BenchError::Config(
                "community sizes must be positive".into(),
            ));
        }
        for &p in self.intra_p.iter().chain([&self.inter_p]) {
            if !(0.0..=1.0).contains(&p) {
                return Err(BenchError::Config(format!(
                    "probability {p} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.community_sizes.iter().sum()
    }
}

/// The three synthetic datasets: four communities of 250 vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SbmPreset {
    /// Every community at 0.3, cross edges at 0.1.
    Balanced,
    /// Community 0 at 0.8, the rest at 0.2, cross edges at 0.1. The dense
    /// community is the initial set.
    Dense,
    /// Same generator as `Dense`; a sparse community (1) is the initial set.
    Sparse,
}

impl SbmPreset {
    pub fn config(self, seed: u64) -> SbmConfig {
        let intra_p = match self {
            SbmPreset::Balanced => vec![0.3; 4],
            SbmPreset::Dense | SbmPreset::Sparse => vec![0.8, 0.2, 0.2, 0.2],
        };
        SbmConfig {
            community_sizes: vec![250; 4],
            intra_p,
            inter_p: 0.1,
            seed,
        }
    }

    /// Community used as `U` by the density experiments.
    pub fn initial_community(self) -> usize {
        match self {
            SbmPreset::Balanced | SbmPreset::Dense => 0,
            SbmPreset::Sparse => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SbmPreset::Balanced => "sbm-balanced",
            SbmPreset::Dense => "sbm-densesubg",
            SbmPreset::Sparse => "sbm-sparsesubg",
        }
    }
}

/// Samples every pair independently: with the community's probability
/// inside a community, `inter_p` across. Unit weights. Communities are
/// contiguous id ranges in the order given.
pub fn generate_sbm(cfg: &SbmConfig) -> Result<(Graph, Vec<VertexSet>)> {
    cfg.validate()?;
    let n = cfg.n();
    let mut block = Vec::with_capacity(n);
    let mut communities = Vec::with_capacity(cfg.community_sizes.len());
    let mut start = 0;
    for (c, &size) in cfg.community_sizes.iter().enumerate() {
        block.extend(std::iter::repeat_n(c, size));
        communities.push(VertexSet::from_ids(n, start..start + size)?);
        start += size;
    }
    let mut rng = stream_rng(cfg.seed, 0);
    let mut builder = GraphBuilder::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let p = if block[u] == block[v] {
                cfg.intra_p[block[u]]
            } else {
                cfg.inter_p
            };
            if p > 0.0 && rng.random::<f64>() < p {
                builder.add_edge(u, v, 1.0)?;
            }
        }
    }
    Ok((builder.build(), communities))
}

/// Uniform simple graph with exactly `m` unit-weight edges.
pub fn generate_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let pairs = n as u128 * n.saturating_sub(1) as u128 / 2;
    if m as u128 > pairs {
        return Err(BenchError::Config(format!(
            "{m} edges do not fit on {n} vertices"
        )));
    }
    let mut rng = stream_rng(seed, 0);
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m);
    while edges.len() < m {
        let missing = m - edges.len();
        for _ in 0..missing + missing / 8 + 16 {
            let u = rng.random_range(0..n) as u32;
            let v = rng.random_range(0..n) as u32;
            if u != v {
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        if edges.len() > m {
            // Drop a uniform surplus, not the largest ids.
            for i in (1..edges.len()).rev() {
                let j = rng.random_range(0..=i);
                edges.swap(i, j);
            }
            edges.truncate(m);
            edges.sort_unstable();
        }
    }
    let mut builder = GraphBuilder::with_capacity(n, m);
    for (u, v) in edges {
        builder.add_edge(u as usize, v as usize, 1.0)?;
    }
    Ok(builder.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use optirefine::{cut_value, density};

    #[test]
    fn zero_probabilities_give_empty_graph() {
        let cfg = SbmConfig {
            community_sizes: vec![5, 7],
            intra_p: vec![0.0, 0.0],
            inter_p: 0.0,
            seed: 1,
        };
        let (g, comms) = generate_sbm(&cfg).unwrap();
        assert_eq!((g.n(), g.m()), (12, 0));
        assert_eq!(comms[1].to_vec(), (5..12).collect::<Vec<_>>());
    }

    #[test]
    fn full_probabilities_give_complete_graph() {
        let cfg = SbmConfig {
            community_sizes: vec![3, 3],
            intra_p: vec![1.0, 1.0],
            inter_p: 1.0,
            seed: 1,
        };
        assert_eq!(generate_sbm(&cfg).unwrap().0.m(), 15);
        let cfg = SbmConfig {
            inter_p: 0.0,
            ..cfg
        };
        let (g, comms) = generate_sbm(&cfg).unwrap();
        assert_eq!(g.m(), 6);
        assert_eq!(cut_value(&g, &comms[0]), 0.0);
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = [
            SbmConfig {
                community_sizes: vec![3],
                intra_p: vec![0.5, 0.5],
                inter_p: 0.1,
                seed: 0,
            },
            SbmConfig {
                community_sizes: vec![0],
                intra_p: vec![0.5],
                inter_p: 0.1,
                seed: 0,
            },
            SbmConfig {
                community_sizes: vec![3],
                intra_p: vec![1.5],
                inter_p: 0.1,
                seed: 0,
            },
            SbmConfig {
                community_sizes: vec![3],
                intra_p: vec![0.5],
                inter_p: -0.1,
                seed: 0,
            },
        ];
        for cfg in bad {
            assert!(generate_sbm(&cfg).is_err());
        }
    }

    #[test]
    fn balanced_preset_edge_count() {
        // Expected 4·C(250,2)·0.3 + 6·250²·0.1 = 74 850, σ ≈ 230.
        let (g, _) = generate_sbm(&SbmPreset::Balanced.config(3)).unwrap();
        assert_eq!(g.n(), 1000);
        assert!((72_000..=78_000).contains(&g.m()), "m = {}", g.m());
    }

    #[test]
    fn dense_preset_community_density() {
        let (g, comms) = generate_sbm(&SbmPreset::Dense.config(5)).unwrap();
        let d = density(&g, &comms[0]);
        assert!((95.0..=104.0).contains(&d), "density {d}");
    }

    #[test]
    fn generation_replays_per_seed() {
        let cfg = SbmConfig {
            community_sizes: vec![20, 20],
            intra_p: vec![0.5, 0.3],
            inter_p: 0.1,
            seed: 9,
        };
        let a = generate_sbm(&cfg).unwrap().0;
        let b = generate_sbm(&cfg).unwrap().0;
        assert_eq!(a.edges(), b.edges());
        let c = generate_sbm(&SbmConfig { seed: 10, ..cfg }).unwrap().0;
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn gnm_has_exact_edge_count() {
        let g = generate_gnm(50, 400, 2).unwrap();
        assert_eq!(g.m(), 400);
        assert!(g.edges().iter().all(|e| e.w == 1.0));
        assert_eq!(generate_gnm(4, 6, 0).unwrap().m(), 6);
        assert!(generate_gnm(4, 7, 0).is_err());
    }
}
