//! Random instances and exhaustive oracles. The oracles work on a dense
//! weight matrix and never call the library's objective functions.
#![allow(dead_code)]

use optirefine::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct Dense {
    pub n: usize,
    pub w: Vec<Vec<f64>>,
}

impl Dense {
    pub fn of(g: &Graph) -> Dense {
        let n = g.n();
        let mut w = vec![vec![0.0; n]; n];
        for e in g.edges() {
            w[e.u][e.v] = e.w;
            w[e.v][e.u] = e.w;
        }
        Dense { n, w }
    }

    pub fn inner(&self, s: &[bool]) -> f64 {
        let mut t = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if s[i] && s[j] {
                    t += self.w[i][j];
                }
            }
        }
        t
    }

    pub fn density(&self, s: &[bool]) -> f64 {
        let size = s.iter().filter(|&&b| b).count();
        if size == 0 {
            0.0
        } else {
            self.inner(s) / size as f64
        }
    }

    pub fn cut(&self, s: &[bool]) -> f64 {
        let mut t = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if s[i] != s[j] {
                    t += self.w[i][j];
                }
            }
        }
        t
    }
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if r.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_unweighted(n, edges).unwrap()
}

pub fn weighted_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if r.random_bool(p) {
                edges.push((i, j, r.random_range(1..=5) as f64));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_set(n: usize, p: f64, seed: u64) -> VertexSet {
    let mut r = rng(seed);
    VertexSet::from_ids(n, (0..n).filter(|_| r.random_bool(p))).unwrap()
}

/// Uniform k-subset.
pub fn random_subset(n: usize, k: usize, r: &mut ChaCha8Rng) -> VertexSet {
    let mut ids: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = r.random_range(i..n);
        ids.swap(i, j);
    }
    VertexSet::from_ids(n, ids[..k].iter().copied()).unwrap()
}

/// Calls `f` on the mask of every k-subset of `0..n`.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[bool])) {
    for bits in 0u32..(1 << n) {
        if bits.count_ones() as usize == k {
            let mask: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            f(&mask);
        }
    }
}

pub fn mask_of(s: &VertexSet) -> Vec<bool> {
    s.mask().to_vec()
}

fn xor(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| x != y).collect()
}

/// max over |C| = k of `value(U △ C)`.
pub fn best_refinement(n: usize, u: &VertexSet, k: usize, value: impl Fn(&[bool]) -> f64) -> f64 {
    let um = mask_of(u);
    let mut best = f64::NEG_INFINITY;
    for_each_subset(n, k, |c| best = best.max(value(&xor(&um, c))));
    best
}

pub fn opt_dskr(g: &Graph, u: &VertexSet, k: usize) -> f64 {
    let d = Dense::of(g);
    best_refinement(g.n(), u, k, |s| d.density(s))
}

pub fn opt_kdensify(g: &Graph, u: &VertexSet, k: usize) -> f64 {
    let d = Dense::of(g);
    best_refinement(g.n(), u, k, |s| d.inner(s))
}

pub fn opt_maxcutkr(g: &Graph, u: &VertexSet, k: usize) -> f64 {
    let d = Dense::of(g);
    best_refinement(g.n(), u, k, |s| d.cut(s))
}

pub fn opt_dks_weight(g: &Graph, k: usize) -> f64 {
    opt_kdensify(g, &VertexSet::empty(g.n()), k)
}

pub fn opt_maxcut(g: &Graph) -> f64 {
    let d = Dense::of(g);
    (0..=g.n())
        .map(|k| best_refinement(g.n(), &VertexSet::empty(g.n()), k, |s| d.cut(s)))
        .fold(0.0, f64::max)
}

/// Exhaustive DkS as a solver: lexicographically first optimal k-subset.
pub fn exhaustive_dks(g: &Graph, k: usize) -> optirefine::Result<VertexSet> {
    let d = Dense::of(g);
    let n = g.n();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for_each_subset(n, k, |mask| {
        let v = d.inner(mask);
        let ids: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
        let better = match &best {
            None => true,
            Some((b, bid)) => v > *b || (v == *b && ids < *bid),
        };
        if better {
            best = Some((v, ids));
        }
    });
    VertexSet::from_ids(n, best.unwrap().1)
}

/// Relabels vertices: vertex `v` becomes `perm[v]`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().iter().map(|e| (perm[e.u], perm[e.v], e.w))).unwrap()
}

pub fn relabel_set(s: &VertexSet, perm: &[usize]) -> VertexSet {
    VertexSet::from_ids(s.universe_size(), s.iter().map(|v| perm[v])).unwrap()
}
