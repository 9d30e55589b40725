//! Immutable weighted undirected graphs in compressed adjacency form.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Weighted undirected simple graph on vertices `0..n`.
///
/// Edges are stored once with `u < v`, sorted; adjacency lists are sorted
/// by neighbor id.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
    degrees: Vec<f64>,
    total_weight: f64,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    /// Builds a graph from `(u, v, w)` triples. Duplicate pairs are merged
    /// by summing their weights.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut builder = GraphBuilder::new(n);
        for (u, v, w) in edges {
            builder.add_edge(u, v, w)?;
        }
        Ok(builder.build())
    }

    /// Unit-weight convenience constructor.
    pub fn from_unweighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Neighbors of `v` with edge weights, in increasing neighbor order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sum of the weights of edges incident to `v`.
    pub fn weighted_degree(&self, v: usize) -> f64 {
        self.degrees[v]
    }

    /// Weight of edge `{u, v}`, or 0 if absent.
    pub fn edge_weight(&self, u: usize, v: usize) -> f64 {
        let range = self.offsets[u]..self.offsets[u + 1];
        match self.targets[range.clone()].binary_search(&v) {
            Ok(i) => self.weights[range.start + i],
            Err(_) => 0.0,
        }
    }
}

/// Accumulates edges and validates them before building a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<Edge>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            edges: Vec::new(),
        }
    }

    pub fn with_capacity(n: usize, m: usize) -> Self {
        GraphBuilder {
            n,
            edges: Vec::with_capacity(m),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidWeight { u, v, weight: w });
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges.push(Edge { u, v, w });
        Ok(())
    }

    pub fn build(mut self) -> Graph {
        let n = self.n;
        self.edges.sort_unstable_by_key(|e| (e.u, e.v));
        let mut edges: Vec<Edge> = Vec::with_capacity(self.edges.len());
        for e in self.edges {
            match edges.last_mut() {
                Some(last) if last.u == e.u && last.v == e.v => last.w += e.w,
                _ => edges.push(e),
            }
        }

        let mut offsets = vec![0usize; n + 1];
        for e in &edges {
            offsets[e.u + 1] += 1;
            offsets[e.v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0usize; 2 * edges.len()];
        let mut weights = vec![0.0f64; 2 * edges.len()];
        let mut degrees = vec![0.0f64; n];
        let mut total_weight = 0.0;
        // Edges are sorted by (u, v), so every adjacency list comes out sorted:
        // a vertex x sees its smaller neighbors (as v) before its larger ones.
        for e in &edges {
            targets[cursor[e.u]] = e.v;
            weights[cursor[e.u]] = e.w;
            cursor[e.u] += 1;
            targets[cursor[e.v]] = e.u;
            weights[cursor[e.v]] = e.w;
            cursor[e.v] += 1;
            degrees[e.u] += e.w;
            degrees[e.v] += e.w;
            total_weight += e.w;
        }
        Graph {
            n,
            edges,
            offsets,
            targets,
            weights,
            degrees,
            total_weight,
        }
    }
}
