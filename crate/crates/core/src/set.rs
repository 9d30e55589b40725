//! Vertex sets over a fixed universe and ±1 assignments.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// A subset of `{0, …, n-1}`.
///
/// Membership is a dense mask, so `contains`, `insert` and `remove` are O(1)
/// and iteration is in increasing id order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    mask: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            mask: vec![false; n],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            mask: vec![true; n],
            len: n,
        }
    }

    /// Builds a set from ids, rejecting ids outside the universe. Repeated
    /// ids are accepted once.
    pub fn from_ids<I: IntoIterator<Item = usize>>(n: usize, ids: I) -> Result<Self> {
        let mut set = VertexSet::empty(n);
        for v in ids {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub fn universe_size(&self) -> usize {
        self.mask.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Returns `false` for ids outside the universe.
    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    /// Inserts `v`, returning whether it was absent.
    ///
    /// # Panics
    /// If `v` is outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.mask.len(), "vertex {v} out of range");
        let fresh = !self.mask[v];
        if fresh {
            self.mask[v] = true;
            self.len += 1;
        }
        fresh
    }

    /// Removes `v`, returning whether it was present.
    pub fn remove(&mut self, v: usize) -> bool {
        let present = self.contains(v);
        if present {
            self.mask[v] = false;
            self.len -= 1;
        }
        present
    }

    /// Flips membership of `v`.
    pub fn toggle(&mut self, v: usize) {
        if !self.remove(v) {
            self.insert(v);
        }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet {
            mask: self.mask.iter().map(|b| !b).collect(),
            len: self.mask.len() - self.len,
        }
    }

    fn check_universe(&self, other: &VertexSet) -> Result<()> {
        if self.universe_size() != other.universe_size() {
            return Err(Error::UniverseMismatch {
                left: self.universe_size(),
                right: other.universe_size(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(bool, bool) -> bool) -> Result<VertexSet> {
        self.check_universe(other)?;
        let mask: Vec<bool> = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(&a, &b)| f(a, b))
            .collect();
        let len = mask.iter().filter(|&&b| b).count();
        Ok(VertexSet { mask, len })
    }

    pub fn sym_diff(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a != b)
    }

    pub fn union(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.mask
            .iter()
            .zip(&other.mask)
            .filter(|(&a, &b)| a && b)
            .count()
    }
}

/// `(a ∖ b) ∪ (b ∖ a)`.
pub fn sym_diff(a: &VertexSet, b: &VertexSet) -> Result<VertexSet> {
    a.sym_diff(b)
}

/// Orders sets by universe size, then lexicographically by their sorted
/// member lists, so `{0, 5} < {1, 2}` and `{1} < {1, 2}`.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe_size()
            .cmp(&other.universe_size())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// A ±1 vector over the vertices. Entry `i` is `+1` iff vertex `i` is on the
/// "inside" of the partition.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Assignment {
    values: Vec<i8>,
}

impl Assignment {
    pub fn uniform(n: usize, value: i8) -> Self {
        assert!(value == 1 || value == -1);
        Assignment {
            values: vec![value; n],
        }
    }

    pub fn from_values(values: Vec<i8>) -> Result<Self> {
        if let Some(index) = values.iter().position(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidAssignment {
                index,
                value: values[index] as i64,
            });
        }
        Ok(Assignment { values })
    }

    pub fn from_set(set: &VertexSet) -> Self {
        Assignment {
            values: set.mask().iter().map(|&b| if b { 1 } else { -1 }).collect(),
        }
    }

    pub fn to_set(&self) -> VertexSet {
        let mask: Vec<bool> = self.values.iter().map(|&x| x == 1).collect();
        let len = mask.iter().filter(|&&b| b).count();
        VertexSet { mask, len }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> i8 {
        self.values[i]
    }

    pub fn set(&mut self, i: usize, value: i8) {
        assert!(value == 1 || value == -1);
        self.values[i] = value;
    }

    pub fn flip(&mut self, i: usize) {
        self.values[i] = -self.values[i];
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Vertices on which two assignments disagree.
    pub fn disagreement(&self, other: &Assignment) -> Result<VertexSet> {
        if self.len() != other.len() {
            return Err(Error::UniverseMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        VertexSet::from_ids(
            self.len(),
            (0..self.len()).filter(|&i| self.values[i] != other.values[i]),
        )
    }
}
