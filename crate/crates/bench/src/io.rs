//! Text formats.
//!
//! Edge list: one edge per line, `u v [w]`, whitespace separated, `#` starts
//! a comment line, a missing weight is 1. Vertex ids are arbitrary tokens,
//! numbered in order of first appearance. Repeated pairs sum their weights.
//!
//! Vertex set: one id per line, same comment rule.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use optirefine::{Graph, GraphBuilder, VertexSet};

use crate::error::{BenchError, Result};

/// Two-way map between file tokens and dense ids `0..n`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IdMap {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl IdMap {
    /// Maps `i` to the token `"i"`.
    pub fn identity(n: usize) -> Self {
        let mut map = IdMap::default();
        for i in 0..n {
            map.intern(&i.to_string());
        }
        map
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn intern(&mut self, token: &str) -> usize {
        if let Some(&i) = self.index.get(token) {
            return i;
        }
        let i = self.names.len();
        self.names.push(token.to_owned());
        self.index.insert(token.to_owned(), i);
        i
    }

    pub fn get(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }
}

fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = (usize, std::io::Result<String>)> {
    reader
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            l.as_ref().map_or(true, |s| {
                !s.trim().is_empty() && !s.trim_start().starts_with('#')
            })
        })
}

/// Parses an edge list; `source` labels error messages.
pub fn parse_edge_list<R: BufRead>(reader: R, source: &str) -> Result<(Graph, IdMap)> {
    let perr = |line: usize, message: String| BenchError::Parse {
        path: source.to_owned(),
        line,
        message,
    };
    let mut ids = IdMap::default();
    let mut raw = Vec::new();
    for (line, text) in content_lines(reader) {
        let text = text?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(perr(
                line,
                format!("expected 'u v [w]', found {} fields", fields.len()),
            ));
        }
        let w = match fields.get(2) {
            Some(tok) => tok
                .parse::<f64>()
                .map_err(|_| perr(line, format!("bad weight '{tok}'")))?,
            None => 1.0,
        };
        let u = ids.intern(fields[0]);
        let v = ids.intern(fields[1]);
        raw.push((line, u, v, w));
    }
    let mut builder = GraphBuilder::with_capacity(ids.len(), raw.len());
    for (line, u, v, w) in raw {
        builder
            .add_edge(u, v, w)
            .map_err(|e| perr(line, e.to_string()))?;
    }
    Ok((builder.build(), ids))
}

pub fn load_edge_list(path: &Path) -> Result<(Graph, IdMap)> {
    parse_edge_list(
        BufReader::new(File::open(path)?),
        &path.display().to_string(),
    )
}

pub fn parse_vertex_set<R: BufRead>(reader: R, ids: &IdMap, source: &str) -> Result<VertexSet> {
    let mut members = Vec::new();
    for (line, text) in content_lines(reader) {
        let text = text?;
        let token = text.trim();
        if token.split_whitespace().count() != 1 {
            return Err(BenchError::Parse {
                path: source.to_owned(),
                line,
                message: "expected one id".into(),
            });
        }
        members.push(
            ids.get(token)
                .ok_or_else(|| BenchError::UnknownVertex(token.to_owned()))?,
        );
    }
    Ok(VertexSet::from_ids(ids.len(), members)?)
}

pub fn load_vertex_set(path: &Path, ids: &IdMap) -> Result<VertexSet> {
    parse_vertex_set(
        BufReader::new(File::open(path)?),
        ids,
        &path.display().to_string(),
    )
}

/// Parses `vertex community` lines; community labels are arbitrary tokens
/// numbered in order of first appearance.
pub fn parse_communities<R: BufRead>(
    reader: R,
    ids: &IdMap,
    source: &str,
) -> Result<Vec<VertexSet>> {
    let mut labels = IdMap::default();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (line, text) in content_lines(reader) {
        let text = text?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(BenchError::Parse {
                path: source.to_owned(),
                line,
                message: "expected 'vertex community'".into(),
            });
        }
        let v = ids
            .get(fields[0])
            .ok_or_else(|| BenchError::UnknownVertex(fields[0].to_owned()))?;
        let c = labels.intern(fields[1]);
        if c == members.len() {
            members.push(Vec::new());
        }
        members[c].push(v);
    }
    members
        .into_iter()
        .map(|m| Ok(VertexSet::from_ids(ids.len(), m)?))
        .collect()
}

pub fn load_communities(path: &Path, ids: &IdMap) -> Result<Vec<VertexSet>> {
    parse_communities(
        BufReader::new(File::open(path)?),
        ids,
        &path.display().to_string(),
    )
}

pub fn write_edge_list<W: Write>(g: &Graph, ids: &IdMap, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for e in g.edges() {
        writeln!(out, "{} {} {}", ids.name(e.u), ids.name(e.v), e.w)?;
    }
    out.flush()?;
    Ok(())
}

/// One id per line, in id order.
pub fn write_vertex_set<W: Write>(s: &VertexSet, ids: &IdMap, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for v in s.iter() {
        writeln!(out, "{}", ids.name(v))?;
    }
    out.flush()?;
    Ok(())
}

/// `vertex side` per line with side `1` for members of `s` and `-1` otherwise.
pub fn write_partition<W: Write>(s: &VertexSet, ids: &IdMap, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for v in 0..s.universe_size() {
        writeln!(
            out,
            "{} {}",
            ids.name(v),
            if s.contains(v) { 1 } else { -1 }
        )?;
    }
    out.flush()?;
    Ok(())
}

/// `vertex community` per line.
pub fn write_communities<W: Write>(communities: &[VertexSet], ids: &IdMap, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for (c, set) in communities.iter().enumerate() {
        for v in set.iter() {
            writeln!(out, "{} {c}", ids.name(v))?;
        }
    }
    out.flush()?;
    Ok(())
}
