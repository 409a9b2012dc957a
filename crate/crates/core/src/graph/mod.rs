//! Graph representation, text format, and exact structural invariants.
//!
//! Graphs are simple and undirected, with 1-indexed dense vertices and an
//! optional partition of the vertex set into parts 1..k (edges must then
//! join distinct parts). Adjacency is kept both as sorted neighbour lists
//! and as bitset rows; the bitsets carry the backtracking searches.
//!
//! Text format (UTF-8, line oriented, `#` starts a comment):
//!
//! ```text
//! graph <n> <m>
//! part <v> <i>     # optional, 1-indexed vertex and part
//! e <u> <v>        # m lines, u < v
//! ```
//!
//! Serialization is canonical: part lines ascending by vertex, edge lines
//! sorted lexicographically, so `parse(serialize(G)) = G` and canonical
//! inputs round-trip byte for byte.

mod colouring;
mod search;

pub use colouring::{greedy_colouring, is_k_colourable, Colouring};
pub use search::{EliminationOrder, Girth};

use std::fmt::Write as _;

use thiserror::Error;

use crate::bitset::BitSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: u32, n: usize },
    #[error("loop at vertex {v}")]
    Loop { v: u32 },
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: u32, v: u32 },
    #[error("edge {u} {v} joins two vertices of part {part}")]
    CrossPartViolation { u: u32, v: u32, part: u32 },
    #[error("part map must cover every vertex; vertex {v} has no part")]
    VertexWithoutPart { v: u32 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected header `graph <n> <m>`")]
    MalformedHeader,
    #[error("unknown directive {0:?}")]
    UnknownDirective(String),
    #[error("malformed `part` line; expected `part <v> <i>`")]
    MalformedPart,
    #[error("malformed edge line; expected `e <u> <v>` with u < v")]
    MalformedEdge,
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: u32, n: usize },
    #[error("part index must be at least 1")]
    PartIndexZero,
    #[error("duplicate part line for vertex {v}")]
    DuplicatePart { v: u32 },
    #[error("loop at vertex {v}")]
    Loop { v: u32 },
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: u32, v: u32 },
    #[error("edge {u} {v} joins two vertices of part {part}")]
    CrossPartViolation { u: u32, v: u32, part: u32 },
    #[error("more than the declared {m} edges")]
    TooManyEdges { m: usize },
    #[error("declared {declared} edges but found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// Simple undirected graph with an optional partition of the vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartiteGraph {
    n: usize,
    edges: Vec<(u32, u32)>,    // u < v, sorted lexicographically
    neighbours: Vec<Vec<u32>>, // sorted, indexed by v-1
    adj: Vec<BitSet>,          // indexed by v-1, bit w-1
    part_of: Option<Vec<u32>>, // indexed by v-1, values 1..=k
    k: usize,                  // 0 when unpartitioned
}

impl PartiteGraph {
    /// Unpartitioned graph from an edge list. Edges may be given in either
    /// orientation; loops and duplicates are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        Self::build(n, edges, None)
    }

    /// Partitioned graph; `part_of[v-1]` is the 1-indexed part of vertex v.
    pub fn partitioned(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
        part_of: Vec<u32>,
    ) -> Result<Self, GraphError> {
        assert_eq!(part_of.len(), n, "part map must cover every vertex");
        Self::build(n, edges, Some(part_of))
    }

    fn build(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
        part_of: Option<Vec<u32>>,
    ) -> Result<Self, GraphError> {
        let mut adj: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        let mut canonical: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if u == 0 || v as usize > n {
                return Err(GraphError::VertexOutOfRange {
                    v: if u == 0 { a } else { v },
                    n,
                });
            }
            if u == v {
                return Err(GraphError::Loop { v: u });
            }
            if adj[(u - 1) as usize].contains((v - 1) as usize) {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            if let Some(parts) = &part_of {
                let (pu, pv) = (parts[(u - 1) as usize], parts[(v - 1) as usize]);
                if pu == pv {
                    return Err(GraphError::CrossPartViolation { u, v, part: pu });
                }
            }
            adj[(u - 1) as usize].insert((v - 1) as usize);
            adj[(v - 1) as usize].insert((u - 1) as usize);
            canonical.push((u, v));
        }
        canonical.sort_unstable();
        let mut neighbours = vec![Vec::new(); n];
        for &(u, v) in &canonical {
            neighbours[(u - 1) as usize].push(v);
            neighbours[(v - 1) as usize].push(u);
        }
        for list in &mut neighbours {
            list.sort_unstable();
        }
        let k = part_of
            .as_ref()
            .map(|p| p.iter().copied().max().unwrap_or(0) as usize)
            .unwrap_or(0);
        Ok(PartiteGraph {
            n,
            edges: canonical,
            neighbours,
            adj,
            part_of,
            k,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Number of parts; 0 when unpartitioned.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_partitioned(&self) -> bool {
        self.part_of.is_some()
    }

    /// Part of vertex `v`, if the graph is partitioned.
    pub fn part(&self, v: u32) -> Option<u32> {
        self.part_of.as_ref().map(|p| p[(v - 1) as usize])
    }

    /// Canonical edge list: pairs with u < v, sorted lexicographically.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.neighbours[(v - 1) as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbours(v).len()
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[(u - 1) as usize].contains((v - 1) as usize)
    }

    pub(crate) fn adjacency_row(&self, v: u32) -> &BitSet {
        &self.adj[(v - 1) as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + 'static {
        1..=self.n as u32
    }

    /// Vertices of part `i`, ascending; empty when unpartitioned.
    pub fn vertices_in_part(&self, i: u32) -> Vec<u32> {
        match &self.part_of {
            None => Vec::new(),
            Some(parts) => (1..=self.n as u32)
                .filter(|&v| parts[(v - 1) as usize] == i)
                .collect(),
        }
    }

    /// Copy of the graph without one edge.
    pub fn without_edge(&self, u: u32, v: u32) -> Self {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&e| e != (u, v))
            .collect::<Vec<_>>();
        Self::build(self.n, edges, self.part_of.clone()).expect("subgraph of a valid graph")
    }

    /// Copy of the graph with `extra` isolated vertices appended (they join
    /// part 0's behaviour: unpartitioned graphs stay unpartitioned; for
    /// partitioned graphs use a part index explicitly).
    pub fn with_extra_isolated(&self, extra: usize) -> Self {
        assert!(self.part_of.is_none(), "padding is for unpartitioned graphs");
        Self::build(self.n + extra, self.edges.iter().copied(), None)
            .expect("padding preserves validity")
    }

    /// Subgraph induced on `keep` (1-indexed vertices). Vertices are
    /// relabelled 1..keep.len() in the order given; the partition is dropped.
    pub fn induced(&self, keep: &[u32]) -> Self {
        let mut index = vec![0u32; self.n + 1];
        for (i, &v) in keep.iter().enumerate() {
            index[v as usize] = (i + 1) as u32;
        }
        let edges = self.edges.iter().copied().filter_map(|(u, v)| {
            let (iu, iv) = (index[u as usize], index[v as usize]);
            (iu != 0 && iv != 0).then_some((iu, iv))
        });
        Self::build(keep.len(), edges, None).expect("induced subgraph of a valid graph")
    }

    // ---- standard small graphs -------------------------------------------

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).unwrap()
    }

    pub fn cycle(len: usize) -> Self {
        assert!(len >= 3);
        let edges = (1..=len as u32).map(|v| (v, if v == len as u32 { 1 } else { v + 1 }));
        Self::new(len, edges).unwrap()
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n as u32).map(|v| (v, v + 1));
        Self::new(n, edges).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 1..=n as u32 {
            for v in (u + 1)..=n as u32 {
                edges.push((u, v));
            }
        }
        Self::new(n, edges).unwrap()
    }

    /// K_{a,b} with parts {1..a} and {a+1..a+b}, partition recorded.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 1..=a as u32 {
            for v in 1..=b as u32 {
                edges.push((u, a as u32 + v));
            }
        }
        let parts = (0..a + b).map(|i| if i < a { 1 } else { 2 }).collect();
        Self::partitioned(a + b, edges, parts).unwrap()
    }

    // ---- text format -----------------------------------------------------

    /// Parse the line-oriented graph format. Errors carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let err = |line: usize, kind: ParseErrorKind| GraphError::Parse { line, kind };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
            .filter(|(_, s)| !s.is_empty());

        let (header_line, header) = lines
            .next()
            .ok_or(err(1, ParseErrorKind::MalformedHeader))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("graph") {
            return Err(err(header_line, ParseErrorKind::MalformedHeader));
        }
        let n: usize = fields
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(err(header_line, ParseErrorKind::MalformedHeader))?;
        let m: usize = fields
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(err(header_line, ParseErrorKind::MalformedHeader))?;
        if fields.next().is_some() {
            return Err(err(header_line, ParseErrorKind::MalformedHeader));
        }

        let check_vertex = |line: usize, v: u32| {
            if v == 0 || v as usize > n {
                Err(err(line, ParseErrorKind::VertexOutOfRange { v, n }))
            } else {
                Ok(())
            }
        };

        let mut part_of: Vec<Option<u32>> = vec![None; n];
        let mut any_part = false;
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m);
        let mut seen = std::collections::HashSet::new();
        for (line, s) in lines {
            let mut fields = s.split_whitespace();
            match fields.next() {
                Some("part") => {
                    let vals: Vec<u32> = fields.map(|f| f.parse().unwrap_or(0)).collect();
                    let [v, i] = vals[..] else {
                        return Err(err(line, ParseErrorKind::MalformedPart));
                    };
                    check_vertex(line, v)?;
                    if i == 0 {
                        return Err(err(line, ParseErrorKind::PartIndexZero));
                    }
                    let slot = &mut part_of[(v - 1) as usize];
                    if slot.is_some() {
                        return Err(err(line, ParseErrorKind::DuplicatePart { v }));
                    }
                    *slot = Some(i);
                    any_part = true;
                }
                Some("e") => {
                    let vals: Vec<u32> = fields.map(|f| f.parse().unwrap_or(0)).collect();
                    let [u, v] = vals[..] else {
                        return Err(err(line, ParseErrorKind::MalformedEdge));
                    };
                    check_vertex(line, u)?;
                    check_vertex(line, v)?;
                    if u == v {
                        return Err(err(line, ParseErrorKind::Loop { v: u }));
                    }
                    if u > v {
                        return Err(err(line, ParseErrorKind::MalformedEdge));
                    }
                    if !seen.insert((u, v)) {
                        return Err(err(line, ParseErrorKind::DuplicateEdge { u, v }));
                    }
                    if edges.len() == m {
                        return Err(err(line, ParseErrorKind::TooManyEdges { m }));
                    }
                    if any_part {
                        if let (Some(pu), Some(pv)) =
                            (part_of[(u - 1) as usize], part_of[(v - 1) as usize])
                        {
                            if pu == pv {
                                return Err(err(
                                    line,
                                    ParseErrorKind::CrossPartViolation { u, v, part: pu },
                                ));
                            }
                        }
                    }
                    edges.push((u, v));
                }
                Some(other) => {
                    return Err(err(line, ParseErrorKind::UnknownDirective(other.into())));
                }
                None => unreachable!("blank lines filtered"),
            }
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: text.lines().count().max(1),
                kind: ParseErrorKind::EdgeCountMismatch {
                    declared: m,
                    found: edges.len(),
                },
            });
        }
        let part_of = if any_part {
            let mut full = Vec::with_capacity(n);
            for (i, p) in part_of.into_iter().enumerate() {
                match p {
                    Some(p) => full.push(p),
                    None => return Err(GraphError::VertexWithoutPart { v: (i + 1) as u32 }),
                }
            }
            Some(full)
        } else {
            None
        };
        Self::build(n, edges, part_of)
    }

    /// Canonical serialization; `parse` of the result reproduces the graph.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {}", self.n, self.edges.len()).unwrap();
        if let Some(parts) = &self.part_of {
            for (i, p) in parts.iter().enumerate() {
                writeln!(out, "part {} {}", i + 1, p).unwrap();
            }
        }
        for &(u, v) in &self.edges {
            writeln!(out, "e {u} {v}").unwrap();
        }
        out
    }
}
