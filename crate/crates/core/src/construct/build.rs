//! Assembly of the split graph: blocks, cross edges, and gadget copies.

use thiserror::Error;

use super::{ConstructionParams, SplitLabelling};
use crate::gadgets::Gadget;
use crate::graph::PartiteGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("gadget for part {part} has order {order}, expected the common r = {r}")]
    GadgetOrderMismatch { part: u32, order: usize, r: usize },
    #[error("expected one gadget per part of lambda ({expected}), got {got}")]
    GadgetCountMismatch { expected: usize, got: usize },
    #[error("base graph must be k-partite with k = {expected} parts, found {got}")]
    BasePartCount { expected: usize, got: usize },
    #[error("part {part} of the base graph has {actual} vertices, expected n = {expected}")]
    BasePartSize {
        part: u32,
        expected: usize,
        actual: usize,
    },
    #[error("labelling covers {got} edges, base graph has {expected}")]
    LabelCountMismatch { expected: usize, got: usize },
    #[error("label out of range for r = {r}")]
    LabelOutOfRange { r: usize },
    #[error("flat graph has {got} vertices, expected k·n·r = {expected}")]
    FlatSizeMismatch { expected: usize, got: usize },
}

/// The assembled graph: base vertex v becomes the block S_v = {v}×\[r\]
/// (flat ids (v−1)·r+1 ..= v·r), each base edge becomes the single cross
/// edge its label routes it to, and the padded gadget of v's part is planted
/// on every block.
#[derive(Clone, Debug)]
pub struct ConstructedGraph {
    params: ConstructionParams,
    base: PartiteGraph,
    labelling: SplitLabelling,
    gadgets: Vec<Gadget>,
    flat: PartiteGraph,
}

impl ConstructedGraph {
    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    pub fn base(&self) -> &PartiteGraph {
        &self.base
    }

    pub fn labelling(&self) -> &SplitLabelling {
        &self.labelling
    }

    pub fn gadgets(&self) -> &[Gadget] {
        &self.gadgets
    }

    /// The whole construction as one graph on k·n·r vertices. Unpartitioned
    /// as a `PartiteGraph`, since gadget edges run inside parts; the part
    /// structure lives in [`Self::flat_part_of`].
    pub fn flat(&self) -> &PartiteGraph {
        &self.flat
    }

    /// Part of a flat vertex: the part of its base vertex.
    pub fn flat_part_of(&self, flat: u32) -> u32 {
        let (v, _) = self.base_of(flat);
        self.base.part(v).expect("base graph is partitioned")
    }

    /// Flat vertices of part i (the union of the blocks of V_i), ascending.
    pub fn flat_part_vertices(&self, part: u32) -> Vec<u32> {
        self.base
            .vertices_in_part(part)
            .into_iter()
            .flat_map(|v| self.block(v))
            .collect()
    }

    pub fn r(&self) -> usize {
        self.params.r
    }

    /// Flat id of copy `s` (1-indexed) of base vertex `v`.
    pub fn flat_id(&self, v: u32, s: u32) -> u32 {
        (v - 1) * self.params.r as u32 + s
    }

    /// (base vertex, copy) of a flat vertex.
    pub fn base_of(&self, flat: u32) -> (u32, u32) {
        let r = self.params.r as u32;
        ((flat - 1) / r + 1, (flat - 1) % r + 1)
    }

    /// Flat ids of the block S_v.
    pub fn block(&self, v: u32) -> std::ops::RangeInclusive<u32> {
        self.flat_id(v, 1)..=self.flat_id(v, self.params.r as u32)
    }

    /// Re-assemble from stored pieces (sizes are checked; structure is the
    /// verifier's job, so that corrupted inputs are reported, not rejected).
    pub fn from_parts(
        params: ConstructionParams,
        base: PartiteGraph,
        labelling: SplitLabelling,
        gadgets: Vec<Gadget>,
        flat: PartiteGraph,
    ) -> Result<Self, BuildError> {
        check_inputs(&params, &base, &labelling, &gadgets)?;
        let expected = params.k * params.n * params.r;
        if flat.n() != expected {
            return Err(BuildError::FlatSizeMismatch {
                expected,
                got: flat.n(),
            });
        }
        Ok(ConstructedGraph {
            params,
            base,
            labelling,
            gadgets,
            flat,
        })
    }
}

fn check_inputs(
    params: &ConstructionParams,
    base: &PartiteGraph,
    labelling: &SplitLabelling,
    gadgets: &[Gadget],
) -> Result<(), BuildError> {
    if gadgets.len() != params.lambda.q() {
        return Err(BuildError::GadgetCountMismatch {
            expected: params.lambda.q(),
            got: gadgets.len(),
        });
    }
    for gadget in gadgets {
        if gadget.order() != params.r {
            return Err(BuildError::GadgetOrderMismatch {
                part: gadget.part(),
                order: gadget.order(),
                r: params.r,
            });
        }
    }
    if base.k() != params.k {
        return Err(BuildError::BasePartCount {
            expected: params.k,
            got: base.k(),
        });
    }
    for i in 1..=params.k as u32 {
        let size = base.vertices_in_part(i).len();
        if size != params.n {
            return Err(BuildError::BasePartSize {
                part: i,
                expected: params.n,
                actual: size,
            });
        }
    }
    if labelling.labels().len() != base.m() {
        return Err(BuildError::LabelCountMismatch {
            expected: base.m(),
            got: labelling.labels().len(),
        });
    }
    if labelling.r() != params.r
        || labelling
            .labels()
            .iter()
            .any(|&(s, t)| s == 0 || t == 0 || s as usize > params.r || t as usize > params.r)
    {
        return Err(BuildError::LabelOutOfRange { r: params.r });
    }
    Ok(())
}

/// Build the constructed graph from its sampled ingredients.
pub fn build_graph(
    params: &ConstructionParams,
    base: &PartiteGraph,
    labelling: &SplitLabelling,
    gadgets: &[Gadget],
) -> Result<ConstructedGraph, BuildError> {
    check_inputs(params, base, labelling, gadgets)?;
    let r = params.r as u32;
    let flat_n = params.k * params.n * params.r;
    let flat_id = |v: u32, s: u32| (v - 1) * r + s;

    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(base.m() + base.n() * params.r);
    // one cross edge per base edge, routed by the label; the first label
    // coordinate belongs to the endpoint in the lower-indexed part
    for idx in 0..base.m() {
        let ((u, s), (v, t)) = labelling.oriented(base, idx);
        edges.push((flat_id(u, s), flat_id(v, t)));
    }
    // a gadget copy on every block
    for v in 1..=base.n() as u32 {
        let part = base.part(v).expect("base graph is partitioned");
        let gadget = &gadgets[(part - 1) as usize];
        for &(a, b) in gadget.graph().edges() {
            edges.push((flat_id(v, a), flat_id(v, b)));
        }
    }
    let flat = PartiteGraph::new(flat_n, edges)
        .expect("labels route every base edge to a distinct block pair cell");
    Ok(ConstructedGraph {
        params: params.clone(),
        base: base.clone(),
        labelling: labelling.clone(),
        gadgets: gadgets.to_vec(),
        flat,
    })
}
