//! Exact structural verification of a constructed graph and its adversarial
//! assignment.

use std::collections::HashMap;
use std::fmt;

use super::{family_size, ConstructedGraph};
use crate::assignments::{l_colour, validate_assignment, ListAssignment};
use crate::graph::Girth;

/// Degeneracy check of one part-induced subgraph against its k_i − 1 cap.
#[derive(Clone, Debug)]
pub struct PartCheck {
    pub part: u32,
    pub degeneracy: usize,
    pub cap: usize,
    pub ok: bool,
}

/// Outcome of [`verify_construction`]. `passed` covers the four structural
/// checks; the optional exact colourability verdict is informational.
#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub girth: Girth,
    pub girth_target: usize,
    pub girth_ok: bool,
    pub parts: Vec<PartCheck>,
    pub assignment_ok: bool,
    pub assignment_error: Option<String>,
    pub block_constant_ok: bool,
    pub balance_ok: bool,
    pub cross_ok: bool,
    /// A block pair joined by more than one edge, when `!cross_ok`.
    pub cross_offender: Option<(u32, u32)>,
    /// Exact L-colourability, decided only under the size cap.
    pub decided_colourable: Option<bool>,
}

impl ConstructionReport {
    /// The four structural checks: girth, per-part degeneracy, assignment
    /// validity (with block-constant balanced lists), cross-edge uniqueness.
    pub fn passed(&self) -> bool {
        self.girth_ok
            && self.parts.iter().all(|p| p.ok)
            && self.assignment_ok
            && self.block_constant_ok
            && self.balance_ok
            && self.cross_ok
    }
}

impl fmt::Display for ConstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "girth={} target={} ok={}",
            self.girth, self.girth_target, self.girth_ok
        )?;
        for p in &self.parts {
            writeln!(
                f,
                "part={} degeneracy={} cap={} ok={}",
                p.part, p.degeneracy, p.cap, p.ok
            )?;
        }
        writeln!(f, "assignment_ok={}", self.assignment_ok)?;
        if let Some(err) = &self.assignment_error {
            writeln!(f, "assignment_error={err}")?;
        }
        writeln!(f, "block_constant_ok={}", self.block_constant_ok)?;
        writeln!(f, "balance_ok={}", self.balance_ok)?;
        writeln!(f, "cross_ok={}", self.cross_ok)?;
        if let Some((u, v)) = self.cross_offender {
            writeln!(f, "cross_offender={u},{v}")?;
        }
        match self.decided_colourable {
            Some(verdict) => writeln!(f, "decided_colourable={verdict}")?,
            None => writeln!(f, "decided_colourable=skipped")?,
        }
        writeln!(f, "passed={}", self.passed())
    }
}

/// Check exactly: (a) girth ≥ g; (b) every part-induced subgraph has
/// degeneracy ≤ k_i − 1; (c) `l` validates as a target-assignment with
/// block-constant lists, |C′_j| = 2k′_j − 1, and exact n/|𝓛| balance per
/// part; (d) at most one edge between any two blocks. When the flat graph
/// has at most `decide_cap` vertices, also decide L-colourability exactly.
pub fn verify_construction(
    graph: &ConstructedGraph,
    l: &ListAssignment,
    decide_cap: Option<usize>,
) -> ConstructionReport {
    let params = graph.params();
    let flat = graph.flat();

    // (a) girth
    let girth = flat.girth();
    let girth_ok = girth.at_least(params.g);

    // (b) per-part degeneracy
    let parts = (1..=params.k as u32)
        .map(|part| {
            let vertices = graph.flat_part_vertices(part);
            let induced = flat.induced(&vertices);
            let (degeneracy, _) = induced.degeneracy();
            let cap = (params.lambda.parts()[(part - 1) as usize] - 1) as usize;
            PartCheck {
                part,
                degeneracy,
                cap,
                ok: degeneracy <= cap,
            }
        })
        .collect();

    // (c) the assignment: a valid lambda'-assignment with the adversarial shape
    let validation = validate_assignment(flat, l);
    let mut assignment_ok = validation.is_ok();
    let mut assignment_error = validation.err().map(|e| e.to_string());
    let target = l.lambda();
    for (j, group) in l.groups().iter().enumerate() {
        let expect = (2 * target.parts()[j] - 1) as usize;
        if group.len() != expect {
            assignment_ok = false;
            assignment_error.get_or_insert_with(|| {
                format!(
                    "colour group {} has {} colours, expected 2k'-1 = {expect}",
                    j + 1,
                    group.len()
                )
            });
        }
    }

    let r = params.r as u32;
    let block_constant_ok = (1..=graph.base().n() as u32).all(|v| {
        let first = l.list(graph.flat_id(v, 1));
        (2..=r).all(|s| l.list(graph.flat_id(v, s)) == first)
    });

    let balance_ok = match family_size(target) {
        Some(family) if (params.n as u64).is_multiple_of(family) => {
            let per_member = params.n as u64 / family;
            (1..=params.k as u32).all(|part| {
                let mut counts: HashMap<&[u32], u64> = HashMap::new();
                for v in graph.base().vertices_in_part(part) {
                    *counts.entry(l.list(graph.flat_id(v, 1))).or_insert(0) += 1;
                }
                counts.len() as u64 == family && counts.values().all(|&c| c == per_member)
            })
        }
        _ => false,
    };

    // (d) at most one edge between any two blocks
    let mut cross_counts: HashMap<(u32, u32), u32> = HashMap::new();
    for &(a, b) in flat.edges() {
        let va = (a - 1) / r + 1;
        let vb = (b - 1) / r + 1;
        if va != vb {
            *cross_counts.entry((va.min(vb), va.max(vb))).or_insert(0) += 1;
        }
    }
    let cross_offender = cross_counts
        .iter()
        .filter(|(_, &c)| c > 1)
        .map(|(&pair, _)| pair)
        .min();
    let cross_ok = cross_offender.is_none();

    // (e) optional exact decision
    let decided_colourable = match decide_cap {
        Some(cap) if flat.n() <= cap && assignment_ok => Some(l_colour(flat, l).is_some()),
        _ => None,
    };

    ConstructionReport {
        girth,
        girth_target: params.g,
        girth_ok,
        parts,
        assignment_ok,
        assignment_error,
        block_constant_ok,
        balance_ok,
        cross_ok,
        cross_offender,
        decided_colourable,
    }
}
