//! End-to-end pipeline runs and their on-disk bundle format.
//!
//! A bundle directory holds everything a run produced, in canonical text:
//!
//! * `params.txt` — `key=value` lines for every construction parameter;
//! * `base.graph` — the sampled base graph G_0;
//! * `labelling.txt` — the split labelling, one `f u v s t` line per edge;
//! * `gadget_<i>.graph` — the padded gadget of part i;
//! * `G.graph` — the assembled graph;
//! * `assignment.txt` (and `assignment_<j>.txt` for further targets) — the
//!   adversarial assignments;
//! * `report.txt` — structural verification and the feasibility report.
//!
//! Identical parameters produce byte-identical bundles.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use super::{build_bad_assignment, build_graph, feasibility_report, sample_base_graph,
            sample_split_labelling, verify_construction, AdversaryError, BadAssignment,
            BuildError, ConstructedGraph, ConstructionParams, ConstructionReport,
            FeasibilityReport, LabellingParseError, LargenessParams, ParamError, SamplingError,
            SplitLabelling};
use crate::assignments::ListAssignment;
use crate::gadgets::{read_gadget, write_gadget, Gadget, GadgetError};
use crate::graph::{GraphError, PartiteGraph};
use crate::partitions::Partition;
use crate::rng::{rng_for, stream};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Adversary(#[from] AdversaryError),
}

/// Everything one seeded pipeline run produces.
#[derive(Clone, Debug)]
pub struct ConstructionBundle {
    pub graph: ConstructedGraph,
    pub deleted_edges: Vec<(u32, u32)>,
    pub pre_surgery_edges: usize,
    /// One adversarial assignment per target, aligned with `params.targets`.
    pub assignments: Vec<BadAssignment>,
    /// One structural report per assignment.
    pub reports: Vec<ConstructionReport>,
    pub feasibility: FeasibilityReport,
}

/// Run the whole pipeline for validated parameters: sample G_0 (girth
/// repaired), sample the labelling, assemble the graph, build the
/// adversarial assignment for every target, verify, and evaluate the
/// feasibility report. Deterministic in `params.seed`.
pub fn run_construction(
    params: &ConstructionParams,
    gadgets: &[Gadget],
    decide_cap: Option<usize>,
) -> Result<ConstructionBundle, ConstructError> {
    let mut rng = rng_for(params.seed, stream::BASE_GRAPH);
    let sample = sample_base_graph(params, &mut rng)?;
    let mut rng = rng_for(params.seed, stream::LABELLING);
    let labelling = sample_split_labelling(&sample.graph, params.r, &mut rng);
    let graph = build_graph(params, &sample.graph, &labelling, gadgets)?;
    let mut assignments = Vec::with_capacity(params.targets.len());
    let mut reports = Vec::with_capacity(params.targets.len());
    for (idx, target) in params.targets.iter().enumerate() {
        let mut rng = rng_for(params.seed, stream::ASSIGNMENT + idx as u64);
        let bad = build_bad_assignment(params, &graph, target, &mut rng)?;
        reports.push(verify_construction(&graph, &bad.assignment, decide_cap));
        assignments.push(bad);
    }
    let feasibility = feasibility_report(&LargenessParams::from(params));
    Ok(ConstructionBundle {
        graph,
        deleted_edges: sample.deleted_edges,
        pre_surgery_edges: sample.pre_surgery_edges,
        assignments,
        reports,
        feasibility,
    })
}

fn params_text(p: &ConstructionParams) -> String {
    let targets = p
        .targets
        .iter()
        .map(Partition::plain)
        .collect::<Vec<_>>()
        .join(";");
    let mut out = String::new();
    writeln!(out, "lambda={}", p.lambda.plain()).unwrap();
    writeln!(out, "targets={targets}").unwrap();
    writeln!(out, "g={}", p.g).unwrap();
    writeln!(out, "epsilon={}", p.epsilon).unwrap();
    writeln!(out, "n={}", p.n).unwrap();
    writeln!(out, "k={}", p.k).unwrap();
    writeln!(out, "q={}", p.q).unwrap();
    writeln!(out, "m={}", p.m).unwrap();
    writeln!(out, "r={}", p.r).unwrap();
    writeln!(out, "t={}", p.t).unwrap();
    writeln!(out, "seed={}", p.seed).unwrap();
    out
}

fn assignment_file_name(idx: usize) -> String {
    if idx == 0 {
        "assignment.txt".to_string()
    } else {
        format!("assignment_{}.txt", idx + 1)
    }
}

/// Write the bundle directory (created if missing).
pub fn write_bundle(bundle: &ConstructionBundle, dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let params = bundle.graph.params();
    fs::write(dir.join("params.txt"), params_text(params))?;
    fs::write(dir.join("base.graph"), bundle.graph.base().serialize())?;
    fs::write(
        dir.join("labelling.txt"),
        bundle.graph.labelling().serialize(bundle.graph.base()),
    )?;
    for (i, gadget) in bundle.graph.gadgets().iter().enumerate() {
        fs::write(
            dir.join(format!("gadget_{}.graph", i + 1)),
            write_gadget(gadget),
        )?;
    }
    fs::write(dir.join("G.graph"), bundle.graph.flat().serialize())?;
    for (idx, bad) in bundle.assignments.iter().enumerate() {
        fs::write(
            dir.join(assignment_file_name(idx)),
            bad.assignment.serialize(),
        )?;
    }
    let mut report = String::new();
    writeln!(report, "pre_surgery_edges={}", bundle.pre_surgery_edges).unwrap();
    writeln!(report, "deleted_edges={}", bundle.deleted_edges.len()).unwrap();
    for (idx, r) in bundle.reports.iter().enumerate() {
        writeln!(report, "[target {}]", params.targets[idx].plain()).unwrap();
        report.push_str(&r.to_string());
    }
    writeln!(report, "[feasibility]").unwrap();
    report.push_str(&bundle.feasibility.to_string());
    fs::write(dir.join("report.txt"), report)?;
    Ok(())
}

#[derive(Debug, Error)]
pub enum BundleReadError {
    #[error("cannot read {file}: {source}")]
    Io {
        file: String,
        source: io::Error,
    },
    #[error("params.txt: missing key {key}")]
    MissingKey { key: &'static str },
    #[error("params.txt: bad value for {key}")]
    BadValue { key: &'static str },
    #[error("params.txt: stored {key}={stored} disagrees with the derived value {derived}")]
    Inconsistent {
        key: &'static str,
        stored: String,
        derived: String,
    },
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("{file}: {source}")]
    Graph {
        file: String,
        source: GraphError,
    },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Labelling(#[from] LabellingParseError),
    #[error("assignment.txt: {0}")]
    Assignment(#[from] crate::assignments::AssignmentParseError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// A bundle loaded back from disk: the graph as stored (so that injected
/// corruption is visible to the verifier) plus its assignments.
pub struct LoadedBundle {
    pub graph: ConstructedGraph,
    pub assignments: Vec<ListAssignment>,
}

/// Read a bundle directory. The stored derived parameters are re-derived
/// and must agree; the flat graph is taken as stored, not rebuilt.
pub fn read_bundle(dir: &Path) -> Result<LoadedBundle, BundleReadError> {
    let read = |name: String| {
        fs::read_to_string(dir.join(&name)).map_err(|source| BundleReadError::Io { file: name, source })
    };
    let params_text = read("params.txt".into())?;
    let mut values: std::collections::HashMap<&str, &str> = Default::default();
    for line in params_text.lines() {
        if let Some((key, value)) = line.split_once('=') {
            values.insert(key.trim(), value.trim());
        }
    }
    fn get<'a>(
        values: &std::collections::HashMap<&str, &'a str>,
        key: &'static str,
    ) -> Result<&'a str, BundleReadError> {
        values
            .get(key)
            .copied()
            .ok_or(BundleReadError::MissingKey { key })
    }
    let lambda = Partition::parse(get(&values, "lambda")?)
        .map_err(|_| BundleReadError::BadValue { key: "lambda" })?;
    let targets = get(&values, "targets")?
        .split(';')
        .map(Partition::parse)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| BundleReadError::BadValue { key: "targets" })?;
    fn num<T: std::str::FromStr>(
        values: &std::collections::HashMap<&str, &str>,
        key: &'static str,
    ) -> Result<T, BundleReadError> {
        get(values, key)?
            .parse()
            .map_err(|_| BundleReadError::BadValue { key })
    }
    let g: usize = num(&values, "g")?;
    let epsilon: f64 = num(&values, "epsilon")?;
    let n: usize = num(&values, "n")?;
    let seed: u64 = num(&values, "seed")?;

    // gadget files, verified on read
    let q_parts = lambda.q();
    let mut gadgets = Vec::with_capacity(q_parts);
    for (i, &k_i) in lambda.parts().iter().enumerate() {
        let text = read(format!("gadget_{}.graph", i + 1))?;
        gadgets.push(read_gadget(&text, k_i, g)?);
    }
    let (params, _) = ConstructionParams::new(
        lambda,
        targets.clone(),
        g,
        epsilon,
        n,
        seed,
        &gadgets,
    )?;
    // stored derived values must match what the inputs derive
    for (key, derived) in [
        ("k", params.k.to_string()),
        ("q", params.q.to_string()),
        ("m", params.m.to_string()),
        ("r", params.r.to_string()),
        ("t", params.t.to_string()),
    ] {
        let stored = get(&values, key)?;
        if stored != derived {
            return Err(BundleReadError::Inconsistent {
                key,
                stored: stored.to_string(),
                derived,
            });
        }
    }

    let base = PartiteGraph::parse(&read("base.graph".into())?).map_err(|source| {
        BundleReadError::Graph {
            file: "base.graph".into(),
            source,
        }
    })?;
    let labelling = SplitLabelling::parse(&read("labelling.txt".into())?, &base, params.r)?;
    let flat = PartiteGraph::parse(&read("G.graph".into())?).map_err(|source| {
        BundleReadError::Graph {
            file: "G.graph".into(),
            source,
        }
    })?;
    let mut assignments = Vec::with_capacity(targets.len());
    for idx in 0..targets.len() {
        let text = read(assignment_file_name(idx))?;
        assignments.push(ListAssignment::parse(&text)?);
    }
    let graph = ConstructedGraph::from_parts(params, base, labelling, gadgets, flat)?;
    Ok(LoadedBundle { graph, assignments })
}
