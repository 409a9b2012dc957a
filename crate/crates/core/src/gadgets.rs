//! Gadget graphs: for a part size k_i, a (k_i−1)-degenerate graph of girth
//! at least g that is not (k_i−1)-colourable.
//!
//! Explicit constructions exist for k_i ∈ {1, 2, 3}: a vertex, an edge, and
//! the smallest odd cycle of length ≥ g. Larger part sizes need externally
//! supplied graphs, which [`verify_gadget`] checks exactly; the three
//! defining properties are always verified, never assumed.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{is_k_colourable, Girth, GraphError, PartiteGraph};
use crate::partitions::Partition;

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error(
        "no built-in gadget for part size {part}; supply a graph file and check it with `verify`"
    )]
    UnsupportedPartSize { part: u32 },
    #[error("part size must be positive")]
    ZeroPart,
    #[error("cannot pad a gadget of order {order} down to {target}")]
    PadBelowOrder { order: usize, target: usize },
    #[error("supplied gadget fails verification: {report}")]
    FailsVerification { report: GadgetReport },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A verified gadget for one part of λ.
#[derive(Clone, Debug)]
pub struct Gadget {
    graph: PartiteGraph,
    part: u32,
    target_girth: usize,
}

impl Gadget {
    pub fn graph(&self) -> &PartiteGraph {
        &self.graph
    }

    /// The part size k_i this gadget serves.
    pub fn part(&self) -> u32 {
        self.part
    }

    pub fn target_girth(&self) -> usize {
        self.target_girth
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }
}

/// Outcome of checking the three gadget properties exactly.
#[derive(Clone, Debug)]
pub struct GadgetReport {
    pub part: u32,
    pub target_girth: usize,
    pub degeneracy: usize,
    pub degeneracy_ok: bool,
    pub girth: Girth,
    pub girth_ok: bool,
    /// Whether the graph is (k_i−1)-colourable; must be false.
    pub colourable: bool,
}

impl GadgetReport {
    pub fn ok(&self) -> bool {
        self.degeneracy_ok && self.girth_ok && !self.colourable
    }
}

impl std::fmt::Display for GadgetReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "degeneracy={} (<= {}: {}), girth={} (>= {}: {}), {}-colourable={} (want false)",
            self.degeneracy,
            self.part.saturating_sub(1),
            self.degeneracy_ok,
            self.girth,
            self.target_girth,
            self.girth_ok,
            self.part.saturating_sub(1),
            self.colourable,
        )
    }
}

/// Check the three gadget properties of `j` for part size `k_i` and girth
/// target `g`, each via the exact graph-core decisions.
pub fn verify_gadget(j: &PartiteGraph, k_i: u32, g: usize) -> GadgetReport {
    let (degeneracy, _) = j.degeneracy();
    let girth = j.girth();
    let colourable = is_k_colourable(j, (k_i - 1) as usize).is_some();
    GadgetReport {
        part: k_i,
        target_girth: g,
        degeneracy,
        degeneracy_ok: degeneracy <= (k_i - 1) as usize,
        girth,
        girth_ok: girth.at_least(g),
        colourable,
    }
}

/// Built-in gadget of minimum order for k_i ∈ {1, 2, 3}.
///
/// * k_i = 1 — a single vertex (0-degenerate, not 0-colourable);
/// * k_i = 2 — a single edge (a forest, so the girth is infinite);
/// * k_i = 3 — the smallest odd cycle of length ≥ max(g, 3).
pub fn make_gadget(k_i: u32, g: usize) -> Result<Gadget, GadgetError> {
    let graph = match k_i {
        0 => return Err(GadgetError::ZeroPart),
        1 => PartiteGraph::empty(1),
        2 => PartiteGraph::new(2, [(1, 2)]).unwrap(),
        3 => {
            let mut len = g.max(3);
            if len.is_multiple_of(2) {
                len += 1;
            }
            PartiteGraph::cycle(len)
        }
        part => return Err(GadgetError::UnsupportedPartSize { part }),
    };
    let gadget = Gadget {
        graph,
        part: k_i,
        target_girth: g,
    };
    debug_assert!(verify_gadget(gadget.graph(), k_i, g).ok());
    Ok(gadget)
}

/// Wrap a user-supplied graph as a gadget after verifying all three
/// properties exactly.
pub fn gadget_from_graph(j: PartiteGraph, k_i: u32, g: usize) -> Result<Gadget, GadgetError> {
    if k_i == 0 {
        return Err(GadgetError::ZeroPart);
    }
    let report = verify_gadget(&j, k_i, g);
    if !report.ok() {
        return Err(GadgetError::FailsVerification { report });
    }
    Ok(Gadget {
        graph: j,
        part: k_i,
        target_girth: g,
    })
}

/// Pad with isolated vertices to order exactly `r`. Isolated vertices change
/// neither degeneracy, nor girth, nor non-colourability.
pub fn pad_to_order(gadget: Gadget, r: usize) -> Result<Gadget, GadgetError> {
    if r < gadget.order() {
        return Err(GadgetError::PadBelowOrder {
            order: gadget.order(),
            target: r,
        });
    }
    if r == gadget.order() {
        return Ok(gadget);
    }
    let graph = gadget.graph.with_extra_isolated(r - gadget.order());
    Ok(Gadget {
        graph,
        part: gadget.part,
        target_girth: gadget.target_girth,
    })
}

/// One gadget per part of λ (built-ins where available, otherwise taken from
/// `supplied` by part size), padded to the common order r = max order.
/// Returns the padded family, indexed like λ's parts, together with r.
pub fn gadget_family(
    lambda: &Partition,
    g: usize,
    supplied: &[Gadget],
) -> Result<(Vec<Gadget>, usize), GadgetError> {
    let mut family = Vec::with_capacity(lambda.q());
    for &k_i in lambda.parts() {
        let found = supplied
            .iter()
            .find(|s| s.part == k_i && s.target_girth >= g);
        let gadget = match found {
            Some(s) => s.clone(),
            None => make_gadget(k_i, g)?,
        };
        family.push(gadget);
    }
    let r = family.iter().map(Gadget::order).max().unwrap_or(0);
    let family = family
        .into_iter()
        .map(|j| pad_to_order(j, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((family, r))
}

/// Gadget file: the graph-core text format preceded by a comment header
/// recording the part size and girth target.
pub fn write_gadget(gadget: &Gadget) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "# gadget k={} g={}",
        gadget.part, gadget.target_girth
    )
    .unwrap();
    out.push_str(&gadget.graph.serialize());
    out
}

/// Read a gadget file, verifying the three properties against `k_i` and `g`.
pub fn read_gadget(text: &str, k_i: u32, g: usize) -> Result<Gadget, GadgetError> {
    let graph = PartiteGraph::parse(text)?;
    gadget_from_graph(graph, k_i, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_in_gadgets_verify() {
        for g in 1..=9 {
            for k_i in 1..=3 {
                let gadget = make_gadget(k_i, g).unwrap();
                assert!(verify_gadget(gadget.graph(), k_i, g).ok(), "k={k_i} g={g}");
            }
        }
    }

    #[test]
    fn gadget_orders() {
        // single vertex, single edge
        assert_eq!(make_gadget(1, 7).unwrap().order(), 1);
        assert_eq!(make_gadget(2, 7).unwrap().order(), 2);
        // smallest odd cycle of length >= max(g, 3)
        assert_eq!(make_gadget(3, 5).unwrap().order(), 5);
        assert_eq!(make_gadget(3, 6).unwrap().order(), 7);
        assert_eq!(make_gadget(3, 1).unwrap().order(), 3);
        assert_eq!(make_gadget(3, 4).unwrap().order(), 5);
    }

    #[test]
    fn unsupported_part_size() {
        assert!(matches!(
            make_gadget(4, 5),
            Err(GadgetError::UnsupportedPartSize { part: 4 })
        ));
    }

    #[test]
    fn verify_rejects_wrong_properties() {
        // girth violation: C5 against girth target 6
        let c5 = PartiteGraph::cycle(5);
        let report = verify_gadget(&c5, 3, 6);
        assert!(!report.ok());
        assert!(!report.girth_ok && report.degeneracy_ok && !report.colourable);
        // degeneracy violation: K4 is 3-degenerate, over the k_i-1 = 2 cap
        let k4 = PartiteGraph::complete(4);
        let report = verify_gadget(&k4, 3, 3);
        assert!(!report.ok());
        assert!(!report.degeneracy_ok);
        // colourability violation: an even cycle is 2-colourable
        let c6 = PartiteGraph::cycle(6);
        let report = verify_gadget(&c6, 3, 5);
        assert!(report.colourable && !report.ok());
    }

    #[test]
    fn padding_preserves_the_three_properties() {
        let gadget = make_gadget(2, 5).unwrap();
        let padded = pad_to_order(gadget, 5).unwrap();
        assert_eq!(padded.order(), 5);
        assert_eq!(padded.graph().m(), 1);
        assert!(verify_gadget(padded.graph(), 2, 5).ok());
        // identity pad
        let gadget = make_gadget(3, 5).unwrap();
        let same = pad_to_order(gadget.clone(), gadget.order()).unwrap();
        assert_eq!(same.graph(), gadget.graph());
        // cannot shrink
        assert!(pad_to_order(make_gadget(3, 5).unwrap(), 3).is_err());
    }

    #[test]
    fn family_pads_to_common_max_order() {
        let lambda = Partition::parse("3,2,1").unwrap();
        let (family, r) = gadget_family(&lambda, 5, &[]).unwrap();
        assert_eq!(r, 5); // the C5 dominates
        assert!(family.iter().all(|j| j.order() == 5));
        // family order follows lambda's stored (descending) parts
        assert_eq!(
            family.iter().map(Gadget::part).collect::<Vec<_>>(),
            vec![3, 2, 1]
        );
        for j in &family {
            assert!(verify_gadget(j.graph(), j.part(), 5).ok());
        }
    }

    #[test]
    fn gadget_file_round_trip() {
        let gadget = make_gadget(3, 5).unwrap();
        let text = write_gadget(&gadget);
        assert!(text.starts_with("# gadget k=3 g=5\n"));
        let back = read_gadget(&text, 3, 5).unwrap();
        assert_eq!(back.graph(), gadget.graph());
        // verification is applied on read
        assert!(read_gadget(&text, 3, 6).is_err());
    }

    #[test]
    fn user_supplied_gadget_for_large_part() {
        // K4 works as a k_i = 4 gadget at girth target 3
        let k4 = PartiteGraph::complete(4);
        let gadget = gadget_from_graph(k4, 4, 3).unwrap();
        let lambda = Partition::parse("4,1").unwrap();
        let (family, r) = gadget_family(&lambda, 3, std::slice::from_ref(&gadget)).unwrap();
        assert_eq!(r, 4);
        assert_eq!(family[0].part(), 4);
        // without the supplied gadget the family cannot be built
        assert!(gadget_family(&lambda, 3, &[]).is_err());
    }
}
