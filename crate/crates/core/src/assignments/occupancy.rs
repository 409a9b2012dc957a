//! Occupancy of colour groups by parts of a constructed graph.
//!
//! Under a proper list colouring φ, group C′_j is *occupied* by part i when
//! at least k′_j of its colours are each used by at least ⌈nr/t⌉ vertices of
//! G_i (the subgraph induced on part i). N_i collects the occupied group
//! indices; in the adversarial analysis these sets are pairwise disjoint and
//! Σ_{j∈N_i} k′_j ≥ k_i whenever the construction's premises hold.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::ListAssignment;
use crate::construct::ConstructedGraph;
use crate::graph::Colouring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OccupancyError {
    #[error("colouring covers {got} vertices, the graph has {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("colouring is not proper at edge {u} {v}")]
    NotProper { u: u32, v: u32 },
    #[error("vertex {v} is coloured outside its list")]
    OutsideList { v: u32 },
}

/// Per-part sets N_i of occupied colour-group indices (1-based).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OccupancyReport {
    /// ⌈nr/t⌉ from the construction parameters.
    pub threshold: u64,
    /// `occupied[i-1]` is N_i.
    pub occupied: Vec<BTreeSet<usize>>,
}

impl OccupancyReport {
    pub fn n_i(&self, part: u32) -> &BTreeSet<usize> {
        &self.occupied[(part - 1) as usize]
    }

    pub fn pairwise_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        for set in &self.occupied {
            for &j in set {
                if !seen.insert(j) {
                    return false;
                }
            }
        }
        true
    }
}

/// Compute N_i for every part of the construction under the proper
/// L-colouring `phi`.
pub fn occupied_groups(
    graph: &ConstructedGraph,
    phi: &Colouring,
    l: &ListAssignment,
) -> Result<OccupancyReport, OccupancyError> {
    let flat = graph.flat();
    if phi.len() != flat.n() {
        return Err(OccupancyError::WrongLength {
            expected: flat.n(),
            got: phi.len(),
        });
    }
    for &(u, v) in flat.edges() {
        if phi.colour(u) == phi.colour(v) {
            return Err(OccupancyError::NotProper { u, v });
        }
    }
    for v in flat.vertices() {
        if !l.list(v).contains(&phi.colour(v)) {
            return Err(OccupancyError::OutsideList { v });
        }
    }
    let params = graph.params();
    let threshold = params.occupancy_threshold();
    let target = l.lambda();
    let mut occupied = Vec::with_capacity(params.k);
    for part in 1..=params.k as u32 {
        let mut usage: HashMap<u32, u64> = HashMap::new();
        for v in graph.flat_part_vertices(part) {
            *usage.entry(phi.colour(v)).or_insert(0) += 1;
        }
        let mut n_i = BTreeSet::new();
        for (j, group) in l.groups().iter().enumerate() {
            let heavy = group
                .iter()
                .filter(|c| usage.get(c).copied().unwrap_or(0) >= threshold)
                .count();
            if heavy >= target.parts()[j] as usize {
                n_i.insert(j + 1);
            }
        }
        occupied.push(n_i);
    }
    Ok(OccupancyReport {
        threshold,
        occupied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignments::{l_colour, validate_assignment};
    use crate::construct::{build_bad_assignment, build_graph, sample_base_graph,
                           sample_split_labelling, ConstructedGraph, ConstructionParams};
    use crate::graph::PartiteGraph;
    use crate::partitions::Partition;
    use crate::rng::{rng_for, stream};

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    /// K_{4,4} split trivially (r = 1); target {1} gives t = 2, so the
    /// occupancy threshold ⌈nr/t⌉ is 2. The assignment under test carries
    /// its own target partition {2}.
    fn k44_construction() -> ConstructedGraph {
        let (params, gadgets) =
            ConstructionParams::new(p("1,1"), vec![p("1")], 1, 0.2, 4, 0, &[]).unwrap();
        let base = PartiteGraph::partitioned(
            8,
            (1..=4u32).flat_map(|u| (5..=8u32).map(move |v| (u, v))),
            vec![1, 1, 1, 1, 2, 2, 2, 2],
        )
        .unwrap();
        let mut rng = rng_for(0, 0);
        let labelling = sample_split_labelling(&base, 1, &mut rng);
        build_graph(&params, &base, &labelling, &gadgets).unwrap()
    }

    fn k44_assignment(lists: Vec<Vec<u32>>) -> ListAssignment {
        ListAssignment::new(p("2"), lists, vec![vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn hand_computed_occupancy_on_k44() {
        let graph = k44_construction();
        assert_eq!(graph.params().occupancy_threshold(), 2);
        // part 1 lists all {1,2}; part 2 lists all contain colour 3
        let lists = vec![
            vec![1, 2],
            vec![1, 2],
            vec![1, 2],
            vec![1, 2],
            vec![1, 3],
            vec![1, 3],
            vec![2, 3],
            vec![2, 3],
        ];
        let l = k44_assignment(lists);
        assert_eq!(validate_assignment(graph.flat(), &l), Ok(()));
        // part 1 coloured 1,1,2,2; part 2 all 3: proper on K_{4,4}
        let phi = Colouring::new(vec![1, 1, 2, 2, 3, 3, 3, 3]);
        let report = occupied_groups(&graph, &phi, &l).unwrap();
        // part 1: colours 1 and 2 both reach the threshold and k'_1 = 2, so
        // the single group is occupied; part 2: only colour 3 is heavy
        assert_eq!(report.n_i(1), &BTreeSet::from([1]));
        assert_eq!(report.n_i(2), &BTreeSet::new());
        assert!(report.pairwise_disjoint());
    }

    #[test]
    fn occupancy_rejects_bad_colourings() {
        let graph = k44_construction();
        let lists = vec![
            vec![1, 2],
            vec![1, 2],
            vec![1, 2],
            vec![1, 2],
            vec![1, 3],
            vec![1, 3],
            vec![2, 3],
            vec![2, 3],
        ];
        let l = k44_assignment(lists);
        // improper: colour 1 on both ends of edge (1, 5)
        let phi = Colouring::new(vec![1, 1, 2, 2, 1, 3, 3, 3]);
        assert_eq!(
            occupied_groups(&graph, &phi, &l),
            Err(OccupancyError::NotProper { u: 1, v: 5 })
        );
        // outside the list: vertex 1 coloured 3
        let phi = Colouring::new(vec![3, 1, 2, 2, 1, 1, 2, 2]);
        assert!(matches!(
            occupied_groups(&graph, &phi, &l),
            Err(OccupancyError::OutsideList { .. }) | Err(OccupancyError::NotProper { .. })
        ));
        let phi = Colouring::new(vec![1; 4]);
        assert!(matches!(
            occupied_groups(&graph, &phi, &l),
            Err(OccupancyError::WrongLength { .. })
        ));
    }

    #[test]
    fn pipeline_occupancy_is_consistent_with_a_direct_recount() {
        let (params, gadgets) =
            ConstructionParams::new(p("1,1"), vec![p("2")], 5, 0.04, 6, 41, &[]).unwrap();
        let mut rng = rng_for(params.seed, stream::BASE_GRAPH);
        let sample = sample_base_graph(&params, &mut rng).unwrap();
        let mut rng = rng_for(params.seed, stream::LABELLING);
        let labelling = sample_split_labelling(&sample.graph, params.r, &mut rng);
        let graph = build_graph(&params, &sample.graph, &labelling, &gadgets).unwrap();
        let mut rng = rng_for(params.seed, stream::ASSIGNMENT);
        let bad = build_bad_assignment(&params, &graph, &p("2"), &mut rng).unwrap();
        let l = &bad.assignment;
        let Some(phi) = l_colour(graph.flat(), l) else {
            return; // already a non-choosability witness for this seed
        };
        let report = occupied_groups(&graph, &phi, l).unwrap();
        assert_eq!(report.threshold, params.occupancy_threshold());
        for part in 1..=params.k as u32 {
            let mut usage: HashMap<u32, u64> = HashMap::new();
            for v in graph.flat_part_vertices(part) {
                *usage.entry(phi.colour(v)).or_insert(0) += 1;
            }
            let heavy = l.groups()[0]
                .iter()
                .filter(|c| usage.get(c).copied().unwrap_or(0) >= report.threshold)
                .count();
            assert_eq!(
                report.n_i(part).contains(&1),
                heavy >= l.lambda().parts()[0] as usize
            );
        }
    }
}
