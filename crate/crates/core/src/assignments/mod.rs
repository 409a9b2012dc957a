//! λ-assignments: the data model, validation, the exact list-colouring
//! solver, enumeration of assignments up to colour symmetry, and the
//! λ-choosability decision with certificates.
//!
//! For a partition λ = {k_1, …, k_q} of k, a λ-assignment gives every vertex
//! a k-list whose colour universe is partitioned into groups C_1, …, C_q with
//! |L(v) ∩ C_i| = k_i for every vertex and group. A graph is λ-choosable when
//! every λ-assignment admits a proper colouring from the lists.
//!
//! Up to renaming colours within a group (and swapping whole groups of equal
//! part size), a colour is determined by its *support* — the set of vertices
//! whose list contains it — so a λ-assignment is, per group, a multiset of
//! nonempty supports covering each vertex exactly k_i times. Enumeration
//! walks those multisets in a canonical descending order; see
//! [`enumerate_lambda_assignments`].

mod choosable;
mod enumerate;
mod format;
mod occupancy;
mod solver;

pub use choosable::{is_lambda_choosable, Budget, ChoosabilityError};
pub use enumerate::{enumerate_lambda_assignments, EnumerationError, LambdaAssignments};
pub use format::AssignmentParseError;
pub use occupancy::{occupied_groups, OccupancyError, OccupancyReport};
pub use solver::{l_colour, l_colour_budgeted, NodeBudgetExceeded};

use thiserror::Error;

use crate::graph::{Colouring, PartiteGraph};
use crate::partitions::Partition;

/// Per-vertex colour lists plus the partition of the colour universe into
/// groups C_1, …, C_q aligned with λ's stored (descending) parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ListAssignment {
    lambda: Partition,
    lists: Vec<Vec<u32>>,  // lists[v-1], ascending colour ids
    groups: Vec<Vec<u32>>, // groups[i], ascending colour ids
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssignmentError {
    #[error("group count {groups} does not match the partition's {q} parts")]
    GroupCountMismatch { groups: usize, q: usize },
    #[error("duplicate colour {colour} in the list of vertex {v}")]
    DuplicateColourInList { v: u32, colour: u32 },
    #[error("colour {colour} appears in more than one group")]
    OverlappingGroups { colour: u32 },
}

/// First violated λ-assignment constraint, reported by [`validate_assignment`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssignmentViolation {
    #[error("assignment covers {lists} vertices but the graph has {n}")]
    VertexCountMismatch { lists: usize, n: usize },
    #[error("list of vertex {v} has {actual} colours, expected k = {expected}")]
    ListSizeMismatch { v: u32, expected: u32, actual: usize },
    #[error("colour {colour} in the list of vertex {v} belongs to no group")]
    UngroupedColour { v: u32, colour: u32 },
    #[error("colour {colour} of group {group} appears in no list")]
    UnusedGroupColour { group: usize, colour: u32 },
    #[error(
        "vertex {v} meets group {group} in {actual} colours, expected k_{group} = {expected}"
    )]
    GroupIntersection {
        v: u32,
        group: usize,
        expected: u32,
        actual: usize,
    },
}

impl ListAssignment {
    /// Build an assignment; lists and groups are sorted, duplicates within a
    /// list and overlaps between groups are rejected. Constraints that
    /// involve a graph live in [`validate_assignment`].
    pub fn new(
        lambda: Partition,
        lists: Vec<Vec<u32>>,
        groups: Vec<Vec<u32>>,
    ) -> Result<Self, AssignmentError> {
        if groups.len() != lambda.q() {
            return Err(AssignmentError::GroupCountMismatch {
                groups: groups.len(),
                q: lambda.q(),
            });
        }
        let mut lists = lists;
        for (i, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(AssignmentError::DuplicateColourInList {
                    v: (i + 1) as u32,
                    colour: w[0],
                });
            }
        }
        let mut groups = groups;
        let mut seen = std::collections::HashSet::new();
        for group in &mut groups {
            group.sort_unstable();
            for &c in group.iter() {
                if !seen.insert(c) {
                    return Err(AssignmentError::OverlappingGroups { colour: c });
                }
            }
        }
        Ok(ListAssignment {
            lambda,
            lists,
            groups,
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// Number of vertices the assignment covers.
    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, v: u32) -> &[u32] {
        &self.lists[(v - 1) as usize]
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }

    /// Colour groups, aligned with `lambda().parts()`.
    pub fn groups(&self) -> &[Vec<u32>] {
        &self.groups
    }

    /// 0-based index of the group containing `colour`.
    pub fn group_of(&self, colour: u32) -> Option<usize> {
        self.groups
            .iter()
            .position(|g| g.binary_search(&colour).is_ok())
    }

    /// All colours mentioned in some list, ascending.
    pub fn colours_in_lists(&self) -> Vec<u32> {
        let mut all: Vec<u32> = self.lists.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Merge groups according to a refinement map: `blocks[i]` lists which
    /// old groups form new group `i`. Used to view a λ′-assignment as a
    /// λ-assignment when λ′ refines λ.
    pub fn coarsen(&self, coarse: Partition, blocks: &[Vec<usize>]) -> Self {
        let groups = blocks
            .iter()
            .map(|block| {
                let mut merged: Vec<u32> = block
                    .iter()
                    .flat_map(|&i| self.groups[i].iter().copied())
                    .collect();
                merged.sort_unstable();
                merged
            })
            .collect();
        ListAssignment {
            lambda: coarse,
            lists: self.lists.clone(),
            groups,
        }
    }
}

/// Check every λ-assignment invariant of `l` against `g`, reporting the
/// first violation: list sizes equal k, groups covering exactly the listed
/// colours, and |L(v) ∩ C_i| = k_i for every vertex and group.
pub fn validate_assignment(g: &PartiteGraph, l: &ListAssignment) -> Result<(), AssignmentViolation> {
    if l.n() != g.n() {
        return Err(AssignmentViolation::VertexCountMismatch {
            lists: l.n(),
            n: g.n(),
        });
    }
    let k = l.lambda.k();
    for v in g.vertices() {
        let list = l.list(v);
        if list.len() != k as usize {
            return Err(AssignmentViolation::ListSizeMismatch {
                v,
                expected: k,
                actual: list.len(),
            });
        }
        for &c in list {
            if l.group_of(c).is_none() {
                return Err(AssignmentViolation::UngroupedColour { v, colour: c });
            }
        }
    }
    let used = l.colours_in_lists();
    for (gi, group) in l.groups.iter().enumerate() {
        for &c in group {
            if used.binary_search(&c).is_err() {
                return Err(AssignmentViolation::UnusedGroupColour {
                    group: gi + 1,
                    colour: c,
                });
            }
        }
    }
    for v in g.vertices() {
        let list = l.list(v);
        for (gi, group) in l.groups.iter().enumerate() {
            let expected = l.lambda.parts()[gi];
            let actual = list
                .iter()
                .filter(|c| group.binary_search(c).is_ok())
                .count();
            if actual != expected as usize {
                return Err(AssignmentViolation::GroupIntersection {
                    v,
                    group: gi + 1,
                    expected,
                    actual,
                });
            }
        }
    }
    Ok(())
}

/// Outcome of a colourability or choosability decision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    /// A proper colouring from the lists (positive witness for one assignment).
    Colourable(Colouring),
    /// Every λ-assignment admits a colouring.
    Choosable,
    /// A validated λ-assignment with no proper list colouring; the witness is
    /// the canonically first failing assignment in enumeration order.
    NotChoosable(ListAssignment),
}
