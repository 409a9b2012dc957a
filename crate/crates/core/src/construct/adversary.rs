//! The adversarial target-assignment: colour groups C′_j of size 2k′_j − 1,
//! the family 𝓛 of all ∪_j (k′_j-subsets of C′_j), constant lists on blocks,
//! and a balanced seeded allocation of list to block within every part.

use rand::RngExt;
use thiserror::Error;

use super::{family_size, ConstructedGraph, ConstructionParams};
use crate::assignments::ListAssignment;
use crate::partitions::Partition;
use crate::rng::ChaCha8Rng;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdversaryError {
    #[error("n = {n} is not a multiple of |L| = {family} for target {target}")]
    NotDivisible { n: usize, family: u64, target: String },
    #[error("list family of target {target} is too large")]
    FamilyTooLarge { target: String },
}

/// The colour sets and list family of one target partition.
#[derive(Clone, Debug)]
pub struct AdversarialFamily {
    /// C′_j, |C′_j| = 2k′_j − 1, disjoint consecutive colour ids from 1.
    pub colour_groups: Vec<Vec<u32>>,
    /// 𝓛: each member is one k′_j-subset from every C′_j, sorted; members
    /// are in lexicographic order of their colour lists.
    pub members: Vec<Vec<u32>>,
}

/// Build C′_1, …, C′_p and 𝓛 for a target partition.
pub fn adversarial_family(target: &Partition) -> AdversarialFamily {
    let mut colour_groups = Vec::with_capacity(target.q());
    let mut next = 1u32;
    for &kp in target.parts() {
        let size = 2 * kp - 1;
        colour_groups.push((next..next + size).collect::<Vec<u32>>());
        next += size;
    }
    // k'_j-subsets of each group, lexicographic
    let per_group: Vec<Vec<Vec<u32>>> = target
        .parts()
        .iter()
        .zip(&colour_groups)
        .map(|(&kp, group)| subsets(group, kp as usize))
        .collect();
    let mut members = vec![Vec::new()];
    for choices in &per_group {
        let mut grown = Vec::with_capacity(members.len() * choices.len());
        for prefix in &members {
            for choice in choices {
                let mut member = prefix.clone();
                member.extend_from_slice(choice);
                grown.push(member);
            }
        }
        members = grown;
    }
    AdversarialFamily {
        colour_groups,
        members,
    }
}

fn subsets(pool: &[u32], size: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(pool: &[u32], start: usize, size: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..pool.len() {
            current.push(pool[i]);
            rec(pool, i + 1, size, current, out);
            current.pop();
        }
    }
    rec(pool, 0, size, &mut current, &mut out);
    out
}

/// A built adversarial assignment plus the per-block allocation that
/// produced it, for balance diagnostics.
#[derive(Clone, Debug)]
pub struct BadAssignment {
    pub assignment: ListAssignment,
    /// For each base vertex (index v−1), the member of 𝓛 its block received.
    pub member_of_base: Vec<usize>,
}

/// Assign a member of 𝓛 to every block, constant on the block, with every
/// member used by exactly n/|𝓛| blocks per part (a seeded uniform balanced
/// allocation: the multiset of members is shuffled per part).
pub fn build_bad_assignment(
    params: &ConstructionParams,
    graph: &ConstructedGraph,
    target: &Partition,
    rng: &mut ChaCha8Rng,
) -> Result<BadAssignment, AdversaryError> {
    let family = adversarial_family(target);
    let size = family_size(target).ok_or_else(|| AdversaryError::FamilyTooLarge {
        target: target.plain(),
    })? as usize;
    debug_assert_eq!(size, family.members.len());
    if !params.n.is_multiple_of(size) {
        return Err(AdversaryError::NotDivisible {
            n: params.n,
            family: size as u64,
            target: target.plain(),
        });
    }
    let copies = params.n / size;
    let base_n = params.k * params.n;
    let mut member_of_base = vec![0usize; base_n];
    for part in 1..=params.k as u32 {
        // the balanced multiset of member indices, shuffled uniformly
        let mut allocation: Vec<usize> = (0..size).flat_map(|m| std::iter::repeat_n(m, copies)).collect();
        for idx in 0..allocation.len() {
            let j = rng.random_range(idx..allocation.len());
            allocation.swap(idx, j);
        }
        for (offset, v) in graph.base().vertices_in_part(part).into_iter().enumerate() {
            member_of_base[(v - 1) as usize] = allocation[offset];
        }
    }
    let r = params.r;
    let mut lists = Vec::with_capacity(base_n * r);
    for v in 1..=base_n as u32 {
        let member = &family.members[member_of_base[(v - 1) as usize]];
        for _ in 0..r {
            lists.push(member.clone());
        }
    }
    let assignment = ListAssignment::new(target.clone(), lists, family.colour_groups.clone())
        .expect("family members are duplicate-free and groups disjoint");
    Ok(BadAssignment {
        assignment,
        member_of_base,
    })
}
