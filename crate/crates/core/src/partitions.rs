//! Integer-partition algebra: refinement, the order λ ≤ λ′ with explicit
//! witnesses, and enumeration of all partitions of a given integer.
//!
//! A partition is a multiset of positive parts, stored sorted descending.
//! λ′ *refines* λ when the parts of λ′ can be grouped into blocks, one per
//! part of λ, each block summing to its part. λ ≤ λ′ when some partition λ″
//! of λ′'s total with exactly as many parts as λ dominates λ part-wise and
//! is refined by λ′; the returned [`OrderWitness`] carries that λ″ together
//! with the dominance alignment and the refinement blocks, and can be
//! revalidated independently of the search that produced it.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition must have at least one part")]
    Empty,
    #[error("parts must be positive, got {0}")]
    ZeroPart(u32),
    #[error("invalid part {text:?}")]
    BadPart { text: String },
}

/// Multiset of positive integers; parts are kept sorted descending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Result<Self, PartitionError> {
        let mut parts: Vec<u32> = parts.into_iter().collect();
        if parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        if let Some(&z) = parts.iter().find(|&&p| p == 0) {
            return Err(PartitionError::ZeroPart(z));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Sum of the parts.
    pub fn k(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn q(&self) -> usize {
        self.parts.len()
    }

    /// Parts in descending order.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The partition {1, …, 1} of `k`.
    pub fn all_ones(k: u32) -> Self {
        Partition {
            parts: vec![1; k as usize],
        }
    }

    /// The single-part partition {k}.
    pub fn single(k: u32) -> Result<Self, PartitionError> {
        Partition::new([k])
    }

    /// Plain comma-separated form, e.g. `4,2,1`; inverse of [`Partition::parse`].
    pub fn plain(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parse comma-separated parts in any order; `{` `}` and spaces are
    /// tolerated so that the display form round-trips.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let cleaned = text.replace(['{', '}'], "");
        let mut parts = Vec::new();
        for piece in cleaned.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let p: u32 = piece.parse().map_err(|_| PartitionError::BadPart {
                text: piece.to_string(),
            })?;
            parts.push(p);
        }
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    /// Set notation, e.g. `{4, 2, 1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Grouping of the parts of a finer partition into blocks, one per part of a
/// coarser partition (in the coarser partition's stored order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RefinementMap {
    /// `blocks[i]` sums to the i-th part of the coarse partition.
    pub blocks: Vec<Vec<u32>>,
}

impl RefinementMap {
    /// Check that the blocks partition `fine`'s parts and match `coarse`'s sums.
    pub fn validate(&self, fine: &Partition, coarse: &Partition) -> bool {
        if self.blocks.len() != coarse.q() {
            return false;
        }
        for (block, &target) in self.blocks.iter().zip(coarse.parts()) {
            if block.iter().sum::<u32>() != target || block.is_empty() {
                return false;
            }
        }
        let mut used: Vec<u32> = self.blocks.iter().flatten().copied().collect();
        used.sort_unstable_by(|a, b| b.cmp(a));
        used == fine.parts()
    }
}

/// Decide whether `fine` is a refinement of `coarse`: can the parts of
/// `fine` be grouped into blocks, one per part of `coarse`, each summing to
/// its part? Returns the grouping when so.
pub fn refines(fine: &Partition, coarse: &Partition) -> Option<RefinementMap> {
    if fine.k() != coarse.k() || fine.q() < coarse.q() {
        return None;
    }
    let mut capacity: Vec<u32> = coarse.parts().to_vec();
    let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); coarse.q()];
    if place(fine.parts(), 0, &mut capacity, &mut blocks) {
        Some(RefinementMap { blocks })
    } else {
        None
    }
}

/// Backtracking placement of fine parts (largest first) into block capacities.
fn place(parts: &[u32], idx: usize, capacity: &mut [u32], blocks: &mut [Vec<u32>]) -> bool {
    if idx == parts.len() {
        return capacity.iter().all(|&c| c == 0);
    }
    let p = parts[idx];
    for b in 0..capacity.len() {
        // trying two blocks with equal residual capacity repeats work
        if capacity[..b].contains(&capacity[b]) {
            continue;
        }
        if capacity[b] >= p {
            capacity[b] -= p;
            blocks[b].push(p);
            if place(parts, idx + 1, capacity, blocks) {
                return true;
            }
            blocks[b].pop();
            capacity[b] += p;
        }
    }
    false
}

/// Witness for λ ≤ λ′: the intermediate partition λ″, the part-wise
/// dominance alignment λ″ → λ, and the grouping of λ′'s parts refining λ″.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderWitness {
    pub lambda_pp: Partition,
    /// `alignment[i]` is the index of the part of λ dominated by the i-th
    /// part of λ″. Both are stored descending, so this is the identity.
    pub alignment: Vec<usize>,
    /// Blocks of λ′ parts, one per part of λ″ (in λ″'s stored order).
    pub refinement: RefinementMap,
}

impl OrderWitness {
    /// Re-derive every witness obligation from scratch.
    pub fn validate(&self, lambda: &Partition, lambda_p: &Partition) -> bool {
        if self.lambda_pp.q() != lambda.q() || self.lambda_pp.k() != lambda_p.k() {
            return false;
        }
        // alignment must be a bijection with k''_i >= k_i
        let mut seen = vec![false; lambda.q()];
        for (i, &j) in self.alignment.iter().enumerate() {
            if j >= lambda.q() || seen[j] {
                return false;
            }
            seen[j] = true;
            if self.lambda_pp.parts()[i] < lambda.parts()[j] {
                return false;
            }
        }
        self.alignment.len() == lambda.q() && self.refinement.validate(lambda_p, &self.lambda_pp)
    }
}

/// Decide λ ≤ λ′: some λ″ with `λ.q()` parts and total `λ′.k()` dominates λ
/// part-wise and is refined by λ′. Returns a witness when so.
///
/// The search enumerates groupings of λ′'s parts into exactly `λ.q()`
/// nonempty blocks; the block sums, sorted descending, are the λ″ candidate,
/// and sorted part-wise comparison decides dominance (a dominating bijection
/// exists iff the sorted comparison passes).
pub fn le(lambda: &Partition, lambda_p: &Partition) -> Option<OrderWitness> {
    if lambda_p.k() < lambda.k() || lambda_p.q() < lambda.q() {
        return None;
    }
    let q = lambda.q();
    let parts = lambda_p.parts();
    let mut assignment = vec![0usize; parts.len()];
    search_grouping(parts, 0, 0, q, &mut assignment, lambda, lambda_p)
}

/// Enumerate assignments of λ′ parts to blocks as restricted growth strings
/// (part `idx` may open block `used` at most); exactly `q` nonempty blocks.
fn search_grouping(
    parts: &[u32],
    idx: usize,
    used: usize,
    q: usize,
    assignment: &mut Vec<usize>,
    lambda: &Partition,
    lambda_p: &Partition,
) -> Option<OrderWitness> {
    if idx == parts.len() {
        if used != q {
            return None;
        }
        let mut sums = vec![0u32; q];
        for (i, &b) in assignment.iter().enumerate() {
            sums[b] += parts[i];
        }
        let lambda_pp = Partition::new(sums.clone()).expect("blocks are nonempty");
        // sorted dominance check
        if lambda_pp
            .parts()
            .iter()
            .zip(lambda.parts())
            .any(|(pp, p)| pp < p)
        {
            return None;
        }
        // reorder blocks to match lambda_pp's descending storage; ties broken
        // by block index so the outcome is deterministic
        let mut order: Vec<usize> = (0..q).collect();
        order.sort_by(|&a, &b| sums[b].cmp(&sums[a]).then(a.cmp(&b)));
        let mut blocks = vec![Vec::new(); q];
        for (pos, &b) in order.iter().enumerate() {
            blocks[pos] = assignment
                .iter()
                .enumerate()
                .filter(|&(_, &bb)| bb == b)
                .map(|(i, _)| parts[i])
                .collect();
        }
        let witness = OrderWitness {
            lambda_pp,
            alignment: (0..q).collect(),
            refinement: RefinementMap { blocks },
        };
        debug_assert!(witness.validate(lambda, lambda_p));
        return Some(witness);
    }
    // remaining parts must still be able to populate all q blocks
    if used + (parts.len() - idx) < q {
        return None;
    }
    let cap = (used + 1).min(q);
    for b in 0..cap {
        assignment[idx] = b;
        let used2 = if b == used { used + 1 } else { used };
        if let Some(w) = search_grouping(parts, idx + 1, used2, q, assignment, lambda, lambda_p) {
            return Some(w);
        }
    }
    None
}

/// All partitions of `k`, each exactly once, in descending-lex order:
/// {k} first, {1, …, 1} last.
pub fn enumerate_partitions(k: u32) -> Vec<Partition> {
    assert!(k >= 1, "k must be positive");
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(k, k, &mut stack, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    let top = remaining.min(max_part);
    for p in (1..=top).rev() {
        stack.push(p);
        descend(remaining - p, p, stack, out);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    /// Brute force straight from the definition: enumerate every partition
    /// λ″ of λ′.k() with λ.q() parts, check sorted dominance, then check
    /// that λ′ refines λ″. Kept independent of `le`'s grouping search.
    fn le_brute(lambda: &Partition, lambda_p: &Partition) -> bool {
        if lambda_p.k() < lambda.k() {
            return false;
        }
        enumerate_partitions(lambda_p.k())
            .into_iter()
            .filter(|pp| pp.q() == lambda.q())
            .filter(|pp| {
                pp.parts()
                    .iter()
                    .zip(lambda.parts())
                    .all(|(a, b)| a >= b)
            })
            .any(|pp| refines(lambda_p, &pp).is_some())
    }

    #[test]
    fn parse_normalizes_and_displays() {
        let x = p("1,3,1");
        assert_eq!(x.parts(), &[3, 1, 1]);
        assert_eq!(x.k(), 5);
        assert_eq!(x.q(), 3);
        assert_eq!(x.to_string(), "{3, 1, 1}");
        assert_eq!(x.plain(), "3,1,1");
        assert_eq!(Partition::parse("{3, 1, 1}").unwrap(), x);
        assert_eq!(Partition::parse("0,1"), Err(PartitionError::ZeroPart(0)));
        assert!(Partition::parse("").is_err());
        assert!(Partition::parse("a,1").is_err());
    }

    #[test]
    fn refines_examples() {
        // {2, 3, 4} refines {4, 5}
        let map = refines(&p("2,3,4"), &p("4,5")).unwrap();
        assert!(map.validate(&p("2,3,4"), &p("4,5")));
        // identity grouping
        let lam = p("3,2,2");
        assert!(refines(&lam, &lam).is_some());
        // refinement cannot merge parts
        assert!(refines(&p("2"), &p("1,1")).is_none());
        // totals must agree
        assert!(refines(&p("2,1"), &p("2")).is_none());
    }

    #[test]
    fn le_finds_the_two_four_witness() {
        // {2,2} <= {1,1,1,3} with witness {2,4}
        let w = le(&p("2,2"), &p("1,1,1,3")).unwrap();
        assert_eq!(w.lambda_pp, p("2,4"));
        assert!(w.validate(&p("2,2"), &p("1,1,1,3")));
    }

    #[test]
    fn le_small_cases_frozen() {
        // frozen from le_brute (exhaustive over all lambda'' candidates)
        assert!(!le_brute(&p("1,1"), &p("2")));
        assert!(le_brute(&p("2"), &p("1,1")));
        assert!(!le_brute(&p("1,2"), &p("3")));
        assert!(le(&p("1,1"), &p("2")).is_none());
        let w = le(&p("2"), &p("1,1")).unwrap();
        assert_eq!(w.lambda_pp, p("2"));
        assert!(le(&p("1,2"), &p("3")).is_none());
        assert!(le(&p("3"), &p("3")).is_some());
    }

    #[test]
    fn le_agrees_with_brute_force_up_to_6() {
        let mut all = Vec::new();
        for k in 1..=6u32 {
            all.extend(enumerate_partitions(k));
        }
        for a in &all {
            for b in &all {
                let got = le(a, b);
                assert_eq!(got.is_some(), le_brute(a, b), "le({a}, {b})");
                if let Some(w) = got {
                    assert!(w.validate(a, b), "witness for le({a}, {b})");
                }
            }
        }
    }

    #[test]
    fn le_is_reflexive_and_transitive_small() {
        let mut all = Vec::new();
        for k in 1..=6u32 {
            all.extend(enumerate_partitions(k));
        }
        for a in &all {
            assert!(le(a, a).is_some(), "reflexive at {a}");
        }
        for a in &all {
            for b in &all {
                if le(a, b).is_none() {
                    continue;
                }
                for c in &all {
                    if le(b, c).is_some() {
                        assert!(le(a, c).is_some(), "transitivity {a} {b} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn refinement_with_equal_total_implies_le() {
        for k in 1..=6u32 {
            let parts = enumerate_partitions(k);
            for fine in &parts {
                for coarse in &parts {
                    if refines(fine, coarse).is_some() {
                        assert!(le(coarse, fine).is_some(), "{coarse} <= {fine}");
                    }
                }
            }
        }
    }

    #[test]
    fn le_antisymmetric_at_equal_totals() {
        for k in 1..=6u32 {
            let parts = enumerate_partitions(k);
            for a in &parts {
                for b in &parts {
                    if le(a, b).is_some() && le(b, a).is_some() {
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn single_part_below_everything_larger() {
        for k in 1..=5u32 {
            let single = Partition::single(k).unwrap();
            for kp in k..=7u32 {
                for target in enumerate_partitions(kp) {
                    let w = le(&single, &target).unwrap();
                    assert_eq!(w.lambda_pp, Partition::single(kp).unwrap());
                }
            }
        }
    }

    #[test]
    fn all_ones_comparison_matches_brute_force() {
        for k in 1..=6u32 {
            for lambda in enumerate_partitions(k) {
                for kp in 1..=6u32 {
                    let ones = Partition::all_ones(kp);
                    assert_eq!(
                        le(&lambda, &ones).is_some(),
                        le_brute(&lambda, &ones),
                        "{lambda} vs 1^{kp}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumerate_counts_and_order() {
        // independent oracle: DP table p(n, max part <= j)
        fn count_partitions(n: usize) -> u64 {
            let mut dp = vec![vec![0u64; n + 1]; n + 1];
            for cell in dp[0].iter_mut() {
                *cell = 1;
            }
            for i in 1..=n {
                for j in 1..=n {
                    dp[i][j] = dp[i][j - 1] + if i >= j { dp[i - j][j] } else { 0 };
                }
            }
            dp[n][n]
        }
        assert_eq!(enumerate_partitions(1), vec![p("1")]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(7).len(), 15);
        for k in 1..=9 {
            let parts = enumerate_partitions(k as u32);
            assert_eq!(parts.len() as u64, count_partitions(k), "p({k})");
            // each exactly once
            let mut dedup = parts.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), parts.len());
            // descending-lex order
            for w in parts.windows(2) {
                assert!(w[0].parts() > w[1].parts(), "{} !> {}", w[0], w[1]);
            }
        }
        let four = enumerate_partitions(4);
        let shown: Vec<String> = four.iter().map(|x| x.plain()).collect();
        assert_eq!(shown, vec!["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
    }
}
