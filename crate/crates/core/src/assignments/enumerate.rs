//! Enumeration of λ-assignments up to colour symmetry.
//!
//! A colour is characterized by (group, support): the set of vertices whose
//! list contains it. Renaming colours within a group preserves exactly the
//! per-group multiset of supports, so a λ-assignment class is, per group i,
//! a multiset of nonempty vertex subsets covering each vertex exactly k_i
//! times. Swapping two whole groups of equal part size is also invisible to
//! list colouring; that symmetry is broken by requiring the encoding of
//! group i to be ≥ group i+1's whenever k_i = k_{i+1}.
//!
//! Canonical order: a support is a vertex bitmask (vertex v is bit v−1),
//! supports within a group form a numerically non-increasing sequence, and
//! sequences are emitted in descending lexicographic order — so the very
//! first assignment is the one where all lists are equal. The product over
//! groups is walked like an odometer, group 1 outermost. The position in
//! this stream is the assignment's canonical index, which certificates and
//! sharding both rely on.
//!
//! Vertex masks live in a `u64`, which bounds enumeration to graphs on at
//! most 64 vertices; the solver and validator have no such limit.

use thiserror::Error;

use super::ListAssignment;
use crate::graph::PartiteGraph;
use crate::partitions::Partition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("assignment enumeration supports at most 64 vertices, got {n}")]
    TooManyVertices { n: usize },
}

/// Stream of canonical representatives, one per λ-assignment class.
pub struct LambdaAssignments {
    n: usize,
    lambda: Partition,
    groups: Vec<SupportMultisets>,
    fresh: bool,
    done: bool,
}

/// Enumerate one representative from every equivalence class of
/// λ-assignments of `g` under colour renaming within groups and swaps of
/// equal-part groups; complete and duplicate-free, in canonical order.
pub fn enumerate_lambda_assignments(
    g: &PartiteGraph,
    lambda: &Partition,
) -> Result<LambdaAssignments, EnumerationError> {
    let n = g.n();
    if n > 64 {
        return Err(EnumerationError::TooManyVertices { n });
    }
    let groups = lambda
        .parts()
        .iter()
        .map(|&k_i| SupportMultisets::new(n, k_i))
        .collect();
    Ok(LambdaAssignments {
        n,
        lambda: lambda.clone(),
        groups,
        fresh: true,
        done: false,
    })
}

impl LambdaAssignments {
    /// Step to the next class without materializing it; pairs with
    /// [`Self::current_groups`] and [`Self::materialize_current`].
    pub(crate) fn advance_raw(&mut self) -> bool {
        if self.done {
            return false;
        }
        let q = self.lambda.q();
        let mut level = if self.fresh {
            self.fresh = false;
            0
        } else {
            q - 1
        };
        loop {
            if self.advance_constrained(level) {
                if level == q - 1 {
                    return true;
                }
                level += 1;
                self.groups[level] = SupportMultisets::new(self.n, self.lambda.parts()[level]);
            } else if level == 0 {
                self.done = true;
                return false;
            } else {
                level -= 1;
            }
        }
    }

    /// Support multisets of the current class, one slice per group.
    pub(crate) fn current_groups(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.groups.iter().map(|g| g.current())
    }

    /// Colours of the current class (its total number of supports).
    pub(crate) fn current_colour_count(&self) -> usize {
        self.groups.iter().map(|g| g.current().len()).sum()
    }

    /// Advance group `i` until its value satisfies the equal-part symmetry
    /// constraint against group `i−1`; values only decrease, so a single
    /// successful comparison settles the rest of the group's stream.
    fn advance_constrained(&mut self, i: usize) -> bool {
        loop {
            if !self.groups[i].advance() {
                return false;
            }
            if i == 0 || self.lambda.parts()[i] != self.lambda.parts()[i - 1] {
                return true;
            }
            let (before, rest) = self.groups.split_at(i);
            if rest[0].current() <= before[i - 1].current() {
                return true;
            }
        }
    }

    pub(crate) fn materialize_current(&self) -> ListAssignment {
        self.materialize()
    }

    fn materialize(&self) -> ListAssignment {
        let mut lists = vec![Vec::new(); self.n];
        let mut groups = Vec::with_capacity(self.lambda.q());
        let mut next_id = 1u32;
        for group in &self.groups {
            let mut colours = Vec::new();
            for &support in group.current() {
                let id = next_id;
                next_id += 1;
                colours.push(id);
                let mut bits = support;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    lists[v].push(id);
                }
            }
            groups.push(colours);
        }
        ListAssignment::new(self.lambda.clone(), lists, groups)
            .expect("canonical materialization is well formed")
    }
}

impl Iterator for LambdaAssignments {
    type Item = ListAssignment;

    fn next(&mut self) -> Option<ListAssignment> {
        self.advance_raw().then(|| self.materialize())
    }
}

/// Resumable depth-first walk over the multisets of nonempty supports that
/// cover every vertex exactly `cover` times, emitted as non-increasing
/// sequences in descending lexicographic order.
///
/// Two structural facts drive the walk. Supports may only use vertices with
/// residual coverage (exact coverage forbids anything else), and if h is the
/// highest such vertex, the next support must contain h: later supports are
/// numerically smaller, so a support skipping h would put h out of reach for
/// good. Consequently every partial sequence extends to a leaf and the tree
/// has no dead branches.
struct SupportMultisets {
    rem: Vec<u32>,    // residual coverage per vertex (index = bit)
    active: u64,      // vertices with rem > 0
    levels: Vec<u64>, // chosen supports, numerically non-increasing
    fresh: bool,
    dead: bool,
}

impl SupportMultisets {
    fn new(n: usize, cover: u32) -> Self {
        debug_assert!(n <= 64);
        let active = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        SupportMultisets {
            rem: vec![cover; n],
            active,
            levels: Vec::new(),
            fresh: true,
            dead: false,
        }
    }

    /// Current multiset; meaningful after a successful [`Self::advance`].
    fn current(&self) -> &[u64] {
        &self.levels
    }

    fn advance(&mut self) -> bool {
        if self.dead {
            return false;
        }
        if self.fresh {
            self.fresh = false;
            self.extend_to_leaf();
            return true;
        }
        loop {
            if self.levels.is_empty() {
                self.dead = true;
                return false;
            }
            if self.step_top() {
                self.extend_to_leaf();
                return true;
            }
        }
    }

    fn choose(&mut self, support: u64) {
        let mut bits = support;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.rem[v] -= 1;
            if self.rem[v] == 0 {
                self.active &= !(1 << v);
            }
        }
    }

    fn unchoose(&mut self, support: u64) {
        let mut bits = support;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.rem[v] == 0 {
                self.active |= 1 << v;
            }
            self.rem[v] += 1;
        }
    }

    /// Push largest-first choices until coverage is complete.
    fn extend_to_leaf(&mut self) {
        while self.active != 0 {
            let bound = self.levels.last().copied().unwrap_or(u64::MAX);
            let hb = 1u64 << (63 - self.active.leading_zeros());
            // bound >= hb always: the previous support contains its own h,
            // which is >= the current h because `active` only shrinks
            debug_assert!(bound >= hb);
            let active_low = self.active & (hb - 1);
            let low = largest_submask_le(active_low, bound - hb);
            let support = hb | low;
            self.levels.push(support);
            self.choose(support);
        }
    }

    /// Move the deepest level to its next smaller support; pops the level
    /// and returns false when it is exhausted (its low part reached 0).
    fn step_top(&mut self) -> bool {
        let old = *self.levels.last().expect("step_top needs a level");
        self.unchoose(old);
        let hb = 1u64 << (63 - self.active.leading_zeros());
        debug_assert!(old & hb != 0, "every support contains its level's h");
        let low = old & !hb;
        if low == 0 {
            self.levels.pop();
            return false;
        }
        let active_low = self.active & (hb - 1);
        let next = hb | ((low - 1) & active_low);
        *self.levels.last_mut().expect("level exists") = next;
        self.choose(next);
        true
    }
}

/// Largest submask of `mask` that is numerically at most `cap`.
/// (0 is a submask of everything, so a result always exists.)
///
/// Walk the bits high to low keeping a prefix `acc` that matches `cap`
/// exactly on the positions taken so far. Where both have the bit, the
/// alternative branch — drop the bit and take every lower mask bit — is a
/// complete candidate; where only `cap` has it, the tight prefix just became
/// strictly smaller, so all lower mask bits complete it maximally.
fn largest_submask_le(mask: u64, cap: u64) -> u64 {
    if mask <= cap {
        return mask;
    }
    let mut acc = 0u64;
    let mut best = 0u64;
    for b in (0..64).rev() {
        let bit = 1u64 << b;
        match (mask & bit != 0, cap & bit != 0) {
            (true, true) => {
                best = best.max(acc | (mask & (bit - 1)));
                acc |= bit;
            }
            (false, true) => {
                return best.max(acc | (mask & (bit - 1)));
            }
            // mask bit without cap bit cannot be taken on the tight path;
            // neither bit: nothing to do
            _ => {}
        }
    }
    best.max(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignments::validate_assignment;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    /// Reference for largest_submask_le: walk all submasks.
    fn brute_largest_submask_le(mask: u64, cap: u64) -> u64 {
        let mut best = 0;
        let mut s = mask;
        loop {
            if s <= cap {
                best = best.max(s);
            }
            if s == 0 {
                return best;
            }
            s = (s - 1) & mask;
        }
    }

    #[test]
    fn largest_submask_matches_brute_force() {
        use rand::RngExt;
        let mut rng = crate::rng::rng_for(3, 0);
        for _ in 0..4000 {
            let mask: u64 = rng.random_range(0..1 << 12);
            let cap: u64 = rng.random_range(0..1 << 12);
            assert_eq!(
                largest_submask_le(mask, cap),
                brute_largest_submask_le(mask, cap),
                "mask={mask:b} cap={cap:b}"
            );
        }
        assert_eq!(largest_submask_le(0b110, 0b101), 0b100);
        assert_eq!(largest_submask_le(0b011, 0b100), 0b011);
        assert_eq!(largest_submask_le(0, 5), 0);
    }

    /// Raw-assignment oracle: enumerate all assignments over a bounded
    /// colour universe, canonicalize each to its per-group support
    /// multisets, and collect the distinct canonical forms.
    fn raw_classes(g: &PartiteGraph, lambda: &Partition) -> std::collections::BTreeSet<Vec<Vec<u64>>> {
        let n = g.n();
        // colours per group: at most n * k_i are ever needed
        let mut classes = std::collections::BTreeSet::new();
        // enumerate per group the multiset of supports directly... to stay
        // independent of the iterator under test, enumerate list contents:
        // each vertex picks, per group, a k_i-subset of that group's pool.
        let pools: Vec<Vec<u32>> = {
            let mut next = 1u32;
            lambda
                .parts()
                .iter()
                .map(|&k_i| {
                    let pool: Vec<u32> = (next..next + (n as u32) * k_i).collect();
                    next += (n as u32) * k_i;
                    pool
                })
                .collect()
        };
        // iterate over all choices of k_i-subsets per vertex per group
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
        let per_group_choices: Vec<Vec<Vec<u32>>> = lambda
            .parts()
            .iter()
            .zip(&pools)
            .map(|(&k_i, pool)| subsets(pool, k_i as usize))
            .collect();
        // odometer over (vertex, group) choices
        let q = lambda.q();
        let mut pick = vec![0usize; n * q];
        loop {
            // canonicalize: per group, multiset of supports
            let mut canon: Vec<Vec<u64>> = Vec::with_capacity(q);
            for gi in 0..q {
                let mut support_of: std::collections::BTreeMap<u32, u64> = Default::default();
                for v in 0..n {
                    let chosen = &per_group_choices[gi][pick[v * q + gi]];
                    for &c in chosen {
                        *support_of.entry(c).or_insert(0) |= 1 << v;
                    }
                }
                let mut multiset: Vec<u64> = support_of.values().copied().collect();
                multiset.sort_unstable_by(|a, b| b.cmp(a));
                canon.push(multiset);
            }
            // equal-part group swap: sort runs of equal parts descending
            let parts = lambda.parts();
            let mut i = 0;
            while i < q {
                let mut j = i + 1;
                while j < q && parts[j] == parts[i] {
                    j += 1;
                }
                canon[i..j].sort_unstable_by(|a, b| b.cmp(a));
                i = j;
            }
            classes.insert(canon);
            // advance odometer
            let mut idx = 0;
            loop {
                if idx == pick.len() {
                    return classes;
                }
                pick[idx] += 1;
                let gi = idx % q;
                if pick[idx] < per_group_choices[gi].len() {
                    break;
                }
                pick[idx] = 0;
                idx += 1;
            }
        }
    }

    fn enumerated_canon(g: &PartiteGraph, lambda: &Partition) -> Vec<Vec<Vec<u64>>> {
        enumerate_lambda_assignments(g, lambda)
            .unwrap()
            .map(|l| {
                // recover per-group support multisets from the assignment
                let n = g.n();
                lambda
                    .parts()
                    .iter()
                    .enumerate()
                    .map(|(gi, _)| {
                        let mut multiset: Vec<u64> = l.groups()[gi]
                            .iter()
                            .map(|&c| {
                                let mut mask = 0u64;
                                for v in 0..n {
                                    if l.list((v + 1) as u32).contains(&c) {
                                        mask |= 1 << v;
                                    }
                                }
                                mask
                            })
                            .collect();
                        multiset.sort_unstable_by(|a, b| b.cmp(a));
                        multiset
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn class_counts_match_spec_examples() {
        let one = PartiteGraph::empty(1);
        assert_eq!(
            enumerate_lambda_assignments(&one, &p("2")).unwrap().count(),
            1
        );
        let k2 = PartiteGraph::complete(2);
        assert_eq!(
            enumerate_lambda_assignments(&k2, &p("1")).unwrap().count(),
            2
        );
        assert_eq!(
            enumerate_lambda_assignments(&k2, &p("2")).unwrap().count(),
            3
        );
    }

    #[test]
    fn enumeration_is_complete_and_duplicate_free_vs_raw_oracle() {
        let k2 = PartiteGraph::complete(2);
        let k3 = PartiteGraph::complete(3);
        for (g, name) in [(&k2, "K2"), (&k3, "K3")] {
            for lambda in [p("1"), p("2"), p("1,1")] {
                let oracle = raw_classes(g, &lambda);
                let got = enumerated_canon(g, &lambda);
                let got_set: std::collections::BTreeSet<_> = got.iter().cloned().collect();
                assert_eq!(got_set.len(), got.len(), "{name} {lambda}: duplicates");
                assert_eq!(got_set, oracle, "{name} {lambda}");
            }
        }
    }

    #[test]
    fn enumeration_matches_raw_oracle_on_multi_group_partitions() {
        let k2 = PartiteGraph::complete(2);
        let k3 = PartiteGraph::complete(3);
        for (g, name) in [(&k2, "K2"), (&k3, "K3")] {
            for lambda in [p("2,1"), p("3")] {
                let oracle = raw_classes(g, &lambda);
                let got = enumerated_canon(g, &lambda);
                let got_set: std::collections::BTreeSet<_> = got.iter().cloned().collect();
                assert_eq!(got_set.len(), got.len(), "{name} {lambda}: duplicates");
                assert_eq!(got_set, oracle, "{name} {lambda}");
            }
        }
    }

    #[test]
    fn first_assignment_has_identical_lists() {
        let g = PartiteGraph::cycle(4);
        let lambda = p("2,1");
        let first = enumerate_lambda_assignments(&g, &lambda)
            .unwrap()
            .next()
            .unwrap();
        let expect = first.list(1).to_vec();
        assert_eq!(expect.len(), 3);
        for v in g.vertices() {
            assert_eq!(first.list(v), expect);
        }
    }

    #[test]
    fn every_enumerated_assignment_validates() {
        let g = PartiteGraph::cycle(4);
        for lambda in [p("1"), p("2"), p("1,1"), p("2,1")] {
            let mut count = 0;
            for l in enumerate_lambda_assignments(&g, &lambda).unwrap() {
                assert_eq!(validate_assignment(&g, &l), Ok(()), "{lambda}");
                count += 1;
            }
            assert!(count > 0);
        }
    }

    #[test]
    fn equal_part_symmetry_halves_the_stream() {
        // with two equal parts, each unordered pair {A, B} appears once
        let g = PartiteGraph::complete(2);
        let singles = enumerate_lambda_assignments(&g, &p("1")).unwrap().count();
        let pairs = enumerate_lambda_assignments(&g, &p("1,1")).unwrap().count();
        assert_eq!(pairs, singles * (singles + 1) / 2);
    }

    #[test]
    fn too_many_vertices_is_an_error() {
        let g = PartiteGraph::empty(65);
        assert_eq!(
            enumerate_lambda_assignments(&g, &p("1")).err(),
            Some(EnumerationError::TooManyVertices { n: 65 })
        );
    }

    #[test]
    fn empty_graph_has_one_empty_assignment() {
        let g = PartiteGraph::empty(0);
        let all: Vec<_> = enumerate_lambda_assignments(&g, &p("2,1")).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].colours_in_lists().is_empty());
    }
}
