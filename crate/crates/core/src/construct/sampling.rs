//! Random sampling and Monte Carlo diagnostics: the base graph, the split
//! labelling, short-cycle and edge-density statistics, and bad-pair probing.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::RngExt;
use thiserror::Error;

use super::ConstructionParams;
use crate::bitset::BitSet;
use crate::graph::PartiteGraph;
use crate::rng::{rng_for, stream, ChaCha8Rng};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SamplingError {
    #[error("edge budget m={m} exceeds the {max} edges of the complete multipartite graph")]
    EdgeBudgetTooLarge { m: usize, max: usize },
    #[error("subset size floor(n/t) = 0 for n={n}, t={t}")]
    EmptySubsets { n: usize, t: u64 },
    #[error("graph is not partitioned into at least two parts")]
    NotPartitioned,
    #[error("part sizes are unequal; expected n={expected}, part {part} has {actual}")]
    UnequalParts {
        part: u32,
        expected: usize,
        actual: usize,
    },
    #[error("exhaustive bad-pair enumeration would take {triples} triples (cap {cap})")]
    ExhaustiveTooLarge { triples: u128, cap: u128 },
}

/// Uniform m-subset of the complete k-partite graph's edges, parts of size
/// n with vertex v in part ⌈v/n⌉. Partial Fisher–Yates over the edge index
/// space, so the draw is uniform and O(m) in memory.
pub fn sample_edge_subset(
    k: usize,
    n: usize,
    m: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(u32, u32)>, SamplingError> {
    let q = k * k.saturating_sub(1) / 2;
    let domain = (q * n * n) as u64;
    if m as u64 > domain {
        return Err(SamplingError::EdgeBudgetTooLarge {
            m,
            max: domain as usize,
        });
    }
    // pair index p -> (i, j), lexicographic over i < j
    let mut pair_of = Vec::with_capacity(q);
    for i in 1..=k as u32 {
        for j in (i + 1)..=k as u32 {
            pair_of.push((i, j));
        }
    }
    let mut swapped: HashMap<u64, u64> = HashMap::new();
    let mut edges = Vec::with_capacity(m);
    for idx in 0..m as u64 {
        let j = rng.random_range(idx..domain);
        let chosen = swapped.get(&j).copied().unwrap_or(j);
        let here = swapped.get(&idx).copied().unwrap_or(idx);
        swapped.insert(j, here);
        let (pair, offset) = ((chosen / (n * n) as u64) as usize, chosen % (n * n) as u64);
        let (i, jj) = pair_of[pair];
        let a = (offset / n as u64) as u32;
        let b = (offset % n as u64) as u32;
        let u = (i - 1) * n as u32 + a + 1;
        let v = (jj - 1) * n as u32 + b + 1;
        edges.push((u, v));
    }
    Ok(edges)
}

fn part_map(k: usize, n: usize) -> Vec<u32> {
    (0..k * n).map(|i| (i / n) as u32 + 1).collect()
}

/// Output of [`sample_base_graph`]: the girth-repaired graph together with
/// what the repair removed.
#[derive(Clone, Debug)]
pub struct BaseGraphSample {
    pub graph: PartiteGraph,
    pub deleted_edges: Vec<(u32, u32)>,
    pub pre_surgery_edges: usize,
}

/// Sample the m-edge base graph and repair its girth: while a cycle shorter
/// than g exists, delete the lexicographically smallest edge of a shortest
/// cycle and re-search. Repairing one cycle at a time guarantees girth ≥ g
/// no matter how the short cycles overlap. Deterministic given the rng.
pub fn sample_base_graph(
    params: &ConstructionParams,
    rng: &mut ChaCha8Rng,
) -> Result<BaseGraphSample, SamplingError> {
    let edges = sample_edge_subset(params.k, params.n, params.m, rng)?;
    let pre_surgery_edges = edges.len();
    let graph = PartiteGraph::partitioned(
        params.k * params.n,
        edges,
        part_map(params.k, params.n),
    )
    .expect("sampled multipartite edges are simple and cross-part");
    let (graph, deleted_edges) = surgery_to_girth(graph, params.g);
    Ok(BaseGraphSample {
        graph,
        deleted_edges,
        pre_surgery_edges,
    })
}

/// Delete one edge from a shortest cycle until the girth is at least `g`.
pub fn surgery_to_girth(graph: PartiteGraph, g: usize) -> (PartiteGraph, Vec<(u32, u32)>) {
    let mut graph = graph;
    let mut deleted = Vec::new();
    loop {
        match graph.shortest_cycle() {
            Some(cycle) if cycle.len() < g => {
                let mut edges: Vec<(u32, u32)> = cycle
                    .iter()
                    .enumerate()
                    .map(|(i, &u)| {
                        let v = cycle[(i + 1) % cycle.len()];
                        (u.min(v), u.max(v))
                    })
                    .collect();
                edges.sort_unstable();
                let (u, v) = edges[0];
                graph = graph.without_edge(u, v);
                deleted.push((u, v));
            }
            _ => return (graph, deleted),
        }
    }
}

// ---- short-cycle statistics ------------------------------------------------

/// Per-trial exact counts of cycles shorter than g in the pre-repair
/// sampling model, against the first-moment bound Σ_{l=3}^{g−1} k^l·n^{2εl}
/// and its closed-form envelope n^{(2g−1)ε}.
#[derive(Clone, Debug)]
pub struct ShortCycleStats {
    pub trials: u64,
    pub counts: Vec<u64>,
    pub mean: f64,
    pub max: u64,
    pub bound_sum: f64,
    pub envelope: f64,
}

impl ShortCycleStats {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "trial\tshort_cycles").unwrap();
        for (i, c) in self.counts.iter().enumerate() {
            writeln!(out, "{i}\t{c}").unwrap();
        }
        writeln!(out, "mean\t{}", self.mean).unwrap();
        writeln!(out, "max\t{}", self.max).unwrap();
        writeln!(out, "bound_sum\t{}", self.bound_sum).unwrap();
        writeln!(out, "envelope\t{}", self.envelope).unwrap();
        out
    }
}

/// Sample `trials` pre-repair graphs (trial i is seeded independently from
/// `(seed, MC_CYCLES + i)`) and count cycles of length ≤ g−1 exactly.
pub fn montecarlo_short_cycles(
    params: &ConstructionParams,
    trials: u64,
) -> Result<ShortCycleStats, SamplingError> {
    let g = params.g;
    let mut counts = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = rng_for(params.seed, stream::MC_CYCLES + trial);
        let edges = sample_edge_subset(params.k, params.n, params.m, &mut rng)?;
        let graph = PartiteGraph::partitioned(
            params.k * params.n,
            edges,
            part_map(params.k, params.n),
        )
        .expect("sampled multipartite edges are simple");
        let count: u64 = if g < 4 {
            0
        } else {
            graph.count_cycles_up_to(g - 1)[3..].iter().sum()
        };
        counts.push(count);
    }
    let mean = counts.iter().sum::<u64>() as f64 / trials.max(1) as f64;
    let max = counts.iter().copied().max().unwrap_or(0);
    let ln_n = (params.n as f64).ln();
    let bound_sum: f64 = (3..g)
        .map(|l| {
            let l = l as f64;
            (l * (params.k as f64).ln() + 2.0 * params.epsilon * l * ln_n).exp()
        })
        .sum();
    let envelope = ((2.0 * g as f64 - 1.0) * params.epsilon * ln_n).exp();
    Ok(ShortCycleStats {
        trials,
        counts,
        mean,
        max,
        bound_sum,
        envelope,
    })
}

// ---- edge-density statistics ------------------------------------------------

/// Sampled edge counts between random part-subsets of size ⌊n/t⌋, against
/// the exact expectation m·|A||B|/(q·n²) of the uniform m-edge model and the
/// asymptotic thresholds ½·n^{1+ε} and n^{1+ε}.
#[derive(Clone, Debug)]
pub struct ExpansionStats {
    pub samples: u64,
    pub subset_size: usize,
    /// Per-sample edge counts, in draw order.
    pub counts: Vec<u64>,
    pub min: u64,
    pub mean: f64,
    pub stddev: f64,
    pub stderr: f64,
    pub expected: f64,
    pub threshold_half: f64,
    pub threshold_full: f64,
}

impl ExpansionStats {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "samples\t{}", self.samples).unwrap();
        writeln!(out, "subset_size\t{}", self.subset_size).unwrap();
        writeln!(out, "min\t{}", self.min).unwrap();
        writeln!(out, "mean\t{}", self.mean).unwrap();
        writeln!(out, "stddev\t{}", self.stddev).unwrap();
        writeln!(out, "stderr\t{}", self.stderr).unwrap();
        writeln!(out, "expected\t{}", self.expected).unwrap();
        writeln!(out, "threshold_half\t{}", self.threshold_half).unwrap();
        writeln!(out, "threshold_full\t{}", self.threshold_full).unwrap();
        out
    }
}

/// Count edges between `samples` random pairs (A, B) of ⌊n/t⌋ vertices
/// drawn from distinct parts of `g0`.
pub fn check_expansion(
    g0: &PartiteGraph,
    t: u64,
    samples: u64,
    epsilon: f64,
    rng: &mut ChaCha8Rng,
) -> Result<ExpansionStats, SamplingError> {
    let (k, n) = partition_shape(g0)?;
    let a = n / t as usize;
    if a == 0 {
        return Err(SamplingError::EmptySubsets { n, t });
    }
    let q = k * (k - 1) / 2;
    let mut pairs = Vec::with_capacity(q);
    for i in 1..=k as u32 {
        for j in (i + 1)..=k as u32 {
            pairs.push((i, j));
        }
    }
    let mut counts = Vec::with_capacity(samples as usize);
    for _ in 0..samples {
        let (i, j) = pairs[rng.random_range(0..pairs.len())];
        let a_set = sample_part_subset(n, i, a, rng);
        let b_set = sample_part_subset(n, j, a, rng);
        let mut b_bits = BitSet::new(g0.n());
        for &v in &b_set {
            b_bits.insert((v - 1) as usize);
        }
        let count: u64 = a_set
            .iter()
            .map(|&u| g0.adjacency_row(u).intersection_count(&b_bits) as u64)
            .sum();
        counts.push(count);
    }
    let total: u64 = counts.iter().sum();
    let mean = total as f64 / samples.max(1) as f64;
    let variance = counts
        .iter()
        .map(|&c| (c as f64 - mean).powi(2))
        .sum::<f64>()
        / (samples.max(2) - 1) as f64;
    let stddev = variance.sqrt();
    let expected = g0.m() as f64 * (a * a) as f64 / ((q * n * n) as f64);
    let n_pow = ((1.0 + epsilon) * (n as f64).ln()).exp();
    Ok(ExpansionStats {
        samples,
        subset_size: a,
        min: counts.iter().copied().min().unwrap_or(0),
        mean,
        stddev,
        stderr: stddev / (samples.max(1) as f64).sqrt(),
        expected,
        threshold_half: 0.5 * n_pow,
        threshold_full: n_pow,
        counts,
    })
}

/// Check that `g0` is partitioned into k ≥ 2 parts of one common size n.
fn partition_shape(g0: &PartiteGraph) -> Result<(usize, usize), SamplingError> {
    let k = g0.k();
    if k < 2 {
        return Err(SamplingError::NotPartitioned);
    }
    let n = g0.vertices_in_part(1).len();
    for i in 2..=k as u32 {
        let size = g0.vertices_in_part(i).len();
        if size != n {
            return Err(SamplingError::UnequalParts {
                part: i,
                expected: n,
                actual: size,
            });
        }
    }
    Ok((k, n))
}

/// Uniform `size`-subset of part `i`, assuming the contiguous vertex layout
/// of sampled base graphs (part i is (i−1)n+1 ..= in).
fn sample_part_subset(n: usize, part: u32, size: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let base = (part - 1) * n as u32;
    let mut pool: Vec<u32> = (1..=n as u32).map(|v| base + v).collect();
    for idx in 0..size {
        let j = rng.random_range(idx..n);
        pool.swap(idx, j);
    }
    pool.truncate(size);
    pool
}

// ---- split labelling ---------------------------------------------------------

/// Per-edge routing label in \[r\]×\[r\]; the first coordinate belongs to the
/// endpoint in the lower-indexed part. Stored aligned with the base graph's
/// canonical edge list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitLabelling {
    labels: Vec<(u32, u32)>,
    r: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabellingParseError {
    #[error("line {line}: expected `f <u> <v> <s> <t>`")]
    Malformed { line: usize },
    #[error("line {line}: edge {u} {v} is not in the base graph")]
    UnknownEdge { line: usize, u: u32, v: u32 },
    #[error("line {line}: label ({s}, {t}) out of range [1, {r}]")]
    LabelOutOfRange { line: usize, s: u32, t: u32, r: usize },
    #[error("line {line}: duplicate label for edge {u} {v}")]
    DuplicateLabel { line: usize, u: u32, v: u32 },
    #[error("edge {u} {v} has no label")]
    MissingLabel { u: u32, v: u32 },
}

impl SplitLabelling {
    pub fn r(&self) -> usize {
        self.r
    }

    /// Labels aligned with `edges()` of the base graph.
    pub fn labels(&self) -> &[(u32, u32)] {
        &self.labels
    }

    /// Label of edge index `idx` oriented as (copy of `u`, copy of `v`)
    /// where (u, v) is the canonical edge: the stored first coordinate
    /// belongs to the endpoint in the lower-indexed part.
    pub fn oriented(&self, g0: &PartiteGraph, idx: usize) -> ((u32, u32), (u32, u32)) {
        let (u, v) = g0.edges()[idx];
        let (s, t) = self.labels[idx];
        let pu = g0.part(u).unwrap_or(0);
        let pv = g0.part(v).unwrap_or(0);
        if pu <= pv {
            ((u, s), (v, t))
        } else {
            ((u, t), (v, s))
        }
    }

    /// Lines `f <u> <v> <s> <t>` in canonical edge order.
    pub fn serialize(&self, g0: &PartiteGraph) -> String {
        let mut out = String::new();
        for (idx, &(u, v)) in g0.edges().iter().enumerate() {
            let (s, t) = self.labels[idx];
            writeln!(out, "f {u} {v} {s} {t}").unwrap();
        }
        out
    }

    pub fn parse(text: &str, g0: &PartiteGraph, r: usize) -> Result<Self, LabellingParseError> {
        let mut labels: Vec<Option<(u32, u32)>> = vec![None; g0.m()];
        for (line, raw) in text.lines().enumerate() {
            let line = line + 1;
            let s = raw.split('#').next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            let fields: Vec<&str> = s.split_whitespace().collect();
            let ["f", rest @ ..] = fields.as_slice() else {
                return Err(LabellingParseError::Malformed { line });
            };
            let parsed: Option<Vec<u32>> = rest.iter().map(|f| f.parse().ok()).collect();
            let Some([u, v, a, b]) = parsed.as_deref() else {
                return Err(LabellingParseError::Malformed { line });
            };
            let (u, v, a, b) = (*u, *v, *a, *b);
            let idx = g0
                .edges()
                .binary_search(&(u, v))
                .map_err(|_| LabellingParseError::UnknownEdge { line, u, v })?;
            if a == 0 || b == 0 || a as usize > r || b as usize > r {
                return Err(LabellingParseError::LabelOutOfRange { line, s: a, t: b, r });
            }
            if labels[idx].is_some() {
                return Err(LabellingParseError::DuplicateLabel { line, u, v });
            }
            labels[idx] = Some((a, b));
        }
        let mut out = Vec::with_capacity(g0.m());
        for (idx, label) in labels.into_iter().enumerate() {
            match label {
                Some(l) => out.push(l),
                None => {
                    let (u, v) = g0.edges()[idx];
                    return Err(LabellingParseError::MissingLabel { u, v });
                }
            }
        }
        Ok(SplitLabelling { labels: out, r })
    }
}

/// Independent uniform label in \[r\]×\[r\] per edge; deterministic given the rng.
pub fn sample_split_labelling(g0: &PartiteGraph, r: usize, rng: &mut ChaCha8Rng) -> SplitLabelling {
    let labels = g0
        .edges()
        .iter()
        .map(|_| {
            (
                rng.random_range(1..=r as u32),
                rng.random_range(1..=r as u32),
            )
        })
        .collect();
    SplitLabelling { labels, r }
}

// ---- bad-pair probing ----------------------------------------------------------

/// Fraction of probed (A, B, selector) triples with no labelled edge match:
/// no edge e = xy, x ∈ A, y ∈ B with f(e) = (g(x), g(y)).
#[derive(Clone, Debug)]
pub struct BadPairReport {
    pub probes: u64,
    pub bad: u64,
    pub subset_size: usize,
    pub exhaustive: bool,
}

impl BadPairReport {
    pub fn fraction(&self) -> f64 {
        if self.probes == 0 {
            0.0
        } else {
            self.bad as f64 / self.probes as f64
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "probes\t{}", self.probes).unwrap();
        writeln!(out, "bad\t{}", self.bad).unwrap();
        writeln!(out, "fraction\t{}", self.fraction()).unwrap();
        writeln!(out, "subset_size\t{}", self.subset_size).unwrap();
        writeln!(out, "exhaustive\t{}", self.exhaustive).unwrap();
        out
    }
}

/// Is some edge between A and B routed exactly as the selector demands?
fn pair_is_bad(
    g0: &PartiteGraph,
    labelling: &SplitLabelling,
    a_set: &[u32],
    b_bits: &BitSet,
    selector: &HashMap<u32, u32>,
) -> bool {
    for &x in a_set {
        for &y in g0.neighbours(x) {
            if !b_bits.contains((y - 1) as usize) {
                continue;
            }
            let (u, v) = (x.min(y), x.max(y));
            let idx = g0
                .edges()
                .binary_search(&(u, v))
                .expect("neighbour implies edge");
            let ((eu, s), (_, t)) = labelling.oriented(g0, idx);
            let (sx, sy) = if eu == x { (s, t) } else { (t, s) };
            if selector[&x] == sx && selector[&y] == sy {
                return false;
            }
        }
    }
    true
}

/// Probe random triples (A, B, selector) with |A| = |B| = ⌊n/t⌋; probe i is
/// seeded from `(seed, MC_BAD_PAIRS + i)`.
pub fn check_no_bad_pair(
    g0: &PartiteGraph,
    labelling: &SplitLabelling,
    t: u64,
    probes: u64,
    seed: u64,
) -> Result<BadPairReport, SamplingError> {
    let (k, n) = partition_shape(g0)?;
    let a = n / t as usize;
    if a == 0 {
        return Err(SamplingError::EmptySubsets { n, t });
    }
    let r = labelling.r();
    let mut pairs = Vec::new();
    for i in 1..=k as u32 {
        for j in (i + 1)..=k as u32 {
            pairs.push((i, j));
        }
    }
    let mut bad = 0;
    for probe in 0..probes {
        let mut rng = rng_for(seed, stream::MC_BAD_PAIRS + probe);
        let (i, j) = pairs[rng.random_range(0..pairs.len())];
        let a_set = sample_part_subset(n, i, a, &mut rng);
        let b_set = sample_part_subset(n, j, a, &mut rng);
        let mut selector = HashMap::new();
        for &v in a_set.iter().chain(&b_set) {
            selector.insert(v, rng.random_range(1..=r as u32));
        }
        let mut b_bits = BitSet::new(g0.n());
        for &v in &b_set {
            b_bits.insert((v - 1) as usize);
        }
        if pair_is_bad(g0, labelling, &a_set, &b_bits, &selector) {
            bad += 1;
        }
    }
    Ok(BadPairReport {
        probes,
        bad,
        subset_size: a,
        exhaustive: false,
    })
}

/// Enumerate every (A, B, selector) triple; feasible only when ⌊n/t⌋ and r
/// are tiny, enforced by a triple-count cap.
pub fn exhaustive_bad_pairs(
    g0: &PartiteGraph,
    labelling: &SplitLabelling,
    t: u64,
) -> Result<BadPairReport, SamplingError> {
    const CAP: u128 = 20_000_000;
    let (k, n) = partition_shape(g0)?;
    let a = n / t as usize;
    if a == 0 {
        return Err(SamplingError::EmptySubsets { n, t });
    }
    let r = labelling.r() as u128;
    let q = (k * (k - 1) / 2) as u128;
    let triples = binomial_u128(n as u128, a as u128)
        .and_then(|s| s.checked_mul(s))
        .and_then(|s| s.checked_mul(q))
        .and_then(|s| r.checked_pow(2 * a as u32).and_then(|p| s.checked_mul(p)))
        .unwrap_or(u128::MAX);
    if triples > CAP {
        return Err(SamplingError::ExhaustiveTooLarge { triples, cap: CAP });
    }
    let mut bad = 0u64;
    let mut probes = 0u64;
    for i in 1..=k as u32 {
        for j in (i + 1)..=k as u32 {
            let parts_a = combinations(n, a, i);
            let parts_b = combinations(n, a, j);
            for a_set in &parts_a {
                for b_set in &parts_b {
                    let mut b_bits = BitSet::new(g0.n());
                    for &v in b_set {
                        b_bits.insert((v - 1) as usize);
                    }
                    let vertices: Vec<u32> =
                        a_set.iter().chain(b_set.iter()).copied().collect();
                    let r = labelling.r() as u32;
                    let mut pick = vec![1u32; vertices.len()];
                    loop {
                        let selector: HashMap<u32, u32> = vertices
                            .iter()
                            .copied()
                            .zip(pick.iter().copied())
                            .collect();
                        probes += 1;
                        if pair_is_bad(g0, labelling, a_set, &b_bits, &selector) {
                            bad += 1;
                        }
                        let mut pos = 0;
                        loop {
                            if pos == pick.len() {
                                break;
                            }
                            pick[pos] += 1;
                            if pick[pos] <= r {
                                break;
                            }
                            pick[pos] = 1;
                            pos += 1;
                        }
                        if pos == pick.len() {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(BadPairReport {
        probes,
        bad,
        subset_size: a,
        exhaustive: true,
    })
}

fn binomial_u128(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// All `size`-subsets of part `part` (contiguous layout), lexicographic.
fn combinations(n: usize, size: usize, part: u32) -> Vec<Vec<u32>> {
    let base = (part - 1) * n as u32;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: usize, size: usize, start: u32, base: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for v in start..=n as u32 {
            current.push(base + v);
            rec(n, size, v + 1, base, current, out);
            current.pop();
        }
    }
    rec(n, size, 1, base, &mut current, &mut out);
    out
}
