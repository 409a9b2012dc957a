//! The separation construction and its diagnostics.
//!
//! Given λ and target partitions with λ ≰ target, the pipeline samples a
//! girth-≥-g multipartite base graph G_0 (one part per part of λ), splits
//! every base vertex into r copies, routes each base edge to a single cross
//! edge between blocks via a random labelling, plants a gadget on every
//! block, and emits an adversarial target-assignment whose lists are
//! constant on blocks and balanced within parts.
//!
//! Structure is verified exactly (girth, per-part degeneracy, cross-edge
//! uniqueness, assignment validity); the probabilistic side conditions that
//! only hold for astronomically large n are measured by Monte Carlo
//! diagnostics and a feasibility report instead of being asserted.

mod adversary;
mod bounds;
mod build;
mod bundle;
mod feasibility;
mod sampling;
mod verify;

pub use adversary::{adversarial_family, build_bad_assignment, AdversarialFamily, AdversaryError,
                    BadAssignment};
pub use bounds::{binomial, binomial_bounds, BinomialBounds, BoundsError};
pub use build::{build_graph, BuildError, ConstructedGraph};
pub use bundle::{read_bundle, run_construction, write_bundle, BundleReadError, ConstructError,
                 ConstructionBundle};
pub use feasibility::{condition_margin, feasibility_report, ConditionReport, FeasibilityReport,
                      LargenessParams};
pub use sampling::{check_expansion, check_no_bad_pair, exhaustive_bad_pairs,
                   montecarlo_short_cycles, sample_base_graph, sample_edge_subset,
                   sample_split_labelling, BadPairReport, BaseGraphSample, ExpansionStats,
                   LabellingParseError, SamplingError, ShortCycleStats, SplitLabelling};
pub use verify::{verify_construction, ConstructionReport, PartCheck};

use thiserror::Error;

use crate::gadgets::{gadget_family, Gadget, GadgetError};
use crate::partitions::{le, Partition};

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("epsilon must satisfy 0 < epsilon < 1/(4g) = {limit}, got {epsilon}")]
    EpsilonOutOfRange { epsilon: f64, limit: f64 },
    #[error("girth target must be at least 1")]
    ZeroGirth,
    #[error("part size n must be at least 1")]
    ZeroN,
    #[error("at least one target partition is required")]
    NoTargets,
    #[error("lambda <= target {target} holds, so no separating graph exists")]
    TargetComparable { target: String },
    #[error("n = {n} must be a multiple of the list-family size {family} of target {target}")]
    NotDivisible { n: usize, family: u64, target: String },
    #[error("list family of target {target} is too large to size t")]
    FamilyTooLarge { target: String },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

/// All parameters of one pipeline run. Derived fields (k, q, m, r, t) are
/// computed by [`ConstructionParams::new`] and kept alongside the inputs so
/// that serialized bundles are self-describing.
#[derive(Clone, Debug)]
pub struct ConstructionParams {
    pub lambda: Partition,
    pub targets: Vec<Partition>,
    /// Girth target g.
    pub g: usize,
    /// Sampling density exponent, 0 < ε < 1/(4g).
    pub epsilon: f64,
    /// Part size of the base graph.
    pub n: usize,
    /// Parts of the base graph: k = λ.q().
    pub k: usize,
    /// Unordered part pairs: q = k(k−1)/2.
    pub q: usize,
    /// Sampled edges: m = ⌊q·n^(1+2ε)⌋.
    pub m: usize,
    /// Common gadget order after padding.
    pub r: usize,
    /// t = 2·r·|𝓛|·k′, maximized over the targets.
    pub t: u64,
    pub seed: u64,
}

impl ConstructionParams {
    /// Validate inputs, build (and pad) the gadget family, and derive
    /// k, q, m, r and t. `supplied` provides gadgets for part sizes without
    /// a built-in construction; they are verified before use.
    pub fn new(
        lambda: Partition,
        targets: Vec<Partition>,
        g: usize,
        epsilon: f64,
        n: usize,
        seed: u64,
        supplied: &[Gadget],
    ) -> Result<(Self, Vec<Gadget>), ParamError> {
        if g == 0 {
            return Err(ParamError::ZeroGirth);
        }
        if n == 0 {
            return Err(ParamError::ZeroN);
        }
        if targets.is_empty() {
            return Err(ParamError::NoTargets);
        }
        let limit = 1.0 / (4.0 * g as f64);
        if !(epsilon > 0.0 && epsilon < limit) {
            return Err(ParamError::EpsilonOutOfRange { epsilon, limit });
        }
        for target in &targets {
            if le(&lambda, target).is_some() {
                return Err(ParamError::TargetComparable {
                    target: target.plain(),
                });
            }
        }
        let (gadgets, r) = gadget_family(&lambda, g, supplied)?;
        let mut t = 0u64;
        for target in &targets {
            let family = family_size(target).ok_or_else(|| ParamError::FamilyTooLarge {
                target: target.plain(),
            })?;
            if !(n as u64).is_multiple_of(family) {
                return Err(ParamError::NotDivisible {
                    n,
                    family,
                    target: target.plain(),
                });
            }
            let t_target = 2u64
                .checked_mul(r as u64)
                .and_then(|x| x.checked_mul(family))
                .and_then(|x| x.checked_mul(target.k() as u64))
                .ok_or_else(|| ParamError::FamilyTooLarge {
                    target: target.plain(),
                })?;
            t = t.max(t_target);
        }
        let k = lambda.q();
        let q = k * (k - 1) / 2;
        let m = floor_edge_budget(q, n, epsilon);
        let params = ConstructionParams {
            lambda,
            targets,
            g,
            epsilon,
            n,
            k,
            q,
            m,
            r,
            t,
            seed,
        };
        Ok((params, gadgets))
    }

    /// ⌈n·r/t⌉, the occupancy threshold used by the adversarial analysis.
    pub fn occupancy_threshold(&self) -> u64 {
        let nr = (self.n * self.r) as u64;
        nr.div_ceil(self.t)
    }
}

/// |𝓛| = ∏_j C(2k′_j − 1, k′_j) for a target partition.
pub fn family_size(target: &Partition) -> Option<u64> {
    let mut size: u64 = 1;
    for &kp in target.parts() {
        let choices = binomial_u64(2 * kp as u64 - 1, kp as u64)?;
        size = size.checked_mul(choices)?;
    }
    Some(size)
}

fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

/// ⌊q·n^(1+2ε)⌋ in the log domain.
fn floor_edge_budget(q: usize, n: usize, epsilon: f64) -> usize {
    if q == 0 {
        return 0;
    }
    let value = q as f64 * ((1.0 + 2.0 * epsilon) * (n as f64).ln()).exp();
    value.floor() as usize
}
