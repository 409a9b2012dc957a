//! The λ-choosability decision: enumerate assignment classes, run the exact
//! list-colouring solver on each, and certify the outcome.

use thiserror::Error;

use super::{enumerate_lambda_assignments, l_colour_budgeted, Certificate, EnumerationError,
            ListAssignment, NodeBudgetExceeded};
use crate::graph::PartiteGraph;
use crate::partitions::Partition;

/// Resource caps for a choosability decision. Exceeding a cap is an explicit
/// error, never a silently wrong answer. Both caps are deterministic and
/// independent of sharding: the assignment cap counts canonical stream
/// positions and the node cap applies per solver call.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_assignments: Option<u64>,
    pub max_nodes: Option<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChoosabilityError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("assignment budget of {cap} exhausted before a decision")]
    AssignmentBudget { cap: u64 },
    #[error("node budget exceeded while solving assignment {index}")]
    NodeBudget { index: u64 },
}

/// Per-shard stopping events, merged by canonical index.
enum Event {
    Fail(Box<ListAssignment>),
    NodeBudget,
    CapHit,
}

/// Decide whether `g` is λ-choosable.
///
/// `Choosable` iff the solver succeeds on every enumerated assignment class;
/// otherwise `NotChoosable` carries the canonically first failing
/// assignment. `shards` splits the stream round-robin by canonical index;
/// every shard reports its first event and the smallest index wins, so the
/// outcome (including the certificate) is independent of the shard count.
pub fn is_lambda_choosable(
    g: &PartiteGraph,
    lambda: &Partition,
    budget: Budget,
    shards: usize,
) -> Result<Certificate, ChoosabilityError> {
    let shards = shards.max(1);
    // probe the enumerator up front so size errors surface once
    enumerate_lambda_assignments(g, lambda)?;

    let outcomes: Vec<Option<(u64, Event)>> = if shards == 1 {
        vec![run_shard(g, lambda, budget, 0, 1)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..shards)
                .map(|sid| scope.spawn(move || run_shard(g, lambda, budget, sid as u64, shards as u64)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("shard panicked")).collect()
        })
    };

    let first = outcomes
        .into_iter()
        .flatten()
        .min_by_key(|(index, _)| *index);
    match first {
        None => Ok(Certificate::Choosable),
        Some((_, Event::Fail(witness))) => Ok(Certificate::NotChoosable(*witness)),
        Some((index, Event::NodeBudget)) => Err(ChoosabilityError::NodeBudget { index }),
        Some((_, Event::CapHit)) => Err(ChoosabilityError::AssignmentBudget {
            cap: budget.max_assignments.expect("cap hit implies a cap"),
        }),
    }
}

/// Scan the canonical stream, solving the indices of this shard, and stop at
/// the first event: a failing assignment, a node-budget trip, or the
/// assignment cap. Events of one shard arrive in increasing index order, so
/// the first is its minimum.
///
/// Classes whose colour universe fits in a word are decided by the
/// allocation-free mask solver; anything larger falls back to the general
/// solver. Both are exact, so the stream of verdicts is the same.
fn run_shard(
    g: &PartiteGraph,
    lambda: &Partition,
    budget: Budget,
    shard: u64,
    shards: u64,
) -> Option<(u64, Event)> {
    let mut stream = enumerate_lambda_assignments(g, lambda).expect("probed by the caller");
    let n = g.n();
    let adj: Vec<u64> = (1..=n as u32)
        .map(|v| {
            g.neighbours(v)
                .iter()
                .map(|&w| 1u64 << (w - 1))
                .sum::<u64>()
        })
        .collect();
    let mut solver = MaskSolver::new(n);
    let mut index = 0u64;
    while stream.advance_raw() {
        if let Some(cap) = budget.max_assignments {
            if index >= cap {
                return Some((index, Event::CapHit));
            }
        }
        if index % shards == shard {
            let colourable = if stream.current_colour_count() <= 64 {
                solver.load(n, stream.current_groups());
                solver.solve(&adj, budget.max_nodes)
            } else {
                l_colour_budgeted(g, &stream.materialize_current(), budget.max_nodes)
                    .map(|witness| witness.is_some())
            };
            match colourable {
                Err(_) => return Some((index, Event::NodeBudget)),
                Ok(true) => {}
                Ok(false) => {
                    return Some((index, Event::Fail(Box::new(stream.materialize_current()))));
                }
            }
        }
        index += 1;
    }
    None
}

/// Exact list-colouring on colour universes of at most 64 colours: lists are
/// colour bitmasks, levels of the search reuse one workspace, and nothing
/// allocates per class.
struct MaskSolver {
    /// `levels[d]` holds the per-vertex list masks at search depth d.
    levels: Vec<Vec<u64>>,
    nodes: u64,
}

impl MaskSolver {
    fn new(n: usize) -> Self {
        MaskSolver {
            levels: (0..=n).map(|_| vec![0u64; n]).collect(),
            nodes: 0,
        }
    }

    /// Fill depth 0 from the enumerator's support multisets: colour ids are
    /// assigned in stream order, vertex v's list collects the colours whose
    /// support contains it.
    fn load<'a>(&mut self, n: usize, groups: impl Iterator<Item = &'a [u64]>) {
        let lists = &mut self.levels[0];
        lists[..n].fill(0);
        let mut colour = 0;
        for group in groups {
            for &support in group {
                let mut bits = support;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    lists[v] |= 1 << colour;
                }
                colour += 1;
            }
        }
    }

    fn solve(&mut self, adj: &[u64], max_nodes: Option<u64>) -> Result<bool, NodeBudgetExceeded> {
        self.nodes = 0;
        let n = adj.len();
        let uncoloured = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.recurse(adj, 0, uncoloured, max_nodes)
    }

    fn recurse(
        &mut self,
        adj: &[u64],
        depth: usize,
        uncoloured: u64,
        max_nodes: Option<u64>,
    ) -> Result<bool, NodeBudgetExceeded> {
        if uncoloured == 0 {
            return Ok(true);
        }
        // most-constrained vertex; ties to the smallest index
        let mut v = usize::MAX;
        let mut best = u32::MAX;
        let mut bits = uncoloured;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let size = self.levels[depth][u].count_ones();
            if size < best {
                best = size;
                v = u;
            }
        }
        if best == 0 {
            return Ok(false);
        }
        let mut colours = self.levels[depth][v];
        let rest = uncoloured & !(1u64 << v);
        while colours != 0 {
            let c = colours.trailing_zeros();
            colours &= colours - 1;
            self.nodes += 1;
            if let Some(cap) = max_nodes {
                if self.nodes > cap {
                    return Err(NodeBudgetExceeded { cap });
                }
            }
            // forward check into the next level's workspace
            let (current, next) = {
                let (a, b) = self.levels.split_at_mut(depth + 1);
                (&a[depth], &mut b[0])
            };
            next.copy_from_slice(current);
            let mut dead = false;
            let mut affected = adj[v] & rest;
            while affected != 0 {
                let w = affected.trailing_zeros() as usize;
                affected &= affected - 1;
                next[w] &= !(1u64 << c);
                if next[w] == 0 {
                    dead = true;
                    break;
                }
            }
            if !dead && self.recurse(adj, depth + 1, rest, max_nodes)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
