//! Exact list-colouring decision by backtracking with forward pruning.

use thiserror::Error;

use super::ListAssignment;
use crate::bitset::BitSet;
use crate::graph::{Colouring, PartiteGraph};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("list-colouring search exceeded the node budget of {cap}")]
pub struct NodeBudgetExceeded {
    pub cap: u64,
}

/// Decide whether `g` has a proper colouring φ with φ(v) ∈ L(v) for all v.
/// Exact: returns a witness or `None` when no such colouring exists.
///
/// The caller is expected to have run `validate_assignment` when the input
/// comes from outside; the solver itself only needs the lists.
pub fn l_colour(g: &PartiteGraph, l: &ListAssignment) -> Option<Colouring> {
    l_colour_budgeted(g, l, None).expect("unbounded search has no budget to exceed")
}

/// [`l_colour`] with a cap on search nodes (colour-assignment attempts);
/// exceeding the cap is an error, never a wrong answer.
pub fn l_colour_budgeted(
    g: &PartiteGraph,
    l: &ListAssignment,
    max_nodes: Option<u64>,
) -> Result<Option<Colouring>, NodeBudgetExceeded> {
    let n = g.n();
    debug_assert_eq!(l.n(), n);
    // dense colour indices
    let ids = l.colours_in_lists();
    let mut lists: Vec<BitSet> = Vec::with_capacity(n);
    let mut remaining: Vec<usize> = Vec::with_capacity(n);
    for v in 1..=n as u32 {
        let mut set = BitSet::new(ids.len());
        for c in l.list(v) {
            set.insert(ids.binary_search(c).expect("list colour is in the universe"));
        }
        remaining.push(set.count());
        lists.push(set);
    }
    let mut search = Search {
        g,
        lists,
        remaining,
        assigned: vec![None; n],
        trail: Vec::new(),
        nodes: 0,
        max_nodes,
    };
    if search.run(n)? {
        let colours = search
            .assigned
            .iter()
            .map(|c| ids[c.expect("complete assignment") as usize])
            .collect();
        let witness = Colouring::new(colours);
        debug_assert!(witness.is_proper(g));
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    g: &'a PartiteGraph,
    lists: Vec<BitSet>,
    remaining: Vec<usize>,
    assigned: Vec<Option<u32>>,
    trail: Vec<(usize, usize)>, // (vertex index, colour index) removals
    nodes: u64,
    max_nodes: Option<u64>,
}

impl Search<'_> {
    fn run(&mut self, uncoloured: usize) -> Result<bool, NodeBudgetExceeded> {
        if uncoloured == 0 {
            return Ok(true);
        }
        // most-constrained vertex first; ties to the smallest index. Picking
        // singleton lists first gives unit propagation for free.
        let v = (0..self.g.n())
            .filter(|&i| self.assigned[i].is_none())
            .min_by_key(|&i| (self.remaining[i], i))
            .expect("uncoloured vertices remain");
        if self.remaining[v] == 0 {
            return Ok(false);
        }
        let colours: Vec<usize> = self.lists[v].iter().collect();
        for c in colours {
            self.nodes += 1;
            if let Some(cap) = self.max_nodes {
                if self.nodes > cap {
                    return Err(NodeBudgetExceeded { cap });
                }
            }
            let mark = self.trail.len();
            self.assigned[v] = Some(c as u32);
            let mut dead = false;
            for &w in self.g.neighbours((v + 1) as u32) {
                let w = (w - 1) as usize;
                if self.assigned[w].is_none() && self.lists[w].contains(c) {
                    self.lists[w].remove(c);
                    self.remaining[w] -= 1;
                    self.trail.push((w, c));
                    if self.remaining[w] == 0 {
                        dead = true;
                        break;
                    }
                }
            }
            if !dead && self.run(uncoloured - 1)? {
                return Ok(true);
            }
            while self.trail.len() > mark {
                let (w, c) = self.trail.pop().expect("trail is non-empty above mark");
                self.lists[w].insert(c);
                self.remaining[w] += 1;
            }
            self.assigned[v] = None;
        }
        Ok(false)
    }
}
