//! Proper colourings and the exact k-colourability decision.

use super::PartiteGraph;

/// Assignment of a colour identifier to every vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Colouring {
    colours: Vec<u32>, // indexed by v-1
}

impl Colouring {
    pub fn new(colours: Vec<u32>) -> Self {
        Colouring { colours }
    }

    pub fn colour(&self, v: u32) -> u32 {
        self.colours[(v - 1) as usize]
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    /// No edge joins two vertices of the same colour.
    pub fn is_proper(&self, g: &PartiteGraph) -> bool {
        self.colours.len() == g.n()
            && g.edges()
                .iter()
                .all(|&(u, v)| self.colour(u) != self.colour(v))
    }
}

/// Exact decision: does `g` admit a proper colouring with at most `k`
/// colours? Returns a witness (colours 1..=k) when so.
///
/// Backtracking over the reverse degeneracy order, with two symmetry breaks:
/// a greedily found clique is pre-coloured, and a vertex may open at most
/// one colour beyond those already used.
pub fn is_k_colourable(g: &PartiteGraph, k: usize) -> Option<Colouring> {
    if g.n() == 0 {
        return Some(Colouring::new(Vec::new()));
    }
    if k == 0 {
        return None;
    }
    if g.m() == 0 {
        return Some(Colouring::new(vec![1; g.n()]));
    }

    let clique = greedy_clique(g);
    if clique.len() > k {
        return None;
    }

    // reverse elimination order: every vertex sees at most `degeneracy`
    // previously coloured neighbours
    let (_, elim) = g.degeneracy();
    let mut order: Vec<u32> = clique.clone();
    order.extend(elim.order.iter().rev().filter(|v| !clique.contains(v)));

    let mut colours = vec![0u32; g.n()]; // 0 = uncoloured
    for (i, &v) in clique.iter().enumerate() {
        colours[(v - 1) as usize] = (i + 1) as u32;
    }
    let start_max = clique.len() as u32;
    if backtrack(g, &order, clique.len(), start_max, k as u32, &mut colours) {
        let witness = Colouring::new(colours);
        debug_assert!(witness.is_proper(g));
        Some(witness)
    } else {
        None
    }
}

fn backtrack(
    g: &PartiteGraph,
    order: &[u32],
    idx: usize,
    max_used: u32,
    k: u32,
    colours: &mut Vec<u32>,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let mut forbidden = 0u64; // colours fit in a word: c <= k <= 64 handled below
    let mut forbidden_big = Vec::new();
    for &w in g.neighbours(v) {
        let c = colours[(w - 1) as usize];
        if c != 0 {
            if c <= 64 {
                forbidden |= 1 << (c - 1);
            } else {
                forbidden_big.push(c);
            }
        }
    }
    let cap = k.min(max_used + 1);
    for c in 1..=cap {
        let blocked = if c <= 64 {
            forbidden >> (c - 1) & 1 == 1
        } else {
            forbidden_big.contains(&c)
        };
        if blocked {
            continue;
        }
        colours[(v - 1) as usize] = c;
        if backtrack(g, order, idx + 1, max_used.max(c), k, colours) {
            return true;
        }
    }
    colours[(v - 1) as usize] = 0;
    false
}

/// Greedy clique: seed with a maximum-degree vertex, extend by the highest
/// degree common neighbour. Used only for symmetry breaking and the cheap
/// `clique > k` cut; no maximality guarantee needed.
fn greedy_clique(g: &PartiteGraph) -> Vec<u32> {
    let seed = g
        .vertices()
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .expect("nonempty graph");
    let mut clique = vec![seed];
    loop {
        let candidate = g
            .vertices()
            .filter(|&v| !clique.contains(&v) && clique.iter().all(|&u| g.adjacent(u, v)))
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
        match candidate {
            Some(v) => clique.push(v),
            None => return clique,
        }
    }
}

/// Greedy colouring along the given vertex order, using the smallest
/// feasible colour (1-based). A d-degenerate graph coloured along its
/// reverse elimination order uses at most d+1 colours.
pub fn greedy_colouring(g: &PartiteGraph, order: &[u32]) -> Colouring {
    let mut colours = vec![0u32; g.n()];
    for &v in order {
        let mut used: Vec<u32> = g
            .neighbours(v)
            .iter()
            .map(|&w| colours[(w - 1) as usize])
            .filter(|&c| c != 0)
            .collect();
        used.sort_unstable();
        used.dedup();
        let mut c = 1;
        for u in used {
            if u == c {
                c += 1;
            } else if u > c {
                break;
            }
        }
        colours[(v - 1) as usize] = c;
    }
    Colouring::new(colours)
}
