//! Girth, shortest cycles, degeneracy, and exact short-cycle counting.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use super::PartiteGraph;

/// Length of a shortest cycle; `Infinite` exactly when the graph is a forest.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, g: usize) -> bool {
        match self {
            Girth::Finite(len) => len >= g,
            Girth::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(len) => Some(len),
            Girth::Infinite => None,
        }
    }
}

impl PartialOrd for Girth {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Girth {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Girth::Finite(a), Girth::Finite(b)) => a.cmp(b),
            (Girth::Finite(_), Girth::Infinite) => Ordering::Less,
            (Girth::Infinite, Girth::Finite(_)) => Ordering::Greater,
            (Girth::Infinite, Girth::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(len) => write!(f, "{len}"),
            Girth::Infinite => write!(f, "infinite"),
        }
    }
}

/// Vertex elimination order together with its maximum back-degree (the
/// number of neighbours occurring later in the sequence).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EliminationOrder {
    pub order: Vec<u32>,
    pub back_degree: usize,
}

impl PartiteGraph {
    /// Exact girth via truncated breadth-first search from every vertex.
    pub fn girth(&self) -> Girth {
        match self.shortest_cycle() {
            Some(cycle) => Girth::Finite(cycle.len()),
            None => Girth::Infinite,
        }
    }

    /// Some shortest cycle, as its vertex sequence, or `None` for forests.
    /// Deterministic: roots are scanned in ascending order with sorted
    /// adjacency, and the first strict improvement is kept.
    pub fn shortest_cycle(&self) -> Option<Vec<u32>> {
        let n = self.n;
        let mut best: Option<Vec<u32>> = None;
        let mut best_len = usize::MAX;
        let mut dist = vec![usize::MAX; n + 1];
        let mut parent = vec![0u32; n + 1];
        let mut touched: Vec<u32> = Vec::new();
        for root in 1..=n as u32 {
            if best_len == 3 {
                break; // cannot improve
            }
            for &v in &touched {
                dist[v as usize] = usize::MAX;
            }
            touched.clear();
            dist[root as usize] = 0;
            parent[root as usize] = 0;
            touched.push(root);
            let mut queue = VecDeque::new();
            queue.push_back(root);
            // expanding to depth < ceil(best/2) suffices to see any shorter cycle
            let depth_cap = best_len.div_ceil(2);
            while let Some(x) = queue.pop_front() {
                if dist[x as usize] >= depth_cap {
                    break;
                }
                for &y in self.neighbours(x) {
                    if dist[y as usize] == usize::MAX {
                        dist[y as usize] = dist[x as usize] + 1;
                        parent[y as usize] = x;
                        touched.push(y);
                        queue.push_back(y);
                    } else if y != parent[x as usize] {
                        let closed = dist[x as usize] + dist[y as usize] + 1;
                        if closed < best_len {
                            let cycle = extract_cycle(&parent, x, y);
                            if cycle.len() < best_len {
                                best_len = cycle.len();
                                best = Some(cycle);
                            }
                        }
                    }
                }
            }
        }
        best
    }

    /// Degeneracy with a witnessing elimination order, by repeated removal
    /// of a minimum-degree vertex (smallest index on ties).
    pub fn degeneracy(&self) -> (usize, EliminationOrder) {
        let n = self.n;
        let mut degree: Vec<usize> = (1..=n as u32).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut back_degree = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&i| !removed[i])
                .min_by_key(|&i| (degree[i], i))
                .expect("vertices remain");
            back_degree = back_degree.max(degree[v]);
            removed[v] = true;
            order.push((v + 1) as u32);
            for &w in self.neighbours((v + 1) as u32) {
                if !removed[(w - 1) as usize] {
                    degree[(w - 1) as usize] -= 1;
                }
            }
        }
        (back_degree, EliminationOrder { order, back_degree })
    }

    /// Exact number of cycles of each length 3..=`max_len`; entry `l` of the
    /// result counts cycles of length `l` (entries 0..3 are zero).
    ///
    /// Enumeration roots each cycle at its smallest vertex and fixes the
    /// traversal direction, so every cycle is counted exactly once.
    pub fn count_cycles_up_to(&self, max_len: usize) -> Vec<u64> {
        let mut counts = vec![0u64; max_len + 1];
        if max_len < 3 {
            return counts;
        }
        let mut on_path = vec![false; self.n + 1];
        let mut path: Vec<u32> = Vec::with_capacity(max_len);
        for root in 1..=self.n as u32 {
            path.push(root);
            on_path[root as usize] = true;
            self.cycle_dfs(root, root, &mut path, &mut on_path, max_len, &mut counts);
            on_path[root as usize] = false;
            path.pop();
        }
        counts
    }

    fn cycle_dfs(
        &self,
        root: u32,
        current: u32,
        path: &mut Vec<u32>,
        on_path: &mut [bool],
        max_len: usize,
        counts: &mut [u64],
    ) {
        for &next in self.neighbours(current) {
            if next == root && path.len() >= 3 {
                // count once per direction: second vertex below last vertex
                if path[1] < path[path.len() - 1] {
                    counts[path.len()] += 1;
                }
                continue;
            }
            if next <= root || on_path[next as usize] || path.len() == max_len {
                continue;
            }
            path.push(next);
            on_path[next as usize] = true;
            self.cycle_dfs(root, next, path, on_path, max_len, counts);
            on_path[next as usize] = false;
            path.pop();
        }
    }
}

/// Rebuild the cycle from BFS parents: walk x and y to the root, trim the
/// common tail, and join through the closing edge (x, y).
fn extract_cycle(parent: &[u32], x: u32, y: u32) -> Vec<u32> {
    let walk = |mut v: u32| {
        let mut path = vec![v];
        while parent[v as usize] != 0 {
            v = parent[v as usize];
            path.push(v);
        }
        path
    };
    let mut px = walk(x); // x .. root
    let mut py = walk(y); // y .. root
    while px.len() >= 2
        && py.len() >= 2
        && px[px.len() - 1] == py[py.len() - 1]
        && px[px.len() - 2] == py[py.len() - 2]
    {
        px.pop();
        py.pop();
    }
    // paths now share exactly their last vertex (the branch point)
    debug_assert_eq!(px.last(), py.last());
    py.pop();
    py.reverse();
    px.extend(py);
    px
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> PartiteGraph {
        let edges = [
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (1, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 10),
            (6, 8),
            (8, 10),
            (7, 10),
            (7, 9),
            (6, 9),
        ];
        PartiteGraph::new(10, edges).unwrap()
    }

    /// Independent oracle: count cycles of length <= cap by exhaustive DFS
    /// over all simple paths, dividing out the 2·len symmetries.
    fn brute_shortest_cycle_len(g: &PartiteGraph) -> Option<usize> {
        fn dfs(
            g: &PartiteGraph,
            start: u32,
            current: u32,
            visited: &mut Vec<u32>,
            best: &mut Option<usize>,
        ) {
            for &nb in g.neighbours(current) {
                if nb == start && visited.len() >= 3 {
                    let len = visited.len();
                    if best.is_none_or(|b| len < b) {
                        *best = Some(len);
                    }
                } else if !visited.contains(&nb) {
                    visited.push(nb);
                    dfs(g, start, nb, visited, best);
                    visited.pop();
                }
            }
        }
        let mut best = None;
        for start in g.vertices() {
            let mut visited = vec![start];
            dfs(g, start, start, &mut visited, &mut best);
        }
        best
    }

    #[test]
    fn girth_of_cycles_and_trees() {
        assert_eq!(PartiteGraph::cycle(5).girth(), Girth::Finite(5));
        assert_eq!(PartiteGraph::cycle(9).girth(), Girth::Finite(9));
        assert_eq!(PartiteGraph::path(6).girth(), Girth::Infinite);
        assert_eq!(PartiteGraph::empty(3).girth(), Girth::Infinite);
    }

    #[test]
    fn girth_of_petersen_is_5() {
        let g = petersen();
        // frozen from the brute-force oracle below
        assert_eq!(brute_shortest_cycle_len(&g), Some(5));
        assert_eq!(g.girth(), Girth::Finite(5));
    }

    #[test]
    fn girth_matches_brute_force_on_small_graphs() {
        use rand::RngExt;
        let mut rng = crate::rng::rng_for(11, 0);
        for _ in 0..200 {
            let n = rng.random_range(1..=7usize);
            let mut edges = Vec::new();
            for u in 1..=n as u32 {
                for v in (u + 1)..=n as u32 {
                    if rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = PartiteGraph::new(n, edges).unwrap();
            let expect = brute_shortest_cycle_len(&g);
            match (g.girth(), expect) {
                (Girth::Finite(a), Some(b)) => assert_eq!(a, b, "{}", g.serialize()),
                (Girth::Infinite, None) => {}
                (got, want) => panic!("girth {got:?} vs brute {want:?}\n{}", g.serialize()),
            }
            if let Some(cycle) = g.shortest_cycle() {
                assert_eq!(Some(cycle.len()), expect);
                // the returned sequence really is a cycle
                for i in 0..cycle.len() {
                    let u = cycle[i];
                    let v = cycle[(i + 1) % cycle.len()];
                    assert!(g.adjacent(u, v));
                }
                let mut sorted = cycle.clone();
                sorted.dedup();
                assert_eq!(sorted.len(), cycle.len());
            }
        }
    }

    #[test]
    fn girth_ordering() {
        assert!(Girth::Finite(5) < Girth::Infinite);
        assert!(Girth::Finite(5) < Girth::Finite(6));
        assert!(Girth::Infinite.at_least(1_000_000));
        assert!(Girth::Finite(5).at_least(5));
        assert!(!Girth::Finite(5).at_least(6));
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(PartiteGraph::cycle(7).degeneracy().0, 2);
        assert_eq!(PartiteGraph::complete(4).degeneracy().0, 3);
        // single edge plus isolated vertex
        let g = PartiteGraph::new(3, [(1, 2)]).unwrap();
        assert_eq!(g.degeneracy().0, 1);
        assert_eq!(PartiteGraph::empty(4).degeneracy().0, 0);
    }

    #[test]
    fn degeneracy_order_is_witnessing_permutation() {
        let g = petersen();
        let (d, elim) = g.degeneracy();
        assert_eq!(d, 3);
        let mut seen = elim.order.clone();
        seen.sort_unstable();
        assert_eq!(seen, g.vertices().collect::<Vec<_>>());
        // back-degree of the order really is d
        let position: std::collections::HashMap<u32, usize> = elim
            .order
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let max_back = g
            .vertices()
            .map(|v| {
                g.neighbours(v)
                    .iter()
                    .filter(|&&w| position[&w] > position[&v])
                    .count()
            })
            .max()
            .unwrap();
        assert_eq!(max_back, d);
        assert_eq!(elim.back_degree, d);
    }

    #[test]
    fn cycle_counts_match_formulas() {
        // triangles of K5: C(5,3) = 10; 4-cycles: 3·C(5,4) = 15; 5-cycles: 12
        let k5 = PartiteGraph::complete(5);
        let counts = k5.count_cycles_up_to(5);
        assert_eq!(&counts[3..=5], &[10, 15, 12]);
        // C6: exactly one cycle, length 6
        let c6 = PartiteGraph::cycle(6);
        assert_eq!(c6.count_cycles_up_to(6), vec![0, 0, 0, 0, 0, 0, 1]);
        // K_{3,3}: no odd cycles, 9 four-cycles, 6 six-cycles
        let k33 = PartiteGraph::complete_bipartite(3, 3);
        let counts = k33.count_cycles_up_to(6);
        assert_eq!(&counts[3..=6], &[0, 9, 0, 6]);
        // Petersen: girth 5, twelve 5-cycles, ten 6-cycles
        let counts = petersen().count_cycles_up_to(6);
        assert_eq!(&counts[3..=6], &[0, 0, 12, 10]);
    }
}
