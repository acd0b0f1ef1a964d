//! Maximal clique enumeration (Bron–Kerbosch with Tomita pivoting).

use fixedbitset::FixedBitSet;

/// Undirected simple graph on `0..n` stored as adjacency bitsets.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i != j {
            self.adj[i].insert(j);
            self.adj[j].insert(i);
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].ones()
    }
}

/// Result of a capped enumeration. `complete` is false when the cap cut the
/// search short; `cliques` then holds what was found so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueEnumeration {
    pub cliques: Vec<Vec<usize>>,
    pub complete: bool,
}

/// All maximal cliques, each sorted ascending, the list sorted
/// lexicographically. Isolated vertices are singleton cliques; the empty
/// graph has the single empty clique.
pub fn maximal_cliques(g: &Graph, cap: usize) -> CliqueEnumeration {
    let n = g.len();
    let mut out = Vec::new();
    if n == 0 {
        return CliqueEnumeration { cliques: vec![vec![]], complete: true };
    }
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    let complete = expand(g, &mut r, p, x, &mut out, cap);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    CliqueEnumeration { cliques: out, complete }
}

fn expand(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> bool {
    if p.is_clear() {
        if x.is_clear() {
            if out.len() >= cap {
                return false;
            }
            out.push(r.clone());
        }
        return true;
    }
    // pivot maximising |P ∩ N(u)|
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection(&g.adj[u]).count())
        .expect("P is non-empty");
    let candidates: Vec<usize> = p.difference(&g.adj[pivot]).collect();
    for v in candidates {
        r.push(v);
        let mut np = p.clone();
        np.intersect_with(&g.adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&g.adj[v]);
        let ok = expand(g, r, np, nx, out, cap);
        r.pop();
        if !ok {
            return false;
        }
        p.set(v, false);
        x.insert(v);
    }
    true
}

/// Size of a largest clique (0 for the empty graph).
pub fn clique_number(g: &Graph) -> usize {
    maximal_cliques(g, usize::MAX).cliques.iter().map(Vec::len).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_maximal(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.len();
        let is_clique = |s: &[usize]| s.iter().all(|&a| s.iter().all(|&b| a == b || g.has_edge(a, b)));
        let mut cliques = Vec::new();
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if !is_clique(&s) {
                continue;
            }
            let maximal = (0..n).filter(|i| mask & (1 << i) == 0).all(|v| !s.iter().all(|&a| g.has_edge(a, v)));
            if maximal {
                cliques.push(s);
            }
        }
        cliques.sort();
        cliques
    }

    #[test]
    fn triangle_plus_pendant() {
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        g.add_edge(2, 3);
        let e = maximal_cliques(&g, 100);
        assert!(e.complete);
        assert_eq!(e.cliques, vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(clique_number(&g), 3);
    }

    #[test]
    fn matches_brute_force_on_pseudo_random_graphs() {
        let mut state = 0x2545_f491_u64;
        for _ in 0..40 {
            let n = 9;
            let g = Graph::from_fn(n, |_, _| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                !state.is_multiple_of(3)
            });
            assert_eq!(maximal_cliques(&g, usize::MAX).cliques, brute_force_maximal(&g));
        }
    }

    #[test]
    fn cap_reports_partial() {
        // 5-cycle has five maximal cliques
        let g = Graph::from_fn(5, |i, j| (j - i) == 1 || (i == 0 && j == 4));
        let e = maximal_cliques(&g, 3);
        assert!(!e.complete);
        assert_eq!(e.cliques.len(), 3);
    }

    #[test]
    fn isolated_and_empty() {
        let g = Graph::new(3);
        assert_eq!(maximal_cliques(&g, 10).cliques, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(maximal_cliques(&Graph::new(0), 10).cliques, vec![Vec::<usize>::new()]);
    }
}
