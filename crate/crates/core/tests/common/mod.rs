//! Reference implementations used as oracles by the integration tests.
//! They work on plain `Vec<i8>` sign vectors and share no code with the
//! library beyond reading vertex data out of a complex.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use cubical_exactness::{CubeComplex, SignVector};

pub type Signs = Vec<i8>;

pub fn signs(z: &SignVector) -> Signs {
    z.signs().iter().map(|s| s.value()).collect()
}

/// Pascal-triangle binomial; `u128` is plenty for the sizes tested here.
pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

/// Vertex sign vectors of a complex plus a reverse index.
pub struct Oracle {
    pub n_ambient: usize,
    pub verts: Vec<Signs>,
    pub index: HashMap<Signs, usize>,
}

impl Oracle {
    pub fn new(c: &CubeComplex) -> Self {
        let verts: Vec<Signs> = c.vertex_ids().map(|v| signs(c.vertex(v))).collect();
        let index = verts.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Oracle { n_ambient: c.ambient_dimension(), verts, index }
    }

    pub fn hamming(a: &[i8], b: &[i8]) -> usize {
        a.iter().zip(b).filter(|(x, y)| x != y).count()
    }

    /// Hyperplanes `h` such that flipping `a` across `h` lands on a vertex.
    pub fn adjacent(&self, a: usize) -> Vec<usize> {
        let v = &self.verts[a];
        (0..v.len())
            .filter(|&h| {
                let mut w = v.clone();
                w[h] = -w[h];
                self.index.contains_key(&w)
            })
            .collect()
    }

    /// Graph distances on the 1-skeleton (vertices one flip apart), by BFS.
    pub fn distances(&self) -> Vec<Vec<usize>> {
        let n = self.verts.len();
        let nbrs: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                self.adjacent(a)
                    .into_iter()
                    .map(|h| {
                        let mut w = self.verts[a].clone();
                        w[h] = -w[h];
                        self.index[&w]
                    })
                    .collect()
            })
            .collect();
        (0..n)
            .map(|s| {
                let mut d = vec![usize::MAX; n];
                d[s] = 0;
                let mut q = VecDeque::from([s]);
                while let Some(u) = q.pop_front() {
                    for &v in &nbrs[u] {
                        if d[v] == usize::MAX {
                            d[v] = d[u] + 1;
                            q.push_back(v);
                        }
                    }
                }
                d
            })
            .collect()
    }

    pub fn in_interval(a: &[i8], x: &[i8], z: &[i8]) -> bool {
        a.iter().zip(x).zip(z).all(|((a, x), z)| a == x || a == z)
    }

    /// `C(n - d(x,a) + δ, δ)` on the interval, with `δ = N - #{adjacent H : a(H) != z(H)}`.
    pub fn phi(&self, n: usize, x: usize, z: &[i8], a: usize) -> u128 {
        let (xv, av) = (&self.verts[x], &self.verts[a]);
        if !Self::in_interval(av, xv, z) {
            return 0;
        }
        let d = Self::hamming(xv, av);
        if d > n {
            return 0;
        }
        let toward = self.adjacent(a).into_iter().filter(|&h| av[h] != z[h]).count();
        let delta = self.n_ambient.checked_sub(toward).expect("ambient dimension too small");
        binom(n - d + delta, delta)
    }

    /// Pairwise admissibility checked against the vertex set directly.
    pub fn admissible(&self, z: &[i8]) -> bool {
        (0..z.len()).all(|h| {
            (h + 1..z.len()).all(|k| self.verts.iter().any(|v| v[h] == z[h] && v[k] == z[k]))
        })
    }
}
