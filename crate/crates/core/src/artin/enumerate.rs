//! Todd–Coxeter coset enumeration over the trivial subgroup, used to count
//! the elements of small Coxeter groups directly from their presentation.
//!
//! Generators are involutions, so one table column per generator suffices
//! and every generator is its own inverse. Relators are `(s_i s_j)^{M_ij}`
//! for finite off-diagonal labels. Cosets are processed in order (HLT
//! strategy) and coincidences are resolved with a union-find.

use super::{CoxeterMatrix, Entry};

const UNDEF: usize = usize::MAX;

struct Enumerator {
    gens: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    cap: usize,
    overflow: bool,
}

impl Enumerator {
    fn get(&self, c: usize, g: usize) -> usize {
        self.table[c * self.gens + g]
    }

    fn set(&mut self, c: usize, g: usize, d: usize) {
        self.table[c * self.gens + g] = d;
    }

    fn count(&self) -> usize {
        self.parent.len()
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, g: usize) -> Option<usize> {
        if self.count() >= self.cap {
            self.overflow = true;
            return None;
        }
        let d = self.count();
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.gens));
        self.set(c, g, d);
        self.set(d, g, c);
        Some(d)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (keep, dead) = (a.min(b), a.max(b));
            self.parent[dead] = keep;
            queue.push(dead);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let dead = queue[i];
            i += 1;
            for g in 0..self.gens {
                let d = self.get(dead, g);
                if d == UNDEF {
                    continue;
                }
                self.set(dead, g, UNDEF);
                if self.get(d, g) == dead {
                    self.set(d, g, UNDEF);
                }
                let (mu, nu) = (self.rep(dead), self.rep(d));
                if self.get(mu, g) != UNDEF {
                    let t = self.get(mu, g);
                    self.merge(nu, t, &mut queue);
                } else if self.get(nu, g) != UNDEF {
                    let t = self.get(nu, g);
                    self.merge(mu, t, &mut queue);
                } else {
                    self.set(mu, g, nu);
                    self.set(nu, g, mu);
                }
            }
        }
    }

    /// Traces `word` from `c` in both directions, defining cosets as needed
    /// and recording the deduction or coincidence when the scan closes.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len());
        loop {
            while i < j && self.get(f, word[i]) != UNDEF {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j > i && self.get(b, word[j - 1]) != UNDEF {
                b = self.get(b, word[j - 1]);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return;
            }
            if j == i + 1 {
                // one gap left: deduce
                self.set(f, word[i], b);
                self.set(b, word[i], f);
                return;
            }
            if self.define(f, word[i]).is_none() {
                return;
            }
        }
    }
}

/// Order of the Coxeter group defined by `m`, or `None` if more than `cap`
/// cosets would be needed.
pub fn coxeter_group_order(m: &CoxeterMatrix, cap: usize) -> Option<usize> {
    let k = m.len();
    if k == 0 {
        return Some(1);
    }
    let mut relators: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if let Entry::Finite(l) = m.entry(i, j) {
                relators.push((0..2 * l as usize).map(|p| if p % 2 == 0 { i } else { j }).collect());
            }
        }
    }
    let mut e = Enumerator { gens: k, table: vec![UNDEF; k], parent: vec![0], cap, overflow: false };
    let mut c = 0;
    while c < e.count() {
        if e.alive(c) {
            for r in &relators {
                if !e.alive(c) {
                    break;
                }
                e.scan_and_fill(c, r);
                if e.overflow {
                    return None;
                }
            }
            for g in 0..k {
                if e.alive(c) && e.get(c, g) == UNDEF && e.define(c, g).is_none() {
                    return None;
                }
            }
        }
        c += 1;
    }
    Some((0..e.count()).filter(|&c| e.alive(c)).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::tests::matrix;

    #[test]
    fn small_orders() {
        assert_eq!(coxeter_group_order(&matrix(&[&[1]]), 100), Some(2));
        assert_eq!(coxeter_group_order(&matrix(&[&[1, 2], &[2, 1]]), 100), Some(4));
        assert_eq!(coxeter_group_order(&matrix(&[&[1, 3], &[3, 1]]), 100), Some(6));
        assert_eq!(coxeter_group_order(&matrix(&[&[1, 7], &[7, 1]]), 1000), Some(14));
        let a3 = matrix(&[&[1, 3, 2], &[3, 1, 3], &[2, 3, 1]]);
        assert_eq!(coxeter_group_order(&a3, 10_000), Some(24));
        let b3 = matrix(&[&[1, 4, 2], &[4, 1, 3], &[2, 3, 1]]);
        assert_eq!(coxeter_group_order(&b3, 10_000), Some(48));
        let h3 = matrix(&[&[1, 5, 2], &[5, 1, 3], &[2, 3, 1]]);
        assert_eq!(coxeter_group_order(&h3, 100_000), Some(120));
    }

    #[test]
    fn infinite_groups_hit_the_cap() {
        let tri = matrix(&[&[1, 3, 3], &[3, 1, 3], &[3, 3, 1]]);
        assert_eq!(coxeter_group_order(&tri, 5_000), None);
        let free = matrix(&[&[1, 0], &[0, 1]]);
        assert_eq!(coxeter_group_order(&free, 1_000), None);
    }
}
