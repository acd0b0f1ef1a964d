use super::{CubeComplex, HyperplaneId, Sign, SignVector};

/// Output of [`CubeComplex::enumerate_admissible`]. `complete` is false when
/// the limit stopped the search early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleEnumeration {
    pub vectors: Vec<SignVector>,
    pub complete: bool,
}

impl CubeComplex {
    /// `h^s` and `k^t` share an original vertex.
    fn half_spaces_meet(&self, h: HyperplaneId, s: Sign, k: HyperplaneId, t: Sign) -> bool {
        !self.half_space(h, s).is_disjoint(self.half_space(k, t))
    }

    /// Pairwise admissibility: every two chosen half spaces of `z` contain a
    /// common original vertex. Pairwise agreement implies agreement on any
    /// finite family of hyperplanes (take medians of pairwise witnesses), so
    /// this is the full criterion.
    pub fn is_admissible(&self, z: &SignVector) -> bool {
        if z.len() != self.hyperplane_count() {
            return false;
        }
        let n = self.hyperplane_count();
        (0..n).all(|i| {
            let (h, s) = (HyperplaneId(i), z.sign(HyperplaneId(i)));
            (i..n).all(|j| {
                let k = HyperplaneId(j);
                self.half_spaces_meet(h, s, k, z.sign(k))
            })
        })
    }

    /// Backtracking over the hyperplanes in order, pruning any partial
    /// orientation with an empty pairwise half-space intersection.
    pub fn enumerate_admissible(&self, limit: usize) -> AdmissibleEnumeration {
        let n = self.hyperplane_count();
        let mut out = Vec::new();
        let mut chosen: Vec<Sign> = Vec::with_capacity(n);
        let complete = self.extend_admissible(&mut chosen, &mut out, limit);
        AdmissibleEnumeration { vectors: out, complete }
    }

    fn extend_admissible(&self, chosen: &mut Vec<Sign>, out: &mut Vec<SignVector>, limit: usize) -> bool {
        let i = chosen.len();
        if i == self.hyperplane_count() {
            if out.len() >= limit {
                return false;
            }
            out.push(SignVector::from_signs(chosen));
            return true;
        }
        let h = HyperplaneId(i);
        for s in [Sign::Plus, Sign::Minus] {
            if !self.half_spaces_meet(h, s, h, s) {
                continue;
            }
            let consistent = chosen.iter().enumerate().all(|(j, &t)| self.half_spaces_meet(h, s, HyperplaneId(j), t));
            if consistent {
                chosen.push(s);
                let ok = self.extend_admissible(chosen, out, limit);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}
