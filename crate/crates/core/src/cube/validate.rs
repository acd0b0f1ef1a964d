use serde::Serialize;

use super::{CubeComplex, HyperplaneId, Sign, VertexId};

/// One violated structural invariant, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// The base vertex is not `+1` on these hyperplanes.
    BaseOrientation { hyperplanes: Vec<String> },
    /// Every vertex lies on one side of the hyperplane.
    NonSeparating { hyperplane: String },
    /// Two hyperplanes induce the same partition of the vertices.
    DuplicatePartition { first: String, second: String },
    /// Two vertex names carry the same orientation.
    DuplicateVertex { first: String, second: String },
    /// The majority median of the triple is not an original vertex.
    NotMedianClosed { triple: [String; 3], median: Vec<i8> },
    /// The supplied ambient dimension is below the dimension estimate.
    AmbientDimensionTooSmall { ambient: usize, estimate: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl CubeComplex {
    /// Checks the structural invariants of a cube complex. An empty
    /// violation list means the complex is valid. For the median-closure
    /// check only the first failing triple (in id order) is reported.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let base = self.vertex(self.base());
        let bad: Vec<String> = base.minus_set().map(|h| self.hyperplane_name(h).to_string()).collect();
        if !bad.is_empty() {
            violations.push(Violation::BaseOrientation { hyperplanes: bad });
        }

        for h in self.hyperplanes() {
            if self.half_space(h, Sign::Plus).is_clear() || self.half_space(h, Sign::Minus).is_clear() {
                violations.push(Violation::NonSeparating { hyperplane: self.hyperplane_name(h).to_string() });
            }
        }

        let nh = self.hyperplane_count();
        for i in 0..nh {
            for j in (i + 1)..nh {
                let (hi, hj) = (HyperplaneId(i), HyperplaneId(j));
                let a = self.half_space(hi, Sign::Minus);
                let b = self.half_space(hj, Sign::Minus);
                let separating = |m: &fixedbitset::FixedBitSet| !m.is_clear() && !m.is_full();
                if !separating(a) || !separating(b) {
                    continue;
                }
                if a == b || a == self.half_space(hj, Sign::Plus) {
                    violations.push(Violation::DuplicatePartition {
                        first: self.hyperplane_name(hi).to_string(),
                        second: self.hyperplane_name(hj).to_string(),
                    });
                }
            }
        }

        for v in self.vertex_ids() {
            let owner = self.lookup(self.vertex(v)).expect("every vertex is indexed");
            if owner != v {
                violations.push(Violation::DuplicateVertex {
                    first: self.vertex_name(owner).to_string(),
                    second: self.vertex_name(v).to_string(),
                });
            }
        }

        if let Some((triple, median)) = self.first_median_failure() {
            violations.push(Violation::NotMedianClosed {
                triple: triple.map(|v| self.vertex_name(v).to_string()),
                median: median.signs().iter().map(|s| s.value()).collect(),
            });
        }

        let estimate = self.dimension_estimate();
        if self.ambient_dimension() < estimate {
            violations.push(Violation::AmbientDimensionTooSmall { ambient: self.ambient_dimension(), estimate });
        }
        ValidationReport { violations }
    }

    fn first_median_failure(&self) -> Option<([VertexId; 3], super::SignVector)> {
        let n = self.vertex_count();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let m = super::SignVector::median(
                        self.vertex(VertexId(i)),
                        self.vertex(VertexId(j)),
                        self.vertex(VertexId(k)),
                    );
                    if self.lookup(&m).is_none() {
                        return Some(([VertexId(i), VertexId(j), VertexId(k)], m));
                    }
                }
            }
        }
        None
    }
}
