//! Sign-vector model of a CAT(0) cube complex.
//!
//! A complex is a finite set of hyperplanes together with a median-closed
//! set of original vertices, each recorded as its orientation on every
//! hyperplane relative to a base vertex. Separators, distance, medians,
//! intervals, adjacency and admissibility are all computed on that model.

mod admissible;
mod json;
mod sign;
mod validate;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

pub use admissible::AdmissibleEnumeration;
pub use json::ComplexFile;
pub use sign::{HyperplaneId, Sign, SignVector, VertexId};
pub use validate::{ValidationReport, Violation};

use crate::clique::{clique_number, Graph};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CubeComplex {
    hyperplanes: Vec<String>,
    hyperplane_index: HashMap<String, HyperplaneId>,
    vertex_names: Vec<String>,
    vertices: Vec<SignVector>,
    vertex_index: HashMap<String, VertexId>,
    by_sign: HashMap<SignVector, VertexId>,
    base: VertexId,
    ambient_dimension: usize,
    /// `minus_members[h]` = vertices with sign `-1` on `h`.
    minus_members: Vec<FixedBitSet>,
    plus_members: Vec<FixedBitSet>,
}

impl CubeComplex {
    /// Assembles a complex from raw parts.
    ///
    /// Only structural input errors are rejected here (name clashes, vectors
    /// of the wrong length, an unknown base). The combinatorial invariants
    /// are checked by [`CubeComplex::validate`]. When `ambient_dimension` is
    /// `None` the dimension estimate is used.
    pub fn new(
        hyperplanes: Vec<String>,
        vertices: Vec<(String, SignVector)>,
        base: &str,
        ambient_dimension: Option<usize>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("a complex needs at least one vertex"));
        }
        let mut hyperplane_index = HashMap::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            if hyperplane_index.insert(h.clone(), HyperplaneId(i)).is_some() {
                return Err(Error::input(format!("duplicate hyperplane name `{h}`")));
            }
        }
        let mut vertex_index = HashMap::new();
        let mut by_sign = HashMap::new();
        let mut names = Vec::with_capacity(vertices.len());
        let mut vecs = Vec::with_capacity(vertices.len());
        for (i, (name, v)) in vertices.into_iter().enumerate() {
            if v.len() != hyperplanes.len() {
                return Err(Error::input(format!(
                    "vertex `{name}` has {} signs, expected {}",
                    v.len(),
                    hyperplanes.len()
                )));
            }
            if vertex_index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::input(format!("duplicate vertex name `{name}`")));
            }
            by_sign.entry(v.clone()).or_insert(VertexId(i));
            names.push(name);
            vecs.push(v);
        }
        let base = *vertex_index.get(base).ok_or_else(|| Error::UnknownVertex(base.to_string()))?;
        let nv = vecs.len();
        let mut minus_members = vec![FixedBitSet::with_capacity(nv); hyperplanes.len()];
        for (i, v) in vecs.iter().enumerate() {
            for h in v.minus_set() {
                minus_members[h.0].insert(i);
            }
        }
        let plus_members = minus_members
            .iter()
            .map(|m| {
                let mut p = m.clone();
                p.toggle_range(..);
                p
            })
            .collect();
        let mut c = CubeComplex {
            hyperplanes,
            hyperplane_index,
            vertex_names: names,
            vertices: vecs,
            vertex_index,
            by_sign,
            base,
            ambient_dimension: 0,
            minus_members,
            plus_members,
        };
        c.ambient_dimension = match ambient_dimension {
            Some(n) => n,
            None => c.dimension_estimate(),
        };
        Ok(c)
    }

    /// Replaces the ambient dimension; it must dominate the dimension estimate.
    pub fn with_ambient_dimension(mut self, n: usize) -> Result<Self> {
        let est = self.dimension_estimate();
        if n < est {
            return Err(Error::input(format!("ambient dimension {n} is below the complex dimension {est}")));
        }
        self.ambient_dimension = n;
        Ok(self)
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient_dimension
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn hyperplanes(&self) -> impl ExactSizeIterator<Item = HyperplaneId> {
        (0..self.hyperplanes.len()).map(HyperplaneId)
    }

    pub fn vertex_ids(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn vertex(&self, v: VertexId) -> &SignVector {
        &self.vertices[v.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn hyperplane_name(&self, h: HyperplaneId) -> &str {
        &self.hyperplanes[h.0]
    }

    pub fn hyperplane_names(&self) -> &[String] {
        &self.hyperplanes
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn hyperplane_id(&self, name: &str) -> Result<HyperplaneId> {
        self.hyperplane_index.get(name).copied().ok_or_else(|| Error::UnknownHyperplane(name.to_string()))
    }

    /// The original vertex with this orientation, if any.
    pub fn lookup(&self, v: &SignVector) -> Option<VertexId> {
        self.by_sign.get(v).copied()
    }

    /// Vertices lying in the half space `h^sign`.
    pub fn half_space(&self, h: HyperplaneId, sign: Sign) -> &FixedBitSet {
        match sign {
            Sign::Plus => &self.plus_members[h.0],
            Sign::Minus => &self.minus_members[h.0],
        }
    }

    fn check_len(&self, v: &SignVector) -> Result<()> {
        if v.len() != self.hyperplanes.len() {
            return Err(Error::input(format!(
                "sign vector has {} entries, complex has {} hyperplanes",
                v.len(),
                self.hyperplanes.len()
            )));
        }
        Ok(())
    }

    /// Hyperplanes separating `x` and `y`.
    pub fn separators(&self, x: &SignVector, y: &SignVector) -> Result<Vec<HyperplaneId>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(x.separators(y))
    }

    /// Combinatorial distance between original vertices.
    pub fn distance(&self, x: VertexId, y: VertexId) -> usize {
        self.vertex(x).distance(self.vertex(y))
    }

    pub fn median(&self, x: &SignVector, y: &SignVector, z: &SignVector) -> Result<SignVector> {
        self.check_len(x)?;
        self.check_len(y)?;
        self.check_len(z)?;
        Ok(SignVector::median(x, y, z))
    }

    /// Original vertices of the interval `[x, y]`, in id order.
    pub fn interval(&self, x: &SignVector, y: &SignVector) -> Vec<VertexId> {
        self.vertex_ids().filter(|&a| self.vertex(a).in_interval(x, y)).collect()
    }

    pub fn interval_membership(&self, a: VertexId, x: &SignVector, y: &SignVector) -> bool {
        self.vertex(a).in_interval(x, y)
    }

    /// The vertex differing from `a` exactly on `h`, when it exists.
    pub fn neighbor_across(&self, a: VertexId, h: HyperplaneId) -> Result<Option<VertexId>> {
        if h.0 >= self.hyperplanes.len() {
            return Err(Error::UnknownHyperplane(format!("#{}", h.0)));
        }
        Ok(self.lookup(&self.vertex(a).flipped(h)))
    }

    /// Hyperplanes adjacent to `a`.
    pub fn adjacent_hyperplanes(&self, a: VertexId) -> Vec<HyperplaneId> {
        let v = self.vertex(a);
        self.hyperplanes().filter(|&h| self.by_sign.contains_key(&v.flipped(h))).collect()
    }

    /// `a` is adjacent to `h` (some vertex differs from it only on `h`).
    pub fn is_adjacent(&self, a: VertexId, h: HyperplaneId) -> bool {
        self.by_sign.contains_key(&self.vertex(a).flipped(h))
    }

    /// Neighbours of `a` in the 1-skeleton.
    pub fn neighbors(&self, a: VertexId) -> Vec<VertexId> {
        let v = self.vertex(a);
        self.hyperplanes().filter_map(|h| self.lookup(&v.flipped(h))).collect()
    }

    /// Two hyperplanes cross when all four sign combinations occur.
    pub fn crosses(&self, h: HyperplaneId, k: HyperplaneId) -> bool {
        if h == k {
            return false;
        }
        [Sign::Plus, Sign::Minus].iter().all(|&s| {
            [Sign::Plus, Sign::Minus].iter().all(|&t| !self.half_space(h, s).is_disjoint(self.half_space(k, t)))
        })
    }

    /// Largest number of pairwise crossing hyperplanes adjacent to a single
    /// vertex.
    pub fn dimension_estimate(&self) -> usize {
        let mut best = 0;
        for a in self.vertex_ids() {
            let adj = self.adjacent_hyperplanes(a);
            if adj.len() <= best {
                continue;
            }
            let g = Graph::from_fn(adj.len(), |i, j| self.crosses(adj[i], adj[j]));
            best = best.max(clique_number(&g));
        }
        best
    }

    /// Original vertices at distance at most `n` from `x`.
    pub fn ball(&self, x: VertexId, n: usize) -> Vec<VertexId> {
        self.vertex_ids().filter(|&a| self.distance(x, a) <= n).collect()
    }

    /// Orientation from a `+1/-1` array aligned with the hyperplane order.
    pub fn sign_vector_from_ints(&self, signs: &[i64]) -> Result<SignVector> {
        if signs.len() != self.hyperplanes.len() {
            return Err(Error::input(format!(
                "sign array has length {}, expected {}",
                signs.len(),
                self.hyperplanes.len()
            )));
        }
        let signs = signs
            .iter()
            .map(|&s| Sign::from_int(s).ok_or_else(|| Error::input(format!("sign {s} is not +1 or -1"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(SignVector::from_signs(&signs))
    }

    /// Orientation with sign `-1` exactly on the named hyperplanes.
    pub fn sign_vector_from_minus<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<SignVector> {
        let ids = names.into_iter().map(|n| self.hyperplane_id(n)).collect::<Result<Vec<_>>>()?;
        Ok(SignVector::from_minus_set(self.hyperplane_count(), ids))
    }
}
