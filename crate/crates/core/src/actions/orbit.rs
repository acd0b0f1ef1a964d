//! Orbit transversal, stabilizers and the coset decomposition `g = z_g a_g`.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde_json::json;

use super::{ElemId, GroupAction};
use crate::cube::VertexId;
use crate::report::{Check, VerificationReport};

/// Coset data for one transversal point `t`: its stabilizer `Γᵗ`, the
/// representatives `Zᵗ` (the least element of each coset `gΓᵗ`), and the
/// decomposition `g = z_g a_g` with `a_g ∈ Γᵗ`.
#[derive(Debug, Clone)]
pub struct StabilizerData {
    pub t: VertexId,
    pub stabilizer: Vec<ElemId>,
    in_stabilizer: FixedBitSet,
    /// Representative mapping `t` to each orbit point, in vertex order.
    rep_of_point: BTreeMap<VertexId, ElemId>,
    z: Vec<ElemId>,
    a: Vec<ElemId>,
}

impl StabilizerData {
    fn new(action: &GroupAction, t: VertexId) -> Self {
        let order = action.order();
        let mut rep_of_point = BTreeMap::new();
        let mut in_stabilizer = FixedBitSet::with_capacity(order);
        for g in action.elements() {
            let y = action.vertex_image(g, t);
            rep_of_point.entry(y).or_insert(g);
            if y == t {
                in_stabilizer.insert(g.0);
            }
        }
        let z: Vec<ElemId> = action.elements().map(|g| rep_of_point[&action.vertex_image(g, t)]).collect();
        let a = action.elements().map(|g| action.mul(action.inv(z[g.0]), g)).collect();
        StabilizerData {
            t,
            stabilizer: in_stabilizer.ones().map(ElemId).collect(),
            in_stabilizer,
            rep_of_point,
            z,
            a,
        }
    }

    pub fn z(&self, g: ElemId) -> ElemId {
        self.z[g.0]
    }

    pub fn a(&self, g: ElemId) -> ElemId {
        self.a[g.0]
    }

    pub fn stabilizes(&self, g: ElemId) -> bool {
        self.in_stabilizer.contains(g.0)
    }

    /// The representatives `Zᵗ`, in element order.
    pub fn representatives(&self) -> Vec<ElemId> {
        let mut reps: Vec<ElemId> = self.rep_of_point.values().copied().collect();
        reps.sort();
        reps
    }

    /// The representative moving `t` to `y`, if `y` is in the orbit.
    pub fn representative_for(&self, y: VertexId) -> Option<ElemId> {
        self.rep_of_point.get(&y).copied()
    }

    pub fn orbit(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rep_of_point.keys().copied()
    }
}

/// A transversal (least vertex of each orbit) with coset data per point.
#[derive(Debug, Clone)]
pub struct OrbitData {
    pub points: Vec<StabilizerData>,
    orbit_of: Vec<usize>,
}

impl OrbitData {
    pub fn transversal(&self) -> Vec<VertexId> {
        self.points.iter().map(|p| p.t).collect()
    }

    /// Index into `points` of the orbit containing `v`.
    pub fn orbit_index(&self, v: VertexId) -> usize {
        self.orbit_of[v.0]
    }

    /// Exhaustive check of the decomposition, the coset identities
    /// `z_{gk} (a_{gk} a_k^{-1}) = g z_k`, `a_{gh} = a_g h`, `z_{gh} = z_g`
    /// (`h` in the stabilizer), the bijection of `Zᵗ` onto the orbit, and
    /// equivariance `σ(hg) = h σ(g)` of the splitting.
    pub fn verify(&self, action: &GroupAction) -> VerificationReport {
        let mut decomposition = Check::new("coset-decomposition");
        let mut product = Check::new("coset-product-identity");
        let mut right_stab = Check::new("coset-stabilizer-identities");
        let mut bijection = Check::new("representatives-biject-orbit");
        let mut sigma = Check::new("sigma-equivariance");
        let name = |g: ElemId| action.element_name(g);
        for p in &self.points {
            let t = p.t.0;
            for g in action.elements() {
                let ok = action.mul(p.z(g), p.a(g)) == g && p.stabilizes(p.a(g));
                decomposition.record(ok, || json!({"t": t, "g": name(g)}));
                for k in action.elements() {
                    let gk = action.mul(g, k);
                    let lhs = action.mul(p.z(gk), action.mul(p.a(gk), action.inv(p.a(k))));
                    let rhs = action.mul(g, p.z(k));
                    product.record(lhs == rhs, || json!({"t": t, "g": name(g), "k": name(k)}));
                }
                for &h in &p.stabilizer {
                    let gh = action.mul(g, h);
                    let ok = p.a(gh) == action.mul(p.a(g), h) && p.z(gh) == p.z(g);
                    right_stab.record(ok, || json!({"t": t, "g": name(g), "h": name(h)}));
                    let lhs = sigma_split(action, p, action.mul(h, g));
                    let rhs = action.mul(h, sigma_split(action, p, g));
                    sigma.record(lhs == rhs, || json!({"t": t, "g": name(g), "h": name(h)}));
                }
            }
            let reps = p.representatives();
            let mut images: Vec<VertexId> = reps.iter().map(|&z| action.vertex_image(z, p.t)).collect();
            images.sort();
            images.dedup();
            let orbit: Vec<VertexId> = p.orbit().collect();
            bijection.record(images.len() == reps.len() && images == orbit, || json!({"t": t}));
            bijection.record(reps.len() * p.stabilizer.len() == action.order(), || json!({"t": t, "orbit-stabilizer": false}));
        }
        VerificationReport { checks: vec![decomposition, product, right_stab, bijection, sigma] }
    }
}

/// Transversal of least vertex ids, with stabilizers and representatives.
pub fn orbit_transversal(action: &GroupAction) -> OrbitData {
    let nv = action.vertex_count();
    let mut orbit_of = vec![usize::MAX; nv];
    let mut points = Vec::new();
    for v in 0..nv {
        if orbit_of[v] != usize::MAX {
            continue;
        }
        let data = StabilizerData::new(action, VertexId(v));
        for y in data.orbit() {
            orbit_of[y.0] = points.len();
        }
        points.push(data);
    }
    OrbitData { points, orbit_of }
}

/// The splitting `σ(g) = a_{g^{-1}}^{-1}` into the stabilizer of `t`.
pub fn sigma_split(action: &GroupAction, data: &StabilizerData, g: ElemId) -> ElemId {
    action.inv(data.a(action.inv(g)))
}
