//! Deficiency and weight functions, their normalised measures, and an exact
//! sweep of the weight identities.
//!
//! For vertices `x, a` and an admissible point `z`, the weight is
//! `phi^n_{x,z}(a) = C(n - d(x,a) + delta, delta)` when `a` lies in `[x,z]`
//! and zero otherwise, where the deficiency `delta` is `N` minus the number
//! of hyperplanes adjacent to `a` that separate `a` from `z`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use crate::actions::GroupAction;
use crate::binomial::binomial;
use crate::cube::{CubeComplex, HyperplaneId, SignVector, VertexId};
use crate::error::{Error, Result};
use crate::measure::{rational_string, ProbMeasure};
use crate::report::{Check, VerificationReport};

/// Hyperplanes adjacent to `a` that separate it from `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficiencySet {
    pub vertex: VertexId,
    pub target: SignVector,
    pub set: Vec<HyperplaneId>,
    /// `N - |set|`.
    pub deficiency: usize,
}

/// The integer weights `phi^n_{x,z}` as a sparse map (zeros omitted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub source: VertexId,
    pub target: SignVector,
    pub n: usize,
    pub ambient: usize,
    pub values: BTreeMap<VertexId, BigUint>,
}

impl WeightVector {
    pub fn get(&self, a: VertexId) -> BigUint {
        self.values.get(&a).cloned().unwrap_or_default()
    }

    pub fn mass(&self) -> BigUint {
        self.values.values().sum()
    }

    pub fn normalized(&self) -> ProbMeasure<VertexId> {
        ProbMeasure::normalize(self.values.iter().map(|(k, v)| (*k, v.clone())))
            .expect("weight vectors have positive mass")
    }

    /// `l1` distance between two integer weight vectors.
    pub fn l1_distance(&self, other: &WeightVector) -> BigUint {
        let mut total = BigUint::zero();
        let mut keys: Vec<&VertexId> = self.values.keys().chain(other.values.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let (p, q) = (self.get(*k), other.get(*k));
            total += if p >= q { p - q } else { q - p };
        }
        total
    }
}

/// Weight computations on one complex, with adjacency precomputed.
#[derive(Debug, Clone)]
pub struct Weights<'c> {
    complex: &'c CubeComplex,
    adjacent: Vec<Vec<HyperplaneId>>,
}

impl<'c> Weights<'c> {
    pub fn new(complex: &'c CubeComplex) -> Self {
        let adjacent = complex.vertex_ids().map(|a| complex.adjacent_hyperplanes(a)).collect();
        Weights { complex, adjacent }
    }

    pub fn complex(&self) -> &'c CubeComplex {
        self.complex
    }

    pub fn adjacent(&self, a: VertexId) -> &[HyperplaneId] {
        &self.adjacent[a.0]
    }

    fn check_len(&self, z: &SignVector) -> Result<()> {
        if z.len() != self.complex.hyperplane_count() {
            return Err(Error::input(format!(
                "sign vector of length {} over {} hyperplanes",
                z.len(),
                self.complex.hyperplane_count()
            )));
        }
        Ok(())
    }

    /// The deficiency set of `a` in `[x, z]`.
    pub fn deficiency_set(&self, x: VertexId, z: &SignVector, a: VertexId) -> Result<DeficiencySet> {
        self.check_len(z)?;
        let c = self.complex;
        if !c.vertex(a).in_interval(c.vertex(x), z) {
            return Err(Error::Domain(format!(
                "{} is not in the interval from {} to the target",
                c.vertex_name(a),
                c.vertex_name(x)
            )));
        }
        self.deficiency_unchecked(z, a)
    }

    fn deficiency_unchecked(&self, z: &SignVector, a: VertexId) -> Result<DeficiencySet> {
        let c = self.complex;
        let av = c.vertex(a);
        let set: Vec<HyperplaneId> = self.adjacent(a).iter().copied().filter(|&h| av.sign(h) != z.sign(h)).collect();
        let n = c.ambient_dimension();
        if set.len() > n {
            return Err(Error::AmbientDimension { n, vertex: c.vertex_name(a).to_string(), found: set.len() });
        }
        Ok(DeficiencySet { vertex: a, target: z.clone(), deficiency: n - set.len(), set })
    }

    /// `phi^n_{x,z}(a)`; zero off the interval.
    pub fn weight(&self, n: usize, x: VertexId, z: &SignVector, a: VertexId) -> Result<BigUint> {
        self.check_len(z)?;
        let c = self.complex;
        if !c.vertex(a).in_interval(c.vertex(x), z) {
            return Ok(BigUint::zero());
        }
        let delta = self.deficiency_unchecked(z, a)?.deficiency as i64;
        let d = c.distance(x, a) as i64;
        Ok(binomial(n as i64 - d + delta, delta))
    }

    pub fn weight_vector(&self, n: usize, x: VertexId, z: &SignVector) -> Result<WeightVector> {
        self.check_len(z)?;
        let c = self.complex;
        let xv = c.vertex(x);
        let mut values = BTreeMap::new();
        for a in c.vertex_ids() {
            let av = c.vertex(a);
            if av.distance(xv) > n || !av.in_interval(xv, z) {
                continue;
            }
            let w = self.weight(n, x, z, a)?;
            if !w.is_zero() {
                values.insert(a, w);
            }
        }
        Ok(WeightVector { source: x, target: z.clone(), n, ambient: c.ambient_dimension(), values })
    }

    /// `eta_z = C(n+N, N)^{-1} phi^n_{x0,z}`.
    pub fn eta(&self, n: usize, basepoint: VertexId, z: &SignVector) -> Result<ProbMeasure<VertexId>> {
        Ok(self.weight_vector(n, basepoint, z)?.normalized())
    }
}

pub fn deficiency_set(c: &CubeComplex, x: VertexId, z: &SignVector, a: VertexId) -> Result<DeficiencySet> {
    Weights::new(c).deficiency_set(x, z, a)
}

pub fn weight(c: &CubeComplex, n: usize, x: VertexId, z: &SignVector, a: VertexId) -> Result<BigUint> {
    Weights::new(c).weight(n, x, z, a)
}

pub fn weight_vector(c: &CubeComplex, n: usize, x: VertexId, z: &SignVector) -> Result<WeightVector> {
    Weights::new(c).weight_vector(n, x, z)
}

pub fn eta(c: &CubeComplex, n: usize, basepoint: VertexId, z: &SignVector) -> Result<ProbMeasure<VertexId>> {
    Weights::new(c).eta(n, basepoint, z)
}

/// The total mass every weight vector must have: `C(n+N, N)`.
pub fn expected_mass(n: usize, ambient: usize) -> BigUint {
    binomial((n + ambient) as i64, ambient as i64)
}

/// The `l1` distance between weight vectors from adjacent sources:
/// `2 C(n+N-1, N-1)`.
pub fn expected_adjacent_difference(n: usize, ambient: usize) -> BigUint {
    binomial((n + ambient) as i64 - 1, ambient as i64 - 1) * 2u32
}

/// Sweeps the weight identities for every `n <= n_max`, every original
/// source and every target among the original vertices and `extra_targets`.
///
/// Checks: non-negativity and support in `B_n(x) ∩ [x,z]`, total mass,
/// the exact difference for adjacent sources, the triangle bound
/// `||phi_x - phi_x'|| <= 2 d(x,x') C(n+N-1,N-1)` for all source pairs, and
/// (when an action is given) equivariance under each generator.
pub fn verify_weight_identities(
    c: &CubeComplex,
    n_max: usize,
    extra_targets: &[SignVector],
    action: Option<&GroupAction>,
) -> Result<VerificationReport> {
    let w = Weights::new(c);
    let big_n = c.ambient_dimension();
    let mut targets: Vec<(String, SignVector)> =
        c.vertex_ids().map(|v| (c.vertex_name(v).to_string(), c.vertex(v).clone())).collect();
    for (i, z) in extra_targets.iter().enumerate() {
        w.check_len(z)?;
        if !c.is_admissible(z) {
            return Err(Error::input(format!("extra target #{i} is not admissible")));
        }
        targets.push((format!("{z:?}"), z.clone()));
    }
    let jobs: Vec<(usize, usize)> = (0..=n_max).flat_map(|n| (0..targets.len()).map(move |t| (n, t))).collect();
    let partials: Vec<Result<[Check; 5]>> = jobs
        .par_iter()
        .map(|&(n, t)| sweep_one(&w, n, &targets[t], big_n, action))
        .collect();
    let mut merged = [
        Check::new("support"),
        Check::new("mass"),
        Check::new("adjacent-difference"),
        Check::new("triangle-bound"),
        Check::new("equivariance"),
    ];
    for p in partials {
        for (m, part) in merged.iter_mut().zip(p?) {
            m.merge(part);
        }
    }
    Ok(VerificationReport { checks: merged.into_iter().collect() })
}

fn sweep_one(
    w: &Weights<'_>,
    n: usize,
    (label, z): &(String, SignVector),
    big_n: usize,
    action: Option<&GroupAction>,
) -> Result<[Check; 5]> {
    let c = w.complex();
    let mut support = Check::new("support");
    let mut mass = Check::new("mass");
    let mut adjacent = Check::new("adjacent-difference");
    let mut triangle = Check::new("triangle-bound");
    let mut equivariance = Check::new("equivariance");
    let vectors: Vec<WeightVector> = c.vertex_ids().map(|x| w.weight_vector(n, x, z)).collect::<Result<_>>()?;
    let want_mass = expected_mass(n, big_n);
    let want_diff = if big_n > 0 { expected_adjacent_difference(n, big_n) } else { BigUint::zero() };
    for (x, phi) in c.vertex_ids().zip(&vectors) {
        for &a in phi.values.keys() {
            let ok = c.distance(x, a) <= n && c.vertex(a).in_interval(c.vertex(x), z);
            support.record(ok, || json!({"n": n, "x": c.vertex_name(x), "z": label, "a": c.vertex_name(a)}));
        }
        let total = phi.mass();
        mass.record(total == want_mass, || {
            json!({"n": n, "x": c.vertex_name(x), "z": label, "mass": total.to_string(), "expected": want_mass.to_string()})
        });
        for (y, psi) in c.vertex_ids().zip(&vectors) {
            if y <= x {
                continue;
            }
            let diff = phi.l1_distance(psi);
            let d = c.distance(x, y);
            if d == 1 {
                adjacent.record(diff == want_diff, || {
                    json!({"n": n, "x": c.vertex_name(x), "x'": c.vertex_name(y), "z": label,
                           "difference": diff.to_string(), "expected": want_diff.to_string()})
                });
            }
            let bound = &want_diff * BigUint::from(d);
            triangle.record(diff <= bound, || {
                json!({"n": n, "x": c.vertex_name(x), "x'": c.vertex_name(y), "z": label,
                       "difference": diff.to_string(), "bound": bound.to_string()})
            });
        }
        if let Some(action) = action {
            for gen in action.generators() {
                let sx = action.vertex_image(gen.element, x);
                let sz = action.act_on_vector(gen.element, z);
                let image = w.weight_vector(n, sx, &sz)?;
                let pushed: BTreeMap<VertexId, BigUint> =
                    phi.values.iter().map(|(a, v)| (action.vertex_image(gen.element, *a), v.clone())).collect();
                equivariance.record(pushed == image.values, || {
                    json!({"n": n, "x": c.vertex_name(x), "z": label, "generator": gen.name})
                });
            }
        }
    }
    Ok([support, mass, adjacent, triangle, equivariance])
}

/// Renders a vertex measure with vertex names and exact rational strings.
pub fn measure_json(c: &CubeComplex, m: &ProbMeasure<VertexId>) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> =
        m.iter().map(|(v, p)| (c.vertex_name(*v).to_string(), rational_string(p).into())).collect();
    serde_json::Value::Object(map)
}

/// `l1` distance of two vertex measures after pushing the first forward.
pub fn pushed_distance(
    m: &ProbMeasure<VertexId>,
    push: impl FnMut(&VertexId) -> VertexId,
    other: &ProbMeasure<VertexId>,
) -> BigRational {
    m.push_forward(push).l1_distance(other)
}
