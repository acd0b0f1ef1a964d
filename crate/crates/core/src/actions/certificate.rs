//! Almost-invariant measures on the group, assembled from the normalised
//! weight measures on the complex and measures on the vertex stabilizers:
//!
//! `mu_x(g) = sum_t eta_{x.O}(g.t) * nu^t_{z_g^{-1} x}(a_g)`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use super::orbit::{sigma_split, OrbitData, StabilizerData};
use super::{ElemId, GroupAction};
use crate::cube::{CubeComplex, VertexId};
use crate::error::{Error, Result};
use crate::measure::{rational_string, ProbMeasure};
use crate::report::{Check, VerificationReport};
use crate::weights::Weights;

/// Measures on a stabilizer `Γᵗ`, indexed by its elements.
#[derive(Debug, Clone, PartialEq)]
pub enum StabFamily {
    /// The constant family at the uniform measure on `Γᵗ`.
    Uniform,
    /// One measure on `Γᵗ` for every element of `Γᵗ`.
    Explicit(BTreeMap<ElemId, ProbMeasure<ElemId>>),
}

/// The induced family `g ↦ νᵗ_g = family(σ(g))`, one measure per element.
#[derive(Debug, Clone)]
pub struct InducedNu {
    pub t: VertexId,
    pub measures: Vec<ProbMeasure<ElemId>>,
}

impl InducedNu {
    pub fn at(&self, g: ElemId) -> &ProbMeasure<ElemId> {
        &self.measures[g.0]
    }

    /// Union of the supports.
    pub fn support(&self) -> BTreeSet<ElemId> {
        self.measures.iter().flat_map(|m| m.support().copied()).collect()
    }

    /// `max_g ||h.ν_g - ν_{hg}||` for one `h`.
    pub fn variation(&self, action: &GroupAction, h: ElemId) -> BigRational {
        action
            .elements()
            .map(|g| {
                let moved = self.at(g).push_forward(|&k| action.mul(h, k));
                moved.l1_distance(self.at(action.mul(h, g)))
            })
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Lifts a stabilizer family to the whole group through `σ`.
pub fn induce_nu(action: &GroupAction, data: &StabilizerData, family: &StabFamily) -> Result<InducedNu> {
    let measures = match family {
        StabFamily::Uniform => {
            let m = ProbMeasure::uniform(data.stabilizer.iter().copied())?;
            vec![m; action.order()]
        }
        StabFamily::Explicit(map) => {
            for &h in &data.stabilizer {
                let m = map.get(&h).ok_or_else(|| {
                    Error::input(format!("stabilizer measure missing at `{}`", action.element_name(h)))
                })?;
                if !m.is_probability() {
                    return Err(Error::input("stabilizer measures must be probability measures"));
                }
                if let Some(bad) = m.support().find(|k| !data.stabilizes(**k)) {
                    return Err(Error::input(format!(
                        "stabilizer measure charges `{}`, which moves the point",
                        action.element_name(*bad)
                    )));
                }
            }
            action.elements().map(|g| map[&sigma_split(action, data, g)].clone()).collect()
        }
    };
    Ok(InducedNu { t: data.t, measures })
}

/// `Eᵗ = { z_{sg}^{-1} s g : s ∈ E, g ∈ Zᵗ_F }`; every element must fix `t`.
pub fn compute_et(action: &GroupAction, data: &StabilizerData, e: &[ElemId], z_f: &[ElemId]) -> Result<Vec<ElemId>> {
    let mut out = BTreeSet::new();
    for &s in e {
        for &g in z_f {
            let sg = action.mul(s, g);
            let c = action.mul(action.inv(data.z(sg)), sg);
            if !data.stabilizes(c) {
                return Err(Error::Action(format!(
                    "element `{}` built for t = {} does not fix it",
                    action.element_name(c),
                    data.t.0
                )));
            }
            out.insert(c);
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone)]
pub struct CertificateInput {
    /// The finite set `E`; closed under inverses and given the identity
    /// when the certificate is built.
    pub e: Vec<ElemId>,
    pub epsilon: BigRational,
    pub n: usize,
    pub basepoint: VertexId,
    /// Stabilizer families keyed by transversal point.
    pub nu: BTreeMap<VertexId, StabFamily>,
}

impl CertificateInput {
    /// Uniform stabilizer measures at every transversal point.
    pub fn uniform(orbits: &OrbitData, e: Vec<ElemId>, epsilon: BigRational, n: usize, basepoint: VertexId) -> Self {
        let nu = orbits.transversal().into_iter().map(|t| (t, StabFamily::Uniform)).collect();
        CertificateInput { e, epsilon, n, basepoint, nu }
    }
}

/// Per transversal point used by the certificate.
#[derive(Debug, Clone)]
pub struct OrbitTerm {
    /// Index into [`OrbitData::points`].
    pub orbit: usize,
    pub z_f: Vec<ElemId>,
    pub e_t: Vec<ElemId>,
    pub f_t: BTreeSet<ElemId>,
    pub nu: InducedNu,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    /// `mu[x]` for every group element `x`.
    pub mu: Vec<ProbMeasure<ElemId>>,
    /// `eta[x] = eta_{x.O}`.
    pub eta: Vec<ProbMeasure<VertexId>>,
    pub e: Vec<ElemId>,
    /// Union of the supports of the `eta` measures.
    pub f: BTreeSet<VertexId>,
    pub terms: Vec<OrbitTerm>,
    pub support: BTreeSet<ElemId>,
    pub support_bound: BTreeSet<ElemId>,
}

/// Builds `mu_x` for every `x` in the group.
pub fn build_mu(
    c: &CubeComplex,
    action: &GroupAction,
    orbits: &OrbitData,
    input: &CertificateInput,
) -> Result<Certificate> {
    if input.basepoint.0 >= c.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", input.basepoint.0)));
    }
    let w = Weights::new(c);
    let mut by_point: BTreeMap<VertexId, ProbMeasure<VertexId>> = BTreeMap::new();
    let eta: Vec<ProbMeasure<VertexId>> = action
        .elements()
        .map(|x| {
            let y = action.vertex_image(x, input.basepoint);
            if let Some(m) = by_point.get(&y) {
                return Ok(m.clone());
            }
            let m = w.eta(input.n, input.basepoint, c.vertex(y))?;
            by_point.insert(y, m.clone());
            Ok(m)
        })
        .collect::<Result<_>>()?;
    let f: BTreeSet<VertexId> = eta.iter().flat_map(|m| m.support().copied()).collect();

    let mut e: BTreeSet<ElemId> = input.e.iter().copied().collect();
    e.extend(input.e.iter().map(|&s| action.inv(s)));
    e.insert(action.identity());
    let e: Vec<ElemId> = e.into_iter().collect();

    let mut terms = Vec::new();
    for (i, data) in orbits.points.iter().enumerate() {
        if !data.orbit().any(|y| f.contains(&y)) {
            continue;
        }
        let family = input
            .nu
            .get(&data.t)
            .ok_or_else(|| Error::input(format!("no stabilizer measures given for vertex #{}", data.t.0)))?;
        let z_f: Vec<ElemId> =
            data.representatives().into_iter().filter(|&z| f.contains(&action.vertex_image(z, data.t))).collect();
        let e_t = compute_et(action, data, &e, &z_f)?;
        let nu = induce_nu(action, data, family)?;
        let f_t = nu.support();
        terms.push(OrbitTerm { orbit: i, z_f, e_t, f_t, nu });
    }

    let mu: Vec<ProbMeasure<ElemId>> = action
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&x| {
            let eta_x = &eta[x.0];
            let mut masses: BTreeMap<ElemId, BigRational> = BTreeMap::new();
            for term in &terms {
                let data = &orbits.points[term.orbit];
                for (y, p) in eta_x.iter() {
                    let Some(z) = data.representative_for(*y) else { continue };
                    // g = z h ranges over the coset z Γᵗ, with z_g = z and a_g = h
                    let nu = term.nu.at(action.mul(action.inv(z), x));
                    for (h, q) in nu.iter() {
                        *masses.entry(action.mul(z, *h)).or_insert_with(BigRational::zero) += p * q;
                    }
                }
            }
            ProbMeasure::from_masses_unchecked(masses)
        })
        .collect();

    let support = mu.iter().flat_map(|m| m.support().copied()).collect();
    let support_bound = terms
        .iter()
        .flat_map(|term| term.z_f.iter().flat_map(|&z| term.f_t.iter().map(move |&h| (z, h))))
        .map(|(z, h)| action.mul(z, h))
        .collect();
    Ok(Certificate { mu, eta, e, f, terms, support, support_bound })
}

/// Measured deviations for one `s ∈ E`.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub s: ElemId,
    /// `max_x ||s.mu_x - mu_{sx}||`.
    pub dev: BigRational,
    /// `max_x ||s.eta_{x.O} - eta_{sx.O}||`.
    pub eps_eta: BigRational,
}

#[derive(Debug, Clone)]
pub struct MuVerification {
    pub report: VerificationReport,
    pub deviations: Vec<Deviation>,
    /// `max_t max_{h ∈ Eᵗ, g} ||h.ν^t_g - ν^t_{hg}||`.
    pub eps_nu: BigRational,
    pub max_dev: BigRational,
    /// Whether `max_dev` is strictly below the requested epsilon.
    pub below_epsilon: bool,
}

impl MuVerification {
    pub fn to_json(&self, action: &GroupAction) -> serde_json::Value {
        json!({
            "deviations": self.deviations.iter().map(|d| json!({
                "s": action.element_name(d.s),
                "dev": rational_string(&d.dev),
                "eps_eta": rational_string(&d.eps_eta),
            })).collect::<Vec<_>>(),
            "eps_nu": rational_string(&self.eps_nu),
            "max_dev": rational_string(&self.max_dev),
            "below_epsilon": self.below_epsilon,
            "checks": self.report.checks,
        })
    }
}

/// Measures every deviation exactly and checks the two-term bound
/// `dev(s) <= eps_eta(s) + eps_nu`, exact total mass of every `mu_x`, and
/// the support bound `supp mu_x ⊆ ⋃ Zᵗ_F Fᵗ`.
pub fn verify_mu(cert: &Certificate, action: &GroupAction, input: &CertificateInput) -> MuVerification {
    let mut probability = Check::new("mu-probability");
    for x in action.elements() {
        let m = &cert.mu[x.0];
        probability.record(m.is_probability(), || {
            json!({"x": action.element_name(x), "total": rational_string(&m.total())})
        });
    }
    let mut support = Check::new("support-bound");
    for g in &cert.support {
        support.record(cert.support_bound.contains(g), || json!({"g": action.element_name(*g)}));
    }
    let mut et = Check::new("et-in-stabilizer");
    let mut eps_nu = BigRational::zero();
    let mut uniform_flat = Check::new("uniform-nu-invariance");
    for term in &cert.terms {
        for &h in &term.e_t {
            et.record(action.vertex_image(h, term.nu.t) == term.nu.t, || json!({"h": action.element_name(h)}));
            let v = term.nu.variation(action, h);
            if v > eps_nu {
                eps_nu = v;
            }
        }
        if matches!(input.nu.get(&term.nu.t), Some(StabFamily::Uniform)) {
            let data = &term.nu;
            let stab: Vec<ElemId> = data.support().into_iter().collect();
            let worst = stab.iter().map(|&h| data.variation(action, h)).max().unwrap_or_else(BigRational::zero);
            uniform_flat.record(worst.is_zero(), || json!({"t": term.nu.t.0, "variation": rational_string(&worst)}));
        }
    }
    let deviations: Vec<Deviation> = cert
        .e
        .par_iter()
        .map(|&s| {
            let mut dev = BigRational::zero();
            let mut eps_eta = BigRational::zero();
            for x in action.elements() {
                let sx = action.mul(s, x);
                let moved = cert.mu[x.0].push_forward(|&g| action.mul(s, g));
                let d = moved.l1_distance(&cert.mu[sx.0]);
                if d > dev {
                    dev = d;
                }
                let moved = cert.eta[x.0].push_forward(|&v| action.vertex_image(s, v));
                let d = moved.l1_distance(&cert.eta[sx.0]);
                if d > eps_eta {
                    eps_eta = d;
                }
            }
            Deviation { s, dev, eps_eta }
        })
        .collect();
    let mut bound = Check::new("two-term-bound");
    for d in &deviations {
        let rhs = &d.eps_eta + &eps_nu;
        bound.record(d.dev <= rhs, || {
            json!({"s": action.element_name(d.s), "dev": rational_string(&d.dev), "bound": rational_string(&rhs)})
        });
    }
    let max_dev = deviations.iter().map(|d| d.dev.clone()).max().unwrap_or_else(BigRational::zero);
    let below_epsilon = max_dev < input.epsilon;
    let mut checks = vec![probability, support, et, bound];
    if uniform_flat.cases > 0 {
        checks.push(uniform_flat);
    }
    MuVerification { report: VerificationReport { checks }, deviations, eps_nu, max_dev, below_epsilon }
}
