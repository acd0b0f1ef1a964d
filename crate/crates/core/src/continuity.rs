//! Level sets and continuity of `Phi(z) = phi^n_{x,z}(a)` as a function of
//! the admissible point `z`.
//!
//! Everything here is decided through finite certificates: the zero set and
//! the superlevel sets are compared against their half-space descriptions,
//! and discontinuity is certified by explicit sequences of hyperplanes.
//! Facts about the untruncated family come only from its annotations.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::binomial::binomial;
use crate::cube::{CubeComplex, HyperplaneId, Sign, SignVector, VertexId};
use crate::error::Result;
use crate::families::{Family, IdealPoint};
use crate::weights::Weights;

/// Largest number of `k`-subsets enumerated for one superlevel check.
pub const MAX_SUBSETS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiQuery {
    pub x: VertexId,
    pub a: VertexId,
    pub n: usize,
}

/// A point at which `Phi` is evaluated: an original vertex or an annotated
/// ideal point (or an arbitrary admissible vector).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbePoint {
    pub label: String,
    pub vector: SignVector,
    pub vertex: Option<VertexId>,
    pub ideal: Option<IdealPoint>,
}

impl ProbePoint {
    pub fn vertex(c: &CubeComplex, v: VertexId) -> Self {
        ProbePoint { label: c.vertex_name(v).to_string(), vector: c.vertex(v).clone(), vertex: Some(v), ideal: None }
    }

    pub fn ideal(p: IdealPoint) -> Self {
        ProbePoint { label: p.label.clone(), vector: p.restriction.clone(), vertex: None, ideal: Some(p) }
    }

    /// An admissible vector with no family knowledge; recognised as an
    /// original vertex when it is one.
    pub fn vector(c: &CubeComplex, label: impl Into<String>, z: SignVector) -> Self {
        let vertex = c.lookup(&z);
        ProbePoint { label: label.into(), vector: z, vertex, ideal: None }
    }
}

/// Original vertices followed by the family's ideal points, if annotated.
pub fn probe_points(family: &Family) -> Vec<ProbePoint> {
    let c = &family.complex;
    let mut pts: Vec<ProbePoint> = c.vertex_ids().map(|v| ProbePoint::vertex(c, v)).collect();
    if let Ok(ideal) = family.ideal_points() {
        pts.extend(ideal.into_iter().map(ProbePoint::ideal));
    }
    pts
}

pub fn phi(w: &Weights<'_>, q: PhiQuery, z: &SignVector) -> Result<BigUint> {
    w.weight(q.n, q.x, z, q.a)
}

/// `A = n - d(x, a)`.
pub fn slack(c: &CubeComplex, q: PhiQuery) -> i64 {
    q.n as i64 - c.distance(q.x, q.a) as i64
}

/// `C(A+N-k, N-k)` for `k = 0..=N`.
pub fn level_value(a_slack: i64, ambient: usize, k: usize) -> BigUint {
    let m = ambient as i64 - k as i64;
    binomial(a_slack + m, m)
}

/// The values `Phi` can take: `{0} ∪ {C(A+N-k, N-k) : 0 <= k <= N}`.
pub fn predicted_values(a_slack: i64, ambient: usize) -> Vec<BigUint> {
    let mut v: Vec<BigUint> = std::iter::once(BigUint::zero())
        .chain((0..=ambient).map(|k| level_value(a_slack, ambient, k)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Zero set of `Phi` computed directly (`a ∉ [x,z]`) and through the union of
/// half spaces `⋃ H^{x(H)}` over the hyperplanes separating `a` from `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSet {
    /// Indices into the probe list.
    pub direct: Vec<usize>,
    pub formula: Vec<usize>,
    pub agree: bool,
}

pub fn zero_set(c: &CubeComplex, x: VertexId, a: VertexId, probe: &[ProbePoint]) -> ZeroSet {
    let (xv, av) = (c.vertex(x), c.vertex(a));
    let seps = xv.separators(av);
    let direct: Vec<usize> = (0..probe.len()).filter(|&i| !av.in_interval(xv, &probe[i].vector)).collect();
    let formula: Vec<usize> = (0..probe.len())
        .filter(|&i| seps.iter().any(|&h| probe[i].vector.sign(h) == xv.sign(h)))
        .collect();
    let agree = direct == formula;
    ZeroSet { direct, formula, agree }
}

/// Comparison of `{Phi > C(A+N-k, N-k)}` (or `{Phi > 0}` for `k = N+1`) with
/// its half-space description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperlevelCheck {
    pub k: usize,
    pub threshold: String,
    pub direct: Vec<usize>,
    pub formula: Vec<usize>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSets {
    pub slack: i64,
    pub values: Vec<String>,
    /// Value (as a decimal string) to probe indices.
    pub cells: BTreeMap<String, Vec<usize>>,
    pub values_predicted: bool,
    pub superlevel: Vec<SuperlevelCheck>,
    /// Set when some superlevel checks were not run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl LevelSets {
    pub fn identities_hold(&self) -> bool {
        self.values_predicted && self.superlevel.iter().all(|s| s.agree)
    }
}

/// Partitions the probe points by the value of `Phi` and checks the
/// superlevel identities.
///
/// With `K_i` the hyperplanes separating `x` from `a` and `H_j` the
/// hyperplanes adjacent to `a` not separating them, `Phi(z) > C(A+N-k,N-k)`
/// exactly when `z(K_i) = a(K_i)` for all `i` and every `k`-subset of the
/// `H_j` contains one with `z(H_j) = x(H_j)`. For `A >= 1` this is checked
/// for every `k <= N`; the case `k = N+1` (`Phi > 0`) is checked whenever
/// `A >= 0`.
pub fn level_sets(w: &Weights<'_>, q: PhiQuery, probe: &[ProbePoint]) -> Result<LevelSets> {
    let c = w.complex();
    let big_n = c.ambient_dimension();
    let slack = slack(c, q);
    let values: Vec<BigUint> = probe.iter().map(|p| phi(w, q, &p.vector)).collect::<Result<_>>()?;
    let predicted = predicted_values(slack, big_n);
    let values_predicted = values.iter().all(|v| predicted.contains(v));
    let mut cells: BTreeMap<BigUint, Vec<usize>> = BTreeMap::new();
    for (i, v) in values.iter().enumerate() {
        cells.entry(v.clone()).or_default().push(i);
    }

    let (xv, av) = (c.vertex(q.x), c.vertex(q.a));
    let ks = xv.separators(av);
    let hs: Vec<HyperplaneId> = w.adjacent(q.a).iter().copied().filter(|h| xv.sign(*h) == av.sign(*h)).collect();
    let in_interval = |z: &SignVector| ks.iter().all(|&k| z.sign(k) == av.sign(k));
    let mut superlevel = Vec::new();
    let mut skipped = None;
    let mut ks_to_check: Vec<usize> = Vec::new();
    if slack >= 1 {
        ks_to_check.extend(0..=big_n);
    }
    if slack >= 0 {
        ks_to_check.push(big_n + 1);
    }
    for k in ks_to_check {
        let threshold = if k <= big_n { level_value(slack, big_n, k) } else { BigUint::zero() };
        let Some(subsets) = subsets(hs.len(), k, MAX_SUBSETS) else {
            skipped = Some(format!("more than {MAX_SUBSETS} subsets of size {k}"));
            continue;
        };
        let direct: Vec<usize> = (0..probe.len()).filter(|&i| values[i] > threshold).collect();
        let formula: Vec<usize> = (0..probe.len())
            .filter(|&i| {
                let z = &probe[i].vector;
                in_interval(z) && subsets.iter().all(|s| s.iter().any(|&j| z.sign(hs[j]) == xv.sign(hs[j])))
            })
            .collect();
        let agree = direct == formula;
        superlevel.push(SuperlevelCheck { k, threshold: threshold.to_string(), direct, formula, agree });
    }
    if slack < 0 {
        skipped = Some("n < d(x,a): Phi vanishes identically".into());
    }
    Ok(LevelSets {
        slack,
        values: predicted.iter().map(ToString::to_string).collect(),
        cells: cells.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        values_predicted,
        superlevel,
        skipped,
    })
}

/// All `k`-subsets of `0..m`, or `None` if there are more than `cap`.
fn subsets(m: usize, k: usize, cap: usize) -> Option<Vec<Vec<usize>>> {
    if k > m {
        return Some(Vec::new());
    }
    if binomial(m as i64, k as i64) > BigUint::from(cap) {
        return None;
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Some(out);
            }
            i -= 1;
            if cur[i] < m - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Continuous,
    Discontinuous,
    NotDetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Which rule decided the verdict.
    pub rule: &'static str,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<DiscontinuityWitness>,
}

/// Continuity of `Phi` at `z`, decided by the first applicable rule:
/// `Phi(z) = 0`; `n <= d(x,a)`; `z` original with finitely many hyperplanes
/// adjacent to both `a` and `z` (or infinitely many, from the annotations);
/// and for ideal `z` a witness search. Anything else is not determined.
pub fn continuity_classify(
    family: &Family,
    w: &Weights<'_>,
    q: PhiQuery,
    z: &ProbePoint,
    prefix_len: usize,
) -> Result<Classification> {
    let c = w.complex();
    let value = phi(w, q, &z.vector)?;
    let done = |verdict, rule| Classification { verdict, rule, value: value.to_string(), witness: None };
    if value.is_zero() {
        return Ok(done(Verdict::Continuous, "phi-vanishes"));
    }
    if q.n <= c.distance(q.x, q.a) {
        return Ok(done(Verdict::Continuous, "n-at-most-distance"));
    }
    if let Some(v) = z.vertex {
        if family.annotations.shared_adjacency_infinite(q.a, v) {
            let witness = discontinuity_witness(family, w, q, z, prefix_len)?;
            return Ok(Classification {
                verdict: Verdict::Discontinuous,
                rule: "infinite-shared-adjacency",
                value: value.to_string(),
                witness,
            });
        }
        return Ok(done(Verdict::Continuous, "finite-shared-adjacency"));
    }
    if z.ideal.is_some() {
        if let Some(witness) = discontinuity_witness(family, w, q, z, prefix_len)? {
            return Ok(Classification {
                verdict: Verdict::Discontinuous,
                rule: "witness",
                value: value.to_string(),
                witness: Some(witness),
            });
        }
        if family.annotations.annotated && !family.annotations.is_infinite_vertex(q.a) {
            return Ok(done(Verdict::Continuous, "finite-vertex"));
        }
    }
    Ok(done(Verdict::NotDetermined, "no-rule-applies"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessStep {
    /// The admissible point `m_j` (a vertex name).
    pub m: String,
    pub hyperplane: String,
    /// `m'_j`, the neighbour of `m_j` across the hyperplane.
    pub across: String,
    pub deficiency_m: usize,
    pub deficiency_across: usize,
    pub phi_m: String,
    pub phi_across: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscontinuityWitness {
    pub point: String,
    pub steps: Vec<WitnessStep>,
    pub requested: usize,
    /// Fewer steps than requested exist in the truncation.
    pub partial: bool,
    /// Every step satisfies the sequence invariants and the deficiency
    /// changes by exactly one across each hyperplane.
    pub verified: bool,
}

/// Looks for points `m_j ∈ [a, z]` converging to `z` together with distinct
/// hyperplanes `H_j` adjacent to `a` and to `m_j`.
///
/// Hyperplanes beyond the truncation are known only through the family
/// annotations: an annotated vertex has infinitely many adjacent hyperplanes,
/// each adjacent to no other vertex of the truncation. So a sequence exists
/// exactly when `a` is such a vertex and `z = a`; then `m_j = a` and the
/// `H_j` are the hyperplanes adjacent to `a` that do not separate it from
/// `x`, the truncation supplying the first few.
pub fn discontinuity_witness(
    family: &Family,
    w: &Weights<'_>,
    q: PhiQuery,
    z: &ProbePoint,
    prefix_len: usize,
) -> Result<Option<DiscontinuityWitness>> {
    let c = w.complex();
    if phi(w, q, &z.vector)?.is_zero() {
        return Ok(None);
    }
    if z.vertex != Some(q.a) || !family.annotations.is_infinite_vertex(q.a) {
        return Ok(None);
    }
    let (xv, av) = (c.vertex(q.x), c.vertex(q.a));
    let mut steps = Vec::new();
    let mut verified = true;
    for &h in w.adjacent(q.a) {
        if steps.len() == prefix_len {
            break;
        }
        if xv.sign(h) != av.sign(h) {
            continue;
        }
        let Some(across) = c.neighbor_across(q.a, h)? else { continue };
        let m = q.a;
        let d_m = w.deficiency_set(q.x, c.vertex(m), q.a)?.deficiency;
        let d_across = w.deficiency_set(q.x, c.vertex(across), q.a)?.deficiency;
        let in_interval = c.vertex(m).in_interval(av, &z.vector);
        verified &= in_interval && c.is_adjacent(m, h) && d_m.abs_diff(d_across) == 1;
        steps.push(WitnessStep {
            m: c.vertex_name(m).to_string(),
            hyperplane: c.hyperplane_name(h).to_string(),
            across: c.vertex_name(across).to_string(),
            deficiency_m: d_m,
            deficiency_across: d_across,
            phi_m: phi(w, q, c.vertex(m))?.to_string(),
            phi_across: phi(w, q, c.vertex(across))?.to_string(),
        });
    }
    let partial = steps.len() < prefix_len;
    Ok(Some(DiscontinuityWitness { point: z.label.clone(), steps, requested: prefix_len, partial, verified }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Openness {
    pub open: bool,
    /// The half spaces `H^{a(H)}` over hyperplanes adjacent to `a`, as
    /// `(hyperplane, sign)`; their intersection is `{a}` when open.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<(String, i8)>>,
    /// Number of admissible points the certificate was checked against.
    pub probed: usize,
    /// The enumeration of admissible points was complete.
    pub probe_complete: bool,
    pub verified: bool,
}

/// Whether `{a}` is open among admissible points: exactly when finitely
/// many hyperplanes are adjacent to `a`.
pub fn singleton_openness(family: &Family, a: VertexId, probe_limit: usize) -> Openness {
    let c = &family.complex;
    if family.annotations.is_infinite_vertex(a) {
        return Openness { open: false, certificate: None, probed: 0, probe_complete: true, verified: true };
    }
    let av = c.vertex(a);
    let adjacent = c.adjacent_hyperplanes(a);
    let sides: Vec<(HyperplaneId, Sign)> = adjacent.iter().map(|&h| (h, av.sign(h))).collect();
    let enumeration = c.enumerate_admissible(probe_limit);
    let mut pts: Vec<SignVector> = enumeration.vectors;
    if let Ok(ideal) = family.ideal_points() {
        pts.extend(ideal.into_iter().map(|p| p.restriction));
    }
    let verified = pts.iter().all(|z| {
        let inside = sides.iter().all(|&(h, s)| z.sign(h) == s);
        inside == (z == av)
    });
    Openness {
        open: true,
        certificate: Some(sides.iter().map(|&(h, s)| (c.hyperplane_name(h).to_string(), s.value())).collect()),
        probed: pts.len(),
        probe_complete: enumeration.complete,
        verified,
    }
}
