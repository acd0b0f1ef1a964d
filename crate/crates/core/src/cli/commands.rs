//! One function per subcommand.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::load::{self, signs_json};
use super::{finding, ArtinCommand, Cli, Command, FamilyCommand, Outcome};
use crate::actions::{build_mu, orbit_transversal, verify_mu, CertificateInput, ElemId};
use crate::artin::{exactness_report, fc_check, DEFAULT_CLIQUE_CAP};
use crate::continuity::{
    continuity_classify, level_sets, predicted_values, probe_points, slack, zero_set, PhiQuery, ProbePoint,
};
use crate::cube::SignVector;
use crate::error::{Error, Result};
use crate::measure::{parse_rational, rational_string};
use crate::report::VerificationReport;
use crate::weights::{expected_mass, verify_weight_identities, Weights};

pub(super) fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate(arg) => validate(&arg.complex),
        Command::Median { complex, points } => median(&complex.complex, points),
        Command::Weights { complex, n, ambient, source, target, normalized } => {
            weights(&complex.complex, *n, *ambient, source, target, *normalized)
        }
        Command::VerifyWeights { complex, max_n, action, with_ideal } => {
            verify_weights(&complex.complex, *max_n, action.as_deref(), *with_ideal, cli.seed)
        }
        Command::Continuity { complex, x, a, n, z, witness } => {
            continuity(&complex.complex, x, a, *n, z.as_deref(), *witness)
        }
        Command::PropertyA { complex, action, n, epsilon, gen_set, nu, basepoint } => property_a(
            &complex.complex,
            action,
            *n,
            epsilon,
            gen_set.as_deref(),
            nu,
            basepoint.as_deref(),
            cli.seed,
        ),
        Command::Artin { command } => match command {
            ArtinCommand::Fc { matrix } => artin_fc(matrix),
            ArtinCommand::Report { matrix } => artin_report(matrix),
        },
        Command::Family { command: FamilyCommand::Truncate(arg) } => truncate(&arg.complex),
        Command::Admissible { complex, limit } => admissible(&complex.complex, *limit),
    }
}

fn report_findings(report: &VerificationReport) -> Vec<Value> {
    report
        .failures()
        .map(|c| finding("check-failed", true, json!({"check": c.name, "counterexample": c.counterexample})))
        .collect()
}

fn validate(spec: &str) -> Result<Outcome> {
    let f = load::family(spec)?;
    let c = &f.complex;
    let report = c.validate();
    let findings = report
        .violations
        .iter()
        .map(|v| finding("invariant-violated", true, json!({"witness": v})))
        .collect();
    Ok(Outcome {
        findings,
        result: json!({
            "valid": report.is_valid(),
            "vertices": c.vertex_count(),
            "hyperplanes": c.hyperplane_count(),
            "N": c.ambient_dimension(),
            "dimension_estimate": c.dimension_estimate(),
        }),
    })
}

fn median(spec: &str, points: &[String]) -> Result<Outcome> {
    let f = load::valid_family(spec)?;
    let c = &f.complex;
    let p = points.iter().map(|s| load::point(&f, s)).collect::<Result<Vec<ProbePoint>>>()?;
    let m = SignVector::median(&p[0].vector, &p[1].vector, &p[2].vector);
    let in_intervals = m.in_interval(&p[0].vector, &p[1].vector)
        && m.in_interval(&p[1].vector, &p[2].vector)
        && m.in_interval(&p[0].vector, &p[2].vector);
    let vertex = c.lookup(&m).map(|v| c.vertex_name(v).to_string());
    let mut findings = Vec::new();
    if !in_intervals {
        findings.push(finding("median-outside-interval", true, json!({})));
    }
    Ok(Outcome {
        findings,
        result: json!({
            "median": signs_json(&m),
            "vertex": vertex,
            "admissible": c.is_admissible(&m),
            "in_all_intervals": in_intervals,
        }),
    })
}

fn weights(spec: &str, n: usize, ambient: Option<usize>, source: &str, target: &str, normalized: bool) -> Result<Outcome> {
    let f = load::valid_family(spec)?;
    let mut c = f.complex.clone();
    if let Some(big_n) = ambient {
        c = c.with_ambient_dimension(big_n)?;
    }
    let w = Weights::new(&c);
    let x = load::vertex(&c, source)?;
    let z = load::point(&f, target)?;
    let phi = w.weight_vector(n, x, &z.vector)?;
    let mass = phi.mass();
    let want = expected_mass(n, c.ambient_dimension());
    let support_ok = phi
        .values
        .keys()
        .all(|&a| c.distance(x, a) <= n && c.vertex(a).in_interval(c.vertex(x), &z.vector));
    let values: serde_json::Map<String, Value> = if normalized {
        phi.normalized().iter().map(|(v, p)| (c.vertex_name(*v).to_string(), rational_string(p).into())).collect()
    } else {
        phi.values.iter().map(|(v, p)| (c.vertex_name(*v).to_string(), p.to_string().into())).collect()
    };
    let checks = json!([
        {"name": "mass", "passed": mass == want, "expected": want.to_string()},
        {"name": "support", "passed": support_ok},
    ]);
    let mut findings = Vec::new();
    if mass != want {
        findings.push(finding("mass-identity", true, json!({"mass": mass.to_string(), "expected": want.to_string()})));
    }
    if !support_ok {
        findings.push(finding("support", true, json!({})));
    }
    Ok(Outcome {
        findings,
        result: json!({
            "n": n,
            "N": c.ambient_dimension(),
            "source": source,
            "target": z.label,
            "normalized": normalized,
            "values": values,
            "mass": mass.to_string(),
            "checks": checks,
        }),
    })
}

fn verify_weights(spec: &str, max_n: usize, action: Option<&str>, with_ideal: bool, seed: u64) -> Result<Outcome> {
    let f = load::valid_family(spec)?;
    let c = &f.complex;
    let action = action.map(|a| load::action(c, a, seed)).transpose()?;
    let extra: Vec<SignVector> = if with_ideal {
        f.ideal_points()?.into_iter().map(|p| p.restriction).collect()
    } else {
        Vec::new()
    };
    let report = verify_weight_identities(c, max_n, &extra, action.as_ref())?;
    Ok(Outcome {
        findings: report_findings(&report),
        result: json!({
            "max_n": max_n,
            "N": c.ambient_dimension(),
            "targets": c.vertex_count() + extra.len(),
            "checks": report.checks,
        }),
    })
}

fn continuity(spec: &str, x: &str, a: &str, n: usize, z: Option<&str>, witness: usize) -> Result<Outcome> {
    let f = load::valid_family(spec)?;
    let c = &f.complex;
    let w = Weights::new(c);
    let q = PhiQuery { x: load::vertex(c, x)?, a: load::vertex(c, a)?, n };
    let mut probe = probe_points(&f);
    let chosen = z.map(|s| load::point(&f, s)).transpose()?;
    if let Some(p) = &chosen {
        if !probe.iter().any(|q| q.vector == p.vector && q.label == p.label) {
            probe.push(p.clone());
        }
    }
    let labels = |idx: &[usize]| idx.iter().map(|&i| probe[i].label.clone()).collect::<Vec<_>>();
    let zs = zero_set(c, q.x, q.a, &probe);
    let ls = level_sets(&w, q, &probe)?;
    let mut findings = Vec::new();
    if !zs.agree {
        findings.push(finding("zero-set-mismatch", true, json!({"direct": labels(&zs.direct), "formula": labels(&zs.formula)})));
    }
    if !ls.values_predicted {
        findings.push(finding("unexpected-value", true, json!({})));
    }
    for s in ls.superlevel.iter().filter(|s| !s.agree) {
        findings.push(finding(
            "superlevel-mismatch",
            true,
            json!({"k": s.k, "direct": labels(&s.direct), "formula": labels(&s.formula)}),
        ));
    }
    let targets: Vec<&ProbePoint> = match &chosen {
        Some(p) => vec![p],
        None => probe.iter().collect(),
    };
    let mut classifications = Vec::new();
    for p in targets {
        let cl = continuity_classify(&f, &w, q, p, witness)?;
        if let Some(wit) = &cl.witness {
            if !wit.verified {
                findings.push(finding("witness-unverified", true, json!({"point": p.label})));
            }
        }
        classifications.push(json!({"point": p.label, "classification": cl}));
    }
    let partition: serde_json::Map<String, Value> =
        ls.cells.iter().map(|(v, idx)| (v.clone(), json!(labels(idx)))).collect();
    let superlevel: Vec<Value> = ls
        .superlevel
        .iter()
        .map(|s| json!({"k": s.k, "threshold": s.threshold, "agree": s.agree, "points": labels(&s.direct)}))
        .collect();
    Ok(Outcome {
        findings,
        result: json!({
            "x": x, "a": a, "n": n,
            "A": slack(c, q),
            "N": c.ambient_dimension(),
            "values": predicted_values(slack(c, q), c.ambient_dimension()).iter().map(ToString::to_string).collect::<Vec<_>>(),
            "partition": partition,
            "zero_set": labels(&zs.direct),
            "superlevel": superlevel,
            "superlevel_skipped": ls.skipped,
            "classification": classifications,
        }),
    })
}

#[allow(clippy::too_many_arguments)]
fn property_a(
    spec: &str,
    action: &str,
    n: usize,
    epsilon: &str,
    gen_set: Option<&str>,
    nu: &str,
    basepoint: Option<&str>,
    seed: u64,
) -> Result<Outcome> {
    let f = load::valid_family(spec)?;
    let c = &f.complex;
    let action = load::action(c, action, seed)?;
    let orbits = orbit_transversal(&action);
    let e: Vec<ElemId> = match gen_set {
        Some(names) => names
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| action.parse_element(s.trim()))
            .collect::<Result<_>>()?,
        None => action.generators().iter().map(|g| g.element).collect(),
    };
    let epsilon = parse_rational(epsilon)?;
    if epsilon <= num_rational::BigRational::from_integer(0.into()) {
        return Err(Error::input("epsilon must be positive"));
    }
    let basepoint = match basepoint {
        Some(b) => load::vertex(c, b)?,
        None => c.base(),
    };
    let input = CertificateInput {
        e,
        epsilon,
        n,
        basepoint,
        nu: load::stabilizer_measures(c, &action, &orbits, nu)?,
    };
    let cert = build_mu(c, &action, &orbits, &input)?;
    let check = verify_mu(&cert, &action, &input);
    let cosets = orbits.verify(&action);
    let mut findings = report_findings(&check.report);
    findings.extend(report_findings(&cosets));
    if !check.below_epsilon {
        findings.push(finding(
            "epsilon-not-reached",
            true,
            json!({"max_dev": rational_string(&check.max_dev), "epsilon": rational_string(&input.epsilon)}),
        ));
    }
    let name = |g: &ElemId| action.element_name(*g);
    let terms: Vec<Value> = cert
        .terms
        .iter()
        .map(|t| {
            let data = &orbits.points[t.orbit];
            json!({
                "t": c.vertex_name(data.t),
                "stabilizer": data.stabilizer.iter().map(name).collect::<Vec<_>>(),
                "Z_F": t.z_f.iter().map(name).collect::<Vec<_>>(),
                "E_t": t.e_t.iter().map(name).collect::<Vec<_>>(),
                "F_t": t.f_t.iter().map(name).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mu: BTreeMap<String, Value> = action
        .elements()
        .map(|x| {
            let m: serde_json::Map<String, Value> =
                cert.mu[x.0].iter().map(|(g, p)| (name(g), rational_string(p).into())).collect();
            (name(&x), Value::Object(m))
        })
        .collect();
    let mu: serde_json::Map<String, Value> = action.elements().map(|x| (name(&x), mu[&name(&x)].clone())).collect();
    Ok(Outcome {
        findings,
        result: json!({
            "group_order": action.order(),
            "n": n,
            "basepoint": c.vertex_name(basepoint),
            "E": cert.e.iter().map(name).collect::<Vec<_>>(),
            "F": cert.f.iter().map(|v| c.vertex_name(*v)).collect::<Vec<_>>(),
            "orbits": terms,
            "support": cert.support.iter().map(name).collect::<Vec<_>>(),
            "support_bound": cert.support_bound.iter().map(name).collect::<Vec<_>>(),
            "mu": mu,
            "verification": check.to_json(&action),
            "coset_checks": cosets.checks,
        }),
    })
}

fn artin_fc(spec: &str) -> Result<Outcome> {
    let m = load::matrix(spec)?;
    let v = fc_check(&m, DEFAULT_CLIQUE_CAP)?;
    let mut findings = Vec::new();
    if let Some(w) = &v.witness {
        findings.push(finding("not-fc", true, json!({"witness": w})));
    }
    Ok(Outcome { findings, result: serde_json::to_value(&v)? })
}

fn artin_report(spec: &str) -> Result<Outcome> {
    let m = load::matrix(spec)?;
    let r = exactness_report(&m, DEFAULT_CLIQUE_CAP)?;
    let mut findings = Vec::new();
    if let Some(w) = &r.witness {
        findings.push(finding("not-fc", true, json!({"witness": w})));
    }
    Ok(Outcome { findings, result: serde_json::to_value(&r)? })
}

fn truncate(spec: &str) -> Result<Outcome> {
    let f = load::family(spec)?;
    let c = &f.complex;
    let report = c.validate();
    let findings = report
        .violations
        .iter()
        .map(|v| finding("invariant-violated", true, json!({"witness": v})))
        .collect();
    let ideal: Vec<Value> = match f.ideal_points() {
        Ok(pts) => pts
            .iter()
            .map(|p| json!({"label": p.label, "restriction": signs_json(&p.restriction), "adjacency_infinite": p.adjacency_infinite}))
            .collect(),
        Err(_) => Vec::new(),
    };
    Ok(Outcome {
        findings,
        result: json!({
            "family": f.spec.to_string(),
            "complex": c.to_json_value(),
            "annotations": {
                "annotated": f.annotations.annotated,
                "infinite_adjacency": f.annotations.infinite_adjacency.iter().map(|v| c.vertex_name(*v)).collect::<Vec<_>>(),
                "locally_finite": f.annotations.locally_finite,
            },
            "ideal_points": ideal,
        }),
    })
}

fn admissible(spec: &str, limit: usize) -> Result<Outcome> {
    let f = load::valid_family(spec)?;
    let c = &f.complex;
    let e = c.enumerate_admissible(limit);
    let vectors: Vec<Value> = e
        .vectors
        .iter()
        .map(|z| json!({"signs": signs_json(z), "vertex": c.lookup(z).map(|v| c.vertex_name(v))}))
        .collect();
    let original = e.vectors.iter().filter(|z| c.lookup(z).is_some()).count();
    let findings = if e.complete {
        Vec::new()
    } else {
        vec![finding("limit-reached", false, json!({"limit": limit}))]
    };
    Ok(Outcome {
        findings,
        result: json!({
            "count": e.vectors.len(),
            "complete": e.complete,
            "original": original,
            "ideal": e.vectors.len() - original,
            "vectors": vectors,
        }),
    })
}
