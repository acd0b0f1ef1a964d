//! Turning command-line arguments into validated inputs.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::actions::{builtin_generators, parse_action_json, validate_action, ActionOptions, GroupAction, OrbitData, StabFamily};
use crate::artin::CoxeterMatrix;
use crate::continuity::ProbePoint;
use crate::cube::{CubeComplex, Sign, SignVector, VertexId};
use crate::error::{Error, Result};
use crate::families::{Family, FamilySpec};
use crate::measure::{parse_rational, ProbMeasure};

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

/// A family spec, or a bare path to a complex file.
pub fn family(spec: &str) -> Result<Family> {
    let spec = if spec.ends_with(".json") && !spec.starts_with("file:") { format!("file:{spec}") } else { spec.to_string() };
    Family::build(&FamilySpec::parse(&spec)?)
}

/// Like [`family`], rejecting complexes that fail validation.
pub fn valid_family(spec: &str) -> Result<Family> {
    let f = family(spec)?;
    let report = f.complex.validate();
    if !report.is_valid() {
        let v = serde_json::to_string(&report.violations).unwrap_or_default();
        return Err(Error::input(format!("complex `{spec}` fails validation: {v}")));
    }
    Ok(f)
}

/// A vertex name, `ideal:<label>` or a JSON array of `+1/-1` signs. Sign
/// arrays must be admissible.
pub fn point(f: &Family, s: &str) -> Result<ProbePoint> {
    let c = &f.complex;
    if let Some(label) = s.strip_prefix("ideal:") {
        return Ok(ProbePoint::ideal(f.ideal_point(label)?));
    }
    if s.trim_start().starts_with('[') {
        let z = sign_array(c, s)?;
        if !c.is_admissible(&z) {
            return Err(Error::input(format!("{s} is not admissible")));
        }
        return Ok(ProbePoint::vector(c, s, z));
    }
    Ok(ProbePoint::vertex(c, c.vertex_id(s)?))
}

fn sign_array(c: &CubeComplex, s: &str) -> Result<SignVector> {
    let v: Vec<i64> = serde_json::from_str(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
    c.sign_vector_from_ints(&v)
}

pub fn vertex(c: &CubeComplex, s: &str) -> Result<VertexId> {
    c.vertex_id(s)
}

pub fn matrix(spec: &str) -> Result<CoxeterMatrix> {
    let path = spec.strip_prefix("file:").unwrap_or(spec);
    CoxeterMatrix::from_json_str(&read(path)?)
}

/// `builtin:<name>` or an action file.
pub fn action(c: &CubeComplex, spec: &str, seed: u64) -> Result<GroupAction> {
    let gens = match spec.strip_prefix("builtin:") {
        Some(name) => builtin_generators(name, c)?,
        None => parse_action_json(c, &read(spec.strip_prefix("file:").unwrap_or(spec))?)?,
    };
    validate_action(c, gens, ActionOptions { seed, ..ActionOptions::default() })
}

/// `uniform`, or a file `{"<t>": {"<h>": {"<k>": "p/q", ...}, ...}, ...}`
/// giving for each transversal vertex `t` and stabilizer element `h` a
/// measure on the stabilizer (elements written as generator words).
pub fn stabilizer_measures(
    c: &CubeComplex,
    action: &GroupAction,
    orbits: &OrbitData,
    spec: &str,
) -> Result<BTreeMap<VertexId, StabFamily>> {
    if spec == "uniform" {
        return Ok(orbits.transversal().into_iter().map(|t| (t, StabFamily::Uniform)).collect());
    }
    let v: Value = serde_json::from_str(&read(spec.strip_prefix("file:").unwrap_or(spec))?)?;
    let obj = v.as_object().ok_or_else(|| Error::input("stabilizer measures must be a JSON object"))?;
    let mut out = BTreeMap::new();
    for (t, per_h) in obj {
        let t = c.vertex_id(t)?;
        if !orbits.transversal().contains(&t) {
            return Err(Error::input(format!("`{}` is not a transversal point", c.vertex_name(t))));
        }
        let per_h = per_h.as_object().ok_or_else(|| Error::input("expected an object per stabilizer element"))?;
        let mut family = BTreeMap::new();
        for (h, masses) in per_h {
            let masses = masses.as_object().ok_or_else(|| Error::input("expected an object of masses"))?;
            let m = masses
                .iter()
                .map(|(k, p)| {
                    let p = p.as_str().ok_or_else(|| Error::input("masses are strings such as \"1/2\""))?;
                    Ok((action.parse_element(k)?, parse_rational(p)?))
                })
                .collect::<Result<Vec<_>>>()?;
            family.insert(action.parse_element(h)?, ProbMeasure::new(m)?);
        }
        out.insert(t, StabFamily::Explicit(family));
    }
    Ok(out)
}

pub fn signs_json(z: &SignVector) -> Value {
    Value::Array(z.signs().iter().map(|s: &Sign| Value::from(s.value())).collect())
}
