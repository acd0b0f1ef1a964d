//! Coxeter matrices, sphericity of parabolic subgroups, and the FC-type
//! decision for Artin groups.

mod classify;
pub mod enumerate;
mod fc;

use std::fmt;

use serde_json::Value;

use crate::clique::Graph;
use crate::error::{Error, Result};

pub use classify::{spherical_classify, CoxeterType, IrreducibleComponent, Sphericity};
pub use enumerate::coxeter_group_order;
pub use fc::{exactness_report, fc_check, CliqueRecord, ExactnessReport, FcVerdict, DEFAULT_CLIQUE_CAP};

/// A Coxeter matrix entry: a label `m >= 1` or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Finite(u32),
    Infinity,
}

impl Entry {
    pub fn is_finite(self) -> bool {
        matches!(self, Entry::Finite(_))
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Finite(m) => write!(f, "{m}"),
            Entry::Infinity => write!(f, "inf"),
        }
    }
}

/// A symmetric matrix with ones on the diagonal and off-diagonal entries
/// in `{2, 3, ...} ∪ {∞}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    generators: Vec<String>,
    entries: Vec<Vec<Entry>>,
}

impl CoxeterMatrix {
    pub fn new(generators: Vec<String>, entries: Vec<Vec<Entry>>) -> Result<Self> {
        validate_matrix(generators, entries)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn entry(&self, i: usize, j: usize) -> Entry {
        self.entries[i][j]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::input(format!("unknown generator `{name}`")))
    }

    /// The submatrix on `indices` (in the given order).
    pub fn restrict(&self, indices: &[usize]) -> CoxeterMatrix {
        CoxeterMatrix {
            generators: indices.iter().map(|&i| self.generators[i].clone()).collect(),
            entries: indices.iter().map(|&i| indices.iter().map(|&j| self.entries[i][j]).collect()).collect(),
        }
    }

    /// Same matrix with indices permuted: new index `k` is old `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterMatrix {
        self.restrict(perm)
    }

    /// Edge `{i, j}` whenever the pair generates a finite dihedral group.
    pub fn sphericity_graph(&self) -> Graph {
        Graph::from_fn(self.len(), |i, j| self.entries[i][j].is_finite())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        Self::from_json(&v)
    }

    /// Reads `{"generators": [...], "matrix": [[1, 3, "inf"], ...]}`; the
    /// generator list may be omitted (names default to `s1, s2, ...`).
    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .get("matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("expected a `matrix` array"))?;
        let mut entries = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| Error::input(format!("row {i} is not an array")))?;
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, e)| parse_entry(e).ok_or_else(|| Error::input(format!("entry ({i},{j}) = {e} is not a label"))))
                .collect::<Result<Vec<_>>>()?;
            entries.push(parsed);
        }
        let generators = match v.get("generators") {
            Some(g) => g
                .as_array()
                .ok_or_else(|| Error::input("`generators` must be an array"))?
                .iter()
                .map(|n| n.as_str().map(str::to_string).ok_or_else(|| Error::input("generator names must be strings")))
                .collect::<Result<Vec<_>>>()?,
            None => (1..=entries.len()).map(|i| format!("s{i}")).collect(),
        };
        validate_matrix(generators, entries)
    }

    pub fn to_json(&self) -> Value {
        let matrix: Vec<Value> = self
            .entries
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|e| match e {
                            Entry::Finite(m) => Value::from(*m),
                            Entry::Infinity => Value::from("inf"),
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({"generators": self.generators, "matrix": matrix})
    }
}

fn parse_entry(e: &Value) -> Option<Entry> {
    match e {
        Value::String(s) if s == "inf" || s == "∞" => Some(Entry::Infinity),
        Value::Number(n) => n.as_u64().and_then(|m| u32::try_from(m).ok()).map(Entry::Finite),
        _ => None,
    }
}

/// Checks shape, symmetry, the unit diagonal and off-diagonal labels `>= 2`.
pub fn validate_matrix(generators: Vec<String>, entries: Vec<Vec<Entry>>) -> Result<CoxeterMatrix> {
    let n = generators.len();
    if entries.len() != n {
        return Err(Error::input(format!("{} generators but {} matrix rows", n, entries.len())));
    }
    for (i, g) in generators.iter().enumerate() {
        if generators[..i].contains(g) {
            return Err(Error::input(format!("duplicate generator `{g}`")));
        }
    }
    for (i, row) in entries.iter().enumerate() {
        if row.len() != n {
            return Err(Error::input(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        for (j, &e) in row.iter().enumerate() {
            if i == j {
                if e != Entry::Finite(1) {
                    return Err(Error::input(format!("diagonal entry ({i},{i}) is {e}, expected 1")));
                }
            } else {
                if e != entries[j][i] {
                    return Err(Error::input(format!(
                        "matrix is not symmetric: ({i},{j}) = {e} but ({j},{i}) = {}",
                        entries[j][i]
                    )));
                }
                if let Entry::Finite(m) = e {
                    if m < 2 {
                        return Err(Error::input(format!("off-diagonal entry ({i},{j}) is {m}, expected >= 2")));
                    }
                }
            }
        }
    }
    Ok(CoxeterMatrix { generators, entries })
}

/// The parabolic submatrix on the named generators `J`.
pub fn parabolic_restrict(m: &CoxeterMatrix, j: &[&str]) -> Result<CoxeterMatrix> {
    let idx = j.iter().map(|name| m.index_of(name)).collect::<Result<Vec<_>>>()?;
    Ok(m.restrict(&idx))
}
