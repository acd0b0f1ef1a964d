use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{CubeComplex, SignVector};
use crate::error::{Error, Result};

/// On-disk complex format:
/// `{"hyperplanes":[..], "base":"v0", "N":2, "vertices":{"v0":[1,1], ..}}`,
/// sign arrays aligned with the hyperplane order. Vertex ids follow the
/// order of the `vertices` object.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub hyperplanes: Vec<String>,
    pub base: String,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub ambient_dimension: Option<usize>,
    pub vertices: Map<String, Value>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<CubeComplex> {
        let mut verts = Vec::with_capacity(self.vertices.len());
        for (name, signs) in self.vertices {
            let arr = signs
                .as_array()
                .ok_or_else(|| Error::input(format!("vertex `{name}`: signs must be an array")))?;
            if arr.len() != self.hyperplanes.len() {
                return Err(Error::input(format!(
                    "vertex `{name}`: sign array has length {}, expected {}",
                    arr.len(),
                    self.hyperplanes.len()
                )));
            }
            let ints = arr
                .iter()
                .map(|v| v.as_i64().ok_or_else(|| Error::input(format!("vertex `{name}`: non-integer sign {v}"))))
                .collect::<Result<Vec<_>>>()?;
            let signs = ints
                .iter()
                .map(|&s| {
                    super::Sign::from_int(s).ok_or_else(|| Error::input(format!("vertex `{name}`: sign {s} is not +1 or -1")))
                })
                .collect::<Result<Vec<_>>>()?;
            verts.push((name, SignVector::from_signs(&signs)));
        }
        CubeComplex::new(self.hyperplanes, verts, &self.base, self.ambient_dimension)
    }

    pub fn from_complex(c: &CubeComplex) -> Self {
        let vertices = c
            .vertex_ids()
            .map(|v| {
                let signs = c.vertex(v).signs().iter().map(|s| Value::from(s.value())).collect();
                (c.vertex_name(v).to_string(), Value::Array(signs))
            })
            .collect();
        ComplexFile {
            hyperplanes: c.hyperplane_names().to_vec(),
            base: c.vertex_name(c.base()).to_string(),
            ambient_dimension: Some(c.ambient_dimension()),
            vertices,
        }
    }
}

impl CubeComplex {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let f: ComplexFile = serde_json::from_str(s)?;
        f.into_complex()
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(ComplexFile::from_complex(self)).expect("complex file serialises")
    }
}
