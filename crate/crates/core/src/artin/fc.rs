//! The FC-type decision and the exactness verdict built on it.

use rayon::prelude::*;
use serde::Serialize;

use super::classify::{spherical_classify, Sphericity};
use super::CoxeterMatrix;
use crate::clique::maximal_cliques;
use crate::error::{Error, Result};

/// Default bound on the number of maximal cliques enumerated.
pub const DEFAULT_CLIQUE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueRecord {
    pub generators: Vec<String>,
    pub sphericity: Sphericity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FcVerdict {
    pub is_fc: bool,
    /// First maximal clique (in sorted order) whose parabolic is infinite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub cliques: Vec<CliqueRecord>,
}

/// Decides whether every clique of the sphericity graph spans a finite
/// parabolic subgroup. Maximal cliques suffice, since parabolic subgroups
/// of finite Coxeter groups are finite.
pub fn fc_check(m: &CoxeterMatrix, cap: usize) -> Result<FcVerdict> {
    let graph = m.sphericity_graph();
    let enumeration = maximal_cliques(&graph, cap);
    if !enumeration.complete {
        let classified = enumeration.cliques.iter().filter(|c| spherical_classify(m, c).is_spherical()).count();
        return Err(Error::CapExceeded {
            context: format!(
                "enumerating maximal cliques ({} found, {classified} of them spherical, before stopping)",
                enumeration.cliques.len()
            ),
            cap,
            reached: enumeration.cliques.len(),
        });
    }
    let cliques: Vec<CliqueRecord> = enumeration
        .cliques
        .par_iter()
        .map(|c| CliqueRecord {
            generators: c.iter().map(|&i| m.generators()[i].clone()).collect(),
            sphericity: spherical_classify(m, c),
        })
        .collect();
    let witness = cliques.iter().find(|c| !c.sphericity.is_spherical()).map(|c| c.generators.clone());
    Ok(FcVerdict { is_fc: witness.is_none(), witness, cliques })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    /// `"exact"` when the matrix is of FC type, otherwise `"inapplicable"`.
    pub verdict: &'static str,
    pub reason: String,
    /// Types of the maximal finite-type parabolics; these are the vertex
    /// stabilizers of the cubical action used to derive exactness.
    pub stabilizer_types: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub fc: FcVerdict,
}

/// Exactness of the Artin group: guaranteed for FC type, where the group
/// acts on a finite-dimensional CAT(0) cube complex with finite-type
/// (hence exact) parabolic stabilizers. Otherwise no verdict is drawn.
pub fn exactness_report(m: &CoxeterMatrix, cap: usize) -> Result<ExactnessReport> {
    let fc = fc_check(m, cap)?;
    if fc.is_fc {
        let mut stabilizer_types: Vec<String> = fc.cliques.iter().filter_map(|c| c.sphericity.type_name()).collect();
        stabilizer_types.sort();
        stabilizer_types.dedup();
        Ok(ExactnessReport {
            verdict: "exact",
            reason: "FC type: every clique of the sphericity graph spans a finite-type parabolic subgroup".into(),
            stabilizer_types,
            witness: None,
            fc,
        })
    } else {
        let witness = fc.witness.clone();
        Ok(ExactnessReport {
            verdict: "inapplicable",
            reason: "not of FC type: a clique of the sphericity graph spans an infinite parabolic subgroup".into(),
            stabilizer_types: Vec::new(),
            witness,
            fc,
        })
    }
}
