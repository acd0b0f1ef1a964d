//! Combinatorics of finite-dimensional CAT(0) cube complexes.
//!
//! Vertices are modelled as sign vectors over the hyperplanes of a complex:
//! each hyperplane `H` splits the vertex set into the half space `H+`
//! containing a fixed base vertex and its complement `H-`. On top of that
//! representation the crate provides
//!
//! - medians, intervals and admissible (ideal) vertices ([`cube`]),
//! - standard families of complexes and their ideal points ([`families`]),
//! - the binomial weight functions and their normalised measures ([`weights`]),
//! - level-set and continuity analysis of the weights ([`continuity`]),
//! - finite group actions and the Property A measure construction that
//!   combines weight measures with stabiliser measures ([`actions`]),
//! - Coxeter matrices, sphericity and the FC-type decision ([`artin`]).
//!
//! All arithmetic that feeds an identity check is exact: big integers for
//! weights and big rationals for measures.

pub mod actions;
pub mod artin;
pub mod binomial;
pub mod cli;
pub mod clique;
pub mod continuity;
pub mod cube;
pub mod error;
pub mod families;
pub mod measure;
pub mod report;
pub mod weights;

pub use cube::{CubeComplex, HyperplaneId, Sign, SignVector, VertexId};
pub use error::{Error, Result};
pub use measure::ProbMeasure;
