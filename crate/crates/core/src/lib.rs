//! Computations on weighted projective spaces `P(a_0, ..., a_N)` and weighted
//! complete intersections in them: well-formedness, singular strata, the
//! index and the Fano / Calabi-Yau / general type trichotomy, the structure of
//! `Aut(P)`, and finite-field probes of quasi-smoothness of explicit
//! equations.
//!
//! All symbolic work is exact. Data-parallel loops go through [`exec::Exec`]
//! and produce identical results in sequential and parallel mode.

pub mod aut;
pub mod error;
pub mod exec;
pub mod lab;
pub mod linalg;
pub mod poly;
pub mod qs;
pub mod random;
pub mod schema;
pub mod search;
mod series;
pub mod wci;
pub mod wps;

pub use error::{Error, Result};
pub use exec::Exec;
pub use wci::{ClassificationReport, Kind, WciDescriptor};
pub use wps::{SingularStratum, WeightedProjectiveSpace};
pub use aut::{AutStructure, PolynomialMap};
