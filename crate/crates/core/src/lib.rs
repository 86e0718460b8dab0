//! Exact enumeration and numerical estimation of growth constants of classical
//! lattice models: self-avoiding walks, polyominoes, Ising high-temperature
//! graphs, dimers, ice, hard-core gases and percolation clusters.

// Reference constants are kept exactly as published.
#![allow(clippy::excessive_precision)]

pub mod analysis;
pub mod animals;
pub mod coverings;
pub mod entropy;
pub mod error;
pub mod ising;
pub mod lattice;
pub mod percolation;
pub mod precision;
pub mod series;
pub mod walks;

pub use error::{Error, Result, WorkBudget};
pub use series::{BigCount, EstimateReport, Provenance, SeriesTable};
