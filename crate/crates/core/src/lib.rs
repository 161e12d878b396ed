//! Exact verification tools for chromatic numbers of Kneser hypergraphs and
//! their stable subhypergraphs.
//!
//! Set systems are bitmask families over `[n]` with `n <= 64`. On top of
//! them sit generalized Kneser hypergraphs with an exact weak-coloring solver,
//! the colorability defect with affine certificates for its topological
//! counterpart, Tverberg-type checks on exact rational point sets, and
//! simplicial complexes with box complexes and homology.

pub mod chromatic;
pub mod defect;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod kneser;
pub mod setsystem;
pub mod topology;

pub use chromatic::{chromatic_number_exact, find_coloring, first_fit, solve, ChromaticResult, SolverOptions};
pub use defect::{cd_le_tcd_check, colorability_defect, tcd_certificate, CertifiedBound, DefectWitness, TcdCheckReport};
pub use error::{Error, Result};
pub use geometry::{PointConfig, Rational};
pub use grid::{run_cell, run_grid, Cell, GridSpec, Status, Variant, VerificationRecord};
pub use kneser::{afl_formula, build_kneser, greedy_coloring, is_proper, kriz_bound, Coloring, Hypergraph};
pub use setsystem::{GroundPartition, Mask, SetSystem};
pub use topology::{BettiVector, Field, SimplicialComplex};
