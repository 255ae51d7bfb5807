//! Exact-arithmetic invariants of toric varieties.
//!
//! The crate models rational polyhedral cones and fans, the affine monoids
//! `σ∨ ∩ M`, per-weight graded pieces of reflexive differential forms and of
//! the Kähler comparison image, Čech (hyper)cohomology over the maximal-cone
//! cover, dilation endomorphisms with their colimit traces, and scripted
//! reproductions of known example computations. All arithmetic is
//! arbitrary-precision integer/rational; nothing here touches floating point.

pub mod cech;
pub mod complex;
pub mod cones;
pub mod dilation;
pub mod error;
pub mod fans;
pub mod forms;
pub mod lab;
pub mod lattice;
pub mod linalg;
pub mod monoids;
pub mod report;

pub use cech::{BlowupLesReport, Cover};
pub use cones::{Cone, ConeClass};
pub use dilation::{DilationTrace, HochschildTrace};
pub use error::{Error, Result};
pub use fans::{BlowupSquare, Fan, FanViolation, OrbitClosureData};
pub use forms::{GradedSubspace, SheafKind};
pub use lattice::{Int, LatticeMatrix, LatticeVector, QuotientLattice, WedgeBasis};
pub use linalg::{QMat, Rat, Subspace};
pub use monoids::{AffineMonoid, PointedSplit};
pub use report::{Check, ExampleReport, Provenance, Table};
