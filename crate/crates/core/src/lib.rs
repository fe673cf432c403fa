//! Finite-model toolkit for the discrete dualities between lattice-based
//! algebras and relational frames that arise from rough set theory.

pub mod algebra;
pub mod approx;
pub mod duality;
pub mod enumerate;
pub mod labels;
pub mod order;
pub mod pointset;
pub mod report;
pub mod rra;
pub mod speclang;

pub use algebra::{AlgebraError, AlgebraKind, FiniteAlgebra, FiniteLattice};
pub use approx::{ApproximationSpace, BinaryRelation, RoughSet};
pub use duality::{DualityError, Frame};
pub use order::Poset;
pub use report::{CheckReport, DualityRoundtripReport};
