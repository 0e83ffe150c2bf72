//! Mirror Landau–Ginzburg models for type-A flag varieties: Weyl-group
//! combinatorics, exact Chevalley group matrices, braid coordinate changes,
//! Deodhar charts, the quiver and Lie-theoretic mirror families with a
//! critical-point solver, and Peterson/Toda checks.

pub mod autodiff;
pub mod braid;
pub mod chevalley;
pub mod deodhar;
pub mod matrix;
pub mod mirror;
pub mod peterson;
pub mod scalar;
pub mod weyl;
