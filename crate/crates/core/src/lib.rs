//! Exact rational models for configuration spaces of two points in closed
//! manifolds.

pub mod algebra;
pub mod cohomology;
pub mod linalg;
pub mod quotient;
pub mod tensor;
pub mod module;
pub mod poincare;
pub mod cone;
pub mod twisted;
pub mod products;
pub mod expr;
pub mod io;
pub mod presets;
pub mod sullivan;
pub mod report;
pub mod commands;
