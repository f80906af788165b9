//! Degree-truncated relative Sullivan algebras `A⊗A⊗Λ(generators)` given by
//! explicit tables, and an obstruction solver for isomorphisms between them.

mod free;
mod solver;
mod table;

pub use free::{differential, Coeff, FreeAlgebra, FreeElement, Generator, Poly, Term};
pub use solver::{classify_example, iso_obstruction, Classification, ObstructionResult, SolverError, Verdict};
pub use table::{check_table, s2xs3_table, GeneratorCheck, GeneratorEntry, GeneratorTable, TableError, TableFile, TableReport};
