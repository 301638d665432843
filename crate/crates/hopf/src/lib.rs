//! Finite Hopf algebras given by structure tensors over `Q`, base algebras
//! over them, dynamical associative algebras, and the PBW star product.
//!
//! Every check runs over all basis tuples. Graded algebras that are only
//! Hopf up to a degree cap (truncations of `U(h)`) carry their grading, and
//! a tuple is checked only when its total degree stays under the cap.

pub mod base;
pub mod dynassoc;
pub mod finhopf;
pub mod pbw;
pub mod report;
pub mod spec;

pub use base::{base_reduction, check_base_algebra, self_base, BaseAlgebra};
pub use dynassoc::{check_dynamical_associativity, DynamicalAlgebra};
pub use finhopf::FinHopf;
pub use pbw::{pbw_star, LieData, SymPoly};
pub use report::Report;
