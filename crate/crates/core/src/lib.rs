//! Generalized Verma modules over `sl_n`, intertwining operators, and the
//! dynamical twists, R-matrices and orbit star products built from them.
//!
//! Every computation is exact. Functions that depend on the dynamical
//! parameter are generic over [`Field`], so the same pipeline runs with
//! numeric `λ` (over `Q`) and symbolic `λ` (over `RatFunc`).

pub mod enveloping;
pub mod error;
pub mod intertwine;
pub mod orbit;
pub mod repcat;
pub mod rootdata;
pub mod twist;
pub mod verma;

pub use dynquant_scalars::{Field, Matrix, RatFunc, Q};
pub use error::Error;
pub use rootdata::{CharacterPoint, LeviDatum, RootSystem};
