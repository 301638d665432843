//! Exact scalar layer: big rationals, polynomials and rational functions in
//! the dynamical variables, truncated (Laurent) series in the deformation
//! parameter, and Gaussian elimination over any of these fields.

pub mod field;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;

pub use field::Field;
pub use linalg::{solve_linear, Matrix, Solution};
pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;
pub use rational::{q, qi, Q};
pub use series::{series_expand, Laurent, SeriesError, TruncSeries};
