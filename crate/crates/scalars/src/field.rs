use crate::rational::Q;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Exact field arithmetic by reference.
///
/// Method names avoid `add`/`mul` so they never shadow `std::ops` on types
/// that implement both.
pub trait Field: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_q(x: &Q) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    /// Panics when `o` is zero.
    fn over(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_q(&crate::rational::qi(n))
    }

    fn is_one(&self) -> bool {
        self.minus(&Self::one()).is_zero()
    }

    fn scale(&self, c: &Q) -> Self {
        self.times(&Self::from_q(c))
    }

    fn inverse(&self) -> Self {
        Self::one().over(self)
    }

    /// The value as a rational number, when it is one.
    fn to_q(&self) -> Option<Q> {
        None
    }

    fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.times(self);
        }
        r
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        assert!(!Zero::is_zero(o), "division by zero rational");
        self / o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn to_q(&self) -> Option<Q> {
        Some(self.clone())
    }
}
