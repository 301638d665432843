//! Rational functions `num/den` in the variables `l1..lr`.
//!
//! Normal form: the denominator has leading coefficient 1 and common monomial
//! factors are cancelled. When numerator and denominator involve at most one
//! (shared) variable the univariate gcd is divided out too, which makes the
//! representation canonical in that case. Equality is always decided by
//! cross-multiplication, so the multivariate case stays correct without a
//! full gcd.

use crate::field::Field;
use crate::poly::Poly;
use crate::rational::Q;
use std::fmt;

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc::new(p, Poly::one())
    }

    pub fn var(i: usize) -> Self {
        RatFunc::from_poly(Poly::var(i))
    }

    pub fn constant(c: Q) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Value if the function is constant.
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let m = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !m.is_one() {
            self.num = self.num.div_monomial(&m);
            self.den = self.den.div_monomial(&m);
        }
        if !self.den.is_constant() {
            if let Some(g) = self.num.gcd_univariate(&self.den) {
                if !g.is_constant() {
                    self.num = self.num.div_exact(&g).expect("gcd divides numerator");
                    self.den = self.den.div_exact(&g).expect("gcd divides denominator");
                }
            } else if let Some(qt) = self.num.div_exact(&self.den) {
                self.num = qt;
                self.den = Poly::one();
            }
        }
        let lc = self.den.leading().map(|(_, c)| c.clone()).unwrap();
        if !lc.is_one() {
            let inv = lc.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn eval(&self, point: &[Q]) -> Option<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    /// Evaluate in another field; `None` on a pole.
    pub fn eval_in<F: Field>(&self, point: &[F]) -> Option<F> {
        let d = self.den.eval_in(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_in(point).over(&d))
        }
    }

    /// Substitute rational functions for the variables.
    pub fn compose(&self, subs: &[RatFunc]) -> RatFunc {
        self.num.eval_in(subs).over(&self.den.eval_in(subs))
    }

    /// Replace variable `i` by `l_i + shift[i]`.
    pub fn shift(&self, shift: &[Q]) -> RatFunc {
        let subs: Vec<Poly> = shift
            .iter()
            .enumerate()
            .map(|(i, s)| Poly::var(i).add(&Poly::constant(s.clone())))
            .collect();
        let n = self.max_var().map_or(0, |v| v + 1);
        let subs: Vec<Poly> = (0..n.max(subs.len()))
            .map(|i| subs.get(i).cloned().unwrap_or_else(|| Poly::var(i)))
            .collect();
        RatFunc::new(self.num.compose(&subs), self.den.compose(&subs))
    }

    fn max_var(&self) -> Option<usize> {
        self.num.variables().into_iter().chain(self.den.variables()).max()
    }

    /// Quotient-rule derivative in variable `i`.
    pub fn diff(&self, i: usize) -> RatFunc {
        let dn = self.num.derivative(i);
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return RatFunc::new(dn, self.den.clone());
        }
        RatFunc::new(dn.mul(&self.den).sub(&self.num.mul(&dd)), self.den.mul(&self.den))
    }

    /// Degrees of numerator and denominator in variable `i`.
    pub fn degrees_in(&self, i: usize) -> (u32, u32) {
        (self.num.degree_in(i), self.den.degree_in(i))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<RatFunc> {
        let num = Poly::from_json(v.get("num")?)?;
        let den = Poly::from_json(v.get("den")?)?;
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(num, den))
    }
}

/// `ratfunc_diff` under its operational name.
pub fn ratfunc_diff(f: &RatFunc, i: usize) -> RatFunc {
    f.diff(i)
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
    fn from_q(x: &Q) -> Self {
        RatFunc {
            num: Poly::constant(x.clone()),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn over(&self, o: &Self) -> Self {
        assert!(!o.num.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }
    fn negate(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn to_q(&self) -> Option<Q> {
        self.as_constant()
    }
    fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            let c = self.den.constant_term();
            if c.is_one() {
                return write!(f, "{}", self.num);
            }
            return write!(f, "({})/{}", self.num, c);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn l() -> RatFunc {
        RatFunc::var(0)
    }

    fn c(n: i64) -> RatFunc {
        RatFunc::from_i64(n)
    }

    #[test]
    fn canonical_cancellation() {
        // (l^2 - 1)/(l - 1) == l + 1, stored reduced
        let f = l().times(&l()).minus(&c(1)).over(&l().minus(&c(1)));
        assert_eq!(f, l().plus(&c(1)));
        assert!(f.den().is_constant());
    }

    #[test]
    fn derivative_examples() {
        let inv = c(1).over(&l());
        assert_eq!(inv.diff(0), c(-1).over(&l().times(&l())));
        assert!(c(7).diff(0).is_zero());
        // oracle: (u/v)' = (u'v - uv')/v^2 with u = l^2, v = l - 1
        let f = l().times(&l()).over(&l().minus(&c(1)));
        let u = l().times(&l());
        let v = l().minus(&c(1));
        let oracle = c(2).times(&l()).times(&v).minus(&u).over(&v.times(&v));
        assert_eq!(f.diff(0), oracle);
        assert_eq!(f.diff(0), l().times(&l()).minus(&c(2).times(&l())).over(&v.times(&v)));
    }

    #[test]
    fn eval_and_shift() {
        let f = c(1).over(&l().plus(&c(1)));
        assert_eq!(f.eval(&[qi(1)]), Some(q(1, 2)));
        assert_eq!(f.eval(&[qi(-1)]), None);
        let g = f.shift(&[qi(2)]);
        assert_eq!(g.eval(&[qi(0)]), Some(q(1, 3)));
    }

    #[test]
    fn multivariate_equality_by_cross_multiplication() {
        let x = RatFunc::var(0);
        let y = RatFunc::var(1);
        let a = x.times(&y).plus(&y).over(&x.plus(&y).times(&y));
        let b = x.plus(&c(1)).over(&x.plus(&y));
        assert_eq!(a, b);
    }

    #[test]
    fn json_roundtrip() {
        let f = l().times(&l()).minus(&c(3)).over(&l().minus(&c(2)).scale(&q(1, 3)));
        let back = RatFunc::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.num(), f.num());
    }
}
