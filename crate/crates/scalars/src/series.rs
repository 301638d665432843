//! Truncated power series and Laurent series in the deformation parameter `t`,
//! and the expansion of a rational function along `l = l0/t + l1`.

use crate::field::Field;
use crate::ratfunc::RatFunc;
use crate::rational::Q;

/// `c_0 + c_1 t + ... + c_N t^N` modulo `t^{N+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> TruncSeries<F> {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![F::zero(); order + 1],
        }
    }

    pub fn constant(c: F, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads or truncates `coeffs` to length `order + 1`.
    pub fn from_coeffs(mut coeffs: Vec<F>, order: usize) -> Self {
        coeffs.resize(order + 1, F::zero());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        TruncSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].plus(&o.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        TruncSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].minus(&o.coeffs[k])).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut c = vec![F::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if !o.coeffs[j].is_zero() {
                    c[i + j] = c[i + j].plus(&self.coeffs[i].times(&o.coeffs[j]));
                }
            }
        }
        TruncSeries { coeffs: c }
    }

    pub fn scale(&self, x: &F) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.times(x)).collect(),
        }
    }
}

/// `sum_k coeffs[k] t^{lead + k}`, known exactly up to and including `t^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<F: Field> {
    lead: i32,
    coeffs: Vec<F>,
    order: i32,
}

impl<F: Field> Laurent<F> {
    pub fn new(lead: i32, mut coeffs: Vec<F>, order: i32) -> Self {
        let len = (order - lead + 1).max(0) as usize;
        coeffs.resize(len, F::zero());
        Laurent { lead, coeffs, order }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Coefficient of `t^k` (zero below the leading exponent).
    pub fn coeff(&self, k: i32) -> F {
        assert!(k <= self.order, "coefficient t^{k} beyond known order {}", self.order);
        if k < self.lead {
            return F::zero();
        }
        self.coeffs[(k - self.lead) as usize].clone()
    }

    /// Largest `k > 0` with a nonzero `t^{-k}` coefficient, 0 if none.
    pub fn principal_degree(&self) -> u32 {
        (self.lead..0)
            .filter(|&k| k <= self.order && !self.coeff(k).is_zero())
            .map(|k| (-k) as u32)
            .max()
            .unwrap_or(0)
    }

    /// `c_0..c_N`; the principal part is dropped (see `principal_degree`).
    pub fn taylor(&self) -> TruncSeries<F> {
        let n = self.order.max(0) as usize;
        TruncSeries::from_coeffs((0..=n as i32).map(|k| self.coeff(k)).collect(), n)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let lead = self.lead + o.lead;
        let order = (self.order + o.lead).min(o.order + self.lead);
        let len = (order - lead + 1).max(0) as usize;
        let mut c = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < len && !b.is_zero() {
                    c[i + j] = c[i + j].plus(&a.times(b));
                }
            }
        }
        Laurent { lead, coeffs: c, order }
    }

    pub fn add(&self, o: &Self) -> Self {
        let lead = self.lead.min(o.lead);
        let order = self.order.min(o.order);
        let c = (lead..=order).map(|k| self.coeff(k).plus(&o.coeff(k))).collect();
        Laurent::new(lead, c, order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("pole at t = 0: the top-degree part of the denominator vanishes at l0")]
    PoleAtOrigin,
    #[error("substitution has {got} values but the function uses {need} variables")]
    Arity { got: usize, need: usize },
}

/// Dense polynomial in `t` with coefficients in `F`.
fn tpoly_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut c = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = c[i + j].plus(&x.times(y));
        }
    }
    c
}

/// `t^{deg p} p((a + b t)/t)` as a dense polynomial in `t`.
fn homogenize<F: Field>(p: &crate::poly::Poly, a: &[F], b: &[F]) -> Vec<F> {
    let d = p.degree() as usize;
    let mut out = vec![F::zero(); d + 1];
    for (m, c) in p.terms() {
        let mut t = vec![F::from_q(c)];
        for (i, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                t = tpoly_mul(&t, &[a[i].clone(), b[i].clone()]);
            }
        }
        let shift = d - m.degree() as usize;
        for (k, x) in t.into_iter().enumerate() {
            out[k + shift] = out[k + shift].plus(&x);
        }
    }
    out
}

/// Expand `f` along `l_i = a_i/t + b_i` up to and including `t^order`.
///
/// The leading exponent is `deg(den) - deg(num)`; negative values give an
/// explicit principal part. Fails with `PoleAtOrigin` when the top-degree
/// homogeneous part of the denominator vanishes at `a`.
pub fn series_expand<F: Field>(f: &RatFunc, a: &[F], b: &[F], order: i32) -> Result<Laurent<F>, SeriesError> {
    let need = f
        .num()
        .variables()
        .into_iter()
        .chain(f.den().variables())
        .max()
        .map_or(0, |v| v + 1);
    if a.len() < need || b.len() < need {
        return Err(SeriesError::Arity {
            got: a.len().min(b.len()),
            need,
        });
    }
    let p = homogenize(f.num(), a, b);
    let q = homogenize(f.den(), a, b);
    if q[0].is_zero() {
        return Err(SeriesError::PoleAtOrigin);
    }
    let lead = f.den().degree() as i32 - f.num().degree() as i32;
    let n = (order - lead + 1).max(0) as usize;
    let q0 = q[0].clone();
    let mut s: Vec<F> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = p.get(k).cloned().unwrap_or_else(F::zero);
        for j in 1..=k.min(q.len() - 1) {
            acc = acc.minus(&q[j].times(&s[k - j]));
        }
        s.push(acc.over(&q0));
    }
    Ok(Laurent::new(lead, s, order))
}

/// Numeric convenience wrapper over `Q`.
pub fn series_expand_q(f: &RatFunc, a: &[Q], b: &[Q], order: i32) -> Result<Laurent<Q>, SeriesError> {
    series_expand::<Q>(f, a, b, order)
}
