//! Sparse multivariate polynomials over `Q`.
//!
//! Variables are indexed `0..`; a monomial stores its exponent vector with
//! trailing zeros trimmed so equal monomials compare equal regardless of how
//! many variables were in play when they were built.

use crate::rational::{to_pq, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().max(o.0.len());
        Monomial::new((0..n).map(|i| self.exp(i) + o.exp(i)).collect())
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if o.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (i, &x) in o.0.iter().enumerate() {
            if e[i] < x {
                return None;
            }
            e[i] -= x;
        }
        Some(Monomial::new(e))
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().min(o.0.len());
        Monomial::new((0..n).map(|i| self.0[i].min(o.0[i])).collect())
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// `l1^2*l3`, or `1` for the unit monomial.
    pub fn key(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("l{}", i + 1)
                } else {
                    format!("l{}^{}", i + 1, e)
                }
            })
            .collect();
        parts.join("*")
    }

    pub fn parse_key(s: &str) -> Option<Monomial> {
        if s == "1" {
            return Some(Monomial::one());
        }
        let mut e: Vec<u32> = Vec::new();
        for part in s.split('*') {
            let (v, p) = match part.split_once('^') {
                Some((v, p)) => (v, p.parse().ok()?),
                None => (part, 1),
            };
            let i: usize = v.strip_prefix('l')?.parse().ok()?;
            if i == 0 {
                return None;
            }
            if e.len() < i {
                e.resize(i, 0);
            }
            e[i - 1] += p;
        }
        Some(Monomial::new(e))
    }
}

/// Graded lexicographic: total degree first, then the earlier variable wins.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            let n = self.0.len().max(o.0.len());
            for i in 0..n {
                match self.exp(i).cmp(&o.exp(i)) {
                    Ordering::Equal => {}
                    c => return c,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn var(i: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(i), Q::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Dense univariate constructor: `coeffs[k]` multiplies `var^k`.
    pub fn univariate(var: usize, coeffs: &[Q]) -> Self {
        Poly::from_terms(coeffs.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; var + 1];
            e[var] = k as u32;
            (Monomial::new(e), c.clone())
        }))
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flat_map(|m| m.support().collect::<Vec<_>>()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { terms: acc }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.eval_in::<Q>(point)
    }

    /// Evaluate with variable `i` replaced by `point[i]` in any field.
    pub fn eval_in<F: crate::field::Field>(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_q(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let x = point
                        .get(i)
                        .unwrap_or_else(|| panic!("polynomial uses variable l{} but only {} values given", i + 1, point.len()));
                    t = t.times(&x.pow(e));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Substitute polynomials for variables.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&subs[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[var] -= 1;
            r.add_term(Monomial::new(ex), c * Q::from_integer(BigInt::from(e)));
        }
        r
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Q {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Q::one();
        }
        Q::new(num, den)
    }

    /// Common monomial factor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m).expect("monomial does not divide"), c.clone()))
                .collect(),
        }
    }

    /// `Some(None)` for a constant, `Some(Some(i))` if only variable `i`
    /// occurs, `None` if several do.
    pub fn sole_variable(&self) -> Option<Option<usize>> {
        let vars = self.variables();
        match vars.len() {
            0 => Some(None),
            1 => Some(Some(vars[0])),
            _ => None,
        }
    }

    fn to_dense(&self, var: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            v[m.exp(var) as usize] = c.clone();
        }
        v
    }

    /// Exact quotient if `d` divides `self`, by graded-lex long division.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            let t = m.div(&lm)?;
            let k = c / &lc;
            rem = rem.sub(&d.mul_monomial(&t).scale(&k));
            quo.add_term(t, k);
        }
        Some(quo)
    }

    /// Monic gcd of two polynomials in (at most) the same single variable.
    /// Returns `None` for genuinely multivariate input.
    pub fn gcd_univariate(&self, o: &Poly) -> Option<Poly> {
        let var = match (self.sole_variable()?, o.sole_variable()?) {
            (None, None) => return Some(Poly::one()),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) if a == b => a,
            _ => return None,
        };
        if self.is_zero() {
            return Some(make_monic(o));
        }
        if o.is_zero() {
            return Some(make_monic(self));
        }
        let g = dense_gcd(self.to_dense(var), o.to_dense(var));
        Some(Poly::univariate(var, &g))
    }

    /// Distinct rational zeros of a univariate polynomial, ascending, by the
    /// rational root test. `None` for the zero polynomial or several variables.
    pub fn rational_roots(&self) -> Option<Vec<Q>> {
        if self.is_zero() {
            return None;
        }
        let Some(var) = self.sole_variable()? else {
            return Some(vec![]);
        };
        let dense = self.to_dense(var);
        let lcm = dense.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = dense.iter().map(|c| (c * Q::from(lcm.clone())).to_integer()).collect();
        let mut roots = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap();
        if low > 0 {
            roots.push(Q::zero());
        }
        let ints = &ints[low..];
        let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
        if ints.len() > 1 {
            for p in divisors(&a0) {
                for qd in divisors(&an) {
                    for sign in [1, -1] {
                        let r = Q::new(BigInt::from(sign) * &p, qd.clone());
                        let v = dense.iter().rev().fold(Q::zero(), |acc, c| acc * &r + c);
                        if v.is_zero() {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Some(roots)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let e = n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

fn make_monic(p: &Poly) -> Poly {
    match p.leading() {
        None => Poly::zero(),
        Some((_, c)) => p.scale(&c.recip()),
    }
}

fn trim(v: &mut Vec<Q>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Euclid on dense coefficient vectors; result monic.
fn dense_gcd(mut a: Vec<Q>, mut b: Vec<Q>) -> Vec<Q> {
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = dense_rem(&a, &b);
        a = b;
        b = r;
    }
    let lc = a.last().unwrap().clone();
    a.iter().map(|c| c / &lc).collect()
}

fn dense_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while !(r.len() == 1 && r[0].is_zero()) && r.len() > db {
        let dr = r.len() - 1;
        let k = &r[dr] / lb;
        for (i, bi) in b.iter().enumerate() {
            let t = &k * bi;
            r[dr - db + i] -= t;
        }
        if r.len() > 1 {
            r.pop();
        }
        trim(&mut r);
    }
    r
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m.key())?;
            } else {
                write!(f, "{}*{}", a, m.key())?;
            }
        }
        Ok(())
    }
}

impl Poly {
    /// `{monomial key: "p/q"}` for JSON export.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (m, c) in &self.terms {
            map.insert(m.key(), serde_json::Value::String(to_pq(c)));
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Poly> {
        let obj = v.as_object()?;
        let mut p = Poly::zero();
        for (k, c) in obj {
            let m = Monomial::parse_key(k)?;
            let c = crate::rational::parse_q(c.as_str()?).ok()?;
            p.add_term(m, c);
        }
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn x() -> Poly {
        Poly::var(0)
    }

    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn arithmetic_basics() {
        let p = x().add(&Poly::one());
        let sq = p.mul(&p);
        assert_eq!(sq, x().mul(&x()).add(&x().scale(&qi(2))).add(&Poly::one()));
        assert!(p.sub(&p).is_zero());
        assert_eq!(sq.degree(), 2);
        assert_eq!(sq.eval(&[qi(3)]), qi(16));
    }

    #[test]
    fn monomial_order_is_graded() {
        let a = Monomial::new(vec![0, 2]);
        let b = Monomial::new(vec![1]);
        assert!(a > b);
        let c = Monomial::new(vec![1, 1]);
        assert!(Monomial::new(vec![2]) > c);
    }

    #[test]
    fn derivative_and_compose() {
        let p = x().pow(3).add(&x().mul(&y()));
        assert_eq!(p.derivative(0), x().pow(2).scale(&qi(3)).add(&y()));
        let shifted = p.compose(&[x().add(&Poly::one()), y()]);
        assert_eq!(shifted.eval(&[qi(1), qi(2)]), p.eval(&[qi(2), qi(2)]));
    }

    #[test]
    fn univariate_gcd() {
        let a = x().sub(&Poly::one()).mul(&x().add(&Poly::constant(qi(2))));
        let b = x().sub(&Poly::one()).mul(&x().sub(&Poly::constant(qi(5))));
        assert_eq!(a.gcd_univariate(&b).unwrap(), x().sub(&Poly::one()));
        assert!(a.gcd_univariate(&y()).is_none());
        assert_eq!(a.gcd_univariate(&Poly::constant(q(3, 2))).unwrap(), Poly::one());
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y());
        let b = x().sub(&y().scale(&qi(2)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&x().add(&Poly::one())).is_none());
    }

    #[test]
    fn json_roundtrip_and_content() {
        let p = x().scale(&q(2, 3)).add(&y().pow(2).scale(&q(-4, 9)));
        assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(p.content(), q(2, 9));
        assert_eq!(format!("{}", p), "-4/9*l2^2 + 2/3*l1");
    }

    #[test]
    fn rational_root_test() {
        // (2x - 1)(x + 3) x
        let x = Poly::var(0);
        let p = x.scale(&qi(2)).sub(&Poly::one()).mul(&x.add(&Poly::constant(qi(3)))).mul(&x);
        assert_eq!(p.rational_roots().unwrap(), vec![qi(-3), qi(0), q(1, 2)]);
        assert_eq!(x.mul(&x).add(&Poly::one()).rational_roots().unwrap(), vec![]);
        assert!(x.mul(&Poly::var(1)).rational_roots().is_none());
    }
}
