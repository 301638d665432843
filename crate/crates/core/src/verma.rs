//! Generalized Verma modules `M_λ = U(g) ⊗_{U(p+)} C_λ` for characters of `l`
//! trivial on `l0`, graded by c-degree, and the pairing with the opposite
//! module `M^-`.
//!
//! Elements are combinations of PBW monomials in the nilradical applied to
//! the cyclic vector. The action is computed by commuting the generator
//! through the monomial, `x y rest = y (x rest) + [x, y] rest`, with both
//! recursions memoized.

use crate::enveloping::PbwOrder;
use crate::error::{Error, Result};
use crate::repcat::Rep;
use crate::rootdata::{GenClass, GenKind, LeviDatum};
use dynquant_scalars::{Field, Matrix, RatFunc, Q};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

/// Which parabolic the module is induced from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `p+ = l + n_l^+`; basis from `U(n_l^-)`.
    Plus,
    /// `p- = l + n_l^-`; basis from `U(n_l^+)`.
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DepthPolicy {
    Strict,
    Truncate,
}

/// Ordered word of nilradical basis indices.
pub type Mono = Vec<usize>;

/// Sparse element of a Verma module.
pub type VElem<F> = BTreeMap<Mono, F>;

fn accumulate<F: Field>(acc: &mut VElem<F>, m: Mono, c: F) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(v) => {
            *v = v.plus(&c);
            if v.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c);
        }
    }
}

pub struct Verma<F: Field> {
    levi: LeviDatum,
    order: PbwOrder,
    side: Side,
    /// Values on `H_k` of the weight of the cyclic vector.
    character: Vec<F>,
    depth: usize,
    grades: Vec<Vec<Mono>>,
    lmul_memo: RefCell<HashMap<(usize, Mono), Vec<(Mono, Q)>>>,
    act_memo: RefCell<HashMap<(usize, Mono), Vec<(Mono, F)>>>,
}

impl<F: Field> Verma<F> {
    /// `M_λ` (side `Plus`) or `M^-_{λ*}` with `λ* = -λ` (side `Minus`), with
    /// `λ` in the coordinates of `c*`. The sign on the minus side makes the
    /// degree-0 pairing equal to 1.
    pub fn new(levi: &LeviDatum, lambda: &[F], side: Side, depth: usize) -> Self {
        let mut character = levi.extend_character(lambda);
        if side == Side::Minus {
            character = character.iter().map(|x| x.negate()).collect();
        }
        Self::with_character(levi, character, side, depth)
    }

    /// Cyclic vector of the given weight (values on `H_k`), which must vanish
    /// on `h ∩ l0`.
    pub fn with_character(levi: &LeviDatum, character: Vec<F>, side: Side, depth: usize) -> Self {
        let rs = levi.root_system();
        assert_eq!(character.len(), rs.rank());
        assert!(
            levi.retained().iter().all(|&k| character[k].is_zero()),
            "character must vanish on the Cartan of l0"
        );
        let order = PbwOrder::levi(levi);
        let mut v = Verma {
            levi: levi.clone(),
            order,
            side,
            character,
            depth,
            grades: Vec::new(),
            lmul_memo: RefCell::new(HashMap::new()),
            act_memo: RefCell::new(HashMap::new()),
        };
        v.grades = (0..=depth).map(|d| v.enumerate_grade(d)).collect();
        v
    }

    fn nilradical(&self) -> Vec<usize> {
        let class = match self.side {
            Side::Plus => GenClass::NlMinus,
            Side::Minus => GenClass::NlPlus,
        };
        let mut g = self.levi.gens_of(class);
        g.sort_by_key(|&a| self.order.position(a));
        g
    }

    pub(crate) fn in_nilradical(&self, a: usize) -> bool {
        match self.side {
            Side::Plus => self.levi.class(a) == GenClass::NlMinus,
            Side::Minus => self.levi.class(a) == GenClass::NlPlus,
        }
    }

    fn enumerate_grade(&self, d: usize) -> Vec<Mono> {
        let gens = self.nilradical();
        let mut out = Vec::new();
        fn rec(v: &dyn Fn(usize) -> usize, gens: &[usize], start: usize, left: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for i in start..gens.len() {
                let e = v(gens[i]);
                if e <= left {
                    cur.push(gens[i]);
                    rec(v, gens, i, left - e, cur, out);
                    cur.pop();
                }
            }
        }
        let deg = |a: usize| self.levi.c_degree(a).unsigned_abs() as usize;
        rec(&deg, &gens, 0, d, &mut vec![], &mut out);
        out
    }

    pub fn levi(&self) -> &LeviDatum {
        &self.levi
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn character(&self) -> &[F] {
        &self.character
    }

    pub fn basis(&self, d: usize) -> &[Mono] {
        &self.grades[d]
    }

    pub fn grade_dims(&self) -> Vec<usize> {
        self.grades.iter().map(|g| g.len()).collect()
    }

    pub fn grade(&self, m: &[usize]) -> usize {
        m.iter().map(|&a| self.levi.c_degree(a).unsigned_abs() as usize).sum()
    }

    /// Weight of `m` relative to the cyclic vector, as values on `H_k`.
    pub fn relative_weight(&self, m: &[usize]) -> Vec<i64> {
        let rs = self.levi.root_system();
        let mut w = vec![0; rs.rank()];
        for &a in m {
            for (x, y) in w.iter_mut().zip(&rs.gen(a).weight) {
                *x += y;
            }
        }
        w
    }

    /// `y · m` for `y` in the nilradical, inside `U(n)` (coefficients do not
    /// depend on the character).
    pub(crate) fn lmul(&self, y: usize, m: &[usize]) -> Vec<(Mono, Q)> {
        if m.is_empty() || self.order.position(y) <= self.order.position(m[0]) {
            let mut w = vec![y];
            w.extend_from_slice(m);
            return vec![(w, Q::one())];
        }
        let key = (y, m.to_vec());
        if let Some(r) = self.lmul_memo.borrow().get(&key) {
            return r.clone();
        }
        let rs = self.levi.root_system();
        let (z, rest) = (m[0], &m[1..]);
        let mut acc: VElem<Q> = BTreeMap::new();
        for (w, c) in self.lmul(y, rest) {
            for (w2, c2) in self.lmul(z, &w) {
                accumulate(&mut acc, w2, c.times(&c2));
            }
        }
        for (b, k) in rs.bracket(y, z) {
            for (w, c) in self.lmul(*b, rest) {
                accumulate(&mut acc, w, c.times(k));
            }
        }
        let out: Vec<(Mono, Q)> = acc.into_iter().collect();
        self.lmul_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// `x · (m v)` for a basis element `x` of `g`, without truncation.
    pub fn act(&self, x: usize, m: &[usize]) -> Vec<(Mono, F)> {
        if self.in_nilradical(x) {
            return self.lmul(x, m).into_iter().map(|(w, c)| (w, F::from_q(&c))).collect();
        }
        let key = (x, m.to_vec());
        if let Some(r) = self.act_memo.borrow().get(&key) {
            return r.clone();
        }
        let rs = self.levi.root_system();
        let out = if m.is_empty() {
            match rs.gen(x).kind {
                crate::rootdata::GenKind::Cartan { k } => {
                    if self.character[k].is_zero() {
                        vec![]
                    } else {
                        vec![(vec![], self.character[k].clone())]
                    }
                }
                // l0 roots and the opposite nilradical kill the cyclic vector
                _ => vec![],
            }
        } else {
            let (y, rest) = (m[0], &m[1..]);
            let mut acc: VElem<F> = BTreeMap::new();
            for (w, c) in self.act(x, rest) {
                for (w2, c2) in self.lmul(y, &w) {
                    accumulate(&mut acc, w2, c.scale(&c2));
                }
            }
            for (b, k) in rs.bracket(x, y) {
                for (w, c) in self.act(*b, rest) {
                    accumulate(&mut acc, w, c.scale(k));
                }
            }
            acc.into_iter().collect()
        };
        self.act_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// Action on an element, applying the depth policy.
    pub fn act_elem(&self, x: usize, v: &VElem<F>, policy: DepthPolicy) -> Result<VElem<F>> {
        let mut acc = BTreeMap::new();
        for (m, c) in v {
            for (w, k) in self.act(x, m) {
                if self.grade(&w) > self.depth {
                    match policy {
                        DepthPolicy::Strict => return Err(Error::DepthExceeded { depth: self.depth }),
                        DepthPolicy::Truncate => continue,
                    }
                }
                accumulate(&mut acc, w, c.times(&k));
            }
        }
        Ok(acc)
    }

    /// Action of an element `Σ c_a x_a` of `g`.
    pub fn act_lie(&self, x: &[(usize, Q)], v: &VElem<F>, policy: DepthPolicy) -> Result<VElem<F>> {
        let mut acc = BTreeMap::new();
        for (a, c) in x {
            for (m, k) in self.act_elem(*a, v, policy)? {
                accumulate(&mut acc, m, k.scale(c));
            }
        }
        Ok(acc)
    }

    /// `⟨u1 x*, u2 x⟩ = χ(s(γ(u1) u2))` for `u1` a word in `n_l^+` and `u2` a
    /// word in `n_l^-`, computed as the cyclic coefficient of `γ(u1) u2 x`.
    /// Side `Plus` only.
    pub fn pairing(&self, u1: &[usize], u2: &[usize]) -> F {
        assert_eq!(self.side, Side::Plus, "pairing is evaluated on the plus side");
        let mut v: VElem<F> = BTreeMap::new();
        v.insert(u2.to_vec(), F::one());
        for &y in u1 {
            v = self.act_elem(y, &v, DepthPolicy::Truncate).expect("truncation never fails");
        }
        let c = v.get(&Vec::new()).cloned().unwrap_or_else(F::zero);
        if u1.len().is_multiple_of(2) {
            c
        } else {
            c.negate()
        }
    }

    /// Gram matrix in grade `d`: rows are `n_l^+` monomials, columns `n_l^-`
    /// monomials, both in PBW order.
    pub fn gram(&self, d: usize) -> Matrix<F> {
        assert_eq!(self.side, Side::Plus);
        let dual: Verma<F> = Verma::with_character(&self.levi, vec![F::zero(); self.character.len()], Side::Minus, d);
        let rows = dual.basis(d).to_vec();
        let cols = self.basis(d).to_vec();
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.pairing(&rows[r], &cols[c]))
    }

    pub fn genericity_certificate(&self) -> Certificate<F> {
        let dets: Vec<F> = (0..=self.depth).map(|d| self.gram(d).determinant()).collect();
        let nonzero = dets.iter().all(|d| !d.is_zero());
        Certificate { dets, nonzero }
    }
}

/// Gram determinants up to the module depth.
#[derive(Clone, Debug)]
pub struct Certificate<F: Field> {
    pub dets: Vec<F>,
    /// Every determinant is nonzero (identically nonzero when symbolic).
    pub nonzero: bool,
}

impl Certificate<RatFunc> {
    /// Rational zeros of the determinants when they are univariate; `None`
    /// for several variables.
    pub fn excluded_points(&self) -> Option<Vec<Q>> {
        let mut pts = Vec::new();
        for d in &self.dets {
            pts.extend(d.num().rational_roots()?);
        }
        pts.sort();
        pts.dedup();
        Some(pts)
    }
}

/// A finite-dimensional `l`-module with a weight basis, the base of an
/// induced module. Weights are relative to a common offset (the character
/// `λ̂`, which is carried by the Cartan matrices).
#[derive(Clone, Debug)]
pub struct LeviModule<F: Field> {
    weights: Vec<Vec<i64>>,
    /// c-character of each basis vector.
    c_characters: Vec<Vec<F>>,
    /// Action of each basis element of `l`.
    action: BTreeMap<usize, Matrix<F>>,
}

impl<F: Field> LeviModule<F> {
    /// `C_λ ⊗ A`, with `A` a `g`-module restricted to `l`.
    pub fn twisted(levi: &LeviDatum, lambda: &[F], a: &Rep) -> Self {
        let rs = levi.root_system();
        let lam_hat = levi.extend_character(lambda);
        let mut action = BTreeMap::new();
        for x in 0..rs.dim() {
            match levi.class(x) {
                GenClass::L0Minus | GenClass::L0Plus => {
                    action.insert(x, a.matrix(x).map(F::from_q));
                }
                GenClass::Cartan => {
                    let GenKind::Cartan { k } = rs.gen(x).kind else {
                        unreachable!()
                    };
                    let m = Matrix::from_fn(a.dim(), a.dim(), |i, j| {
                        let base = F::from_q(a.matrix(x).get(i, j));
                        if i == j {
                            base.plus(&lam_hat[k])
                        } else {
                            base
                        }
                    });
                    action.insert(x, m);
                }
                _ => {}
            }
        }
        LeviModule {
            weights: a.weights().to_vec(),
            c_characters: a
                .weights()
                .iter()
                .map(|w| {
                    lambda
                        .iter()
                        .zip(levi.c_coords(w))
                        .map(|(l, n)| l.plus(&F::from_q(&n)))
                        .collect()
                })
                .collect(),
            action,
        }
    }

    /// The character `C_λ`.
    pub fn scalar(levi: &LeviDatum, lambda: &[F]) -> Self {
        Self::twisted(levi, lambda, &Rep::trivial(levi.root_system()))
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    pub fn c_characters(&self) -> &[Vec<F>] {
        &self.c_characters
    }

    pub fn action(&self, x: usize) -> Option<&Matrix<F>> {
        self.action.get(&x)
    }
}

/// `M_X = U(g) ⊗_{U(p+)} X` for a finite-dimensional `l`-module `X`, with
/// `n_l^+` acting on `X` by zero. Elements are keyed by (monomial, basis
/// index of `X`).
pub struct Induced<F: Field> {
    base: LeviModule<F>,
    shape: Verma<F>,
    memo: RefCell<HashMap<(usize, Mono), Vec<(Mono, Matrix<F>)>>>,
}

impl<F: Field> Induced<F> {
    pub fn new(levi: &LeviDatum, base: LeviModule<F>, depth: usize) -> Self {
        let zero = vec![F::zero(); levi.root_system().rank()];
        Induced {
            base,
            shape: Verma::with_character(levi, zero, Side::Plus, depth),
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &LeviModule<F> {
        &self.base
    }

    pub fn basis(&self, d: usize) -> &[Mono] {
        self.shape.basis(d)
    }

    pub fn grade(&self, m: &[usize]) -> usize {
        self.shape.grade(m)
    }

    pub fn relative_weight(&self, m: &[usize]) -> Vec<i64> {
        self.shape.relative_weight(m)
    }

    /// `x · (m ⊗ ξ) = Σ m' ⊗ A ξ` as the list of `(m', A)`. Every `A` has
    /// entries of degree at most one in `λ`: the recursion reaches the base
    /// module once per term.
    pub fn act(&self, x: usize, m: &[usize]) -> Vec<(Mono, Matrix<F>)> {
        let n = self.base.dim();
        if self.shape.in_nilradical(x) {
            return self
                .shape
                .lmul(x, m)
                .into_iter()
                .map(|(w, c)| (w, Matrix::<F>::identity(n).scale(&F::from_q(&c))))
                .collect();
        }
        let key = (x, m.to_vec());
        if let Some(r) = self.memo.borrow().get(&key) {
            return r.clone();
        }
        let rs = self.shape.levi().root_system();
        let out = if m.is_empty() {
            match self.base.action(x) {
                Some(a) if !a.is_zero() => vec![(vec![], a.clone())],
                _ => vec![],
            }
        } else {
            let (y, rest) = (m[0], &m[1..]);
            let mut acc: BTreeMap<Mono, Matrix<F>> = BTreeMap::new();
            let mut add = |w: Mono, a: Matrix<F>| {
                let e = acc.entry(w).or_insert_with(|| Matrix::<F>::zeros(n, n));
                *e = e.add(&a);
            };
            for (w, a) in self.act(x, rest) {
                for (w2, c) in self.shape.lmul(y, &w) {
                    add(w2, a.scale(&F::from_q(&c)));
                }
            }
            for (b, k) in rs.bracket(x, y) {
                for (w, a) in self.act(*b, rest) {
                    add(w, a.scale(&F::from_q(k)));
                }
            }
            acc.into_iter().filter(|(_, a)| !a.is_zero()).collect()
        };
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootSystem;
    use dynquant_scalars::{q, qi};

    fn sl2_levi() -> LeviDatum {
        LeviDatum::new(&RootSystem::sl(2).unwrap(), &[]).unwrap()
    }

    #[test]
    fn grade_dimensions() {
        let v: Verma<Q> = Verma::new(&sl2_levi(), &[q(1, 2)], Side::Plus, 4);
        assert_eq!(v.grade_dims(), vec![1, 1, 1, 1, 1]);
        let g3 = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g3, &[0]).unwrap();
        let v: Verma<Q> = Verma::new(&l, &[q(1, 3)], Side::Plus, 4);
        // oracle: monomials in two commuting degree-1 generators
        let oracle: Vec<usize> = (0..=4).map(|d| d + 1).collect();
        assert_eq!(v.grade_dims(), oracle);
        let v0: Verma<Q> = Verma::new(&l, &[q(1, 3)], Side::Plus, 0);
        assert_eq!(v0.grade_dims(), vec![1]);
    }

    #[test]
    fn sl2_actions() {
        let l = sl2_levi();
        let g = l.root_system().clone();
        let lam = RatFunc::var(0);
        let v: Verma<RatFunc> = Verma::new(&l, std::slice::from_ref(&lam), Side::Plus, 3);
        let (e, f, h) = (g.e(0), g.f(0), g.h(0));
        assert!(v.act(e, &[]).is_empty());
        let two = RatFunc::from_i64(2);
        assert_eq!(v.act(h, &[f]), vec![(vec![f], lam.minus(&two))]);
        // oracle: e f^2 = f^2 e + 2 f h - 2 f
        assert_eq!(v.act(e, &[f, f]), vec![(vec![f], two.times(&lam).minus(&two))]);
        let top: VElem<RatFunc> = [(vec![f, f, f], RatFunc::one())].into_iter().collect();
        assert!(matches!(
            v.act_elem(f, &top, DepthPolicy::Strict),
            Err(Error::DepthExceeded { depth: 3 })
        ));
        assert!(v.act_elem(f, &top, DepthPolicy::Truncate).unwrap().is_empty());
    }

    #[test]
    fn pairing_values() {
        let l = sl2_levi();
        let g = l.root_system().clone();
        let lam = RatFunc::var(0);
        let v: Verma<RatFunc> = Verma::new(&l, std::slice::from_ref(&lam), Side::Plus, 3);
        assert_eq!(v.pairing(&[], &[]), RatFunc::one());
        assert!(v.pairing(&[g.e(0)], &[]).is_zero());
        // ⟨e x*, f x⟩ = χ(s(-e f)) = -λ: vanishes exactly at λ = 0
        assert_eq!(v.pairing(&[g.e(0)], &[g.f(0)]), lam.negate());
    }

    #[test]
    fn pairing_matches_pbw_projection() {
        use crate::enveloping::{Enveloping, Pbw};
        let g = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g, &[0]).unwrap();
        let lam = [q(2, 7)];
        let v: Verma<Q> = Verma::new(&l, &lam, Side::Plus, 2);
        let env = Enveloping::new(&g, PbwOrder::levi(&l));
        let chi = l.extend_character(&lam);
        let dual: Verma<Q> = Verma::new(&l, &lam, Side::Minus, 2);
        for d in 0..=2 {
            for u1 in dual.basis(d) {
                for u2 in v.basis(d) {
                    let x = env.mul(
                        &env.antipode(&Pbw::monomial(u1.clone(), qi(1))),
                        &Pbw::monomial(u2.clone(), qi(1)),
                    );
                    let s = env.project_s(&x, &l);
                    // χ on U(l): zero on l0 roots, λ̂ on the Cartan
                    let mut val = Q::zero();
                    for (w, c) in s.terms() {
                        let mut t = c.clone();
                        for &a in w {
                            match g.gen(a).kind {
                                crate::rootdata::GenKind::Cartan { k } => t *= &chi[k],
                                _ => t = Q::zero(),
                            }
                        }
                        val += t;
                    }
                    assert_eq!(v.pairing(u1, u2), val);
                }
            }
        }
    }

    #[test]
    fn module_relations_and_contravariance() {
        let g = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g, &[0]).unwrap();
        let lam = [q(3, 5)];
        let depth = 3;
        let plus: Verma<Q> = Verma::new(&l, &lam, Side::Plus, depth);
        let minus: Verma<Q> = Verma::new(&l, &lam, Side::Minus, depth);
        for d in 0..depth {
            for m in plus.basis(d) {
                let v: VElem<Q> = [(m.clone(), qi(1))].into_iter().collect();
                for x in 0..g.dim() {
                    for y in 0..g.dim() {
                        let p = DepthPolicy::Truncate;
                        let xy = plus.act_elem(x, &plus.act_elem(y, &v, p).unwrap(), p).unwrap();
                        let yx = plus.act_elem(y, &plus.act_elem(x, &v, p).unwrap(), p).unwrap();
                        let br = plus.act_lie(g.bracket(x, y), &v, p).unwrap();
                        // compare only below the truncation edge
                        for (w, c) in &br {
                            if plus.grade(w) + 2 <= depth {
                                let lhs = xy.get(w).cloned().unwrap_or_default() - yx.get(w).cloned().unwrap_or_default();
                                assert_eq!(&lhs, c);
                            }
                        }
                    }
                }
            }
        }
        // ⟨z a, b⟩ + ⟨a, z b⟩ = 0
        let pair = |a: &VElem<Q>, b: &VElem<Q>| -> Q {
            let mut s = Q::zero();
            for (u1, c1) in a {
                for (u2, c2) in b {
                    s += c1 * c2 * plus.pairing(u1, u2);
                }
            }
            s
        };
        for d in 0..depth {
            for a in minus.basis(d) {
                let av: VElem<Q> = [(a.clone(), qi(1))].into_iter().collect();
                for e in [d.saturating_sub(1), d, d + 1] {
                    if e > depth - 1 {
                        continue;
                    }
                    for b in plus.basis(e) {
                        let bv: VElem<Q> = [(b.clone(), qi(1))].into_iter().collect();
                        for z in 0..g.dim() {
                            let za = minus.act_elem(z, &av, DepthPolicy::Truncate).unwrap();
                            let zb = plus.act_elem(z, &bv, DepthPolicy::Truncate).unwrap();
                            assert_eq!(pair(&za, &bv) + pair(&av, &zb), Q::zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn certificates() {
        let l = sl2_levi();
        let sym: Verma<RatFunc> = Verma::new(&l, &[RatFunc::var(0)], Side::Plus, 3);
        let cert = sym.genericity_certificate();
        assert!(cert.nonzero);
        // oracle: det G_d = Π_{k=1..d} (-k)(λ - k + 1)
        let lam = RatFunc::var(0);
        for d in 0..=3i64 {
            let mut expect = RatFunc::one();
            for k in 1..=d {
                expect = expect
                    .times(&RatFunc::from_i64(-k))
                    .times(&lam.minus(&RatFunc::from_i64(k - 1)));
            }
            assert_eq!(cert.dets[d as usize], expect);
        }
        assert_eq!(cert.excluded_points().unwrap(), vec![qi(0), qi(1), qi(2)]);
        let num: Verma<Q> = Verma::new(&l, &[q(1, 2)], Side::Plus, 3);
        assert!(num.genericity_certificate().nonzero);
        let zero_depth: Verma<Q> = Verma::new(&l, &[qi(0)], Side::Plus, 0);
        assert!(zero_depth.genericity_certificate().nonzero);
    }
}
