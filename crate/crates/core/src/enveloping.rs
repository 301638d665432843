//! PBW normal forms in `U(sl_n)`, the antipode, and the projection
//! `s: U(g) -> U(l)` along `n_l^- U(g) + U(g) n_l^+`.

use crate::rootdata::{GenClass, LeviDatum, RootSystem};
use dynquant_scalars::{qi, Field, Q};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

/// A total order on the basis of `g` used for PBW monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwOrder {
    position: Vec<usize>,
    levi_classes: Option<Vec<GenClass>>,
}

impl PbwOrder {
    /// Negative roots by decreasing `|height|`, Cartan, positive roots by
    /// increasing height.
    pub fn height(rs: &RootSystem) -> Self {
        let key = |a: usize| {
            let g = rs.gen(a);
            let band = if g.is_negative() {
                0
            } else if g.is_cartan() {
                1
            } else {
                2
            };
            (band, g.height, a)
        };
        Self::from_key(rs.dim(), key, None)
    }

    /// `n_l^-`, `l0^-`, Cartan, `l0^+`, `n_l^+`, each band in height order.
    /// `project_s` needs this order.
    pub fn levi(levi: &LeviDatum) -> Self {
        let rs = levi.root_system();
        let key = |a: usize| (levi.class(a), rs.gen(a).height, a);
        let classes = (0..rs.dim()).map(|a| levi.class(a)).collect();
        Self::from_key(rs.dim(), key, Some(classes))
    }

    fn from_key<K: Ord>(dim: usize, key: impl Fn(usize) -> K, levi_classes: Option<Vec<GenClass>>) -> Self {
        let mut ids: Vec<usize> = (0..dim).collect();
        ids.sort_by_key(|&a| key(a));
        let mut position = vec![0; dim];
        for (p, &a) in ids.iter().enumerate() {
            position[a] = p;
        }
        PbwOrder { position, levi_classes }
    }

    pub fn position(&self, a: usize) -> usize {
        self.position[a]
    }

    pub fn is_ordered(&self, word: &[usize]) -> bool {
        word.windows(2).all(|w| self.position[w[0]] <= self.position[w[1]])
    }
}

/// Linear combination of ordered monomials (words of basis indices).
#[derive(Clone, Debug, PartialEq)]
pub struct Pbw<F: Field> {
    terms: BTreeMap<Vec<usize>, F>,
}

impl<F: Field> Default for Pbw<F> {
    fn default() -> Self {
        Pbw { terms: BTreeMap::new() }
    }
}

impl<F: Field> Pbw<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(vec![], F::one())
    }

    pub fn monomial(word: Vec<usize>, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(word, c);
        p
    }

    pub fn add_term(&mut self, word: Vec<usize>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(v) => {
                *v = v.plus(&c);
                if v.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[usize]) -> F {
        self.terms.get(word).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&F::from_i64(-1)))
    }

    pub fn scale(&self, x: &F) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), c.times(x));
        }
        r
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Pbw<G> {
        let mut r = Pbw::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c));
        }
        r
    }
}

/// `U(g)` with a fixed PBW order. Normal forms of words are memoized.
pub struct Enveloping {
    rs: RootSystem,
    order: PbwOrder,
    memo: RefCell<HashMap<Vec<usize>, Pbw<Q>>>,
}

impl Enveloping {
    pub fn new(rs: &RootSystem, order: PbwOrder) -> Self {
        Enveloping {
            rs: rs.clone(),
            order,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn order(&self) -> &PbwOrder {
        &self.order
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Rewrite a word into PBW normal form using `ab = ba + [a, b]`.
    pub fn normal_order(&self, word: &[usize]) -> Pbw<Q> {
        if let Some(p) = self.memo.borrow().get(word) {
            return p.clone();
        }
        let out =
            match (0..word.len().saturating_sub(1)).find(|&i| self.order.position(word[i]) > self.order.position(word[i + 1])) {
                None => Pbw::monomial(word.to_vec(), qi(1)),
                Some(i) => {
                    let (a, b) = (word[i], word[i + 1]);
                    let mut swapped = word.to_vec();
                    swapped.swap(i, i + 1);
                    let mut acc = self.normal_order(&swapped);
                    for (c, k) in self.rs.bracket(a, b) {
                        let mut w = word[..i].to_vec();
                        w.push(*c);
                        w.extend_from_slice(&word[i + 2..]);
                        acc = acc.add(&self.normal_order(&w).scale(k));
                    }
                    acc
                }
            };
        self.memo.borrow_mut().insert(word.to_vec(), out.clone());
        out
    }

    pub fn mul<F: Field>(&self, x: &Pbw<F>, y: &Pbw<F>) -> Pbw<F> {
        let mut out = Pbw::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                let mut w = u.clone();
                w.extend_from_slice(v);
                let ab = a.times(b);
                for (m, k) in self.normal_order(&w).terms() {
                    out.add_term(m.clone(), ab.scale(k));
                }
            }
        }
        out
    }

    /// Normal form of an arbitrary combination of words.
    pub fn normalize<F: Field>(&self, x: &Pbw<F>) -> Pbw<F> {
        let mut out = Pbw::zero();
        for (w, c) in x.terms() {
            for (m, k) in self.normal_order(w).terms() {
                out.add_term(m.clone(), c.scale(k));
            }
        }
        out
    }

    /// `γ(x_1 .. x_k) = (-1)^k x_k .. x_1`, returned in normal form.
    pub fn antipode<F: Field>(&self, x: &Pbw<F>) -> Pbw<F> {
        let mut out = Pbw::zero();
        for (w, c) in x.terms() {
            let rev: Vec<usize> = w.iter().rev().copied().collect();
            let sign = if w.len() % 2 == 0 { c.clone() } else { c.negate() };
            for (m, k) in self.normal_order(&rev).terms() {
                out.add_term(m.clone(), sign.scale(k));
            }
        }
        out
    }

    /// Keep the monomials lying in `U(l)`. The input must be in normal form for
    /// a Levi order of the same `levi`.
    pub fn project_s<F: Field>(&self, x: &Pbw<F>, levi: &LeviDatum) -> Pbw<F> {
        let classes = self
            .order
            .levi_classes
            .as_ref()
            .expect("project_s needs a Levi-adapted PBW order");
        let rs = levi.root_system();
        assert!(
            (0..rs.dim()).all(|a| classes[a] == levi.class(a)),
            "PBW order was built for a different Levi subalgebra"
        );
        let mut out = Pbw::zero();
        for (w, c) in x.terms() {
            if w.iter().all(|&a| !matches!(classes[a], GenClass::NlMinus | GenClass::NlPlus)) {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }
}
