//! Matrix coefficients `A(G) = ⊕_E E ⊗ E*`, the dynamical product
//! `a ∗_λ b = m(F^λ(a ⊗ b))` with the twist acting on the `E*` slots, and
//! its expansion along `λ/t` into star products on coadjoint orbits and
//! their line bundles.
//!
//! An element is stored blockwise: for the irreducible `E` of highest
//! weight `Λ`, the matrix `C` stands for `Σ C[i][j] e_i ⊗ e^j`. `ρ1` acts on
//! the row index, `ρ2` (the dual representation) on the column index.
//!
//! An element whose `ρ2`-part spans a copy of the character `C_α` of `l`
//! shifts the base: `(a ∗_λ b) ∗_λ c = a ∗_λ (b ∗_{λ+α} c)`. Invariant
//! elements (`α = 0`) form an associative algebra.

use crate::error::{Error, Result};
use crate::repcat::{cg_projections, dual, irrep, CgBlock, Rep};
use crate::rootdata::{GenClass, LeviDatum, RootSystem};
use crate::twist::{dynamical_twist, levi_basis, required_depth};
use dynquant_scalars::{series_expand, Field, Matrix, RatFunc, Q};
use serde_json::{json, Value};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

type Highest = Vec<i64>;

#[derive(Clone, Debug, PartialEq)]
pub struct Element<F: Field> {
    blocks: BTreeMap<Highest, Matrix<F>>,
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Element { blocks: BTreeMap::new() }
    }

    pub fn blocks(&self) -> &BTreeMap<Highest, Matrix<F>> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    fn add_block(&mut self, key: &[i64], m: Matrix<F>) {
        let next = match self.blocks.get(key) {
            Some(x) => x.add(&m),
            None => m,
        };
        if next.is_zero() {
            self.blocks.remove(key);
        } else {
            self.blocks.insert(key.to_vec(), next);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, m) in &o.blocks {
            out.add_block(k, m.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&F::from_i64(-1)))
    }

    pub fn scale(&self, x: &F) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        Element {
            blocks: self.blocks.iter().map(|(k, m)| (k.clone(), m.scale(x))).collect(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Element<G> {
        let mut out = Element::zero();
        for (k, m) in &self.blocks {
            out.add_block(k, m.map(&f));
        }
        out
    }

    /// First block and entry where `self` and `o` differ.
    pub fn first_difference(&self, o: &Self) -> Option<(Highest, usize, usize)> {
        let d = self.sub(o);
        let (k, m) = d.blocks.iter().next()?;
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m.get(r, c).is_zero() {
                    return Some((k.clone(), r, c));
                }
            }
        }
        None
    }
}

impl Element<Q> {
    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|(k, m)| {
                let entries: Vec<Vec<String>> = (0..m.rows())
                    .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
                    .collect();
                json!({"highest": k, "entries": entries})
            })
            .collect();
        json!(blocks)
    }
}

#[derive(Clone, Debug)]
struct Block {
    rep: Rep,
    dual: Rep,
}

/// The blocks `E_Λ ⊗ E_Λ*` for an enumerated set of highest weights, with
/// Clebsch–Gordan tables computed on demand.
#[derive(Debug)]
pub struct MatrixCoeffAlgebra {
    rs: RootSystem,
    blocks: BTreeMap<Highest, Block>,
    cg: RefCell<HashMap<(Highest, Highest), Rc<Vec<CgBlock>>>>,
}

pub fn build_ag(rs: &RootSystem, highest: &[Vec<i64>]) -> Result<MatrixCoeffAlgebra> {
    let mut blocks = BTreeMap::new();
    let zero = vec![0; rs.rank()];
    for w in highest.iter().chain(std::iter::once(&zero)) {
        let rep = irrep(rs, w)?;
        let dual = dual(&rep);
        blocks.insert(w.clone(), Block { rep, dual });
    }
    Ok(MatrixCoeffAlgebra {
        rs: rs.clone(),
        blocks,
        cg: RefCell::new(HashMap::new()),
    })
}

impl MatrixCoeffAlgebra {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn highest_weights(&self) -> impl Iterator<Item = &Highest> {
        self.blocks.keys()
    }

    fn block(&self, w: &[i64]) -> Result<&Block> {
        self.blocks.get(w).ok_or_else(|| Error::NotClosed(w.to_vec()))
    }

    pub fn rep(&self, w: &[i64]) -> Result<&Rep> {
        Ok(&self.block(w)?.rep)
    }

    pub fn dual_rep(&self, w: &[i64]) -> Result<&Rep> {
        Ok(&self.block(w)?.dual)
    }

    /// Dimension of the enumerated part, `Σ (dim E)^2`.
    pub fn dim(&self) -> usize {
        self.blocks.values().map(|b| b.rep.dim() * b.rep.dim()).sum()
    }

    pub fn unit<F: Field>(&self) -> Element<F> {
        let mut e = Element::zero();
        e.add_block(&vec![0; self.rs.rank()], Matrix::identity(1));
        e
    }

    /// `e_i ⊗ e^j` in the block `Λ`.
    pub fn basis_element<F: Field>(&self, w: &[i64], i: usize, j: usize) -> Result<Element<F>> {
        let d = self.rep(w)?.dim();
        if i >= d || j >= d {
            return Err(Error::Shape(format!("index ({i},{j}) outside a block of dimension {d}")));
        }
        let mut m = Matrix::zeros(d, d);
        m.set(i, j, F::one());
        let mut e = Element::zero();
        e.add_block(w, m);
        Ok(e)
    }

    /// `Σ v_i φ_j e_i ⊗ e^j`.
    pub fn pure<F: Field>(&self, w: &[i64], v: &[F], phi: &[F]) -> Result<Element<F>> {
        let d = self.rep(w)?.dim();
        if v.len() != d || phi.len() != d {
            return Err(Error::Shape(format!(
                "vectors of length {}, {} in a block of dimension {d}",
                v.len(),
                phi.len()
            )));
        }
        let mut e = Element::zero();
        e.add_block(w, Matrix::from_fn(d, d, |i, j| v[i].times(&phi[j])));
        Ok(e)
    }

    fn cg(&self, a: &[i64], b: &[i64]) -> Result<Rc<Vec<CgBlock>>> {
        let key = (a.to_vec(), b.to_vec());
        if let Some(t) = self.cg.borrow().get(&key) {
            return Ok(t.clone());
        }
        let t = Rc::new(cg_projections(&self.rs, self.rep(a)?, self.rep(b)?));
        for blk in t.iter() {
            let h = blk.rep.highest().expect("irreducible summand");
            self.block(h)?;
        }
        self.cg.borrow_mut().insert(key, t.clone());
        Ok(t)
    }

    /// `m((1 ⊗ T)(a ⊗ b))` where `T(Λ1, Λ2)` acts on `E1* ⊗ E2*`; `None`
    /// stands for the identity.
    pub fn product_with<F: Field>(
        &self,
        a: &Element<F>,
        b: &Element<F>,
        mut twist: impl FnMut(&[i64], &[i64]) -> Result<Option<Matrix<F>>>,
    ) -> Result<Element<F>> {
        let mut out = Element::zero();
        for (k1, c1) in &a.blocks {
            for (k2, c2) in &b.blocks {
                let mut t = c1.kron(c2);
                if let Some(f) = twist(k1, k2)? {
                    t = t.mul(&f.transpose());
                }
                if t.is_zero() {
                    continue;
                }
                for blk in self.cg(k1, k2)?.iter() {
                    let proj: Matrix<F> = blk.proj.map(F::from_q);
                    let inj: Matrix<F> = blk.inj.map(F::from_q);
                    out.add_block(blk.rep.highest().expect("irreducible summand"), proj.mul(&t).mul(&inj));
                }
            }
        }
        Ok(out)
    }

    /// Pointwise product of functions on `G`.
    pub fn classical_product<F: Field>(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>> {
        self.product_with(a, b, |_, _| Ok(None))
    }

    /// `a ∗_λ b`.
    pub fn dyn_product<F: Field>(&self, levi: &LeviDatum, lambda: &[F], a: &Element<F>, b: &Element<F>) -> Result<Element<F>> {
        let mut cache: HashMap<(Highest, Highest), Matrix<F>> = HashMap::new();
        self.product_with(a, b, |k1, k2| {
            let key = (k1.to_vec(), k2.to_vec());
            if let Some(m) = cache.get(&key) {
                return Ok(Some(m.clone()));
            }
            let (d1, d2) = (self.dual_rep(k1)?, self.dual_rep(k2)?);
            let f = dynamical_twist(levi, d1, d2, lambda, required_depth(levi, d1, d2))?.matrix;
            cache.insert(key, f.clone());
            Ok(Some(f))
        })
    }

    /// `ρ1(x) a`: `x` acts on the `E` slot.
    pub fn rho1<F: Field>(&self, x: usize, a: &Element<F>) -> Result<Element<F>> {
        let mut out = Element::zero();
        for (k, c) in &a.blocks {
            out.add_block(k, self.rep(k)?.matrix(x).map(F::from_q).mul(c));
        }
        Ok(out)
    }

    /// `ρ2(x) a`: `x` acts on the `E*` slot.
    pub fn rho2<F: Field>(&self, x: usize, a: &Element<F>) -> Result<Element<F>> {
        let mut out = Element::zero();
        for (k, c) in &a.blocks {
            out.add_block(k, c.mul(&self.dual_rep(k)?.matrix(x).map(F::from_q).transpose()));
        }
        Ok(out)
    }

    /// The character `α ∈ c*` of an element whose `E*` part spans a copy of
    /// `C_α`: `l0` acts by zero and every column has c-weight `α`.
    pub fn section_character<F: Field>(&self, levi: &LeviDatum, a: &Element<F>) -> Result<Vec<Q>> {
        let mut alpha: Option<Vec<Q>> = None;
        for (k, c) in &a.blocks {
            let d = self.dual_rep(k)?;
            for j in 0..c.cols() {
                if (0..c.rows()).all(|i| c.get(i, j).is_zero()) {
                    continue;
                }
                let w = levi.c_coords(d.weight(j));
                match &alpha {
                    None => alpha = Some(w),
                    Some(x) if *x != w => return Err(Error::Shape("element mixes c-weights in its E* slot".into())),
                    _ => {}
                }
            }
        }
        for x in levi_basis(levi) {
            if matches!(levi.class(x), GenClass::L0Plus | GenClass::L0Minus) && !self.rho2(x, a)?.is_zero() {
                return Err(Error::Shape("E* slot is not l0-invariant".into()));
            }
        }
        Ok(alpha.unwrap_or_else(|| vec![Q::zero(); levi.r()]))
    }
}

/// First entry where two sides of a law differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    /// Power of `t`; 0 for a fixed `λ`.
    pub order: usize,
    pub block: Highest,
    pub entry: (usize, usize),
    /// `lhs - rhs` at that entry.
    pub residual: Q,
}

impl Mismatch {
    fn between(order: usize, lhs: &Element<Q>, rhs: &Element<Q>) -> Option<Self> {
        lhs.first_difference(rhs).map(|(block, i, j)| {
            let at = |e: &Element<Q>| e.blocks.get(&block).map_or_else(Q::zero, |m| m.get(i, j).clone());
            Mismatch {
                order,
                residual: at(lhs) - at(rhs),
                block,
                entry: (i, j),
            }
        })
    }
}

/// Outcome of an associativity-type law.
#[derive(Clone, Debug)]
pub struct LawReport {
    pub law: String,
    /// Number of instances checked.
    pub cases: usize,
    pub failure: Option<Mismatch>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn describe(&self) -> String {
        match &self.failure {
            None => format!("{} holds on {} cases", self.law, self.cases),
            Some(m) => format!(
                "{} violated at order t^{}, block {:?}, entry ({},{}), residual {}",
                self.law, m.order, m.block, m.entry.0, m.entry.1, m.residual
            ),
        }
    }
}

/// `(a ∗_λ b) ∗_λ c = a ∗_λ (b ∗_{λ+α} c)` with `α` the character of `a`.
pub fn check_shifted_associativity(
    alg: &MatrixCoeffAlgebra,
    levi: &LeviDatum,
    lambda: &[Q],
    a: &Element<Q>,
    b: &Element<Q>,
    c: &Element<Q>,
) -> Result<LawReport> {
    let alpha = alg.section_character(levi, a)?;
    let shifted: Vec<Q> = lambda.iter().zip(&alpha).map(|(l, x)| l + x).collect();
    let lhs = alg.dyn_product(levi, lambda, &alg.dyn_product(levi, lambda, a, b)?, c)?;
    let rhs = alg.dyn_product(levi, lambda, a, &alg.dyn_product(levi, &shifted, b, c)?)?;
    Ok(LawReport {
        law: "shifted associativity".into(),
        cases: 1,
        failure: Mismatch::between(0, &lhs, &rhs),
    })
}

/// A truncated series `Σ_k t^k a_k`.
pub type Series = Vec<Element<Q>>;

/// `∗` along the path `λ(t)/t = λ0/t + λ1`, truncated at `t^order`. The
/// twist is computed once symbolically and expanded per block pair.
#[derive(Clone)]
pub struct StarProduct<'a> {
    alg: &'a MatrixCoeffAlgebra,
    levi: LeviDatum,
    lambda0: Vec<Q>,
    lambda1: Vec<Q>,
    order: usize,
    symbolic: Rc<RefCell<HashMap<(Highest, Highest), Matrix<RatFunc>>>>,
    expanded: Rc<RefCell<HashMap<(Highest, Highest), Rc<Vec<Matrix<Q>>>>>>,
}

impl<'a> StarProduct<'a> {
    pub fn new(alg: &'a MatrixCoeffAlgebra, levi: &LeviDatum, lambda0: &[Q], lambda1: &[Q], order: usize) -> Result<Self> {
        if lambda0.len() != levi.r() || lambda1.len() != levi.r() {
            return Err(Error::Shape(format!("path coordinates must have length {}", levi.r())));
        }
        Ok(StarProduct {
            alg,
            levi: levi.clone(),
            lambda0: lambda0.to_vec(),
            lambda1: lambda1.to_vec(),
            order,
            symbolic: Rc::new(RefCell::new(HashMap::new())),
            expanded: Rc::new(RefCell::new(HashMap::new())),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The same path moved by `α`: `λ(t)/t + α`.
    pub fn shifted(&self, alpha: &[Q]) -> Self {
        let mut s = self.clone();
        s.lambda1 = self.lambda1.iter().zip(alpha).map(|(l, a)| l + a).collect();
        s.expanded = Rc::new(RefCell::new(HashMap::new()));
        s
    }

    /// Taylor coefficients of `F^{E1*,E2*}(λ0/t + λ1)`.
    fn twist_series(&self, k1: &[i64], k2: &[i64]) -> Result<Rc<Vec<Matrix<Q>>>> {
        let key = (k1.to_vec(), k2.to_vec());
        if let Some(s) = self.expanded.borrow().get(&key) {
            return Ok(s.clone());
        }
        let sym = {
            let cached = self.symbolic.borrow().get(&key).cloned();
            match cached {
                Some(m) => m,
                None => {
                    let (d1, d2) = (self.alg.dual_rep(k1)?, self.alg.dual_rep(k2)?);
                    let lambda: Vec<RatFunc> = (0..self.levi.r()).map(RatFunc::var).collect();
                    let m = dynamical_twist(&self.levi, d1, d2, &lambda, required_depth(&self.levi, d1, d2))?.matrix;
                    self.symbolic.borrow_mut().insert(key.clone(), m.clone());
                    m
                }
            }
        };
        let n = sym.rows();
        let mut out = vec![Matrix::<Q>::zeros(n, n); self.order + 1];
        for r in 0..n {
            for c in 0..n {
                let x = sym.get(r, c);
                if x.is_zero() {
                    continue;
                }
                let s = series_expand(x, &self.lambda0, &self.lambda1, self.order as i32).map_err(|_| Error::PoleAtOrigin)?;
                if s.principal_degree() > 0 {
                    return Err(Error::PoleAtOrigin);
                }
                for (k, m) in out.iter_mut().enumerate() {
                    m.set(r, c, s.coeff(k as i32));
                }
            }
        }
        if !out[0].is_identity() {
            return Err(Error::Shape("twist does not start at the identity".into()));
        }
        let out = Rc::new(out);
        self.expanded.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// The `t^k` coefficient of `a ∗ b` for plain elements.
    fn coefficient(&self, a: &Element<Q>, b: &Element<Q>, k: usize) -> Result<Element<Q>> {
        if k == 0 {
            return self.alg.classical_product(a, b);
        }
        self.alg
            .product_with(a, b, |k1, k2| Ok(Some(self.twist_series(k1, k2)?[k].clone())))
    }

    /// `a ∗ b` for plain elements, as a series.
    pub fn star(&self, a: &Element<Q>, b: &Element<Q>) -> Result<Series> {
        (0..=self.order).map(|k| self.coefficient(a, b, k)).collect()
    }

    /// `a ∗ b` for series, truncated at `t^order`.
    pub fn star_series(&self, a: &[Element<Q>], b: &[Element<Q>]) -> Result<Series> {
        let mut out = vec![Element::zero(); self.order + 1];
        for (i, x) in a.iter().enumerate().take(self.order + 1) {
            for (j, y) in b.iter().enumerate().take(self.order + 1 - i) {
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                for (k, slot) in out.iter_mut().enumerate().skip(i + j) {
                    *slot = slot.add(&self.coefficient(x, y, k - i - j)?);
                }
            }
        }
        Ok(out)
    }

    /// `(a ∗ b) ∗ c` against `a ∗ (b ∗' c)` with `∗'` the path shifted by
    /// `alpha` (the character of `a` when `None`).
    pub fn shifted_associativity(
        &self,
        a: &Element<Q>,
        b: &Element<Q>,
        c: &Element<Q>,
        alpha: Option<&[Q]>,
    ) -> Result<Option<Mismatch>> {
        let alpha = match alpha {
            Some(x) => x.to_vec(),
            None => self.alg.section_character(&self.levi, a)?,
        };
        let inner = self.shifted(&alpha);
        let lhs = self.star_series(&self.star(a, b)?, std::slice::from_ref(c))?;
        let rhs = self.star_series(std::slice::from_ref(a), &inner.star(b, c)?)?;
        Ok(first_series_difference(&lhs, &rhs))
    }
}

fn first_series_difference(a: &[Element<Q>], b: &[Element<Q>]) -> Option<Mismatch> {
    a.iter().zip(b).enumerate().find_map(|(k, (x, y))| Mismatch::between(k, x, y))
}

/// Basis of `A(G)[0]` within the blocks `highest`: `e_i ⊗ φ` with `φ`
/// running over a basis of the `l`-invariants in `E*`.
pub fn invariant_basis(alg: &MatrixCoeffAlgebra, levi: &LeviDatum, highest: &[Highest]) -> Result<Vec<Element<Q>>> {
    let mut out = Vec::new();
    for w in highest {
        let d = alg.dual_rep(w)?;
        let n = d.dim();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for x in levi_basis(levi) {
            let m = d.matrix(x);
            rows.extend((0..n).map(|r| m.row(r).to_vec()));
        }
        let phis = if rows.is_empty() {
            (0..n).map(|j| unit(n, j)).collect()
        } else {
            Matrix::from_rows(rows).kernel()
        };
        for phi in &phis {
            for i in 0..n {
                out.push(alg.pure(w, &unit(n, i), phi)?);
            }
        }
    }
    Ok(out)
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
}

/// `(a ∗ b) ∗ c = a ∗ (b ∗ c)` at every order up to the truncation, over all
/// triples from `elements`, which must have character zero.
pub fn check_star_associativity(star: &StarProduct, elements: &[Element<Q>]) -> Result<LawReport> {
    let zero = vec![Q::zero(); star.levi.r()];
    for a in elements {
        if star.alg.section_character(&star.levi, a)? != zero {
            return Err(Error::Shape("element is not invariant".into()));
        }
    }
    let products: Vec<Vec<Series>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| star.star(a, b)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut report = LawReport {
        law: "associativity of ∗".into(),
        cases: 0,
        failure: None,
    };
    for (i, a) in elements.iter().enumerate() {
        for (j, _) in elements.iter().enumerate() {
            for (k, c) in elements.iter().enumerate() {
                report.cases += 1;
                let lhs = star.star_series(&products[i][j], std::slice::from_ref(c))?;
                let rhs = star.star_series(std::slice::from_ref(a), &products[j][k])?;
                if let Some(f) = first_series_difference(&lhs, &rhs) {
                    report.failure = Some(f);
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Left and right laws for sections of line bundles.
#[derive(Clone, Debug)]
pub struct BundleReport {
    /// `(a ∗ x) ∗ y = a ∗ (x ∗ y)` for invariant `a`.
    pub left: LawReport,
    /// `(s ∗ a) ∗ b = s ∗ (a ∗_{+α} b)` for `s` of character `α`.
    pub right: LawReport,
}

impl BundleReport {
    pub fn passed(&self) -> bool {
        self.left.passed() && self.right.passed()
    }
}

/// Checks the module laws at every order up to the truncation. With
/// `alpha_override` the right action uses that shift in place of the
/// sections' own character.
pub fn bundle_module_check(
    star: &StarProduct,
    invariants: &[Element<Q>],
    sections: &[Element<Q>],
    alpha_override: Option<&[Q]>,
) -> Result<BundleReport> {
    let zero = vec![Q::zero(); star.levi.r()];
    let mut left = LawReport {
        law: "left module law".into(),
        cases: 0,
        failure: None,
    };
    let others: Vec<&Element<Q>> = invariants.iter().chain(sections).collect();
    'left: for a in invariants {
        if star.alg.section_character(&star.levi, a)? != zero {
            return Err(Error::Shape("left factor is not invariant".into()));
        }
        for x in &others {
            for y in &others {
                left.cases += 1;
                if let Some(f) = star.shifted_associativity(a, x, y, Some(&zero))? {
                    left.failure = Some(f);
                    break 'left;
                }
            }
        }
    }
    let mut right = LawReport {
        law: "right module law".into(),
        cases: 0,
        failure: None,
    };
    'right: for s in sections {
        let alpha = match alpha_override {
            Some(x) => x.to_vec(),
            None => star.alg.section_character(&star.levi, s)?,
        };
        for a in invariants {
            for b in invariants {
                right.cases += 1;
                if let Some(f) = star.shifted_associativity(s, a, b, Some(&alpha))? {
                    right.failure = Some(f);
                    break 'right;
                }
            }
        }
    }
    Ok(BundleReport { left, right })
}

/// Linear coordinates on the coadjoint orbit through `λ0`.
///
/// `E` is the adjoint representation realized as the irreducible of the
/// highest root, identified with `g` by the intertwiner `M: E -> g`. The
/// coordinate of `X ∈ g` is `f_X = M^{-1}X ⊗ φ` with `φ = λ0 ∘ π_h ∘ M`.
#[derive(Clone, Debug)]
pub struct OrbitCoordinates {
    pub highest: Highest,
    /// `f_X` for the basis elements of `g`.
    pub coords: Vec<Element<Q>>,
}

/// Nonzero `M` with `M ρ_E(x) = ad(x) M`, unique up to scale.
fn adjoint_intertwiner(rs: &RootSystem, e: &Rep) -> Matrix<Q> {
    let (n, d) = (rs.dim(), e.dim());
    // unknown M[r][c] at index r·d + c
    let mut rows = Vec::new();
    for x in 0..n {
        let ad = Matrix::from_fn(n, n, |r, c| {
            rs.bracket(x, c)
                .iter()
                .find(|(k, _)| *k == r)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(Q::zero)
        });
        let rho = e.matrix(x);
        for r in 0..n {
            for c in 0..d {
                let mut row = vec![Q::zero(); n * d];
                for k in 0..d {
                    row[r * d + k] += rho.get(k, c);
                }
                for k in 0..n {
                    row[k * d + c] -= ad.get(r, k);
                }
                rows.push(row);
            }
        }
    }
    let kernel = Matrix::from_rows(rows).kernel();
    assert_eq!(kernel.len(), 1, "adjoint representation is irreducible");
    Matrix::from_fn(n, d, |r, c| kernel[0][r * d + c].clone())
}

pub fn orbit_coordinates(alg: &MatrixCoeffAlgebra, levi: &LeviDatum, lambda0: &[Q]) -> Result<OrbitCoordinates> {
    let rs = alg.root_system();
    let theta = rs
        .gens()
        .iter()
        .max_by_key(|g| g.height)
        .map(|g| g.weight.clone())
        .expect("nonempty root system");
    let e = alg.rep(&theta)?;
    let m = adjoint_intertwiner(rs, e);
    let lam = levi.extend_character(lambda0);
    let phi: Vec<Q> = (0..e.dim())
        .map(|c| {
            (0..rs.rank())
                .map(|k| m.get(rs.h(k), c) * &lam[k])
                .fold(Q::zero(), |a, b| a + b)
        })
        .collect();
    let minv = m.inverse().expect("intertwiner between irreducibles is invertible");
    let coords = (0..rs.dim())
        .map(|x| alg.pure(&theta, &minv.column(x), &phi))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitCoordinates { highest: theta, coords })
}

/// Order-`t` skew part of the star product on orbit coordinates, compared
/// with the Kirillov–Kostant bracket `{f_X, f_Y} = κ f_{[X,Y]}`.
#[derive(Clone, Debug)]
pub struct KirillovReport {
    /// The scale `κ`, fixed by the first pair with nonzero bracket.
    pub scale: Q,
    /// Pairs `(X, Y)` where the skew part is not `κ f_{[X,Y]}`.
    pub mismatches: Vec<(usize, usize)>,
    /// Triples `(X, Y, Z)` where `{f_X, f_Y f_Z} != {f_X, f_Y} f_Z + f_Y {f_X, f_Z}`.
    pub non_derivations: Vec<(usize, usize, usize)>,
}

impl KirillovReport {
    pub fn passed(&self) -> bool {
        !self.scale.is_zero() && self.mismatches.is_empty() && self.non_derivations.is_empty()
    }
}

pub fn kirillov_check(star: &StarProduct) -> Result<KirillovReport> {
    let alg = star.alg;
    let rs = alg.root_system();
    let oc = orbit_coordinates(alg, &star.levi, &star.lambda0)?;
    let f = &oc.coords;
    let n = rs.dim();
    let bracket = |a: &Element<Q>, b: &Element<Q>| -> Result<Element<Q>> {
        Ok(star.coefficient(a, b, 1)?.sub(&star.coefficient(b, a, 1)?))
    };
    let lie = |x: usize, y: usize| -> Element<Q> {
        rs.bracket(x, y)
            .iter()
            .fold(Element::zero(), |acc, (k, c)| acc.add(&f[*k].scale(c)))
    };
    let mut skew = vec![vec![Element::zero(); n]; n];
    for x in 0..n {
        for y in 0..n {
            skew[x][y] = bracket(&f[x], &f[y])?;
        }
    }
    let mut scale = Q::zero();
    'find: for x in 0..n {
        for y in 0..n {
            let l = lie(x, y);
            if let Some((h, i, j)) = l.first_difference(&Element::zero()) {
                let s = skew[x][y]
                    .blocks()
                    .get(&h)
                    .map(|m| m.get(i, j).clone())
                    .unwrap_or_else(Q::zero);
                scale = s / l.blocks()[&h].get(i, j);
                break 'find;
            }
        }
    }
    let mut mismatches = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if skew[x][y] != lie(x, y).scale(&scale) {
                mismatches.push((x, y));
            }
        }
    }
    let mut non_derivations = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in y..n {
                let lhs = bracket(&f[x], &alg.classical_product(&f[y], &f[z])?)?;
                let rhs = alg
                    .classical_product(&skew[x][y], &f[z])?
                    .add(&alg.classical_product(&f[y], &skew[x][z])?);
                if lhs != rhs {
                    non_derivations.push((x, y, z));
                }
            }
        }
    }
    Ok(KirillovReport {
        scale,
        mismatches,
        non_derivations,
    })
}

impl StarProduct<'_> {
    pub fn algebra(&self) -> &MatrixCoeffAlgebra {
        self.alg
    }

    pub fn levi(&self) -> &LeviDatum {
        &self.levi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynquant_scalars::{q, qi};

    fn sl2_alg(max: i64) -> (MatrixCoeffAlgebra, LeviDatum) {
        let g = RootSystem::sl(2).unwrap();
        let ws: Vec<Vec<i64>> = (0..=max).map(|k| vec![k]).collect();
        (build_ag(&g, &ws).unwrap(), LeviDatum::new(&g, &[]).unwrap())
    }

    #[test]
    fn block_dimensions() {
        let (a, _) = sl2_alg(1);
        assert_eq!(a.dim(), 1 + 4);
    }

    #[test]
    fn unit_and_closure() {
        let (a, _) = sl2_alg(2);
        let x: Element<Q> = a.basis_element(&[2], 0, 1).unwrap();
        let u = a.unit::<Q>();
        assert_eq!(a.classical_product(&u, &x).unwrap(), x);
        assert_eq!(a.classical_product(&x, &u).unwrap(), x);
        let p = a.classical_product(&x, &a.basis_element(&[1], 0, 0).unwrap());
        assert_eq!(p.unwrap_err(), Error::NotClosed(vec![3]));
    }

    #[test]
    fn spin_one_products_decompose_over_even_spins() {
        let (a, _) = sl2_alg(4);
        let x: Element<Q> = a.basis_element(&[2], 0, 2).unwrap();
        let y: Element<Q> = a.basis_element(&[2], 2, 0).unwrap();
        let p = a.classical_product(&x, &y).unwrap();
        assert!(p.blocks().keys().all(|k| [vec![0], vec![2], vec![4]].contains(k)));
        assert!(!p.is_zero());
    }

    #[test]
    fn classical_product_is_associative_and_commutative() {
        let (a, _) = sl2_alg(6);
        let xs: Vec<Element<Q>> = vec![
            a.basis_element(&[2], 0, 1).unwrap(),
            a.basis_element(&[2], 1, 2).unwrap(),
            a.basis_element(&[1], 1, 0).unwrap(),
        ];
        for x in &xs {
            for y in &xs {
                assert_eq!(a.classical_product(x, y).unwrap(), a.classical_product(y, x).unwrap());
                for z in &xs {
                    let l = a.classical_product(&a.classical_product(x, y).unwrap(), z).unwrap();
                    let r = a.classical_product(x, &a.classical_product(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn dyn_product_with_unit_is_classical() {
        let (a, l) = sl2_alg(2);
        let x: Element<Q> = a.basis_element(&[2], 1, 0).unwrap();
        let u = a.unit::<Q>();
        let lam = [q(3, 7)];
        assert_eq!(a.dyn_product(&l, &lam, &u, &x).unwrap(), x);
        assert_eq!(a.dyn_product(&l, &lam, &x, &u).unwrap(), x);
    }

    #[test]
    fn zero_weight_spin_one_product_has_a_correction() {
        let (a, l) = sl2_alg(4);
        // middle column: E* weight zero
        let x: Element<RatFunc> = a.basis_element(&[2], 0, 1).unwrap();
        let y: Element<RatFunc> = a.basis_element(&[2], 2, 1).unwrap();
        let lam = [RatFunc::var(0)];
        let d = a
            .dyn_product(&l, &lam, &x, &y)
            .unwrap()
            .sub(&a.classical_product(&x, &y).unwrap());
        assert!(!d.is_zero());
        // the correction is a function of λ that vanishes as λ -> ∞
        for m in d.blocks().values() {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let e = m.get(r, c);
                    assert!(e.is_zero() || e.num().degree() < e.den().degree());
                }
            }
        }
        assert!(a.section_character(&l, &a.dyn_product(&l, &lam, &x, &y).unwrap()).unwrap()[0].is_zero());
    }

    #[test]
    fn rho1_is_a_derivation_of_the_dyn_product() {
        let (a, l) = sl2_alg(4);
        let lam = [q(2, 7)];
        let x: Element<Q> = a.basis_element(&[2], 0, 1).unwrap();
        let y: Element<Q> = a.basis_element(&[2], 1, 0).unwrap();
        let rs = a.root_system().clone();
        for g in 0..rs.dim() {
            let lhs = a.rho1(g, &a.dyn_product(&l, &lam, &x, &y).unwrap()).unwrap();
            let rhs = a
                .dyn_product(&l, &lam, &a.rho1(g, &x).unwrap(), &y)
                .unwrap()
                .add(&a.dyn_product(&l, &lam, &x, &a.rho1(g, &y).unwrap()).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn shifted_associativity_at_fixed_lambda() {
        let (a, l) = sl2_alg(6);
        let lam = [q(9, 7)];
        let s: Element<Q> = a.basis_element(&[2], 1, 0).unwrap();
        let b: Element<Q> = a.basis_element(&[2], 0, 1).unwrap();
        let c: Element<Q> = a.basis_element(&[2], 2, 1).unwrap();
        assert!(check_shifted_associativity(&a, &l, &lam, &s, &b, &c).unwrap().passed());
        assert!(check_shifted_associativity(&a, &l, &lam, &b, &c, &s).unwrap().passed());
        // without the shift the law fails for a charged first factor
        let plain = a
            .dyn_product(&l, &lam, &a.dyn_product(&l, &lam, &s, &b).unwrap(), &c)
            .unwrap()
            .sub(
                &a.dyn_product(&l, &lam, &s, &a.dyn_product(&l, &lam, &b, &c).unwrap())
                    .unwrap(),
            );
        assert!(!plain.is_zero());
    }

    #[test]
    fn star_product_order_zero_is_classical() {
        let (a, l) = sl2_alg(4);
        let st = StarProduct::new(&a, &l, &[qi(1)], &[Q::zero()], 2).unwrap();
        let x: Element<Q> = a.basis_element(&[2], 0, 1).unwrap();
        let y: Element<Q> = a.basis_element(&[2], 2, 0).unwrap();
        assert_eq!(st.star(&x, &y).unwrap()[0], a.classical_product(&x, &y).unwrap());
    }

    #[test]
    fn orbit_coordinates_satisfy_the_orbit_equation() {
        let (a, l) = sl2_alg(4);
        let lam0 = q(5, 3);
        let oc = orbit_coordinates(&a, &l, std::slice::from_ref(&lam0)).unwrap();
        let rs = a.root_system();
        // Σ B^{ab} f_a f_b is the constant B^{-1}(λ0, λ0) = λ0^2 / (2 killing factor) up to the form used
        let n = rs.dim();
        let b = Matrix::from_fn(n, n, |i, j| rs.trace_form(i, j));
        let binv = b.inverse().unwrap();
        let mut cas = Element::<Q>::zero();
        for i in 0..n {
            for j in 0..n {
                if !binv.get(i, j).is_zero() {
                    cas = cas.add(
                        &a.classical_product(&oc.coords[i], &oc.coords[j])
                            .unwrap()
                            .scale(binv.get(i, j)),
                    );
                }
            }
        }
        // trace form on h: (H, H) = 2, so |λ0|^2 = λ0^2 / 2
        let expected = a.unit::<Q>().scale(&(&lam0 * &lam0 / qi(2)));
        assert_eq!(cas, expected);
    }

    #[test]
    fn kirillov_bracket_at_order_t() {
        let (a, l) = sl2_alg(6);
        let mut scales = vec![];
        for lam0 in [q(3, 2), q(-7, 5)] {
            let st = StarProduct::new(&a, &l, &[lam0], &[q(1, 3)], 1).unwrap();
            let rep = kirillov_check(&st).unwrap();
            assert!(rep.passed(), "{rep:?}");
            scales.push(rep.scale);
        }
        // the orbit coordinates carry the radius, so κ does not depend on λ0
        assert_eq!(scales[0], scales[1]);
    }

    #[test]
    fn spin_two_invariants_associate_to_t3() {
        let (a, l) = sl2_alg(12);
        let st = StarProduct::new(&a, &l, &[q(7, 4)], &[q(-1, 3)], 3).unwrap();
        let basis = invariant_basis(&a, &l, &[vec![0], vec![2], vec![4]]).unwrap();
        // one zero weight per even block: 1 + 3 + 5 functions
        assert_eq!(basis.len(), 9);
        let rep = check_star_associativity(&st, &basis).unwrap();
        assert!(rep.passed(), "{}", rep.describe());
        assert_eq!(rep.cases, 729);
    }

    #[test]
    fn line_bundle_laws_to_order_two() {
        let (a, l) = sl2_alg(6);
        let st = StarProduct::new(&a, &l, &[q(5, 2)], &[q(1, 7)], 2).unwrap();
        // invariants: E* weight zero; sections: E* weight -2
        let inv: Vec<Element<Q>> = vec![a.basis_element(&[2], 0, 1).unwrap(), a.basis_element(&[2], 2, 1).unwrap()];
        let sec: Vec<Element<Q>> = vec![a.basis_element(&[2], 1, 0).unwrap()];
        assert_eq!(a.dual_rep(&[2]).unwrap().weight(0), &[-2]);
        let rep = bundle_module_check(&st, &inv, &sec, None).unwrap();
        assert!(rep.passed(), "{} / {}", rep.left.describe(), rep.right.describe());
        let bad = bundle_module_check(&st, &inv, &sec, Some(&[Q::zero()])).unwrap();
        assert!(bad.left.passed() && !bad.right.passed());
    }
}
