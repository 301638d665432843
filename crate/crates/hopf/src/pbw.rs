//! The PBW star product on polynomial functions on `h*`: symmetrize into
//! `U(h_t)`, where `[x, y]_t = t[x, y]`, multiply, and pull back.

pub use dynquant_scalars::Poly as SymPoly;
use dynquant_scalars::{Monomial, Q};
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// Structure constants: `bracket[i][j][k]` is the coefficient of `x_k` in
/// `[x_i, x_j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieData {
    pub name: String,
    dim: usize,
    bracket: Vec<Vec<Vec<Q>>>,
}

impl LieData {
    pub fn new(name: &str, bracket: Vec<Vec<Vec<Q>>>) -> Result<Self, String> {
        let n = bracket.len();
        if !bracket.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n)) {
            return Err(format!("bracket tensor is not {n}×{n}×{n}"));
        }
        let lie = LieData {
            name: name.to_string(),
            dim: n,
            bracket,
        };
        for i in 0..n {
            for j in 0..n {
                if (0..n).any(|k| lie.bracket[i][j][k] != -lie.bracket[j][i][k].clone()) {
                    return Err(format!("bracket not antisymmetric at ({i}, {j})"));
                }
            }
        }
        if let Some((i, j, k)) = lie.jacobi_failure() {
            return Err(format!("Jacobi identity fails at ({i}, {j}, {k})"));
        }
        Ok(lie)
    }

    pub fn abelian(n: usize) -> Self {
        LieData::new(&format!("abelian, dim {n}"), vec![vec![vec![Q::zero(); n]; n]; n]).expect("abelian")
    }

    /// Borel of `sl2`: `x_0 = H`, `x_1 = E`, `[H, E] = 2E`.
    pub fn sl2_borel() -> Self {
        let mut b = vec![vec![vec![Q::zero(); 2]; 2]; 2];
        b[0][1][1] = Q::from_integer(2.into());
        b[1][0][1] = Q::from_integer((-2).into());
        LieData::new("sl2 Borel", b).expect("Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[Q] {
        &self.bracket[i][j]
    }

    fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let br = |u: &[Q], v: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); n];
            for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                    for k in 0..n {
                        out[k] += a * b * &self.bracket[i][j][k];
                    }
                }
            }
            out
        };
        let e = |i: usize| -> Vec<Q> { (0..n).map(|k| if k == i { Q::one() } else { Q::zero() }).collect() };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s: Vec<Q> = [
                        br(&e(i), &br(&e(j), &e(k))),
                        br(&e(j), &br(&e(k), &e(i))),
                        br(&e(k), &br(&e(i), &e(j))),
                    ]
                    .iter()
                    .fold(vec![Q::zero(); n], |acc, v| acc.iter().zip(v).map(|(a, b)| a + b).collect());
                    if s.iter().any(|x| !x.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `{f, g} = Σ c_ij^k x_k ∂_i f ∂_j g`.
    pub fn lie_poisson(&self, f: &SymPoly, g: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for i in 0..self.dim {
            let fi = f.derivative(i);
            if fi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let gj = g.derivative(j);
                for (k, c) in self.bracket[i][j].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    out = out.add(&fi.mul(&gj).mul(&SymPoly::var(k)).scale(c));
                }
            }
        }
        out
    }
}

/// An element of `U(h_t)` truncated at `t^N`: entry `k` holds the
/// coefficient of `t^k` in the PBW basis `x_0^{a_0} x_1^{a_1} ...`.
type UElem = Vec<SymPoly>;

/// `U(h_t)` with memoized normal ordering.
pub struct PbwAlgebra {
    lie: LieData,
    order: usize,
    normal: RefCell<HashMap<Vec<usize>, Rc<UElem>>>,
    sym: RefCell<HashMap<Monomial, Rc<UElem>>>,
}

fn word(m: &Monomial) -> Vec<usize> {
    m.exps()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect()
}

fn add_into(acc: &mut UElem, shift: usize, c: &Q, u: &UElem) {
    for (k, p) in u.iter().enumerate() {
        if k + shift < acc.len() && !p.is_zero() {
            acc[k + shift] = acc[k + shift].add(&p.scale(c));
        }
    }
}

impl PbwAlgebra {
    pub fn new(lie: LieData, order: usize) -> Self {
        PbwAlgebra {
            lie,
            order,
            normal: RefCell::new(HashMap::new()),
            sym: RefCell::new(HashMap::new()),
        }
    }

    pub fn lie(&self) -> &LieData {
        &self.lie
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn zero(&self) -> UElem {
        vec![SymPoly::zero(); self.order + 1]
    }

    /// Rewrites a word in the generators in the PBW basis.
    fn normal_order(&self, w: &[usize]) -> Rc<UElem> {
        if let Some(u) = self.normal.borrow().get(w) {
            return u.clone();
        }
        let mut out = self.zero();
        match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            None => {
                let mut e = vec![0u32; self.lie.dim];
                for &i in w {
                    e[i] += 1;
                }
                out[0] = SymPoly::from_terms([(Monomial::new(e), Q::one())]);
            }
            Some(i) => {
                // x_a x_b = x_b x_a + t [x_a, x_b]
                let mut swapped = w.to_vec();
                swapped.swap(i, i + 1);
                add_into(&mut out, 0, &Q::one(), &self.normal_order(&swapped));
                if self.order > 0 {
                    for (k, c) in self.lie.bracket[w[i]][w[i + 1]]
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                    {
                        let mut shorter = w[..i].to_vec();
                        shorter.push(k);
                        shorter.extend_from_slice(&w[i + 2..]);
                        add_into(&mut out, 1, c, &self.normal_order(&shorter));
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.normal.borrow_mut().insert(w.to_vec(), out.clone());
        out
    }

    /// Symmetrization of a monomial: the average over its distinct orderings.
    fn sym_monomial(&self, m: &Monomial) -> Rc<UElem> {
        if let Some(u) = self.sym.borrow().get(m) {
            return u.clone();
        }
        let mut w = word(m);
        let mut out = self.zero();
        let mut count = 0u64;
        loop {
            add_into(&mut out, 0, &Q::one(), &self.normal_order(&w));
            count += 1;
            if !next_permutation(&mut w) {
                break;
            }
        }
        let inv = Q::new(1.into(), (count as i64).into());
        let out: UElem = out.iter().map(|p| p.scale(&inv)).collect();
        let out = Rc::new(out);
        self.sym.borrow_mut().insert(m.clone(), out.clone());
        out
    }

    pub fn sym(&self, f: &[SymPoly]) -> UElem {
        let mut out = self.zero();
        for (k, p) in f.iter().enumerate().take(self.order + 1) {
            for (m, c) in p.terms() {
                add_into(&mut out, k, c, &self.sym_monomial(m));
            }
        }
        out
    }

    /// Inverse of `sym`, peeling off the top degree: `sym(x^a)` is `x^a`
    /// plus terms of lower degree carrying positive powers of `t`.
    pub fn sym_inverse(&self, u: &UElem) -> Vec<SymPoly> {
        let mut rest = u.clone();
        let mut out = self.zero();
        loop {
            let top = rest.iter().flat_map(|p| p.terms().map(|(m, _)| m.degree())).max();
            let Some(d) = top else { break };
            for k in 0..=self.order {
                let peel: Vec<(Monomial, Q)> = rest[k]
                    .terms()
                    .filter(|(m, _)| m.degree() == d)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect();
                for (m, c) in peel {
                    out[k].add_term(m.clone(), c.clone());
                    add_into(&mut rest, k, &-c, &self.sym_monomial(&m));
                }
            }
        }
        out
    }

    fn mul(&self, a: &UElem, b: &UElem) -> UElem {
        let mut out = self.zero();
        for (i, p) in a.iter().enumerate() {
            for (j, q) in b.iter().enumerate() {
                if i + j > self.order {
                    continue;
                }
                for (m, c) in p.terms() {
                    for (n, d) in q.terms() {
                        let mut w = word(m);
                        w.extend(word(n));
                        add_into(&mut out, i + j, &(c * d), &self.normal_order(&w));
                    }
                }
            }
        }
        out
    }

    /// `f ∗ g` as its coefficients in `t^0..t^N`.
    pub fn star(&self, f: &SymPoly, g: &SymPoly) -> Vec<SymPoly> {
        self.star_series(std::slice::from_ref(f), std::slice::from_ref(g))
    }

    /// The star product extended `t`-linearly to truncated series.
    pub fn star_series(&self, f: &[SymPoly], g: &[SymPoly]) -> Vec<SymPoly> {
        self.sym_inverse(&self.mul(&self.sym(f), &self.sym(g)))
    }
}

fn next_permutation(w: &mut [usize]) -> bool {
    let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
        return false;
    };
    let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).expect("successor exists");
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// `f ∗ g` truncated at `t^N`.
pub fn pbw_star(lie: &LieData, f: &SymPoly, g: &SymPoly, order: usize) -> Vec<SymPoly> {
    PbwAlgebra::new(lie.clone(), order).star(f, g)
}

/// `f(λ + t w) = Σ t^k/k! (w·∂)^k f` truncated at `t^N`: the coaction shift
/// with `h` acting through the character `w`.
pub fn shift_by_weight(f: &SymPoly, w: &[Q], order: usize) -> Vec<SymPoly> {
    let mut out = Vec::with_capacity(order + 1);
    let mut cur = f.clone();
    let mut fact = Q::one();
    for k in 0..=order {
        if k > 0 {
            let mut next = SymPoly::zero();
            for (i, c) in w.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                next = next.add(&cur.derivative(i).scale(c));
            }
            cur = next;
            fact *= Q::from_integer((k as i64).into());
        }
        out.push(cur.scale(&(Q::one() / &fact)));
    }
    out
}

/// Monomials of degree `1..=max_degree` in `dim` variables.
pub fn monomial_basis(dim: usize, max_degree: usize) -> Vec<SymPoly> {
    crate::finhopf::monomials(dim, max_degree)
        .into_iter()
        .skip(1)
        .map(|e| SymPoly::from_terms([(Monomial::new(e.into_iter().map(|x| x as u32).collect()), Q::one())]))
        .collect()
}

/// First triple of monomials where `(f ∗ g) ∗ h` and `f ∗ (g ∗ h)` differ,
/// with the lowest differing power of `t`.
pub fn associativity_failure(alg: &PbwAlgebra, max_degree: usize) -> Option<(String, String, String, usize)> {
    let basis = monomial_basis(alg.lie().dim(), max_degree);
    let mut products: HashMap<(usize, usize), Vec<SymPoly>> = HashMap::new();
    for (i, f) in basis.iter().enumerate() {
        for (j, g) in basis.iter().enumerate() {
            products.insert((i, j), alg.star(f, g));
        }
    }
    for (i, f) in basis.iter().enumerate() {
        for (j, _) in basis.iter().enumerate() {
            for (k, h) in basis.iter().enumerate() {
                let left = alg.star_series(&products[&(i, j)], std::slice::from_ref(h));
                let right = alg.star_series(std::slice::from_ref(f), &products[&(j, k)]);
                if let Some(t) = (0..=alg.order()).find(|&t| left[t] != right[t]) {
                    return Some((f.to_string(), basis[j].to_string(), h.to_string(), t));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynquant_scalars::qi;
    use proptest::prelude::*;

    fn x(i: usize) -> SymPoly {
        SymPoly::var(i)
    }

    #[test]
    fn borel_linear_products() {
        // sym(HE) = HE - tE, so H ∗ E = HE + tE and E ∗ H = HE - tE
        let alg = PbwAlgebra::new(LieData::sl2_borel(), 3);
        let he = alg.star(&x(0), &x(1));
        let eh = alg.star(&x(1), &x(0));
        assert_eq!(he[0], x(0).mul(&x(1)));
        assert_eq!(he[1], x(1));
        assert_eq!(eh[1], x(1).scale(&qi(-1)));
        assert!(he[2].is_zero() && he[3].is_zero());
    }

    #[test]
    fn order_t_skew_part_is_half_the_bracket() {
        let lie = LieData::sl2_borel();
        let alg = PbwAlgebra::new(lie.clone(), 2);
        for f in monomial_basis(2, 2) {
            for g in monomial_basis(2, 2) {
                let skew = alg.star(&f, &g)[1].sub(&alg.star(&g, &f)[1]);
                assert_eq!(skew, lie.lie_poisson(&f, &g), "{f} {g}");
            }
        }
    }

    #[test]
    fn sym_inverse_inverts_sym() {
        let alg = PbwAlgebra::new(LieData::sl2_borel(), 4);
        for f in monomial_basis(2, 4) {
            let back = alg.sym_inverse(&alg.sym(std::slice::from_ref(&f)));
            assert_eq!(back[0], f);
            assert!(back[1..].iter().all(|p| p.is_zero()));
        }
    }

    #[test]
    fn borel_star_is_associative_to_t3() {
        let alg = PbwAlgebra::new(LieData::sl2_borel(), 3);
        assert_eq!(associativity_failure(&alg, 3), None);
    }

    #[test]
    fn heisenberg_star_matches_moyal_on_generators() {
        // [p, q] = c: the central term appears at order t
        let mut b = vec![vec![vec![Q::zero(); 3]; 3]; 3];
        b[0][1][2] = qi(1);
        b[1][0][2] = qi(-1);
        let lie = LieData::new("Heisenberg", b).unwrap();
        let r = pbw_star(&lie, &x(0), &x(1), 2);
        assert_eq!(r[1], x(2).scale(&Q::new(1.into(), 2.into())));
    }

    #[test]
    fn malformed_brackets_are_rejected() {
        let mut b = vec![vec![vec![Q::zero(); 2]; 2]; 2];
        b[0][1][1] = qi(1);
        assert!(LieData::new("bad", b).is_err());
    }

    #[test]
    fn shift_by_weight_binomial() {
        // (x + t w)^3 with w = 2
        let f = x(0).pow(3);
        let s = shift_by_weight(&f, &[qi(2)], 4);
        let want = [
            x(0).pow(3),
            x(0).pow(2).scale(&qi(6)),
            x(0).scale(&qi(12)),
            SymPoly::constant(qi(8)),
            SymPoly::zero(),
        ];
        assert_eq!(s, want);
    }

    proptest! {
        #[test]
        fn abelian_star_is_pointwise(a in 0u32..3, b in 0u32..3, c in 0u32..3, d in 0u32..3) {
            let alg = PbwAlgebra::new(LieData::abelian(2), 2);
            let f = SymPoly::from_terms([(Monomial::new(vec![a, b]), qi(1))]);
            let g = SymPoly::from_terms([(Monomial::new(vec![c, d]), qi(3))]);
            let r = alg.star(&f, &g);
            prop_assert_eq!(&r[0], &f.mul(&g));
            prop_assert!(r[1..].iter().all(|p| p.is_zero()));
        }

        #[test]
        fn borel_star_has_classical_limit(a in 0u32..3, b in 0u32..3, c in 0u32..3, d in 0u32..3) {
            let alg = PbwAlgebra::new(LieData::sl2_borel(), 1);
            let f = SymPoly::from_terms([(Monomial::new(vec![a, b]), qi(1))]);
            let g = SymPoly::from_terms([(Monomial::new(vec![c, d]), qi(1))]);
            prop_assert_eq!(&alg.star(&f, &g)[0], &f.mul(&g));
        }
    }
}
