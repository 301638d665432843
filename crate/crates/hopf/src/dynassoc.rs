//! Dynamical associative algebras over a base algebra: an `H`-module `A`
//! with an equivariant `⋇: A ⊗ A -> A ⊗ L`.

use crate::base::BaseAlgebra;
use crate::finhopf::{entries, nonzero, unit_vector, FinHopf, Vector};
use crate::report::Report;
use dynquant_scalars::{Matrix, Q};
use num_traits::{One, Zero};

/// Flattened index of `a ⊗ ℓ` in `A ⊗ L`.
fn al(nl: usize, a: usize, l: usize) -> usize {
    a * nl + l
}

#[derive(Clone, Debug)]
pub struct DynamicalAlgebra {
    pub name: String,
    dim: usize,
    /// `action[x]` has column `a` equal to `e_x ▷ a`.
    action: Vec<Matrix<Q>>,
    /// `star[a][b]` is `a ⋇ b` as coefficients of `e_c ⊗ ℓ`.
    star: Vec<Vec<Matrix<Q>>>,
    /// Replaces `τ_A: L ⊗ A -> A ⊗ L`; negative controls only.
    tau_override: Option<Matrix<Q>>,
}

impl DynamicalAlgebra {
    pub fn new(
        name: &str,
        h: &FinHopf,
        l: &BaseAlgebra,
        action: Vec<Matrix<Q>>,
        star: Vec<Vec<Matrix<Q>>>,
    ) -> Result<Self, String> {
        let n = star.len();
        let ok = action.len() == h.dim()
            && action.iter().all(|m| m.rows() == n && m.cols() == n)
            && star
                .iter()
                .all(|r| r.len() == n && r.iter().all(|m| m.rows() == n && m.cols() == l.dim()));
        if !ok {
            return Err(format!("structure tensors do not match dim A = {n}, dim L = {}", l.dim()));
        }
        Ok(DynamicalAlgebra {
            name: name.to_string(),
            dim: n,
            action,
            star,
            tau_override: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn with_tau(&self, tau: Matrix<Q>) -> Self {
        DynamicalAlgebra {
            name: format!("{} (modified τ)", self.name),
            tau_override: Some(tau),
            ..self.clone()
        }
    }

    fn act(&self, x: usize, a: &[Q]) -> Vector {
        self.action[x].mul_vec(a)
    }

    /// `τ_A(ℓ ⊗ a) = ℓ(1) ▷ a ⊗ ℓ[2]` on `L ⊗ A -> A ⊗ L`.
    pub fn tau(&self, l: &BaseAlgebra) -> Matrix<Q> {
        if let Some(t) = &self.tau_override {
            return t.clone();
        }
        let (n, nl) = (self.dim, l.dim());
        let mut t = Matrix::zeros(n * nl, nl * n);
        for li in 0..nl {
            let d = l.coact(&l.basis(li));
            for a in 0..n {
                for (p, q, c) in entries(&d) {
                    for (r, y) in nonzero(&self.act(p, &unit_vector(n, a))) {
                        let cur = t.get(al(nl, r, q), li * n + a) + &c * y;
                        t.set(al(nl, r, q), li * n + a, cur);
                    }
                }
            }
        }
        t
    }

    /// Plain flip `ℓ ⊗ a -> a ⊗ ℓ`.
    pub fn flip(&self, l: &BaseAlgebra) -> Matrix<Q> {
        let (n, nl) = (self.dim, l.dim());
        Matrix::from_fn(
            n * nl,
            nl * n,
            |r, c| if r == al(nl, c % n, c / n) { Q::one() } else { Q::zero() },
        )
    }

    /// `⋇` extended to `A ⊗ A`, landing in `A ⊗ L`.
    fn star_vec(&self, nl: usize, a: &[Q], b: &[Q]) -> Vector {
        let mut out = vec![Q::zero(); self.dim * nl];
        for (i, x) in nonzero(a) {
            for (j, y) in nonzero(b) {
                for (c, l, z) in entries(&self.star[i][j]) {
                    out[al(nl, c, l)] += x * y * z;
                }
            }
        }
        out
    }

    /// Product of `A ⋇ L` on basis elements: `τ` on the middle pair, then
    /// `⋇ ⊗ m`, then `m`.
    pub fn smash(&self, l: &BaseAlgebra, tau: &Matrix<Q>, u: &[Q], v: &[Q]) -> Vector {
        let (n, nl) = (self.dim, l.dim());
        let mut out = vec![Q::zero(); n * nl];
        for (i, x) in nonzero(u) {
            let (a, l1) = (i / nl, i % nl);
            for (j, y) in nonzero(v) {
                let (b, l2) = (j / nl, j % nl);
                for (k, z) in nonzero(&tau.column(l1 * n + b)) {
                    let (b2, l1b) = (k / nl, k % nl);
                    let tail = l.mul(&l.basis(l1b), &l.basis(l2));
                    for (c, lm, w) in entries(&self.star[a][b2]) {
                        let full = l.mul(&l.basis(lm), &tail);
                        for (m, s) in nonzero(&full) {
                            out[al(nl, c, m)] += x * y * z * &w * s;
                        }
                    }
                }
            }
        }
        out
    }
}

/// Checks that `⋇` is equivariant, that the shifted-associativity diagram
/// commutes on every basis triple, and that `A ⋇ L` is associative.
pub fn check_dynamical_associativity(h: &FinHopf, l: &BaseAlgebra, a: &DynamicalAlgebra) -> Report {
    let (n, nl, nh) = (a.dim, l.dim(), h.dim());
    let mut rep = Report::default();
    let tau = a.tau(l);

    let equiv = (0..nh)
        .flat_map(|x| (0..n).flat_map(move |i| (0..n).map(move |j| (x, i, j))))
        .find(|&(x, i, j)| {
            let mut lhs = vec![Q::zero(); n * nl];
            for (p, q, c) in entries(h.comult_basis(x)) {
                for (ci, li, z) in entries(&a.star[i][j]) {
                    let av = a.act(p, &unit_vector(n, ci));
                    let lv = l.act(&h.basis(q), &l.basis(li));
                    for (r, u) in nonzero(&av) {
                        for (s, v) in nonzero(&lv) {
                            lhs[al(nl, r, s)] += &c * &z * u * v;
                        }
                    }
                }
            }
            let mut rhs = vec![Q::zero(); n * nl];
            for (p, q, c) in entries(h.comult_basis(x)) {
                let s = a.star_vec(nl, &a.act(p, &unit_vector(n, i)), &a.act(q, &unit_vector(n, j)));
                for (k, y) in nonzero(&s) {
                    rhs[k] += &c * y;
                }
            }
            lhs != rhs
        });
    rep.push("⋇ is H-equivariant", equiv.map(|t| format!("at (e_x, a, b) = {t:?}")));

    // top: (⋇ ⊗ id), (id ⊗ τ), (⋇ ⊗ id), (id ⊗ m); bottom: (id ⊗ ⋇), (⋇ ⊗ id), m
    let assoc = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| {
            let mut top = vec![Q::zero(); n * nl];
            for (b, l1, x) in entries(&a.star[i][j]) {
                for (t, y) in nonzero(&tau.column(l1 * n + k)) {
                    let (c, l2) = (t / nl, t % nl);
                    for (d, l3, z) in entries(&a.star[b][c]) {
                        for (m, w) in nonzero(&l.mul(&l.basis(l3), &l.basis(l2))) {
                            top[al(nl, d, m)] += &x * y * &z * w;
                        }
                    }
                }
            }
            let mut bottom = vec![Q::zero(); n * nl];
            for (b, l1, x) in entries(&a.star[j][k]) {
                for (d, l2, z) in entries(&a.star[i][b]) {
                    for (m, w) in nonzero(&l.mul(&l.basis(l2), &l.basis(l1))) {
                        bottom[al(nl, d, m)] += &x * &z * w;
                    }
                }
            }
            top != bottom
        });
    rep.push(
        "shifted associativity",
        assoc.map(|t| format!("violated at basis triple {t:?}")),
    );

    let m = n * nl;
    let smash = (0..m)
        .flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| {
            let (u, v, w) = (unit_vector(m, i), unit_vector(m, j), unit_vector(m, k));
            a.smash(l, &tau, &a.smash(l, &tau, &u, &v), &w) != a.smash(l, &tau, &u, &a.smash(l, &tau, &v, &w))
        });
    rep.push(
        "A⋇L is associative",
        smash.map(|(i, j, k)| {
            format!(
                "at basis triple ({}⊗ℓ{}, {}⊗ℓ{}, {}⊗ℓ{})",
                i / nl,
                i % nl,
                j / nl,
                j % nl,
                k / nl,
                k % nl
            )
        }),
    );
    rep
}

/// `A = Q[Z/2 × Z/2]` over `L = H = Q[Z/2]` (trivial adjoint action,
/// coproduct coaction), with `g ▷ u^a = (-1)^{a1} u^a` and
/// `u^a ⋇ u^b = (-1)^{a1 a2 b1} u^{a+b} ⊗ g^{a1 b2 + a2 b1}`. Index of `u^a` is
/// `a1 + 2 a2`.
pub fn klein_example() -> (FinHopf, BaseAlgebra, DynamicalAlgebra) {
    let h = FinHopf::cyclic(2);
    let l = crate::base::self_base(&h);
    let bits = |i: usize| (i % 2, i / 2);
    let sign = |e: usize| if e.is_multiple_of(2) { Q::one() } else { -Q::one() };
    let action = vec![
        Matrix::identity(4),
        Matrix::from_fn(4, 4, |r, c| if r == c { sign(bits(c).0) } else { Q::zero() }),
    ];
    let star = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let ((a1, a2), (b1, b2)) = (bits(i), bits(j));
                    let mut m = Matrix::zeros(4, 2);
                    m.set(i ^ j, (a1 * b2 + a2 * b1) % 2, sign(a1 * a2 * b1));
                    m
                })
                .collect()
        })
        .collect();
    let a = DynamicalAlgebra::new("Q[Z/2 × Z/2] over Q[Z/2]", &h, &l, action, star).expect("consistent");
    (h, l, a)
}

/// The one-dimensional base with trivial action and coaction.
pub fn trivial_base(h: &FinHopf) -> BaseAlgebra {
    let n = h.dim();
    let action = (0..n).map(|x| Matrix::from_rows(vec![vec![h.counit(&h.basis(x))]])).collect();
    let coaction = vec![Matrix::from_fn(n, 1, |p, _| h.unit()[p].clone())];
    BaseAlgebra::new("Q", h, vec![vec![vec![Q::one()]]], vec![Q::one()], action, coaction, None).expect("consistent")
}

/// An `H`-module algebra `A` as a dynamical algebra over the trivial base:
/// `a ⋇ b = ab ⊗ 1`.
pub fn undeformed(h: &FinHopf, l: &BaseAlgebra, action: Vec<Matrix<Q>>, mult: &[Vec<Vector>]) -> DynamicalAlgebra {
    let n = mult.len();
    let star = mult
        .iter()
        .map(|r| r.iter().map(|v| Matrix::from_fn(n, 1, |c, _| v[c].clone())).collect())
        .collect();
    DynamicalAlgebra::new("undeformed", h, l, action, star).expect("consistent")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_example_is_dynamically_associative() {
        let (h, l, a) = klein_example();
        let r = check_dynamical_associativity(&h, &l, &a);
        assert!(r.passed(), "{:?}", r.lines());
    }

    #[test]
    fn plain_flip_breaks_the_klein_example() {
        let (h, l, a) = klein_example();
        let broken = a.with_tau(a.flip(&l));
        let r = check_dynamical_associativity(&h, &l, &broken);
        assert!(r.failure("⋇ is H-equivariant").is_none());
        assert!(r.failure("shifted associativity").is_some());
        assert!(r.failure("A⋇L is associative").is_some());
    }

    #[test]
    fn trivial_base_reduces_to_associativity() {
        let h = FinHopf::sweedler();
        let l = trivial_base(&h);
        assert!(crate::base::check_base_algebra(&h, &l).passed());
        let mult: Vec<Vec<Vector>> = (0..4).map(|i| (0..4).map(|j| h.mul_basis(i, j).to_vec()).collect()).collect();
        let action: Vec<Matrix<Q>> = (0..4)
            .map(|x| {
                let cols: Vec<Vector> = (0..4).map(|a| h.adjoint(&h.basis(x), &h.basis(a))).collect();
                Matrix::from_fn(4, 4, |r, c| cols[c][r].clone())
            })
            .collect();
        let good = undeformed(&h, &l, action.clone(), &mult);
        assert!(check_dynamical_associativity(&h, &l, &good).passed());
        // g·g = g: (gg)x = gx but g(gx) = x
        let mut bad_mult = mult.clone();
        bad_mult[1][1] = unit_vector(4, 1);
        let bad = undeformed(&h, &l, action, &bad_mult);
        let r = check_dynamical_associativity(&h, &l, &bad);
        assert!(r.failure("shifted associativity").is_some());
    }
}
