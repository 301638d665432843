//! Base algebras: an `H`-module and `H`-comodule algebra `L` whose coaction
//! intertwines the action (the Yetter–Drinfeld condition) and whose
//! product is commutative up to the induced permutation `τ`.

use crate::finhopf::{axpy, entries, nonzero, unit_vector, FinHopf, Vector};
use crate::report::Report;
use dynquant_scalars::{Matrix, Q};
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct BaseAlgebra {
    pub name: String,
    dim: usize,
    mult: Vec<Vec<Vector>>,
    unit: Vector,
    /// `action[x]` has column `ℓ` equal to `e_x ▷ e_ℓ`.
    action: Vec<Matrix<Q>>,
    /// `coaction[ℓ]` is `δ(e_ℓ)` as coefficients of `e_h ⊗ e_ℓ'`.
    coaction: Vec<Matrix<Q>>,
    degrees: Option<Vec<usize>>,
}

impl BaseAlgebra {
    pub fn new(
        name: &str,
        h: &FinHopf,
        mult: Vec<Vec<Vector>>,
        unit: Vector,
        action: Vec<Matrix<Q>>,
        coaction: Vec<Matrix<Q>>,
        degrees: Option<Vec<usize>>,
    ) -> Result<Self, String> {
        let n = unit.len();
        let ok = mult.len() == n
            && mult.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
            && action.len() == h.dim()
            && action.iter().all(|m| m.rows() == n && m.cols() == n)
            && coaction.len() == n
            && coaction.iter().all(|m| m.rows() == h.dim() && m.cols() == n)
            && degrees.as_ref().is_none_or(|d| d.len() == n);
        if !ok {
            return Err(format!("structure tensors do not match dim L = {n}, dim H = {}", h.dim()));
        }
        Ok(BaseAlgebra {
            name: name.to_string(),
            dim: n,
            mult,
            unit,
            action,
            coaction,
            degrees,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(self.dim, i)
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees.as_ref().map_or(0, |d| d[i])
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vector {
        let mut out = vec![Q::zero(); self.dim];
        for (i, x) in nonzero(a) {
            for (j, y) in nonzero(b) {
                axpy(&mut out, &(x * y), &self.mult[i][j]);
            }
        }
        out
    }

    /// `x ▷ ℓ`.
    pub fn act(&self, x: &[Q], l: &[Q]) -> Vector {
        let mut out = vec![Q::zero(); self.dim];
        for (i, c) in nonzero(x) {
            axpy(&mut out, c, &self.action[i].mul_vec(l));
        }
        out
    }

    /// `δ(ℓ)`.
    pub fn coact(&self, l: &[Q]) -> Matrix<Q> {
        let mut out = Matrix::zeros(self.coaction[0].rows(), self.dim);
        for (i, c) in nonzero(l) {
            out = out.add(&self.coaction[i].scale(c));
        }
        out
    }

    /// Replaces the coaction; used to build negative controls.
    pub fn with_coaction(&self, coaction: Vec<Matrix<Q>>) -> Self {
        BaseAlgebra {
            coaction,
            name: format!("{} (modified coaction)", self.name),
            ..self.clone()
        }
    }
}

/// `H` over itself: adjoint action and the coproduct as coaction.
pub fn self_base(h: &FinHopf) -> BaseAlgebra {
    let n = h.dim();
    let mult = (0..n).map(|i| (0..n).map(|j| h.mul_basis(i, j).to_vec()).collect()).collect();
    let action = (0..n)
        .map(|x| {
            let cols: Vec<Vector> = (0..n).map(|l| h.adjoint(&h.basis(x), &h.basis(l))).collect();
            Matrix::from_fn(n, n, |r, c| cols[c][r].clone())
        })
        .collect();
    let coaction = (0..n).map(|l| h.comult_basis(l).clone()).collect();
    let degrees = h.grading().map(|(d, _)| d.clone());
    BaseAlgebra::new(
        &format!("{} over itself", h.name),
        h,
        mult,
        h.unit().to_vec(),
        action,
        coaction,
        degrees,
    )
    .expect("consistent by construction")
}

/// `H_k` as a base algebra over `H0 ⊗ H1`: the adjoint action restricted to
/// `H_k` and the coproduct of `H_k` with its left leg embedded in `H`.
pub fn base_reduction(h0: &FinHopf, h1: &FinHopf, k: usize) -> BaseAlgebra {
    let h = FinHopf::tensor(h0, h1);
    let hk = if k == 0 { h0 } else { h1 };
    let other = if k == 0 { h1 } else { h0 };
    let n = hk.dim();
    let n1 = h1.dim();
    assert!(
        other.unit().iter().skip(1).all(|x| x.is_zero()) && !other.unit()[0].is_zero(),
        "unit is the first basis element"
    );
    // e_i of H_k sits in H at `embed(i)`, tensored with the unit of the other factor
    let embed = |i: usize| if k == 0 { i * n1 } else { i };
    let scale = other.unit()[0].clone();
    let lift = |v: &[Q]| -> Vector {
        let mut out = vec![Q::zero(); h.dim()];
        for (i, x) in nonzero(v) {
            out[embed(i)] = x * &scale;
        }
        out
    };
    let lower = |v: &[Q]| -> Vector { (0..n).map(|i| &v[embed(i)] / &scale).collect() };
    let mult = (0..n)
        .map(|i| (0..n).map(|j| hk.mul_basis(i, j).to_vec()).collect())
        .collect();
    let action = (0..h.dim())
        .map(|x| {
            let cols: Vec<Vector> = (0..n).map(|l| lower(&h.adjoint(&h.basis(x), &lift(&hk.basis(l))))).collect();
            Matrix::from_fn(n, n, |r, c| cols[c][r].clone())
        })
        .collect();
    let coaction = (0..n)
        .map(|l| {
            let mut m = Matrix::zeros(h.dim(), n);
            for (a, b, c) in entries(hk.comult_basis(l)) {
                for (p, y) in nonzero(&lift(&hk.basis(a))) {
                    let cur = m.get(p, b) + &c * y;
                    m.set(p, b, cur);
                }
            }
            m
        })
        .collect();
    BaseAlgebra::new(
        &format!("{} over {}", hk.name, h.name),
        &h,
        mult,
        hk.unit().to_vec(),
        action,
        coaction,
        None,
    )
    .expect("consistent by construction")
}

/// `τ_A(ℓ ⊗ a) = ℓ(1) ▷ a ⊗ ℓ[2]` for `A = H` with the left regular action,
/// as a matrix on `L ⊗ A -> A ⊗ L`.
fn tau_regular(h: &FinHopf, l: &BaseAlgebra) -> Matrix<Q> {
    let (nl, nh) = (l.dim(), h.dim());
    let mut t = Matrix::zeros(nh * nl, nl * nh);
    for li in 0..nl {
        for a in 0..nh {
            for (p, q, c) in entries(&l.coaction[li]) {
                for (r, y) in nonzero(h.mul_basis(p, a)) {
                    let cur = t.get(r * nl + q, li * nh + a) + &c * y;
                    t.set(r * nl + q, li * nh + a, cur);
                }
            }
        }
    }
    t
}

/// `a ⊗ ℓ ↦ ℓ[2] ⊗ S^{-1}(ℓ(1)) a`.
fn tau_regular_inverse(h: &FinHopf, l: &BaseAlgebra) -> Option<Matrix<Q>> {
    let (nl, nh) = (l.dim(), h.dim());
    let sinv = h.antipode_matrix().inverse()?;
    let mut t = Matrix::zeros(nl * nh, nh * nl);
    for a in 0..nh {
        for li in 0..nl {
            for (p, q, c) in entries(&l.coaction[li]) {
                let s = h.mul(&sinv.column(p), &h.basis(a));
                for (r, y) in nonzero(&s) {
                    let cur = t.get(q * nh + r, a * nl + li) + &c * y;
                    t.set(q * nh + r, a * nl + li, cur);
                }
            }
        }
    }
    Some(t)
}

/// Checks every condition of a base algebra on all basis tuples in range,
/// and that `τ` on the left regular module is equivariant and invertible.
pub fn check_base_algebra(h: &FinHopf, l: &BaseAlgebra) -> Report {
    let (nh, nl) = (h.dim(), l.dim());
    let mut rep = Report::default();
    let hdeg = |i: usize| h.degree(i);
    let cap = h.grading().map(|g| g.1);
    let fits = |d: usize| cap.is_none_or(|c| d <= c);

    let assoc = (0..nl)
        .flat_map(|i| (0..nl).flat_map(move |j| (0..nl).map(move |k| (i, j, k))))
        .filter(|&(i, j, k)| fits(l.degree(i) + l.degree(j) + l.degree(k)))
        .find(|&(i, j, k)| {
            l.mul(&l.mul(&l.basis(i), &l.basis(j)), &l.basis(k)) != l.mul(&l.basis(i), &l.mul(&l.basis(j), &l.basis(k)))
        });
    let unit = (0..nl).find(|&i| l.mul(&l.unit, &l.basis(i)) != l.basis(i) || l.mul(&l.basis(i), &l.unit) != l.basis(i));
    rep.push(
        "L is a unital associative algebra",
        assoc
            .map(|t| format!("at basis triple {t:?}"))
            .or(unit.map(|i| format!("unit fails at ℓ_{i}"))),
    );

    let module = (0..nh)
        .flat_map(|x| (0..nh).flat_map(move |y| (0..nl).map(move |k| (x, y, k))))
        .filter(|&(x, y, k)| fits(hdeg(x) + hdeg(y) + l.degree(k)))
        .find(|&(x, y, k)| l.act(h.mul_basis(x, y), &l.basis(k)) != l.act(&h.basis(x), &l.act(&h.basis(y), &l.basis(k))))
        .map(|t| format!("(xy)▷ℓ != x▷(y▷ℓ) at {t:?}"))
        .or_else(|| {
            (0..nl)
                .find(|&k| l.act(h.unit(), &l.basis(k)) != l.basis(k))
                .map(|k| format!("1▷ℓ_{k} != ℓ_{k}"))
        });
    rep.push("H-module", module);

    let module_algebra = (0..nh)
        .flat_map(|x| (0..nl).flat_map(move |i| (0..nl).map(move |j| (x, i, j))))
        .filter(|&(x, i, j)| fits(hdeg(x) + l.degree(i) + l.degree(j)))
        .find(|&(x, i, j)| {
            let lhs = l.act(&h.basis(x), &l.mul(&l.basis(i), &l.basis(j)));
            let mut rhs = vec![Q::zero(); nl];
            for (a, b, c) in entries(h.comult_basis(x)) {
                axpy(
                    &mut rhs,
                    &c,
                    &l.mul(&l.act(&h.basis(a), &l.basis(i)), &l.act(&h.basis(b), &l.basis(j))),
                );
            }
            lhs != rhs
        })
        .map(|t| format!("x▷(ℓℓ') != (x(1)▷ℓ)(x(2)▷ℓ') at {t:?}"))
        .or_else(|| {
            (0..nh)
                .find(|&x| {
                    let e = h.counit(&h.basis(x));
                    l.act(&h.basis(x), &l.unit) != l.unit.iter().map(|u| u * &e).collect::<Vector>()
                })
                .map(|x| format!("e_{x}▷1 != ε(e_{x})1"))
        });
    rep.push("module algebra", module_algebra);

    let comodule = (0..nl)
        .find(|&k| {
            let left = h.comult_left(&l.coaction[k], nl);
            let mut right = vec![Q::zero(); nh * nh * nl];
            for (a, p, x) in entries(&l.coaction[k]) {
                for (b, c, y) in entries(&l.coaction[p]) {
                    right[(a * nh + b) * nl + c] += &x * &y;
                }
            }
            left != right
        })
        .map(|k| format!("(Δ⊗id)δ != (id⊗δ)δ at ℓ_{k}"))
        .or_else(|| {
            (0..nl)
                .find(|&k| {
                    let mut v = vec![Q::zero(); nl];
                    for (a, b, x) in entries(&l.coaction[k]) {
                        v[b] += &x * h.counit(&h.basis(a));
                    }
                    v != l.basis(k)
                })
                .map(|k| format!("(ε⊗id)δ != id at ℓ_{k}"))
        });
    rep.push("H-comodule", comodule);

    let comodule_algebra = (0..nl)
        .flat_map(|i| (0..nl).map(move |j| (i, j)))
        .filter(|&(i, j)| fits(l.degree(i) + l.degree(j)))
        .find(|&(i, j)| {
            let lhs = l.coact(&l.mul(&l.basis(i), &l.basis(j)));
            let mut rhs = Matrix::zeros(nh, nl);
            for (a, b, x) in entries(&l.coaction[i]) {
                for (c, d, y) in entries(&l.coaction[j]) {
                    let hv = h.mul_basis(a, c);
                    let lv = l.mul(&l.basis(b), &l.basis(d));
                    for (p, u) in nonzero(hv) {
                        for (q, v) in nonzero(&lv) {
                            let cur = rhs.get(p, q) + &x * &y * u * v;
                            rhs.set(p, q, cur);
                        }
                    }
                }
            }
            lhs != rhs
        })
        .map(|t| format!("δ(ℓℓ') != δ(ℓ)δ(ℓ') at {t:?}"))
        .or_else(|| {
            let mut one = Matrix::zeros(nh, nl);
            for (p, u) in nonzero(h.unit()) {
                for (q, v) in nonzero(&l.unit) {
                    one.set(p, q, u * v);
                }
            }
            (l.coact(&l.unit) != one).then(|| "δ(1) != 1 ⊗ 1".to_string())
        });
    rep.push("comodule algebra", comodule_algebra);

    // {x(1)▷ℓ}(1) x(2) ⊗ {x(1)▷ℓ}[2] = x(1) ℓ(1) ⊗ x(2)▷ℓ[2]
    let yd = (0..nh)
        .flat_map(|x| (0..nl).map(move |k| (x, k)))
        .filter(|&(x, k)| fits(hdeg(x) + l.degree(k)))
        .find(|&(x, k)| {
            let mut lhs = Matrix::zeros(nh, nl);
            let mut rhs = Matrix::zeros(nh, nl);
            for (a, b, c) in entries(h.comult_basis(x)) {
                let moved = l.act(&h.basis(a), &l.basis(k));
                for (p, q, y) in entries(&l.coact(&moved)) {
                    for (r, u) in nonzero(h.mul_basis(p, b)) {
                        let cur = lhs.get(r, q) + &c * &y * u;
                        lhs.set(r, q, cur);
                    }
                }
                for (p, q, y) in entries(&l.coaction[k]) {
                    let hv = h.mul_basis(a, p);
                    let lv = l.act(&h.basis(b), &l.basis(q));
                    for (r, u) in nonzero(hv) {
                        for (s, v) in nonzero(&lv) {
                            let cur = rhs.get(r, s) + &c * &y * u * v;
                            rhs.set(r, s, cur);
                        }
                    }
                }
            }
            lhs != rhs
        });
    rep.push(
        "Yetter–Drinfeld compatibility",
        yd.map(|(x, k)| format!("violated at (e_{x}, ℓ_{k})")),
    );

    // ℓ1 ℓ2 = (ℓ1(1) ▷ ℓ2) ℓ1[2]
    let qc = (0..nl)
        .flat_map(|i| (0..nl).map(move |j| (i, j)))
        .filter(|&(i, j)| fits(l.degree(i) + l.degree(j)))
        .find(|&(i, j)| {
            let mut rhs = vec![Q::zero(); nl];
            for (p, q, c) in entries(&l.coaction[i]) {
                axpy(&mut rhs, &c, &l.mul(&l.act(&h.basis(p), &l.basis(j)), &l.basis(q)));
            }
            l.mul(&l.basis(i), &l.basis(j)) != rhs
        });
    rep.push("τ-commutativity", qc.map(|(i, j)| format!("violated at (ℓ_{i}, ℓ_{j})")));

    let tau = tau_regular(h, l);
    let in_range_pair = |li: usize, a: usize| fits(l.degree(li) + hdeg(a));
    let equiv = (0..nh)
        .flat_map(|x| (0..nl).flat_map(move |li| (0..nh).map(move |a| (x, li, a))))
        .filter(|&(x, li, a)| fits(hdeg(x) + l.degree(li) + hdeg(a)))
        .find(|&(x, li, a)| {
            // x ▷ (ℓ ⊗ a) in L ⊗ A, then τ
            let mut src = vec![Q::zero(); nl * nh];
            for (p, q, c) in entries(h.comult_basis(x)) {
                let lv = l.act(&h.basis(p), &l.basis(li));
                let av = h.mul_basis(q, a);
                for (i, u) in nonzero(&lv) {
                    for (j, v) in nonzero(av) {
                        src[i * nh + j] += &c * u * v;
                    }
                }
            }
            let lhs = tau.mul_vec(&src);
            let t = tau.column(li * nh + a);
            let mut rhs = vec![Q::zero(); nh * nl];
            for (p, q, c) in entries(h.comult_basis(x)) {
                for (idx, w) in nonzero(&t) {
                    let (r, s) = (idx / nl, idx % nl);
                    let av = h.mul_basis(p, r);
                    let lv = l.act(&h.basis(q), &l.basis(s));
                    for (i, u) in nonzero(av) {
                        for (j, v) in nonzero(&lv) {
                            rhs[i * nl + j] += &c * w * u * v;
                        }
                    }
                }
            }
            lhs != rhs
        });
    rep.push("τ is H-equivariant", equiv.map(|t| format!("at (e_x, ℓ, a) = {t:?}")));

    let inverse = match tau_regular_inverse(h, l) {
        None => Some("antipode is not invertible".to_string()),
        Some(inv) => {
            let a = inv.mul(&tau);
            let b = tau.mul(&inv);
            let bad_a = (0..nl * nh).find(|&c| in_range_pair(c / nh, c % nh) && a.column(c) != unit_vector(nl * nh, c));
            let bad_b = (0..nh * nl).find(|&c| in_range_pair(c % nl, c / nl) && b.column(c) != unit_vector(nh * nl, c));
            bad_a
                .map(|c| format!("τ^{{-1}}τ != id at column {c}"))
                .or(bad_b.map(|c| format!("ττ^{{-1}} != id at column {c}")))
        }
    };
    rep.push("τ is invertible", inverse);
    rep
}

/// `Q[Z/2 × Z/2] = span{1, a, b, ab}` over `Q[Z/2]`, the generator swapping
/// `a` and `b`, with trivial coaction. Index of `a^i b^j` is `2j + i`.
pub fn swap_algebra() -> (FinHopf, BaseAlgebra) {
    let h = FinHopf::cyclic(2);
    let idx = |i: usize, j: usize| 2 * j + i;
    let mult = (0..4)
        .map(|x| {
            (0..4)
                .map(|y| unit_vector(4, idx((x % 2 + y % 2) % 2, (x / 2 + y / 2) % 2)))
                .collect()
        })
        .collect();
    let swap = Matrix::from_fn(4, 4, |r, c| if r == idx(c / 2, c % 2) { Q::one() } else { Q::zero() });
    let action = vec![Matrix::identity(4), swap];
    let coaction = (0..4)
        .map(|k| Matrix::from_fn(2, 4, |p, q| if p == 0 && q == k { Q::one() } else { Q::zero() }))
        .collect();
    let l = BaseAlgebra::new("Q[Z/2 × Z/2] with swap", &h, mult, unit_vector(4, 0), action, coaction, None).expect("consistent");
    (h, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_algebras_are_base_algebras_over_themselves() {
        for h in [
            FinHopf::cyclic(2),
            FinHopf::cyclic(3),
            FinHopf::sweedler(),
            FinHopf::truncated_uh(2, 3),
        ] {
            let r = check_base_algebra(&h, &self_base(&h));
            assert!(r.passed(), "{}: {:?}", h.name, r.lines());
        }
    }

    #[test]
    fn tensor_factors_are_base_algebras() {
        let (z2, z3) = (FinHopf::cyclic(2), FinHopf::cyclic(3));
        for (a, b) in [(&z2, &z2), (&z2, &z3), (&FinHopf::sweedler(), &z2)] {
            for k in 0..2 {
                let l = base_reduction(a, b, k);
                let r = check_base_algebra(&FinHopf::tensor(a, b), &l);
                assert!(r.passed(), "{}: {:?}", l.name, r.lines());
            }
        }
    }

    #[test]
    fn opposite_coproduct_breaks_sweedler() {
        let h = FinHopf::sweedler();
        let l = self_base(&h);
        let op = (0..4).map(|i| h.comult_basis(i).transpose()).collect();
        let r = check_base_algebra(&h, &l.with_coaction(op));
        assert!(r.failure("Yetter–Drinfeld compatibility").is_some());
    }

    #[test]
    fn swap_algebra_and_a_grading_coaction() {
        let (h, l) = swap_algebra();
        assert!(check_base_algebra(&h, &l).passed());
        // δ(a^i b^j) = g^i ⊗ a^i b^j: a comodule algebra that does not commute
        // with the swap
        let graded = (0..4)
            .map(|k| Matrix::from_fn(2, 4, |p, q| if p == k % 2 && q == k { Q::one() } else { Q::zero() }))
            .collect();
        let r = check_base_algebra(&h, &l.with_coaction(graded));
        assert!(r.failure("H-comodule").is_none());
        assert!(r.failure("comodule algebra").is_none());
        assert!(r.failure("Yetter–Drinfeld compatibility").is_some());
    }
}
