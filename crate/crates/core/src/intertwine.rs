//! Intertwiners `Φ: M_λ -> M_μ ⊗ V`, solved grade by grade from the
//! condition that `Φ(x_λ)` is killed by `n_l^+`.
//!
//! `Φ(x_λ) = Σ_d Ψ_d` with `Ψ_0 = x_μ ⊗ v`. A raising root vector `y` of
//! c-degree `e` maps grade `d` to grade `d - e`, so grade `d` is fixed by
//! `(y ⊗ 1) Ψ_d = -(1 ⊗ y) Ψ_{d-e}` for all `y ∈ n_l^+`.

use crate::error::{Error, Result};
use crate::repcat::{weight_component, Rep};
use crate::rootdata::{GenClass, LeviDatum};
use crate::verma::{Induced, LeviModule, Mono, Side, Verma};
use dynquant_scalars::{solve_linear, Field, Matrix, Solution, Q};
use std::collections::BTreeMap;

/// Element of `M_μ ⊗ V`, keyed by (Verma monomial, basis index of `V`).
pub type TensorElem<F> = BTreeMap<(Mono, usize), F>;

/// Depth needed by a module: c-degree of highest minus lowest weight.
pub fn d_min(levi: &LeviDatum, v: &Rep) -> usize {
    levi.d_min(v.weights())
}

/// `μ` when every coordinate is a number.
fn numeric(mu: &[impl Field]) -> Option<Vec<Q>> {
    mu.iter().map(|x| x.to_q()).collect()
}

/// Raise `NonGeneric` when `μ` is numeric and lies in `Y`.
pub fn check_generic<F: Field>(levi: &LeviDatum, mu: &[F]) -> Result<()> {
    match numeric(mu) {
        Some(m) => levi.require_generic(&m),
        None => Ok(()),
    }
}

/// Solution of the grade-by-grade system.
#[derive(Clone, Debug)]
pub struct Extension<F: Field> {
    pub mu: Vec<F>,
    /// `grades[d]` is `Ψ_d`.
    pub grades: Vec<TensorElem<F>>,
    /// Number of unknowns over all grades.
    pub unknowns: usize,
    pub depth: usize,
}

impl<F: Field> Extension<F> {
    /// Degree bound in `λ`: all coefficients share one denominator `δ` (a
    /// maximal minor of the full system) and `deg P, deg δ` are at most this.
    /// System entries have degree at most the monomial length, hence `depth`.
    pub fn degree_bound(&self) -> u64 {
        (self.unknowns * self.depth) as u64
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, usize), &F)> {
        self.grades.iter().flat_map(|g| g.iter())
    }
}

fn add_to<F: Field>(acc: &mut BTreeMap<(usize, Mono, usize), F>, key: (usize, Mono, usize), c: F) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(key).or_insert_with(F::zero);
    *e = e.plus(&c);
}

/// The unique `Ψ ∈ M_μ ⊗ V` up to grade `depth` with leading term
/// `x_μ ⊗ leading` and `(y ⊗ 1 + 1 ⊗ y) Ψ = 0` for `y ∈ n_l^+`.
///
/// `leading` must be a weight vector. No genericity test is made here; a
/// singular grade system is reported as `NonGenericSingular`.
pub fn solve_extension<F: Field>(levi: &LeviDatum, v: &Rep, leading: &[Q], mu: &[F], depth: usize) -> Result<Extension<F>> {
    let support: Vec<usize> = (0..v.dim()).filter(|&j| !leading[j].is_zero()).collect();
    let Some(&first) = support.first() else {
        return Err(Error::WeightMismatch);
    };
    let target = v.weight(first).to_vec();
    if support.iter().any(|&j| v.weight(j) != target.as_slice()) {
        return Err(Error::WeightMismatch);
    }
    let verma: Verma<F> = Verma::new(levi, mu, Side::Plus, depth);
    let raising: Vec<usize> = levi.gens_of(GenClass::NlPlus);
    let mut grades: Vec<TensorElem<F>> = Vec::new();
    let mut g0 = TensorElem::new();
    for &j in &support {
        g0.insert((vec![], j), F::from_q(&leading[j]));
    }
    grades.push(g0);
    let mut solved = 0;
    for d in 1..=depth {
        let mut unknowns: Vec<(Mono, usize)> = Vec::new();
        for m in verma.basis(d) {
            let rw = verma.relative_weight(m);
            for j in 0..v.dim() {
                if rw.iter().zip(v.weight(j)).map(|(a, b)| a + b).eq(target.iter().copied()) {
                    unknowns.push((m.clone(), j));
                }
            }
        }
        let mut lhs: Vec<BTreeMap<(usize, Mono, usize), F>> = vec![BTreeMap::new(); unknowns.len()];
        let mut rhs: BTreeMap<(usize, Mono, usize), F> = BTreeMap::new();
        for &y in &raising {
            let e = levi.c_degree(y) as usize;
            if e > d {
                continue;
            }
            for (col, (m, j)) in unknowns.iter().enumerate() {
                for (m2, c) in verma.act(y, m) {
                    add_to(&mut lhs[col], (y, m2, *j), c);
                }
            }
            let rho = v.matrix(y);
            for ((m, j), c) in &grades[d - e] {
                for r in 0..v.dim() {
                    let k = rho.get(r, *j);
                    if !k.is_zero() {
                        add_to(&mut rhs, (y, m.clone(), r), c.scale(k).negate());
                    }
                }
            }
        }
        let mut keys: Vec<(usize, Mono, usize)> = lhs.iter().flat_map(|col| col.keys().cloned()).collect();
        keys.extend(rhs.keys().cloned());
        keys.sort();
        keys.dedup();
        let a = Matrix::from_fn(keys.len(), unknowns.len(), |r, c| {
            lhs[c].get(&keys[r]).cloned().unwrap_or_else(F::zero)
        });
        let b: Vec<F> = keys.iter().map(|k| rhs.get(k).cloned().unwrap_or_else(F::zero)).collect();
        let mut grade = TensorElem::new();
        if unknowns.is_empty() {
            if b.iter().any(|x| !x.is_zero()) {
                return Err(Error::NonGenericSingular { grade: d });
            }
        } else {
            match solve_linear(&a, &b) {
                Solution::Unique(x) => {
                    for (key, val) in unknowns.into_iter().zip(x) {
                        if !val.is_zero() {
                            grade.insert(key, val);
                        }
                    }
                }
                _ => return Err(Error::NonGenericSingular { grade: d }),
            }
            solved += a.cols();
        }
        grades.push(grade);
    }
    Ok(Extension {
        mu: mu.to_vec(),
        grades,
        unknowns: solved,
        depth,
    })
}

/// Solution of `A x = b` for every column `b` of `rhs`, when `A` has full
/// column rank and every system is consistent.
fn solve_columns<F: Field>(a: &Matrix<F>, rhs: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let (n, k) = (a.rows(), a.cols());
    let aug = Matrix::from_fn(n, k + rhs.len(), |r, c| {
        if c < k {
            a.get(r, c).clone()
        } else {
            rhs[c - k][r].clone()
        }
    });
    let (red, pivots) = aug.rref();
    if pivots.len() < k || pivots[..k].iter().enumerate().any(|(i, &p)| p != i) || pivots.len() > k {
        return None;
    }
    Some(
        (0..rhs.len())
            .map(|l| (0..k).map(|i| red.get(i, k + l).clone()).collect())
            .collect(),
    )
}

/// `n_l^+`-invariant lifts in `M_X ⊗ W` of every basis vector `ξ ⊗ w` of
/// `X ⊗ W`, where `X` is a finite-dimensional `l`-module.
#[derive(Clone, Debug)]
pub struct Lift<F: Field> {
    pub x_dim: usize,
    pub w_dim: usize,
    /// Column `ξ · dim W + j`: coefficients keyed by `(m, ξ', j')`.
    pub columns: Vec<BTreeMap<(Mono, usize, usize), F>>,
    /// Leads of equal weight share one system, so all their coefficients
    /// are `P/δ` over one minor `δ`; system entries have degree at most one
    /// in `λ`, so `deg P, deg δ` are at most the number of unknowns. This is
    /// the sum of those counts over the weight classes.
    pub degree_bound: u64,
}

pub fn lift_over<F: Field>(levi: &LeviDatum, base: LeviModule<F>, w: &Rep, depth: usize) -> Result<Lift<F>> {
    for c in base.c_characters() {
        check_generic(levi, c)?;
    }
    let module = Induced::new(levi, base, depth);
    let (dx, dw) = (module.base().dim(), w.dim());
    let raising = levi.gens_of(GenClass::NlPlus);
    let mut groups: BTreeMap<Vec<i64>, Vec<(usize, usize)>> = BTreeMap::new();
    for xi in 0..dx {
        for j in 0..dw {
            let t: Vec<i64> = module.base().weight(xi).iter().zip(w.weight(j)).map(|(a, b)| a + b).collect();
            groups.entry(t).or_default().push((xi, j));
        }
    }
    let mut columns = vec![BTreeMap::new(); dx * dw];
    let mut bound = 0u64;
    for (target, leads) in groups {
        // grades[d][l]: Ψ_d for lead l
        let mut grades: Vec<Vec<BTreeMap<(Mono, usize, usize), F>>> = vec![leads
            .iter()
            .map(|&(xi, j)| [((vec![], xi, j), F::one())].into_iter().collect())
            .collect()];
        for d in 1..=depth {
            let mut unknowns: Vec<(Mono, usize, usize)> = Vec::new();
            for m in module.basis(d) {
                let rw = module.relative_weight(m);
                for xi in 0..dx {
                    for j in 0..dw {
                        let ok = (0..target.len()).all(|k| rw[k] + module.base().weight(xi)[k] + w.weight(j)[k] == target[k]);
                        if ok {
                            unknowns.push((m.clone(), xi, j));
                        }
                    }
                }
            }
            type Key = (usize, Mono, usize, usize);
            let mut lhs: Vec<BTreeMap<Key, F>> = vec![BTreeMap::new(); unknowns.len()];
            let mut rhs: Vec<BTreeMap<Key, F>> = vec![BTreeMap::new(); leads.len()];
            let push = |acc: &mut BTreeMap<Key, F>, key: Key, c: F| {
                if !c.is_zero() {
                    let e = acc.entry(key).or_insert_with(F::zero);
                    *e = e.plus(&c);
                }
            };
            for &y in &raising {
                let e = levi.c_degree(y) as usize;
                if e > d {
                    continue;
                }
                for (col, (m, xi, j)) in unknowns.iter().enumerate() {
                    for (m2, a) in module.act(y, m) {
                        for r in 0..dx {
                            push(&mut lhs[col], (y, m2.clone(), r, *j), a.get(r, *xi).clone());
                        }
                    }
                }
                let rho = w.matrix(y);
                for (l, prev) in grades[d - e].iter().enumerate() {
                    for ((m, xi, j), c) in prev {
                        for r in 0..dw {
                            let k = rho.get(r, *j);
                            if !k.is_zero() {
                                push(&mut rhs[l], (y, m.clone(), *xi, r), c.scale(k).negate());
                            }
                        }
                    }
                }
            }
            let mut keys: Vec<Key> = lhs.iter().chain(&rhs).flat_map(|c| c.keys().cloned()).collect();
            keys.sort();
            keys.dedup();
            let a = Matrix::from_fn(keys.len(), unknowns.len(), |r, c| {
                lhs[c].get(&keys[r]).cloned().unwrap_or_else(F::zero)
            });
            let b: Vec<Vec<F>> = rhs
                .iter()
                .map(|col| keys.iter().map(|k| col.get(k).cloned().unwrap_or_else(F::zero)).collect())
                .collect();
            let sols = if unknowns.is_empty() {
                if b.iter().flatten().any(|x| !x.is_zero()) {
                    return Err(Error::NonGenericSingular { grade: d });
                }
                vec![vec![]; leads.len()]
            } else {
                solve_columns(&a, &b).ok_or(Error::NonGenericSingular { grade: d })?
            };
            bound += unknowns.len() as u64;
            grades.push(
                sols.into_iter()
                    .map(|x| unknowns.iter().cloned().zip(x).filter(|(_, c)| !c.is_zero()).collect())
                    .collect(),
            );
        }
        for (l, &(xi, j)) in leads.iter().enumerate() {
            let col = &mut columns[xi * dw + j];
            for g in &grades {
                col.extend(g[l].iter().map(|(k, c)| (k.clone(), c.clone())));
            }
        }
    }
    Ok(Lift {
        x_dim: dx,
        w_dim: dw,
        columns,
        degree_bound: bound,
    })
}

/// An intertwiner `M_λ -> M_μ ⊗ V`, `μ = λ - ν`, stored by `Φ(x_λ)`.
#[derive(Clone, Debug)]
pub struct Intertwiner<F: Field> {
    pub lambda: Vec<F>,
    pub nu: Vec<Q>,
    pub leading: Vec<Q>,
    pub depth: usize,
    pub image: Extension<F>,
}

/// Intertwiner with leading term `x_μ ⊗ v`, where `μ = λ - ν` and `v` must lie
/// in `V[ν]`.
pub fn build_intertwiner<F: Field>(
    levi: &LeviDatum,
    lambda: &[F],
    nu: &[Q],
    v: &Rep,
    leading: &[Q],
    depth: usize,
) -> Result<Intertwiner<F>> {
    let mu: Vec<F> = lambda.iter().zip(nu).map(|(l, n)| l.minus(&F::from_q(n))).collect();
    check_generic(levi, &mu)?;
    let comp = weight_component(v, levi, nu);
    let mut rows = comp.clone();
    let r0 = if comp.is_empty() { 0 } else { Matrix::from_rows(comp).rank() };
    rows.push(leading.to_vec());
    if leading.iter().all(|x| x.is_zero()) || Matrix::from_rows(rows).rank() != r0 {
        return Err(Error::WeightMismatch);
    }
    // l0-invariant vectors are killed by h ∩ l0, so `v` has a single h-weight
    let image = solve_extension(levi, v, leading, &mu, depth)?;
    Ok(Intertwiner {
        lambda: lambda.to_vec(),
        nu: nu.to_vec(),
        leading: leading.to_vec(),
        depth,
        image,
    })
}

/// Failures of `Φ(x · x_λ) = Δ(x) Φ(x_λ)`: (generator, grade) pairs.
#[derive(Clone, Debug, Default)]
pub struct IntertwinerReport {
    pub failures: Vec<(usize, usize)>,
}

impl IntertwinerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the relation for every raising, `l0` and Cartan generator, on the
/// grades where the truncated data determine both sides.
pub fn verify_intertwiner<F: Field>(levi: &LeviDatum, v: &Rep, phi: &Intertwiner<F>) -> IntertwinerReport {
    let rs = levi.root_system();
    let depth = phi.depth;
    let verma: Verma<F> = Verma::new(levi, &phi.image.mu, Side::Plus, depth);
    let lam_hat = levi.extend_character(&phi.lambda);
    let mut report = IntertwinerReport::default();
    for x in 0..rs.dim() {
        let class = levi.class(x);
        if class == GenClass::NlMinus {
            continue;
        }
        let e = levi.c_degree(x).max(0) as usize;
        let mut lhs: TensorElem<F> = TensorElem::new();
        for ((m, j), c) in phi.image.terms() {
            for (m2, k) in verma.act(x, m) {
                let key = (m2, *j);
                let val = lhs.get(&key).cloned().unwrap_or_else(F::zero).plus(&c.times(&k));
                lhs.insert(key, val);
            }
            let rho = v.matrix(x);
            for r in 0..v.dim() {
                let k = rho.get(r, *j);
                if !k.is_zero() {
                    let key = (m.clone(), r);
                    let val = lhs.get(&key).cloned().unwrap_or_else(F::zero).plus(&c.scale(k));
                    lhs.insert(key, val);
                }
            }
        }
        // expected: Φ(x x_λ) = λ̂(x) Φ(x_λ) for Cartan x, zero otherwise
        let mut expect: TensorElem<F> = TensorElem::new();
        if let crate::rootdata::GenKind::Cartan { k } = rs.gen(x).kind {
            for (key, c) in phi.image.terms() {
                expect.insert(key.clone(), c.times(&lam_hat[k]));
            }
        }
        let mut bad = std::collections::BTreeSet::new();
        for key in lhs.keys().chain(expect.keys()) {
            let g = verma.grade(&key.0);
            if g + e > depth {
                continue;
            }
            let a = lhs.get(key).cloned().unwrap_or_else(F::zero);
            let b = expect.get(key).cloned().unwrap_or_else(F::zero);
            if a != b {
                bad.insert(g);
            }
        }
        report.failures.extend(bad.into_iter().map(|g| (x, g)));
    }
    report
}

/// `dim Hom(M_λ, M_μ ⊗ V)` for numeric `λ`, `μ = λ - ν`, as the nullity of
/// the full homogeneous system through grade `depth`.
pub fn hom_dimension(levi: &LeviDatum, lambda: &[Q], nu: &[Q], v: &Rep, depth: usize) -> Result<usize> {
    let need = d_min(levi, v);
    if depth < need {
        return Err(Error::DepthInsufficient { need, got: depth });
    }
    let mu: Vec<Q> = lambda.iter().zip(nu).map(|(l, n)| l - n).collect();
    levi.require_generic(&mu)?;
    let rs = levi.root_system();
    let verma: Verma<Q> = Verma::new(levi, &mu, Side::Plus, depth);
    let shift = levi.extend_character(nu);
    let mut unknowns: Vec<(Mono, usize)> = Vec::new();
    for d in 0..=depth {
        for m in verma.basis(d) {
            let rw = verma.relative_weight(m);
            for j in 0..v.dim() {
                let ok = rw
                    .iter()
                    .zip(v.weight(j))
                    .zip(&shift)
                    .all(|((a, b), s)| Q::from_i64(a + b) == *s);
                if ok {
                    unknowns.push((m.clone(), j));
                }
            }
        }
    }
    if unknowns.is_empty() {
        return Ok(0);
    }
    let ops: Vec<usize> = (0..rs.dim())
        .filter(|&a| matches!(levi.class(a), GenClass::NlPlus | GenClass::L0Plus | GenClass::L0Minus))
        .collect();
    let mut cols: Vec<BTreeMap<(usize, Mono, usize), Q>> = vec![BTreeMap::new(); unknowns.len()];
    for &y in &ops {
        let rho = v.matrix(y);
        for (c, (m, j)) in unknowns.iter().enumerate() {
            for (m2, k) in verma.act(y, m) {
                add_to(&mut cols[c], (y, m2, *j), k);
            }
            for r in 0..v.dim() {
                let k = rho.get(r, *j);
                if !k.is_zero() {
                    add_to(&mut cols[c], (y, m.clone(), r), k.clone());
                }
            }
        }
    }
    let mut keys: Vec<(usize, Mono, usize)> = cols.iter().flat_map(|c| c.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    if keys.is_empty() {
        return Ok(unknowns.len());
    }
    let a = Matrix::from_fn(keys.len(), unknowns.len(), |r, c| {
        cols[c].get(&keys[r]).cloned().unwrap_or_else(Q::zero)
    });
    Ok(unknowns.len() - a.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootSystem;
    use dynquant_scalars::{q, qi, RatFunc};

    fn sl2() -> (LeviDatum, Rep) {
        let g = RootSystem::sl(2).unwrap();
        (LeviDatum::new(&g, &[]).unwrap(), Rep::defining(&g))
    }

    #[test]
    fn trivial_module_gives_inclusion() {
        let (l, _) = sl2();
        let triv = Rep::trivial(l.root_system());
        let phi: Intertwiner<Q> = build_intertwiner(&l, &[q(1, 3)], &[qi(0)], &triv, &[qi(1)], 2).unwrap();
        assert_eq!(phi.image.terms().count(), 1);
        assert!(verify_intertwiner(&l, &triv, &phi).passed());
    }

    #[test]
    fn sl2_defining_intertwiners() {
        let (l, v) = sl2();
        let g = l.root_system().clone();
        let lam = RatFunc::var(0);
        // leading v_+: μ = λ - 1 and no room for higher terms
        let psi: Intertwiner<RatFunc> =
            build_intertwiner(&l, std::slice::from_ref(&lam), &[qi(1)], &v, &[qi(1), qi(0)], 1).unwrap();
        assert!(psi.image.grades[1].is_empty());
        // leading v_-: μ = λ + 1; e kills x_μ ⊗ v_- + c f x_μ ⊗ v_+ iff 1 + cμ = 0
        let phi: Intertwiner<RatFunc> =
            build_intertwiner(&l, std::slice::from_ref(&lam), &[qi(-1)], &v, &[qi(0), qi(1)], 1).unwrap();
        let mu = lam.plus(&RatFunc::one());
        let c = phi.image.grades[1].get(&(vec![g.f(0)], 0)).cloned().unwrap();
        assert_eq!(c, RatFunc::one().over(&mu).negate());
        assert_eq!(phi.image.grades[1].len(), 1);
        assert!(verify_intertwiner(&l, &v, &phi).passed());
    }

    #[test]
    fn corrupted_intertwiner_fails() {
        let (l, v) = sl2();
        let mut phi: Intertwiner<Q> = build_intertwiner(&l, &[q(1, 2)], &[qi(-1)], &v, &[qi(0), qi(1)], 1).unwrap();
        assert!(verify_intertwiner(&l, &v, &phi).passed());
        for c in phi.image.grades[1].values_mut() {
            *c += qi(1);
        }
        let rep = verify_intertwiner(&l, &v, &phi);
        assert!(!rep.passed());
        assert!(rep.failures.iter().all(|&(_, g)| g == 0));
    }

    #[test]
    fn weight_mismatch_and_genericity() {
        let (l, v) = sl2();
        let r: Result<Intertwiner<Q>> = build_intertwiner(&l, &[q(1, 2)], &[qi(1)], &v, &[qi(0), qi(1)], 1);
        assert_eq!(r.unwrap_err(), Error::WeightMismatch);
        let r: Result<Intertwiner<Q>> = build_intertwiner(&l, &[qi(3)], &[qi(1)], &v, &[qi(1), qi(0)], 1);
        assert!(r.unwrap_err().is_non_generic());
    }

    #[test]
    fn linear_in_leading_vector() {
        let g = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g, &[0]).unwrap();
        let c3 = Rep::defining(&g);
        let adj = crate::repcat::tensor(&c3, &crate::repcat::dual(&c3));
        let nu = [qi(0)];
        let comp = weight_component(&adj, &l, &nu);
        assert!(comp.len() >= 2);
        let lam = [q(2, 7)];
        let p1: Intertwiner<Q> = build_intertwiner(&l, &lam, &nu, &adj, &comp[0], 2).unwrap();
        let p2: Intertwiner<Q> = build_intertwiner(&l, &lam, &nu, &adj, &comp[1], 2).unwrap();
        let combo: Vec<Q> = comp[0].iter().zip(&comp[1]).map(|(a, b)| a * qi(3) - b * q(1, 2)).collect();
        let p: Intertwiner<Q> = build_intertwiner(&l, &lam, &nu, &adj, &combo, 2).unwrap();
        for d in 0..=2 {
            let mut keys: Vec<_> = p.image.grades[d]
                .keys()
                .chain(p1.image.grades[d].keys())
                .chain(p2.image.grades[d].keys())
                .cloned()
                .collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                let get = |x: &Intertwiner<Q>| x.image.grades[d].get(&k).cloned().unwrap_or_default();
                assert_eq!(get(&p), get(&p1) * qi(3) - get(&p2) * q(1, 2));
            }
        }
        assert!(verify_intertwiner(&l, &adj, &p).passed());
    }

    #[test]
    fn hom_dimensions() {
        let (l, v) = sl2();
        let lam = [q(3, 7)];
        assert_eq!(hom_dimension(&l, &lam, &[qi(1)], &v, 1).unwrap(), 1);
        assert_eq!(hom_dimension(&l, &lam, &[qi(2)], &v, 1).unwrap(), 0);
        let triv = Rep::trivial(l.root_system());
        assert_eq!(hom_dimension(&l, &lam, &[qi(0)], &triv, 0).unwrap(), 1);
        assert!(matches!(
            hom_dimension(&l, &lam, &[qi(1)], &v, 0),
            Err(Error::DepthInsufficient { need: 1, got: 0 })
        ));
        assert!(hom_dimension(&l, &[qi(4)], &[qi(1)], &v, 1).unwrap_err().is_non_generic());
    }

    #[test]
    fn hom_dimension_matches_weight_component_sl3() {
        let g = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g, &[0]).unwrap();
        let c3 = Rep::defining(&g);
        let v = crate::repcat::tensor(&c3, &crate::repcat::dual(&c3));
        let depth = d_min(&l, &v);
        for nu in [q(1, 2), qi(-1), q(3, 2), qi(0), q(-3, 2)] {
            let expect = weight_component(&v, &l, std::slice::from_ref(&nu)).len();
            assert_eq!(hom_dimension(&l, &[q(5, 7)], &[nu], &v, depth).unwrap(), expect);
        }
    }
    #[test]
    fn scalar_lift_matches_grade_solver() {
        let g = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g, &[0]).unwrap();
        let c3 = Rep::defining(&g);
        let v = crate::repcat::tensor(&c3, &c3);
        let lam = [q(3, 7)];
        let depth = d_min(&l, &v);
        let lift = lift_over(&l, LeviModule::scalar(&l, &lam), &v, depth).unwrap();
        for j in 0..v.dim() {
            let mut e = vec![qi(0); v.dim()];
            e[j] = qi(1);
            let ext: Extension<Q> = solve_extension(&l, &v, &e, &lam, depth).unwrap();
            let flat: BTreeMap<(Mono, usize), Q> = ext.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
            let other: BTreeMap<(Mono, usize), Q> = lift.columns[j]
                .iter()
                .map(|((m, _, j2), c)| ((m.clone(), *j2), c.clone()))
                .collect();
            assert_eq!(flat, other);
        }
    }

    #[test]
    fn lift_is_raising_invariant_over_nonscalar_base() {
        let g = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g, &[0]).unwrap();
        let c3 = Rep::defining(&g);
        let lam = [q(2, 7)];
        let base = LeviModule::twisted(&l, &lam, &c3);
        let lift = lift_over(&l, base.clone(), &c3, 1).unwrap();
        let module = Induced::new(&l, base, 2);
        for col in &lift.columns {
            for y in l.gens_of(GenClass::NlPlus) {
                let mut acc: BTreeMap<(Mono, usize, usize), Q> = BTreeMap::new();
                for ((m, xi, j), c) in col {
                    for (m2, a) in module.act(y, m) {
                        for r in 0..3 {
                            *acc.entry((m2.clone(), r, *j)).or_default() += c * a.get(r, *xi);
                        }
                    }
                    for r in 0..3 {
                        *acc.entry((m.clone(), *xi, r)).or_default() += c * c3.matrix(y).get(r, *j);
                    }
                }
                assert!(acc.values().all(|x| x.is_zero()));
            }
        }
    }
}
