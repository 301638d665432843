//! Finite-dimensional `sl_n`-modules as exact matrices: irreducibles,
//! duals, tensor products, `l0`-invariant weight components and
//! Clebsch–Gordan decompositions.

use crate::error::{Error, Result};
use crate::rootdata::{LeviDatum, RootSystem};
use dynquant_scalars::{qi, Field, Matrix, Q};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

/// A module with a weight basis. `matrices[a]` is the action of basis
/// element `a` of `g`.
#[derive(Clone, Debug)]
pub struct Rep {
    name: String,
    matrices: Vec<Matrix<Q>>,
    weights: Vec<Vec<i64>>,
    highest: Option<Vec<i64>>,
    /// For irreducibles: basis vector `c` is `f_i` applied to basis vector `p`.
    parents: Option<Vec<Option<(usize, usize)>>>,
}

impl Rep {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn matrix(&self, a: usize) -> &Matrix<Q> {
        &self.matrices[a]
    }

    pub fn matrices(&self) -> &[Matrix<Q>] {
        &self.matrices
    }

    pub fn weight(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn highest(&self) -> Option<&[i64]> {
        self.highest.as_deref()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 1 && self.matrices.iter().all(|m| m.is_zero())
    }

    pub fn trivial(rs: &RootSystem) -> Rep {
        irrep(rs, &vec![0; rs.rank()]).expect("zero weight is dominant")
    }

    pub fn defining(rs: &RootSystem) -> Rep {
        irrep(rs, &rs.fundamental(0)).expect("fundamental weight is dominant")
    }

    /// Action of an element of `g` given in the basis.
    pub fn action(&self, x: &[(usize, Q)]) -> Matrix<Q> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (a, c) in x {
            m = m.add(&self.matrices[*a].scale(c));
        }
        m
    }

    /// `ρ(π_c H_{k_i})`, diagonal in the weight basis.
    pub fn center_operator(&self, levi: &LeviDatum, i: usize) -> Matrix<Q> {
        let d: Vec<Q> = self.weights.iter().map(|w| levi.c_coords(w)[i].clone()).collect();
        Matrix::from_fn(self.dim(), self.dim(), |a, b| if a == b { d[a].clone() } else { Q::zero() })
    }

    /// `ρ([a, b]) = [ρ(a), ρ(b)]` for all basis pairs.
    pub fn is_module(&self, rs: &RootSystem) -> bool {
        (0..rs.dim())
            .all(|a| (0..rs.dim()).all(|b| self.matrices[a].commutator(&self.matrices[b]) == self.action(rs.bracket(a, b))))
    }

    /// Basis vectors are weight vectors for the recorded weights.
    pub fn weights_consistent(&self, rs: &RootSystem) -> bool {
        (0..rs.rank()).all(|k| {
            let h = &self.matrices[rs.h(k)];
            (0..self.dim()).all(|i| {
                (0..self.dim()).all(|j| {
                    let expect = if i == j { qi(self.weights[i][k]) } else { Q::zero() };
                    *h.get(i, j) == expect
                })
            })
        })
    }
}

/// `(u φ)(x) = φ(γ(u) x)`: the matrices are `-ρ(x)^T`.
pub fn dual(v: &Rep) -> Rep {
    Rep {
        name: format!("{}*", v.name),
        matrices: v.matrices.iter().map(|m| m.transpose().neg()).collect(),
        weights: v.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect(),
        highest: None,
        parents: None,
    }
}

/// `V ⊗ W` with basis `v_a ⊗ w_b` at index `a * dim W + b`.
pub fn tensor(v: &Rep, w: &Rep) -> Rep {
    let iv = Matrix::identity(v.dim());
    let iw = Matrix::identity(w.dim());
    let matrices = v
        .matrices
        .iter()
        .zip(&w.matrices)
        .map(|(x, y)| x.kron(&iw).add(&iv.kron(y)))
        .collect();
    let mut weights = Vec::with_capacity(v.dim() * w.dim());
    for a in &v.weights {
        for b in &w.weights {
            weights.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    Rep {
        name: format!("({}x{})", v.name, w.name),
        matrices,
        weights,
        highest: None,
        parents: None,
    }
}

/// Permutation matrix `V ⊗ W -> W ⊗ V`.
pub fn flip(dv: usize, dw: usize) -> Matrix<Q> {
    let mut p = Matrix::zeros(dv * dw, dv * dw);
    for a in 0..dv {
        for b in 0..dw {
            p.set(b * dv + a, a * dw + b, qi(1));
        }
    }
    p
}

type SparseVec = BTreeMap<Vec<u8>, Q>;

fn act_on_tensor(rs: &RootSystem, a: usize, v: &SparseVec) -> SparseVec {
    let m = rs.matrix(a);
    let n = rs.n();
    let mut out = SparseVec::new();
    for (t, c) in v {
        for (p, &j) in t.iter().enumerate() {
            for i in 0..n {
                let k = m.get(i, j as usize);
                if k.is_zero() {
                    continue;
                }
                let mut t2 = t.clone();
                t2[p] = i as u8;
                let e = out.entry(t2).or_insert_with(Q::zero);
                *e += c * k;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Row-echelon rows kept with their expression in the basis vectors.
#[derive(Default)]
struct Echelon {
    rows: Vec<(Vec<u8>, SparseVec, Vec<(usize, Q)>)>,
}

impl Echelon {
    /// Residual of `v` and the coordinates subtracted.
    fn reduce(&self, v: &SparseVec) -> (SparseVec, BTreeMap<usize, Q>) {
        let mut r = v.clone();
        let mut coords = BTreeMap::new();
        for (pivot, row, combo) in &self.rows {
            let Some(c) = r.get(pivot).cloned() else { continue };
            for (k, x) in row {
                let e = r.entry(k.clone()).or_insert_with(Q::zero);
                *e -= &c * x;
            }
            r.retain(|_, x| !x.is_zero());
            for (b, x) in combo {
                *coords.entry(*b).or_insert_with(Q::zero) += &c * x;
            }
        }
        coords.retain(|_, x: &mut Q| !x.is_zero());
        (r, coords)
    }

    /// Adds `v` (basis vector `idx`) if independent.
    fn insert(&mut self, v: &SparseVec, idx: usize) -> bool {
        let (r, coords) = self.reduce(v);
        let Some((pivot, pc)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = pc.recip();
        let row: SparseVec = r.iter().map(|(k, c)| (k.clone(), c * &inv)).collect();
        // row = (v - Σ coords_b b) / pc
        let mut combo = vec![(idx, inv.clone())];
        for (b, c) in coords {
            combo.push((b, -c * &inv));
        }
        self.rows.push((pivot, row, combo));
        true
    }
}

fn weyl_dimension(lambda: &[i64]) -> Q {
    let n = lambda.len() + 1;
    let mut d = qi(1);
    for i in 0..n {
        for j in i + 1..n {
            let s: i64 = (i..j).map(|k| lambda[k] + 1).sum();
            d *= Q::new(s.into(), ((j - i) as i64).into());
        }
    }
    d
}

fn irrep_cache() -> &'static Mutex<HashMap<(usize, Vec<i64>), Rep>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Vec<i64>), Rep>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Irreducible module of highest weight `lambda` (Dynkin labels), realized as
/// the cyclic submodule of `(C^n)^{⊗m}` generated by a product of wedges.
pub fn irrep(rs: &RootSystem, lambda: &[i64]) -> Result<Rep> {
    if lambda.len() != rs.rank() || lambda.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let key = (rs.n(), lambda.to_vec());
    if let Some(r) = irrep_cache().lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let rep = build_irrep(rs, lambda);
    irrep_cache().lock().unwrap().insert(key, rep.clone());
    Ok(rep)
}

fn build_irrep(rs: &RootSystem, lambda: &[i64]) -> Rep {
    // highest weight vector: ⊗_k (e_0 ∧ .. ∧ e_k)^{⊗ a_k}
    let mut hw: SparseVec = [(vec![], qi(1))].into_iter().collect();
    for (k, &a) in lambda.iter().enumerate() {
        let wedge = wedge_vector(k + 1);
        for _ in 0..a {
            let mut next = SparseVec::new();
            for (t, c) in &hw {
                for (u, d) in &wedge {
                    let mut tu = t.clone();
                    tu.extend(u);
                    next.insert(tu, c * d);
                }
            }
            hw = next;
        }
    }
    let mut vectors: Vec<SparseVec> = vec![hw];
    let mut weights: Vec<Vec<i64>> = vec![lambda.to_vec()];
    let mut parents: Vec<Option<(usize, usize)>> = vec![None];
    let mut spaces: BTreeMap<Vec<i64>, (Echelon, Vec<usize>)> = BTreeMap::new();
    {
        let (e, members) = spaces.entry(lambda.to_vec()).or_default();
        e.insert(&vectors[0], 0);
        members.push(0);
    }
    let mut next = 0;
    while next < vectors.len() {
        for i in 0..rs.rank() {
            let u = act_on_tensor(rs, rs.f(i), &vectors[next]);
            if u.is_empty() {
                continue;
            }
            let w: Vec<i64> = weights[next]
                .iter()
                .zip(&rs.gen(rs.f(i)).weight)
                .map(|(x, y)| x + y)
                .collect();
            let idx = vectors.len();
            let (e, members) = spaces.entry(w.clone()).or_default();
            if e.insert(&u, idx) {
                members.push(idx);
                vectors.push(u);
                weights.push(w);
                parents.push(Some((next, i)));
            }
        }
        next += 1;
    }
    let dim = vectors.len();
    assert_eq!(
        qi(dim as i64),
        weyl_dimension(lambda),
        "cyclic submodule dimension disagrees with the Weyl formula"
    );
    let matrices = (0..rs.dim())
        .map(|a| {
            let mut m = Matrix::zeros(dim, dim);
            for c in 0..dim {
                let u = act_on_tensor(rs, a, &vectors[c]);
                if u.is_empty() {
                    continue;
                }
                let w: Vec<i64> = weights[c].iter().zip(&rs.gen(a).weight).map(|(x, y)| x + y).collect();
                let (e, _) = spaces.get(&w).expect("image lies in a known weight space");
                let (res, coords) = e.reduce(&u);
                assert!(res.is_empty(), "cyclic submodule not closed");
                for (b, x) in coords {
                    m.set(b, c, x);
                }
            }
            m
        })
        .collect();
    let label: Vec<String> = lambda.iter().map(|x| x.to_string()).collect();
    Rep {
        name: format!("{}[{}]", rs.name(), label.join(",")),
        matrices,
        weights,
        highest: Some(lambda.to_vec()),
        parents: Some(parents),
    }
}

fn wedge_vector(k: usize) -> SparseVec {
    let mut out = SparseVec::new();
    let mut perm: Vec<u8> = (0..k as u8).collect();
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        out.insert(p.to_vec(), qi(if inversions % 2 == 0 { 1 } else { -1 }));
    });
    out
}

fn permutations(p: &mut Vec<u8>, start: usize, f: &mut impl FnMut(&[u8])) {
    if start == p.len() {
        f(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permutations(p, start + 1, f);
        p.swap(start, i);
    }
}

/// Basis of `V[ν]`: `l0`-invariant vectors whose restriction to `c` is `ν`.
pub fn weight_component(v: &Rep, levi: &LeviDatum, nu: &[Q]) -> Vec<Vec<Q>> {
    let idx: Vec<usize> = (0..v.dim()).filter(|&i| levi.c_coords(v.weight(i)) == nu).collect();
    if idx.is_empty() {
        return vec![];
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for a in levi.l0_roots() {
        let m = v.matrix(a);
        for r in 0..v.dim() {
            rows.push(idx.iter().map(|&c| m.get(r, c).clone()).collect());
        }
    }
    let kernel = if rows.is_empty() {
        (0..idx.len())
            .map(|i| (0..idx.len()).map(|j| qi((i == j) as i64)).collect())
            .collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    kernel
        .into_iter()
        .map(|k| {
            let mut full = vec![Q::zero(); v.dim()];
            for (c, x) in idx.iter().zip(k) {
                full[*c] = x;
            }
            full
        })
        .collect()
}

/// One isotypic copy inside `E1 ⊗ E2`.
#[derive(Clone, Debug)]
pub struct CgBlock {
    pub rep: Rep,
    /// `E1 ⊗ E2 -> E`.
    pub proj: Matrix<Q>,
    /// `E -> E1 ⊗ E2`.
    pub inj: Matrix<Q>,
}

/// Complete decomposition of `E1 ⊗ E2` into irreducibles. Highest-weight
/// vectors of a repeated summand are the RREF kernel basis of the raising
/// operators on that weight space.
pub fn cg_projections(rs: &RootSystem, e1: &Rep, e2: &Rep) -> Vec<CgBlock> {
    let t = tensor(e1, e2);
    let mut dominant: Vec<Vec<i64>> = t.weights().iter().filter(|w| w.iter().all(|&x| x >= 0)).cloned().collect();
    dominant.sort();
    dominant.dedup();
    // higher summands first
    dominant.sort_by_key(|w| std::cmp::Reverse(weight_level(w)));
    let mut blocks = Vec::new();
    for lam in dominant {
        let idx: Vec<usize> = (0..t.dim()).filter(|&i| t.weight(i) == lam.as_slice()).collect();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for k in 0..rs.rank() {
            let m = t.matrix(rs.e(k));
            for r in 0..t.dim() {
                rows.push(idx.iter().map(|&c| m.get(r, c).clone()).collect());
            }
        }
        let kernel = Matrix::from_rows(rows).kernel();
        for k in kernel {
            let mut u = vec![Q::zero(); t.dim()];
            for (c, x) in idx.iter().zip(k) {
                u[*c] = x;
            }
            let irr = irrep(rs, &lam).expect("dominant");
            let parents = irr.parents.as_ref().expect("irreducible records its construction");
            let mut cols: Vec<Vec<Q>> = Vec::with_capacity(irr.dim());
            for p in parents {
                let col = match p {
                    None => u.clone(),
                    Some((par, i)) => t.matrix(rs.f(*i)).mul_vec(&cols[*par]),
                };
                cols.push(col);
            }
            let inj = Matrix::from_fn(t.dim(), irr.dim(), |r, c| cols[c][r].clone());
            blocks.push(CgBlock {
                rep: irr,
                proj: Matrix::zeros(0, 0),
                inj,
            });
        }
    }
    let total: usize = blocks.iter().map(|b| b.rep.dim()).sum();
    assert_eq!(total, t.dim(), "Clebsch–Gordan decomposition incomplete");
    let all = Matrix::from_fn(t.dim(), t.dim(), |r, c| {
        let mut c = c;
        for b in &blocks {
            if c < b.rep.dim() {
                return b.inj.get(r, c).clone();
            }
            c -= b.rep.dim();
        }
        unreachable!()
    });
    let inv = all.inverse().expect("summands span the tensor product");
    let mut offset = 0;
    for b in &mut blocks {
        let d = b.rep.dim();
        b.proj = Matrix::from_fn(d, t.dim(), |r, c| inv.get(offset + r, c).clone());
        offset += d;
    }
    blocks
}

/// `⟨w, 2ρ^∨⟩`.
fn weight_level(w: &[i64]) -> i64 {
    let r = w.len() as i64;
    w.iter().enumerate().map(|(k, x)| x * (k as i64 + 1) * (r - k as i64)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynquant_scalars::q;

    #[test]
    fn irrep_dimensions() {
        let g2 = RootSystem::sl(2).unwrap();
        assert_eq!(irrep(&g2, &[1]).unwrap().dim(), 2);
        assert_eq!(irrep(&g2, &[4]).unwrap().dim(), 5);
        let g3 = RootSystem::sl(3).unwrap();
        let adj = irrep(&g3, &[1, 1]).unwrap();
        assert_eq!(adj.dim(), g3.dim());
        assert!(adj.is_module(&g3));
        assert!(adj.weights_consistent(&g3));
        assert!(irrep(&g3, &[-1, 0]).is_err());
        // Weyl oracle on a few more
        assert_eq!(weyl_dimension(&[2, 1]), qi(15));
        assert_eq!(irrep(&g3, &[2, 1]).unwrap().dim(), 15);
    }

    #[test]
    fn duals_and_tensors_are_modules() {
        let g3 = RootSystem::sl(3).unwrap();
        let v = Rep::defining(&g3);
        let vd = dual(&v);
        assert!(vd.is_module(&g3));
        let t = tensor(&v, &vd);
        assert!(t.is_module(&g3));
        assert!(t.weights_consistent(&g3));
    }

    #[test]
    fn weight_components() {
        let g2 = RootSystem::sl(2).unwrap();
        let h = LeviDatum::new(&g2, &[]).unwrap();
        let v = Rep::defining(&g2);
        let plus = weight_component(&v, &h, &[qi(1)]);
        assert_eq!(plus, vec![vec![qi(1), qi(0)]]);
        assert!(weight_component(&Rep::trivial(&g2), &h, &[qi(2)]).is_empty());

        let g3 = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g3, &[0]).unwrap();
        let c3 = Rep::defining(&g3);
        // v3 has c-weight -1 and spans an l0-singlet
        let comp = weight_component(&c3, &l, &[qi(-1)]);
        assert_eq!(comp.len(), 1);
        // v1, v2 form an l0-doublet: no invariants of c-weight 1/2
        assert!(weight_component(&c3, &l, &[q(1, 2)]).is_empty());
    }

    fn check_cg(g: &RootSystem, a: &Rep, b: &Rep, dims: &[usize]) {
        let blocks = cg_projections(g, a, b);
        let t = tensor(a, b);
        let got: Vec<usize> = blocks.iter().map(|b| b.rep.dim()).collect();
        assert_eq!(got, dims);
        let mut sum = Matrix::zeros(t.dim(), t.dim());
        for blk in &blocks {
            sum = sum.add(&blk.inj.mul(&blk.proj));
            for x in 0..g.dim() {
                assert_eq!(blk.proj.mul(t.matrix(x)), blk.rep.matrix(x).mul(&blk.proj));
                assert_eq!(t.matrix(x).mul(&blk.inj), blk.inj.mul(blk.rep.matrix(x)));
            }
        }
        assert!(sum.is_identity());
    }

    #[test]
    fn clebsch_gordan() {
        let g2 = RootSystem::sl(2).unwrap();
        let v = Rep::defining(&g2);
        check_cg(&g2, &v, &v, &[3, 1]);
        check_cg(&g2, &v, &Rep::trivial(&g2), &[2]);
        let g3 = RootSystem::sl(3).unwrap();
        let c3 = Rep::defining(&g3);
        check_cg(&g3, &c3, &dual(&c3), &[8, 1]);
        // multiplicity two: adjoint ⊗ adjoint contains the adjoint twice
        let adj = irrep(&g3, &[1, 1]).unwrap();
        let blocks = cg_projections(&g3, &adj, &adj);
        assert_eq!(blocks.iter().filter(|b| b.rep.dim() == 8).count(), 2);
    }
}
