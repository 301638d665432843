//! `sl_n` in the basis `E_ij (i != j)`, `H_k = E_kk - E_{k+1,k+1}`, and Levi
//! subalgebras `l = c + l0` cut out by a set of retained simple roots.
//!
//! Weights of finite-dimensional modules are stored by their values on the
//! `H_k` (integer vectors of length `n - 1`). The invariant form is the trace
//! form of the defining representation; `(E_ij, E_ji) = 1`, so the center
//! basis `h_i = [e_{α_i}, e_{-α_i}] = H_{k_i}` needs no rescaling. The Killing
//! form is `2n` times the trace form.

use crate::error::{Error, Result};
use dynquant_scalars::{qi, Field, Matrix, Q};

/// Sparse element of `g`: `(basis index, coefficient)`.
pub type LieElt = Vec<(usize, Q)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// `E_ij` with `i != j` (0-based matrix indices).
    Root { i: usize, j: usize },
    /// `H_k`.
    Cartan { k: usize },
}

#[derive(Clone, Debug)]
pub struct GenInfo {
    pub kind: GenKind,
    /// Simple-root coordinates of the root (zero for Cartan elements).
    pub root: Vec<i64>,
    /// Values of the root on `H_0..H_{n-2}`.
    pub weight: Vec<i64>,
    /// Sum of the simple-root coordinates; negative on negative roots.
    pub height: i64,
}

impl GenInfo {
    pub fn is_cartan(&self) -> bool {
        matches!(self.kind, GenKind::Cartan { .. })
    }

    pub fn is_positive(&self) -> bool {
        self.height > 0
    }

    pub fn is_negative(&self) -> bool {
        self.height < 0
    }
}

/// Type `A_{n-1}` data realized by `n x n` matrices.
#[derive(Clone, Debug)]
pub struct RootSystem {
    n: usize,
    gens: Vec<GenInfo>,
    matrices: Vec<Matrix<Q>>,
    brackets: Vec<Vec<LieElt>>,
}

impl RootSystem {
    /// Basis order: positive roots by (height, row), negative roots in the
    /// same order, then `H_0..H_{n-2}`.
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        let rank = n - 1;
        let mut pos = Vec::new();
        for h in 1..n {
            for i in 0..n - h {
                pos.push((i, i + h));
            }
        }
        let mut gens = Vec::new();
        let root_of = |i: usize, j: usize| -> Vec<i64> {
            let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
            (0..rank).map(|k| if k >= a && k < b { s } else { 0 }).collect()
        };
        let eps_on_h = |i: usize, k: usize| -> i64 { (i == k) as i64 - (i == k + 1) as i64 };
        for &(i, j) in pos.iter().chain(pos.iter().map(|(i, j)| (*j, *i)).collect::<Vec<_>>().iter()) {
            let root = root_of(i, j);
            gens.push(GenInfo {
                kind: GenKind::Root { i, j },
                height: root.iter().sum(),
                weight: (0..rank).map(|k| eps_on_h(i, k) - eps_on_h(j, k)).collect(),
                root,
            });
        }
        for k in 0..rank {
            gens.push(GenInfo {
                kind: GenKind::Cartan { k },
                root: vec![0; rank],
                weight: vec![0; rank],
                height: 0,
            });
        }
        let matrices: Vec<Matrix<Q>> = gens
            .iter()
            .map(|g| {
                let mut m = Matrix::zeros(n, n);
                match g.kind {
                    GenKind::Root { i, j } => m.set(i, j, qi(1)),
                    GenKind::Cartan { k } => {
                        m.set(k, k, qi(1));
                        m.set(k + 1, k + 1, qi(-1));
                    }
                }
                m
            })
            .collect();
        let mut rs = RootSystem {
            n,
            gens,
            matrices,
            brackets: Vec::new(),
        };
        let dim = rs.dim();
        rs.brackets = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| rs.decompose(&rs.matrices[a].commutator(&rs.matrices[b])))
                    .collect()
            })
            .collect();
        rs.check_relations();
        Ok(rs)
    }

    /// Chevalley relations and Serre relations on the realization.
    fn check_relations(&self) {
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                let b = self.bracket_elt(&[(self.e(i), qi(1))], &[(self.f(j), qi(1))]);
                let expect: LieElt = if i == j { vec![(self.h(i), qi(1))] } else { vec![] };
                assert_eq!(b, expect, "[e_i, f_j] = δ_ij h_i fails");
                if i != j {
                    let a = self.cartan_entry(i, j);
                    for (x, sign) in [(self.e(i), 1), (self.f(i), -1)] {
                        let y = if sign > 0 { self.e(j) } else { self.f(j) };
                        let mut m = self.matrices[y].clone();
                        for _ in 0..(1 - a) {
                            m = self.matrices[x].commutator(&m);
                        }
                        assert!(m.is_zero(), "Serre relation fails");
                    }
                }
            }
        }
        let killing = Matrix::from_fn(self.dim(), self.dim(), |a, b| self.trace_form(a, b));
        assert!(!killing.determinant().is_zero(), "trace form degenerate");
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn name(&self) -> String {
        format!("sl{}", self.n)
    }

    pub fn gens(&self) -> &[GenInfo] {
        &self.gens
    }

    pub fn gen(&self, a: usize) -> &GenInfo {
        &self.gens[a]
    }

    pub fn num_positive(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Index of `E_ij`.
    pub fn root_index(&self, i: usize, j: usize) -> usize {
        self.gens
            .iter()
            .position(|g| g.kind == GenKind::Root { i, j })
            .expect("no such root vector")
    }

    pub fn e(&self, k: usize) -> usize {
        self.root_index(k, k + 1)
    }

    pub fn f(&self, k: usize) -> usize {
        self.root_index(k + 1, k)
    }

    pub fn h(&self, k: usize) -> usize {
        self.num_positive() * 2 + k
    }

    /// The generator whose root is the negative of `a`'s (Cartan maps to itself).
    pub fn opposite(&self, a: usize) -> usize {
        match self.gens[a].kind {
            GenKind::Root { i, j } => self.root_index(j, i),
            GenKind::Cartan { .. } => a,
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r).map(|i| (0..r).map(|j| self.cartan_entry(i, j)).collect()).collect()
    }

    fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.gens[self.e(j)].weight[i]
    }

    /// Matrix of basis element `a` in the defining representation.
    pub fn matrix(&self, a: usize) -> &Matrix<Q> {
        &self.matrices[a]
    }

    /// Coordinates of a traceless matrix in the basis.
    pub fn decompose(&self, m: &Matrix<Q>) -> LieElt {
        let n = self.n;
        let mut out = Vec::new();
        for (a, g) in self.gens.iter().enumerate() {
            match g.kind {
                GenKind::Root { i, j } => {
                    let c = m.get(i, j);
                    if !c.is_zero() {
                        out.push((a, c.clone()));
                    }
                }
                GenKind::Cartan { k } => {
                    let c: Q = (0..=k).map(|i| m.get(i, i).clone()).sum();
                    if !c.is_zero() {
                        out.push((a, c));
                    }
                }
            }
        }
        let tr: Q = (0..n).map(|i| m.get(i, i).clone()).sum();
        assert!(tr.is_zero(), "matrix is not traceless");
        out
    }

    /// `[x_a, x_b]` in the basis.
    pub fn bracket(&self, a: usize, b: usize) -> &LieElt {
        &self.brackets[a][b]
    }

    pub fn bracket_elt(&self, x: &[(usize, Q)], y: &[(usize, Q)]) -> LieElt {
        let mut acc = vec![Q::zero(); self.dim()];
        for (a, ca) in x {
            for (b, cb) in y {
                for (c, k) in self.bracket(*a, *b) {
                    acc[*c] += ca * cb * k;
                }
            }
        }
        acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `tr(x_a x_b)` in the defining representation.
    pub fn trace_form(&self, a: usize, b: usize) -> Q {
        self.matrices[a].mul(&self.matrices[b]).trace()
    }

    /// Killing form / trace form.
    pub fn killing_factor(&self) -> Q {
        qi(2 * self.n as i64)
    }

    /// Simple-root coordinates of a weight in the root lattice.
    pub fn simple_coords(&self, weight: &[i64]) -> Option<Vec<i64>> {
        let a = Matrix::from_fn(self.rank(), self.rank(), |i, j| qi(self.cartan_entry(i, j)));
        let b: Vec<Q> = weight.iter().map(|&x| qi(x)).collect();
        let x = dynquant_scalars::solve_linear(&a, &b).unique()?;
        x.iter()
            .map(|c| dynquant_scalars::rational::is_integer(c).then(|| c.to_integer().try_into().unwrap()))
            .collect()
    }

    /// Values on `H_k` of a weight given in `ε`-coordinates.
    pub fn weight_from_eps(&self, eps: &[i64]) -> Vec<i64> {
        (0..self.rank()).map(|k| eps[k] - eps[k + 1]).collect()
    }

    /// Fundamental weight `ω_k` in `H`-values.
    pub fn fundamental(&self, k: usize) -> Vec<i64> {
        (0..self.rank()).map(|j| (j == k) as i64).collect()
    }
}

/// A point of `c*` in the coordinates `λ(h_i)`.
#[derive(Clone, Debug, PartialEq)]
pub enum CharacterPoint {
    Numeric(Vec<Q>),
    /// `λ_i` left as the variable `l_i`.
    Symbolic(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotDecidable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenClass {
    NlMinus,
    L0Minus,
    Cartan,
    L0Plus,
    NlPlus,
}

/// `l = c + l0` for a set `S` of retained simple roots.
#[derive(Clone, Debug)]
pub struct LeviDatum {
    rs: RootSystem,
    retained: Vec<usize>,
    excluded: Vec<usize>,
    class: Vec<GenClass>,
    c_degree: Vec<i64>,
    /// Diagonal of `π_c H_{k_i}`, one row per excluded `k_i`.
    center_diag: Vec<Vec<Q>>,
}

impl LeviDatum {
    /// `retained` are 0-based simple-root indices.
    pub fn new(rs: &RootSystem, retained: &[usize]) -> Result<Self> {
        let rank = rs.rank();
        if let Some(&bad) = retained.iter().find(|&&k| k >= rank) {
            return Err(Error::BadSimpleRoot { index: bad, rank });
        }
        let mut retained = retained.to_vec();
        retained.sort_unstable();
        retained.dedup();
        let excluded: Vec<usize> = (0..rank).filter(|k| !retained.contains(k)).collect();
        let c_degree: Vec<i64> = rs.gens().iter().map(|g| excluded.iter().map(|&k| g.root[k]).sum()).collect();
        let class = rs
            .gens()
            .iter()
            .zip(&c_degree)
            .map(|(g, &d)| match (g.height.signum(), d) {
                (0, _) => GenClass::Cartan,
                (1, 0) => GenClass::L0Plus,
                (-1, 0) => GenClass::L0Minus,
                (1, _) => GenClass::NlPlus,
                _ => GenClass::NlMinus,
            })
            .collect();
        // block structure of the diagonal: positions k, k+1 joined for k in S
        let n = rs.n();
        let mut block = vec![0usize; n];
        for p in 1..n {
            block[p] = if retained.contains(&(p - 1)) {
                block[p - 1]
            } else {
                block[p - 1] + 1
            };
        }
        let center_diag = excluded
            .iter()
            .map(|&k| {
                let mut d = vec![Q::zero(); n];
                d[k] = qi(1);
                d[k + 1] = qi(-1);
                let nb = block[n - 1] + 1;
                let mut sums = vec![Q::zero(); nb];
                let mut sizes = vec![0i64; nb];
                for p in 0..n {
                    sums[block[p]] += &d[p];
                    sizes[block[p]] += 1;
                }
                (0..n).map(|p| &sums[block[p]] / qi(sizes[block[p]])).collect()
            })
            .collect();
        Ok(LeviDatum {
            rs: rs.clone(),
            retained,
            excluded,
            class,
            c_degree,
            center_diag,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn retained(&self) -> &[usize] {
        &self.retained
    }

    /// The `k_i` with `h_i = H_{k_i}`.
    pub fn excluded(&self) -> &[usize] {
        &self.excluded
    }

    /// `dim c`.
    pub fn r(&self) -> usize {
        self.excluded.len()
    }

    pub fn class(&self, a: usize) -> GenClass {
        self.class[a]
    }

    /// Sum of the excluded simple-root coordinates of the root of `a`.
    pub fn c_degree(&self, a: usize) -> i64 {
        self.c_degree[a]
    }

    pub fn gens_of(&self, class: GenClass) -> Vec<usize> {
        (0..self.rs.dim()).filter(|&a| self.class[a] == class).collect()
    }

    /// Basis of `l0` root vectors together with `H_k`, `k ∈ S`.
    pub fn l0_roots(&self) -> Vec<usize> {
        (0..self.rs.dim())
            .filter(|&a| matches!(self.class[a], GenClass::L0Minus | GenClass::L0Plus))
            .collect()
    }

    /// Diagonal of the center element `π_c H_{k_i}` (trace-orthogonal projection).
    pub fn center_element(&self, i: usize) -> &[Q] {
        &self.center_diag[i]
    }

    /// `π_c H_{k_i}` as an element of `g`.
    pub fn center_elt(&self, i: usize) -> LieElt {
        let d = &self.center_diag[i];
        let m = Matrix::from_fn(self.rs.n(), self.rs.n(), |a, b| if a == b { d[a].clone() } else { Q::zero() });
        self.rs.decompose(&m)
    }

    /// Coordinates `ν(π_c H_{k_i})` of the restriction of a weight to `c`.
    pub fn c_coords(&self, weight: &[i64]) -> Vec<Q> {
        self.center_diag
            .iter()
            .map(|d| {
                // diag(d) = Σ_k (d_0 + .. + d_k) H_k
                let mut cum = Q::zero();
                let mut acc = Q::zero();
                for (k, w) in weight.iter().enumerate() {
                    cum += &d[k];
                    acc += &cum * qi(*w);
                }
                acc
            })
            .collect()
    }

    /// Values on `H_k` of the extension by zero of `λ ∈ c*` to `h`.
    pub fn extend_character<F: Field>(&self, lambda: &[F]) -> Vec<F> {
        assert_eq!(lambda.len(), self.r(), "character has the wrong number of coordinates");
        let mut out = vec![F::zero(); self.rs.rank()];
        for (i, &k) in self.excluded.iter().enumerate() {
            out[k] = lambda[i].clone();
        }
        out
    }

    /// Sum of excluded simple-root coordinates of a root-lattice weight.
    pub fn c_degree_of(&self, weight: &[i64]) -> Option<i64> {
        let s = self.rs.simple_coords(weight)?;
        Some(self.excluded.iter().map(|&k| s[k]).sum())
    }

    /// Depth a module with these weights needs: the c-degree of
    /// highest minus lowest weight.
    pub fn d_min(&self, weights: &[Vec<i64>]) -> usize {
        let mut best = 0;
        for a in weights {
            for b in weights {
                let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                if let Some(d) = self.c_degree_of(&diff) {
                    best = best.max(d);
                }
            }
        }
        best as usize
    }

    /// True iff no coordinate is an integer.
    pub fn is_generic(&self, lambda: &CharacterPoint) -> std::result::Result<bool, NotDecidable> {
        match lambda {
            CharacterPoint::Symbolic(_) => Err(NotDecidable),
            CharacterPoint::Numeric(v) => {
                assert_eq!(v.len(), self.r(), "character has the wrong number of coordinates");
                Ok(v.iter().all(|x| !x.is_integer()))
            }
        }
    }

    /// First integral coordinate, as an error.
    pub fn require_generic(&self, lambda: &[Q]) -> Result<()> {
        match lambda.iter().position(|x| x.is_integer()) {
            Some(i) => Err(Error::NonGeneric {
                coordinate: i,
                value: lambda[i].clone(),
            }),
            None => Ok(()),
        }
    }

    pub fn describe(&self) -> String {
        let s: Vec<String> = self.retained.iter().map(|k| format!("a{}", k + 1)).collect();
        format!("{{{}}}", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynquant_scalars::q;

    #[test]
    fn sl2_basics() {
        let g = RootSystem::sl(2).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.dim(), 3);
        assert_eq!(g.bracket(g.e(0), g.f(0)), &vec![(g.h(0), qi(1))]);
        assert_eq!(g.killing_factor(), qi(4));
        assert!(RootSystem::sl(1).is_err());
    }

    #[test]
    fn sl3_counts_and_commutator() {
        let g = RootSystem::sl(3).unwrap();
        assert_eq!(g.num_positive(), 3);
        assert_eq!(g.dim(), 8);
        let b = g.bracket(g.e(0), g.e(1));
        let top = g.root_index(0, 2);
        // oracle: matrix commutator in the defining representation
        let direct = g.matrix(g.e(0)).commutator(g.matrix(g.e(1)));
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].0, top);
        assert!(!b[0].1.is_zero());
        assert_eq!(direct, g.matrix(top).scale(&b[0].1));
        assert_eq!(g.cartan_matrix(), vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn levi_decompositions() {
        let g2 = RootSystem::sl(2).unwrap();
        let l = LeviDatum::new(&g2, &[]).unwrap();
        assert_eq!(l.r(), 1);
        assert!(l.l0_roots().is_empty());

        let g = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g, &[0]).unwrap();
        assert_eq!(l.r(), 1);
        assert_eq!(l.l0_roots().len(), 2);
        let mut nm = l.gens_of(GenClass::NlMinus);
        nm.sort();
        let mut expect = vec![g.f(1), g.root_index(2, 0)];
        expect.sort();
        assert_eq!(nm, expect);
        // trace oracle for the normalization of e_{α2}, f_{α2}
        assert_eq!(g.trace_form(g.e(1), g.f(1)), qi(1));
        assert_eq!(g.trace_form(g.e(1), g.f(1)) * g.killing_factor(), qi(6));
        // c commutes with l
        for i in 0..l.r() {
            let c = l.center_elt(i);
            for a in (0..g.dim()).filter(|&a| l.class(a) != GenClass::NlMinus && l.class(a) != GenClass::NlPlus) {
                assert!(g.bracket_elt(&c, &[(a, qi(1))]).is_empty());
            }
        }
        assert!(LeviDatum::new(&g, &[2]).is_err());
        let all = LeviDatum::new(&g, &[0, 1]).unwrap();
        assert_eq!(all.r(), 0);
    }

    #[test]
    fn levi_center_weights() {
        let g = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g, &[0]).unwrap();
        let e1 = g.weight_from_eps(&[1, 0, 0]);
        let e3 = g.weight_from_eps(&[0, 0, 1]);
        assert_eq!(l.c_coords(&e1), vec![q(1, 2)]);
        assert_eq!(l.c_coords(&e3), vec![qi(-1)]);
        assert_eq!(l.d_min(&[e1, e3]), 1);
    }

    #[test]
    fn genericity() {
        let g = RootSystem::sl(2).unwrap();
        let l = LeviDatum::new(&g, &[]).unwrap();
        assert_eq!(l.is_generic(&CharacterPoint::Numeric(vec![q(5, 2)])), Ok(true));
        assert_eq!(l.is_generic(&CharacterPoint::Numeric(vec![qi(3)])), Ok(false));
        assert_eq!(l.is_generic(&CharacterPoint::Symbolic(1)), Err(NotDecidable));
        let g3 = RootSystem::sl(3).unwrap();
        let l3 = LeviDatum::new(&g3, &[0]).unwrap();
        assert_eq!(l3.is_generic(&CharacterPoint::Numeric(vec![q(-7, 3)])), Ok(true));
    }

    #[test]
    fn jacobi_and_invariance() {
        for n in 2..=4 {
            let g = RootSystem::sl(n).unwrap();
            let d = g.dim();
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        let one = |x| vec![(x, qi(1))];
                        let t1 = g.bracket_elt(&one(a), &g.bracket_elt(&one(b), &one(c)));
                        let t2 = g.bracket_elt(&one(b), &g.bracket_elt(&one(c), &one(a)));
                        let t3 = g.bracket_elt(&one(c), &g.bracket_elt(&one(a), &one(b)));
                        let mut acc = vec![Q::zero(); d];
                        for (i, v) in t1.iter().chain(&t2).chain(&t3) {
                            acc[*i] += v;
                        }
                        assert!(acc.iter().all(|x| x.is_zero()));
                        // (ad_a b, c) + (b, ad_a c) = 0
                        let lhs: Q = g.bracket(a, b).iter().map(|(i, k)| k * g.trace_form(*i, c)).sum();
                        let rhs: Q = g.bracket(a, c).iter().map(|(i, k)| k * g.trace_form(b, *i)).sum();
                        assert!((lhs + rhs).is_zero());
                    }
                }
            }
        }
    }
}
