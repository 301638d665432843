//! Dynamical twists read off compositions of intertwiners between
//! generalized Verma modules, the braidings and R-matrices they induce, and
//! checks of the identities these satisfy.
//!
//! For a generic `l`-module `Z` and `g`-modules `V, W`, every `ξ ⊗ w` in
//! `(Z ⊗ V) ⊗ W` has a unique `n_l^+`-invariant lift in `M_{Z⊗V} ⊗ W`, and
//! every `z ⊗ v` one in `M_Z ⊗ V`. Composing the two intertwiners
//! `M_{Z⊗V⊗W} -> M_{Z⊗V} ⊗ W -> M_Z ⊗ V ⊗ W` and reading off the
//! coefficient of `Z ⊗ V ⊗ W` gives `F_Z^{V,W} ∈ End_l(Z ⊗ V ⊗ W)`.
//!
//! Here `Z = C_λ ⊗ A` with `A` a `g`-module restricted to `l`, and `F` is
//! stored as a matrix on `A ⊗ V ⊗ W`. The twist proper is `A` trivial; a
//! dynamical shift by a slot `X` means replacing the base `C_λ` by
//! `C_λ ⊗ X`. For `l = h` this is the shift `λ ↦ λ + wt(x)`; for a larger
//! Levi the `l0`-action on `X` enters as well. The identities are
//!
//! - cocycle: `F^{V⊗W,U} (F^{V,W} ⊗ 1) = F^{V,W⊗U} · ^V F^{W,U}`
//! - braiding `σ^{V,W} = (F^{W,V})^{-1} P F^{V,W}` satisfies the braid
//!   relation with the same shift rule
//! - `R^{V,W} = P σ^{V,W}` satisfies `R23 ^2R13 R12 = ^3R12 R13 ^1R23`,
//!   the braid relation with the permutations stripped off

use crate::error::{Error, Result};
use crate::intertwine::{d_min, lift_over};
use crate::repcat::{flip, tensor, Rep};
use crate::rootdata::{GenClass, LeviDatum};
use crate::verma::{LeviModule, Mono};
use dynquant_scalars::{qi, series_expand, Field, Matrix, RatFunc, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::HashMap;

pub const CONVENTION: &str = "F_Z^{V,W}: leading coefficient of M_{Z⊗V⊗W} -> M_{Z⊗V}⊗W -> M_Z⊗V⊗W, Z = C_λ; \
shift by slot X: base C_λ ↦ C_λ⊗X (λ ↦ λ + wt_c(x) when l0 acts trivially); \
cocycle F^{V⊗W,U}(F^{V,W}⊗1) = F^{V,W⊗U}·^V F^{W,U}; σ = (F^{W,V})^{-1} P F^{V,W}; R = Pσ; \
R23 ^2R13 R12 = ^3R12 R13 ^1R23";
pub const NORMALIZATION: &str = "F^{V,triv} = F^{triv,V} = id; F - id strictly lowers the first-slot c-degree";

/// Depth at which `F^{V,W}` is exact: lifts of `W` stop at `D_min(W)`, and
/// monomials beyond `D_min(V)` act on `V` by zero.
pub fn required_depth(levi: &LeviDatum, v: &Rep, w: &Rep) -> usize {
    d_min(levi, v).min(d_min(levi, w))
}

/// Matrix together with a degree bound in `λ`: its entries can be written
/// over one common denominator with numerator and denominator degrees at
/// most `bound`. Products add bounds.
#[derive(Clone, Debug)]
pub struct Tracked<F: Field> {
    pub matrix: Matrix<F>,
    pub bound: u64,
}

impl<F: Field> Tracked<F> {
    pub fn mul(&self, o: &Self) -> Self {
        Tracked {
            matrix: self.matrix.mul(&o.matrix),
            bound: self.bound + o.bound,
        }
    }

    fn constant(m: Matrix<Q>) -> Self {
        Tracked {
            matrix: to_f(&m),
            bound: 0,
        }
    }

    fn kron(&self, o: &Self) -> Self {
        Tracked {
            matrix: self.matrix.kron(&o.matrix),
            bound: self.bound + o.bound,
        }
    }

    /// `self ⊗ id_n`.
    fn then_identity(&self, n: usize) -> Self {
        Tracked {
            matrix: self.matrix.kron(&Matrix::identity(n)),
            bound: self.bound,
        }
    }

    /// Inverse of a unipotent matrix. The series has at most `k - 1`
    /// nonzero powers of `id - M` for nilpotency index `k`.
    pub fn unipotent_inverse(&self) -> Result<Self> {
        let (inv, index) = unipotent_inverse(&self.matrix).ok_or_else(|| Error::Shape("twist is not unipotent".into()))?;
        Ok(Tracked {
            matrix: inv,
            bound: index.saturating_sub(1) as u64 * self.bound,
        })
    }
}

fn to_f<F: Field>(m: &Matrix<Q>) -> Matrix<F> {
    m.map(F::from_q)
}

/// `ρ(m)` for a monomial, first letter outermost.
fn word_matrix(v: &Rep, m: &Mono) -> Matrix<Q> {
    let mut out = Matrix::identity(v.dim());
    for &a in m {
        out = out.mul(v.matrix(a));
    }
    out
}

/// `F_{C_λ⊗A}^{V,W}` on `A ⊗ V ⊗ W` (index `(a·dim V + v)·dim W + w`).
pub fn twist_over<F: Field>(levi: &LeviDatum, lambda: &[F], a: &Rep, v: &Rep, w: &Rep, depth: usize) -> Result<Tracked<F>> {
    let need = required_depth(levi, v, w);
    if depth < need {
        return Err(Error::DepthInsufficient { need, got: depth });
    }
    if lambda.len() != levi.r() {
        return Err(Error::Shape(format!(
            "λ has {} coordinates, c has dimension {}",
            lambda.len(),
            levi.r()
        )));
    }
    let av = tensor(a, v);
    let lift = lift_over(levi, LeviModule::twisted(levi, lambda, &av), w, depth)?;
    let (dv, dw) = (v.dim(), w.dim());
    let n = av.dim() * dw;
    let mut out = Matrix::<F>::zeros(n, n);
    let mut words: HashMap<Mono, Matrix<Q>> = HashMap::new();
    for (col, terms) in lift.columns.iter().enumerate() {
        for ((m, xi, j), c) in terms {
            let (ai, vi) = (xi / dv, xi % dv);
            let rho = words.entry(m.clone()).or_insert_with(|| word_matrix(v, m));
            for v2 in 0..dv {
                let k = rho.get(v2, vi);
                if !k.is_zero() {
                    let row = (ai * dv + v2) * dw + j;
                    let x = out.get(row, col).plus(&c.scale(k));
                    out.set(row, col, x);
                }
            }
        }
    }
    Ok(Tracked {
        matrix: out,
        bound: lift.degree_bound,
    })
}

/// `F^{V,W}(λ)` on the basis `v_a ⊗ w_b` (index `a·dim W + b`).
#[derive(Clone, Debug)]
pub struct TwistMatrix<F: Field> {
    pub algebra: String,
    /// Retained simple roots, 0-based.
    pub levi: Vec<usize>,
    pub v: Rep,
    pub w: Rep,
    pub lambda: Vec<F>,
    pub matrix: Matrix<F>,
    /// c-weights of the basis vectors of each slot.
    pub slot_weights: [Vec<Vec<Q>>; 2],
    pub degree_bound: u64,
}

pub fn dynamical_twist<F: Field>(levi: &LeviDatum, v: &Rep, w: &Rep, lambda: &[F], depth: usize) -> Result<TwistMatrix<F>> {
    let t = twist_over(levi, lambda, &Rep::trivial(levi.root_system()), v, w, depth)?;
    Ok(TwistMatrix {
        algebra: levi.root_system().name(),
        levi: levi.retained().to_vec(),
        v: v.clone(),
        w: w.clone(),
        lambda: lambda.to_vec(),
        matrix: t.matrix,
        slot_weights: [
            v.weights().iter().map(|x| levi.c_coords(x)).collect(),
            w.weights().iter().map(|x| levi.c_coords(x)).collect(),
        ],
        degree_bound: t.bound,
    })
}

/// Inverse of `id + N` with `N` nilpotent, and the nilpotency index of `N`.
pub fn unipotent_inverse<F: Field>(m: &Matrix<F>) -> Option<(Matrix<F>, usize)> {
    let n = m.rows();
    let neg = Matrix::<F>::identity(n).sub(m);
    let mut term = Matrix::<F>::identity(n);
    let mut inv = Matrix::<F>::zeros(n, n);
    for k in 0..=n {
        if term.is_zero() {
            return Some((inv, k));
        }
        inv = inv.add(&term);
        term = term.mul(&neg);
    }
    None
}

/// Permutation of tensor factors: sends `x_0 ⊗ .. ⊗ x_{n-1}` to
/// `x_{order[0]} ⊗ .. ⊗ x_{order[n-1]}`.
pub fn permutation(dims: &[usize], order: &[usize]) -> Matrix<Q> {
    let total: usize = dims.iter().product();
    let out_dims: Vec<usize> = order.iter().map(|&i| dims[i]).collect();
    let mut p = Matrix::zeros(total, total);
    for idx in 0..total {
        let mut digits = vec![0; dims.len()];
        let mut r = idx;
        for k in (0..dims.len()).rev() {
            digits[k] = r % dims[k];
            r /= dims[k];
        }
        let mut target = 0;
        for (k, &i) in order.iter().enumerate() {
            target = target * out_dims[k] + digits[i];
        }
        p.set(target, idx, qi(1));
    }
    p
}

/// A twist evaluator `(λ, A, V, W) ↦ F_{C_λ⊗A}^{V,W}`. Lets tests swap in a
/// corrupted or mirrored twist.
pub trait TwistSource<F: Field> {
    fn twist(&self, levi: &LeviDatum, lambda: &[F], a: &Rep, v: &Rep, w: &Rep) -> Result<Tracked<F>>;
}

/// The twist of this module at its required depth.
pub struct Standard;

impl<F: Field> TwistSource<F> for Standard {
    fn twist(&self, levi: &LeviDatum, lambda: &[F], a: &Rep, v: &Rep, w: &Rep) -> Result<Tracked<F>> {
        twist_over(levi, lambda, a, v, w, required_depth(levi, v, w))
    }
}

/// `σ^{V,W}` over the base `C_λ ⊗ A`: `A ⊗ V ⊗ W -> A ⊗ W ⊗ V`.
pub fn braiding_over<F: Field>(
    src: &impl TwistSource<F>,
    levi: &LeviDatum,
    lambda: &[F],
    a: &Rep,
    v: &Rep,
    w: &Rep,
) -> Result<Tracked<F>> {
    let f_vw = src.twist(levi, lambda, a, v, w)?;
    let f_wv = src.twist(levi, lambda, a, w, v)?;
    let p = Tracked::constant(permutation(&[a.dim(), v.dim(), w.dim()], &[0, 2, 1]));
    Ok(f_wv.unipotent_inverse()?.mul(&p).mul(&f_vw))
}

/// `R^{V,W} = P σ^{V,W}` over the base `C_λ ⊗ A`, on `A ⊗ V ⊗ W`.
pub fn r_over<F: Field>(
    src: &impl TwistSource<F>,
    levi: &LeviDatum,
    lambda: &[F],
    a: &Rep,
    v: &Rep,
    w: &Rep,
) -> Result<Tracked<F>> {
    let p = Tracked::constant(permutation(&[a.dim(), w.dim(), v.dim()], &[0, 2, 1]));
    Ok(p.mul(&braiding_over(src, levi, lambda, a, v, w)?))
}

/// `R^{V,W}(λ)` on `V ⊗ W`.
pub fn dynamical_r<F: Field>(levi: &LeviDatum, lambda: &[F], v: &Rep, w: &Rep) -> Result<Tracked<F>> {
    r_over(&Standard, levi, lambda, &Rep::trivial(levi.root_system()), v, w)
}

/// First differing entry, row-major.
pub fn first_difference<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<(usize, usize)> {
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if a.get(r, c) != b.get(r, c) {
                return Some((r, c));
            }
        }
    }
    None
}

/// Both sides of an identity at one `λ`, with a joint degree bound for
/// their difference.
#[derive(Clone, Debug)]
pub struct Sides<F: Field> {
    pub lhs: Matrix<F>,
    pub rhs: Matrix<F>,
    pub bound: u64,
}

impl<F: Field> Sides<F> {
    fn new(l: Tracked<F>, r: Tracked<F>) -> Self {
        Sides {
            bound: l.bound + r.bound,
            lhs: l.matrix,
            rhs: r.matrix,
        }
    }

    pub fn violation(&self) -> Option<(usize, usize)> {
        first_difference(&self.lhs, &self.rhs)
    }
}

pub fn cocycle_sides<F: Field>(src: &impl TwistSource<F>, levi: &LeviDatum, reps: [&Rep; 3], lambda: &[F]) -> Result<Sides<F>> {
    let [v, w, u] = reps;
    let triv = Rep::trivial(levi.root_system());
    let lhs = src
        .twist(levi, lambda, &triv, &tensor(v, w), u)?
        .mul(&src.twist(levi, lambda, &triv, v, w)?.then_identity(u.dim()));
    let rhs = src
        .twist(levi, lambda, &triv, v, &tensor(w, u))?
        .mul(&src.twist(levi, lambda, v, w, u)?);
    Ok(Sides::new(lhs, rhs))
}

/// Braid relation on `V1 ⊗ V2 ⊗ V3 -> V3 ⊗ V2 ⊗ V1`:
/// `(σ^{23}⊗1)·^{V2}σ^{13}·(σ^{12}⊗1) = ^{V3}σ^{12}·(σ^{13}⊗1)·^{V1}σ^{23}`,
/// where `^X σ` is the braiding over the base `C_λ ⊗ X` acting on the two
/// factors to the right of `X`.
pub fn braid_sides<F: Field>(src: &impl TwistSource<F>, levi: &LeviDatum, reps: [&Rep; 3], lambda: &[F]) -> Result<Sides<F>> {
    let [v1, v2, v3] = reps;
    let triv = Rep::trivial(levi.root_system());
    let s = |a: &Rep, x: &Rep, y: &Rep| braiding_over(src, levi, lambda, a, x, y);
    let lhs = s(&triv, v2, v3)?
        .then_identity(v1.dim())
        .mul(&s(v2, v1, v3)?)
        .mul(&s(&triv, v1, v2)?.then_identity(v3.dim()));
    let rhs = s(v3, v1, v2)?
        .mul(&s(&triv, v1, v3)?.then_identity(v2.dim()))
        .mul(&s(v1, v2, v3)?);
    Ok(Sides::new(lhs, rhs))
}

/// `R23 ^2R13 R12 = ^3R12 R13 ^1R23` on `V1 ⊗ V2 ⊗ V3`; `^k R_{ij}` is the
/// R-matrix over the base `C_λ ⊗ V_k`.
pub fn qdybe_sides<F: Field>(src: &impl TwistSource<F>, levi: &LeviDatum, reps: [&Rep; 3], lambda: &[F]) -> Result<Sides<F>> {
    let [v1, v2, v3] = reps;
    let dims = [v1.dim(), v2.dim(), v3.dim()];
    let triv = Rep::trivial(levi.root_system());
    let r = |a: &Rep, x: &Rep, y: &Rep| r_over(src, levi, lambda, a, x, y);
    // conjugate an operator on the factors in `order` back to V1 ⊗ V2 ⊗ V3
    let conj = |t: Tracked<F>, order: [usize; 3]| -> Tracked<F> {
        let p = permutation(&dims, &order);
        Tracked::constant(p.transpose()).mul(&t).mul(&Tracked::constant(p))
    };
    let r12 = r(&triv, v1, v2)?.then_identity(v3.dim());
    let r23 = Tracked::constant(Matrix::identity(v1.dim())).kron(&r(&triv, v2, v3)?);
    let r13 = conj(r(&triv, v1, v3)?.then_identity(v2.dim()), [0, 2, 1]);
    let r13_2 = conj(r(v2, v1, v3)?, [1, 0, 2]);
    let r23_1 = r(v1, v2, v3)?;
    let r12_3 = conj(r(v3, v1, v2)?, [2, 0, 1]);
    Ok(Sides::new(r23.mul(&r13_2).mul(&r12), r12_3.mul(&r13).mul(&r23_1)))
}

/// `π_{V⊗W}(Δx)` for a basis element `x` of `g`.
pub fn coproduct_action(v: &Rep, w: &Rep, x: usize) -> Matrix<Q> {
    v.matrix(x)
        .kron(&Matrix::identity(w.dim()))
        .add(&Matrix::identity(v.dim()).kron(w.matrix(x)))
}

/// Basis elements of `l`: Cartan and `l0` root vectors.
pub fn levi_basis(levi: &LeviDatum) -> Vec<usize> {
    (0..levi.root_system().dim())
        .filter(|&a| matches!(levi.class(a), GenClass::Cartan | GenClass::L0Plus | GenClass::L0Minus))
        .collect()
}

/// First `x ∈ l` with `[π(Δx), m] != 0`.
pub fn equivariance_violation<F: Field>(levi: &LeviDatum, v: &Rep, w: &Rep, m: &Matrix<F>) -> Option<usize> {
    levi_basis(levi)
        .into_iter()
        .find(|&x| !to_f::<F>(&coproduct_action(v, w, x)).commutator(m).is_zero())
}

/// Structural checks on a computed twist.
#[derive(Clone, Debug)]
pub struct TwistShape {
    /// Entries linking different total c-weights.
    pub weight_violation: Option<(usize, usize)>,
    /// Off-diagonal entries that do not lower the first-slot c-degree.
    pub triangularity_violation: Option<(usize, usize)>,
    /// Smallest `k` with `(F - id)^k = 0`, if any up to the dimension.
    pub nilpotency_index: Option<usize>,
    /// Number of distinct total weights on `V ⊗ W`.
    pub weight_count: usize,
}

impl TwistShape {
    pub fn passed(&self) -> bool {
        self.weight_violation.is_none()
            && self.triangularity_violation.is_none()
            && self.nilpotency_index.is_some_and(|k| k <= self.weight_count)
    }
}

pub fn twist_shape<F: Field>(levi: &LeviDatum, t: &TwistMatrix<F>) -> TwistShape {
    let dw = t.w.dim();
    let total = |i: usize| -> Vec<Q> {
        t.slot_weights[0][i / dw]
            .iter()
            .zip(&t.slot_weights[1][i % dw])
            .map(|(a, b)| a + b)
            .collect()
    };
    let n = t.matrix.rows();
    let mut weight_violation = None;
    let mut triangularity_violation = None;
    for r in 0..n {
        for c in 0..n {
            if r == c || t.matrix.get(r, c).is_zero() {
                continue;
            }
            if weight_violation.is_none() && total(r) != total(c) {
                weight_violation = Some((r, c));
            }
            let diff: Vec<i64> =
                t.v.weight(c / dw)
                    .iter()
                    .zip(t.v.weight(r / dw))
                    .map(|(a, b)| a - b)
                    .collect();
            let lowers = levi.c_degree_of(&diff).is_some_and(|d| d > 0);
            if triangularity_violation.is_none() && !lowers {
                triangularity_violation = Some((r, c));
            }
        }
    }
    let nil = t.matrix.sub(&Matrix::identity(n));
    let mut power = Matrix::<F>::identity(n);
    let mut nilpotency_index = None;
    for k in 0..=n {
        if power.is_zero() {
            nilpotency_index = Some(k);
            break;
        }
        power = power.mul(&nil);
    }
    let mut weights: Vec<Vec<Q>> = (0..n).map(total).collect();
    weights.sort();
    weights.dedup();
    TwistShape {
        weight_violation,
        triangularity_violation,
        nilpotency_index,
        weight_count: weights.len(),
    }
}

impl TwistMatrix<RatFunc> {
    pub fn to_json(&self) -> Value {
        let label = |rep: &Rep, slot: usize, i: usize| json!({"slot": slot, "index": i, "weight": rep.weight(i), "c_weight": self.slot_weights[slot][i].iter().map(|x| x.to_string()).collect::<Vec<_>>()});
        let basis: Vec<Value> = (0..self.v.dim())
            .flat_map(|a| (0..self.w.dim()).map(move |b| (a, b)))
            .map(|(a, b)| json!([label(&self.v, 0, a), label(&self.w, 1, b)]))
            .collect();
        let entries: Vec<Vec<Value>> = (0..self.matrix.rows())
            .map(|r| (0..self.matrix.cols()).map(|c| self.matrix.get(r, c).to_json()).collect())
            .collect();
        json!({
            "basis": basis,
            "entries": entries,
            "lambda": self.lambda.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            "metadata": {
                "algebra": self.algebra,
                "levi": self.levi.iter().map(|k| k + 1).collect::<Vec<_>>(),
                "v": self.v.name(),
                "w": self.w.name(),
                "convention": CONVENTION,
                "normalization": NORMALIZATION,
                "degree_bound": self.degree_bound,
            }
        })
    }
}

/// Distinct generic sample points `k + j/7` with `0 < j < 7`. Every shift
/// is by a c-weight with denominator dividing `n <= 6`, so no shifted
/// coordinate is ever an integer.
pub fn sample_points(r: usize, count: usize, seed: u64) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = (count as i64).max(8);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p: Vec<Q> = (0..r)
            .map(|_| qi(rng.gen_range(-span..=span)) + Q::new(rng.gen_range(1..7).into(), 7.into()))
            .collect();
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

/// Outcome of checking an identity.
#[derive(Clone, Debug)]
pub struct Report {
    pub identity: &'static str,
    pub violation: Option<(usize, usize)>,
    /// Points at which it was evaluated; 0 for a symbolic check.
    pub points: usize,
    pub degree_bound: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn describe(&self) -> String {
        match self.violation {
            None if self.points == 0 => format!("{} holds exactly (symbolic)", self.identity),
            None => format!(
                "{} holds at {} points (degree bound {})",
                self.identity, self.points, self.degree_bound
            ),
            Some((i, j)) => format!("{} violated at entry ({i},{j})", self.identity),
        }
    }
}

/// How `λ` is supplied to a check.
#[derive(Clone, Debug)]
pub enum LambdaMode {
    Symbolic,
    /// At least `min_samples` points, raised to `bound + 1` so that the check
    /// is a proof (single coordinate) and a spot check otherwise.
    Numeric {
        min_samples: usize,
        seed: u64,
    },
}

/// Runs `sides` symbolically or at enough sample points.
///
/// With one coordinate, `bound + 1` distinct points prove the identity.
/// With several coordinates the points form a grid `(bound + 1)^r`, which is
/// only attempted when small; otherwise `min_samples` points are used.
pub fn check_identity(
    identity: &'static str,
    levi: &LeviDatum,
    mode: &LambdaMode,
    sym: impl Fn(&[RatFunc]) -> Result<Sides<RatFunc>>,
    num: impl Fn(&[Q]) -> Result<Sides<Q>>,
) -> Result<Report> {
    let r = levi.r();
    match mode {
        LambdaMode::Symbolic => {
            let lambda: Vec<RatFunc> = (0..r).map(RatFunc::var).collect();
            let s = sym(&lambda)?;
            Ok(Report {
                identity,
                violation: s.violation(),
                points: 0,
                degree_bound: s.bound,
            })
        }
        LambdaMode::Numeric { min_samples, seed } => {
            let first = sample_points(r, 1, *seed).remove(0);
            let s0 = num(&first)?;
            let bound = s0.bound;
            if let Some(v) = s0.violation() {
                return Ok(Report {
                    identity,
                    violation: Some(v),
                    points: 1,
                    degree_bound: bound,
                });
            }
            let need = if r == 1 { bound as usize + 1 } else { 0 };
            let count = need.max(*min_samples);
            let points = sample_points(r, count, *seed);
            for p in points.iter().skip(1) {
                if p == &first {
                    continue;
                }
                let s = num(p)?;
                if let Some(v) = s.violation() {
                    return Ok(Report {
                        identity,
                        violation: Some(v),
                        points: count,
                        degree_bound: bound,
                    });
                }
            }
            Ok(Report {
                identity,
                violation: None,
                points: count,
                degree_bound: bound,
            })
        }
    }
}

pub fn verify_shifted_cocycle(levi: &LeviDatum, reps: [&Rep; 3], mode: &LambdaMode) -> Result<Report> {
    check_identity(
        "shifted cocycle",
        levi,
        mode,
        |l| cocycle_sides(&Standard, levi, reps, l),
        |l| cocycle_sides(&Standard, levi, reps, l),
    )
}

/// The braid relation and the R-matrix form together; the first failure is
/// reported.
pub fn verify_qdybe(levi: &LeviDatum, reps: [&Rep; 3], mode: &LambdaMode) -> Result<Report> {
    let braid = check_identity(
        "braid relation",
        levi,
        mode,
        |l| braid_sides(&Standard, levi, reps, l),
        |l| braid_sides(&Standard, levi, reps, l),
    )?;
    if !braid.passed() {
        return Ok(braid);
    }
    check_identity(
        "QDYBE",
        levi,
        mode,
        |l| qdybe_sides(&Standard, levi, reps, l),
        |l| qdybe_sides(&Standard, levi, reps, l),
    )
}

/// `[π(Δx), F(λ)] = 0` and `[π(Δx), R(λ)] = 0` for `x ∈ l`, symbolic.
pub fn verify_equivariance(levi: &LeviDatum, v: &Rep, w: &Rep) -> Result<Report> {
    let lambda: Vec<RatFunc> = (0..levi.r()).map(RatFunc::var).collect();
    let triv = Rep::trivial(levi.root_system());
    let f = Standard.twist(levi, &lambda, &triv, v, w)?;
    let r = dynamical_r(levi, &lambda, v, w)?;
    let bad = equivariance_violation(levi, v, w, &f.matrix).or_else(|| equivariance_violation(levi, v, w, &r.matrix));
    Ok(Report {
        identity: "equivariance",
        violation: bad.map(|x| (x, x)),
        points: 0,
        degree_bound: 0,
    })
}

/// Taylor coefficients in `t` of `M(λ/t)` up to `order`, with `λ` the
/// symbolic coordinates.
pub fn classical_expansion(m: &Matrix<RatFunc>, r: usize, order: usize) -> Result<Vec<Matrix<RatFunc>>> {
    let a: Vec<RatFunc> = (0..r).map(RatFunc::var).collect();
    let b: Vec<RatFunc> = vec![RatFunc::zero(); r];
    let mut out = vec![Matrix::<RatFunc>::zeros(m.rows(), m.cols()); order + 1];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let s = series_expand(m.get(i, j), &a, &b, order as i32).map_err(|_| Error::PoleAtOrigin)?;
            if s.principal_degree() > 0 {
                return Err(Error::PoleAtOrigin);
            }
            for (k, slot) in out.iter_mut().enumerate() {
                slot.set(i, j, s.coeff(k as i32));
            }
        }
    }
    Ok(out)
}

/// Classical r-matrix: the order-`t` coefficient of `R(λ/t)`.
pub fn classical_r(levi: &LeviDatum, v: &Rep, w: &Rep) -> Result<Matrix<RatFunc>> {
    let lambda: Vec<RatFunc> = (0..levi.r()).map(RatFunc::var).collect();
    let r = dynamical_r(levi, &lambda, v, w)?;
    let mut exp = classical_expansion(&r.matrix, levi.r(), 1)?;
    if !exp[0].is_identity() {
        return Err(Error::Shape("R(λ/t) does not start at the identity".into()));
    }
    Ok(exp.remove(1))
}

/// Both sides of the classical dynamical Yang–Baxter equation on
/// `V ⊗ V ⊗ V` for `r = classical_r(V, V)`:
///
/// `Σ_i (h_i^{(2)} ∂_i r^{13} - h_i^{(1)} ∂_i r^{23} - h_i^{(3)} ∂_i r^{12})`
/// against `[r^{12}, r^{13}] + [r^{12}, r^{23}] + [r^{13}, r^{23}]`.
pub fn cdybe_sides(levi: &LeviDatum, v: &Rep) -> Result<(Matrix<RatFunc>, Matrix<RatFunc>)> {
    let r = classical_r(levi, v, v)?;
    let d = v.dim();
    let dims = [d, d, d];
    let id = Matrix::<RatFunc>::identity(d);
    let slot = |op: &Matrix<RatFunc>, k: usize| -> Matrix<RatFunc> {
        let mut m = Matrix::<RatFunc>::identity(1);
        for s in 0..3 {
            m = m.kron(if s == k { op } else { &id });
        }
        m
    };
    let p13: Matrix<RatFunc> = to_f(&permutation(&dims, &[0, 2, 1]));
    let at12 = |x: &Matrix<RatFunc>| x.kron(&id);
    let at23 = |x: &Matrix<RatFunc>| id.kron(x);
    let at13 = |x: &Matrix<RatFunc>| p13.transpose().mul(&x.kron(&id)).mul(&p13);
    let (r12, r13, r23) = (at12(&r), at13(&r), at23(&r));
    let mut deriv = Matrix::<RatFunc>::zeros(d * d * d, d * d * d);
    for i in 0..levi.r() {
        let dr = r.map(|x| x.diff(i));
        let h: Matrix<RatFunc> = to_f(&v.center_operator(levi, i));
        let terms = [
            slot(&h, 0).mul(&at23(&dr)).neg(),
            slot(&h, 1).mul(&at13(&dr)),
            slot(&h, 2).mul(&at12(&dr)).neg(),
        ];
        for t in terms {
            deriv = deriv.add(&t);
        }
    }
    let brackets = r12.commutator(&r13).add(&r12.commutator(&r23)).add(&r13.commutator(&r23));
    Ok((deriv, brackets))
}

pub fn verify_cdybe(levi: &LeviDatum, v: &Rep) -> Result<Report> {
    let (deriv, brackets) = cdybe_sides(levi, v)?;
    Ok(Report {
        identity: "CDYBE",
        violation: first_difference(&deriv, &brackets),
        points: 0,
        degree_bound: 0,
    })
}

/// `r + r_{21}` commutes with `π(Δx)` for every `x ∈ g`.
pub fn verify_normal_condition(levi: &LeviDatum, v: &Rep) -> Result<Report> {
    let r = classical_r(levi, v, v)?;
    let p: Matrix<RatFunc> = to_f(&flip(v.dim(), v.dim()));
    let sym = r.add(&p.mul(&r).mul(&p));
    let bad = (0..levi.root_system().dim()).find(|&x| !to_f::<RatFunc>(&coproduct_action(v, v, x)).commutator(&sym).is_zero());
    Ok(Report {
        identity: "normal condition",
        violation: bad.map(|x| (x, x)),
        points: 0,
        degree_bound: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcat::{cg_projections, irrep};
    use crate::rootdata::RootSystem;
    use dynquant_scalars::q;

    fn sl2() -> (LeviDatum, Rep) {
        let g = RootSystem::sl(2).unwrap();
        (LeviDatum::new(&g, &[]).unwrap(), Rep::defining(&g))
    }

    fn lam() -> Vec<RatFunc> {
        vec![RatFunc::var(0)]
    }

    #[test]
    fn permutation_moves_factors() {
        // x0 ⊗ x1 ⊗ x2 with dims 2,3,1 -> x1 ⊗ x0 ⊗ x2
        let p = permutation(&[2, 3, 1], &[1, 0, 2]);
        // (1, 2, 0) sits at 1·3 + 2 = 5 and goes to (2, 1, 0) at 2·2 + 1 = 5
        assert!(p.get(5, 5).is_one());
        // (1, 0, 0) at 3 goes to (0, 1, 0) at 1
        assert!(p.get(1, 3).is_one());
        assert!(p.mul(&p.transpose()).is_identity());
    }

    #[test]
    fn trivial_slot_is_identity() {
        let (l, v) = sl2();
        let triv = Rep::trivial(l.root_system());
        let a: TwistMatrix<RatFunc> = dynamical_twist(&l, &v, &triv, &lam(), 1).unwrap();
        let b: TwistMatrix<RatFunc> = dynamical_twist(&l, &triv, &v, &lam(), 1).unwrap();
        assert!(a.matrix.is_identity() && b.matrix.is_identity());
    }

    #[test]
    fn sl2_fundamental_twist() {
        let (l, v) = sl2();
        let f: TwistMatrix<RatFunc> = dynamical_twist(&l, &v, &v, &lam(), 1).unwrap();
        // basis v+v+, v+v-, v-v+, v-v-; only (v-v+ <- v+v-) is off the diagonal
        let mut off = vec![];
        for r in 0..4 {
            for c in 0..4 {
                let x = f.matrix.get(r, c);
                if r == c {
                    assert!(x.is_one());
                } else if !x.is_zero() {
                    off.push((r, c, x.clone()));
                }
            }
        }
        assert_eq!(off.len(), 1);
        let (r, c, x) = off.remove(0);
        assert_eq!((r, c), (2, 1));
        // independent oracle: the lift of (1 ⊗ v+) ⊗ v- over C_λ ⊗ V is
        // x ⊗ v- + c f x ⊗ v+ with e-invariance forcing c = -1/(λ + 1);
        // then ρ(f) v+ = v-
        let mu = RatFunc::var(0).plus(&RatFunc::one());
        assert_eq!(x, RatFunc::one().over(&mu).negate());
        let shape = twist_shape(&l, &f);
        assert!(shape.passed(), "{shape:?}");
        assert_eq!(shape.nilpotency_index, Some(2));
    }

    #[test]
    fn numeric_twist_matches_symbolic() {
        let (l, v) = sl2();
        let s: TwistMatrix<RatFunc> = dynamical_twist(&l, &v, &v, &lam(), 1).unwrap();
        let n: TwistMatrix<Q> = dynamical_twist(&l, &v, &v, &[q(2, 7)], 1).unwrap();
        assert_eq!(s.matrix.map(|x| x.eval(&[q(2, 7)]).unwrap()), n.matrix);
    }

    #[test]
    fn non_generic_and_depth_errors() {
        let (l, v) = sl2();
        let e = dynamical_twist::<Q>(&l, &v, &v, &[qi(-1)], 1).unwrap_err();
        assert!(e.is_non_generic());
        let e = dynamical_twist::<Q>(&l, &v, &v, &[q(1, 3)], 0).unwrap_err();
        assert_eq!(e, Error::DepthInsufficient { need: 1, got: 0 });
    }

    #[test]
    fn abelian_base_is_a_weight_shift() {
        let (l, v) = sl2();
        let x = q(2, 7);
        // over C_λ ⊗ V, the block of v+ is F^{V,V}(λ + 1)
        let over = twist_over::<Q>(&l, std::slice::from_ref(&x), &v, &v, &v, 1).unwrap();
        let shifted: TwistMatrix<Q> = dynamical_twist(&l, &v, &v, &[x + qi(1)], 1).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(over.matrix.get(r, c), shifted.matrix.get(r, c));
            }
        }
    }

    #[test]
    fn sl2_cocycle_symbolic() {
        let (l, v) = sl2();
        let rep = verify_shifted_cocycle(&l, [&v, &v, &v], &LambdaMode::Symbolic).unwrap();
        assert!(rep.passed(), "{}", rep.describe());
    }

    #[test]
    fn sl2_qdybe_and_equivariance() {
        let (l, v) = sl2();
        let rep = verify_qdybe(&l, [&v, &v, &v], &LambdaMode::Symbolic).unwrap();
        assert!(rep.passed(), "{}", rep.describe());
        assert!(verify_equivariance(&l, &v, &v).unwrap().passed());
    }

    /// `F'^{V,W} = P F^{W,V} P` satisfies the mirrored cocycle and fails
    /// the stated one.
    #[test]
    fn mirrored_twist_flips_orientation() {
        struct Mirrored;
        impl TwistSource<RatFunc> for Mirrored {
            fn twist(&self, levi: &LeviDatum, lambda: &[RatFunc], a: &Rep, v: &Rep, w: &Rep) -> Result<Tracked<RatFunc>> {
                let f = Standard.twist(levi, lambda, a, w, v)?;
                let p = Tracked::constant(permutation(&[a.dim(), v.dim(), w.dim()], &[0, 2, 1]));
                let q = Tracked::constant(permutation(&[a.dim(), w.dim(), v.dim()], &[0, 2, 1]));
                Ok(q.mul(&f).mul(&p))
            }
        }
        let (l, v) = sl2();
        let lambda = lam();
        let triv = Rep::trivial(l.root_system());
        let vv = tensor(&v, &v);
        let m = |a: &Rep, x: &Rep, y: &Rep| Mirrored.twist(&l, &lambda, a, x, y).unwrap();
        // F'^{V,W⊗U} (1 ⊗ F'^{W,U}) = F'^{V⊗W,U} · (P_{12} ^U F^{W,V} P_{12}) on V ⊗ W ⊗ U
        let lhs = m(&triv, &v, &vv).mul(&Tracked::constant(Matrix::identity(2)).kron(&m(&triv, &v, &v)));
        let to_uvw = permutation(&[2, 2, 2], &[2, 0, 1]);
        let base_u = Tracked::constant(to_uvw.transpose())
            .mul(&m(&v, &v, &v))
            .mul(&Tracked::constant(to_uvw));
        let rhs = m(&triv, &vv, &v).mul(&base_u);
        assert_eq!(first_difference(&lhs.matrix, &rhs.matrix), None);
        assert!(cocycle_sides(&Mirrored, &l, [&v, &v, &v], &lambda)
            .unwrap()
            .violation()
            .is_some());
    }

    #[test]
    fn corrupted_twist_fails_cocycle() {
        struct Corrupt;
        impl TwistSource<RatFunc> for Corrupt {
            fn twist(&self, levi: &LeviDatum, lambda: &[RatFunc], a: &Rep, v: &Rep, w: &Rep) -> Result<Tracked<RatFunc>> {
                let mut f = Standard.twist(levi, lambda, a, v, w)?;
                if a.dim() == 1 && v.dim() == 2 && w.dim() == 2 {
                    let x = f.matrix.get(2, 1).times(&RatFunc::from_i64(2));
                    f.matrix.set(2, 1, x);
                }
                Ok(f)
            }
        }
        let (l, v) = sl2();
        let s = cocycle_sides(&Corrupt, &l, [&v, &v, &v], &lam()).unwrap();
        assert!(s.violation().is_some());
        let s = braid_sides(&Corrupt, &l, [&v, &v, &v], &lam()).unwrap();
        assert!(s.violation().is_some());
    }

    #[test]
    fn tensor_slot_matches_cg_assembly() {
        let (l, v) = sl2();
        let g = l.root_system().clone();
        let vv = tensor(&v, &v);
        let direct: TwistMatrix<RatFunc> = dynamical_twist(&l, &vv, &v, &lam(), 1).unwrap();
        let mut assembled = Matrix::<RatFunc>::zeros(8, 8);
        for b in cg_projections(&g, &v, &v) {
            let inner: TwistMatrix<RatFunc> = dynamical_twist(&l, &b.rep, &v, &lam(), 1).unwrap();
            let inj: Matrix<RatFunc> = to_f(&b.inj.kron(&Matrix::identity(2)));
            let proj: Matrix<RatFunc> = to_f(&b.proj.kron(&Matrix::identity(2)));
            assembled = assembled.add(&inj.mul(&inner.matrix).mul(&proj));
        }
        assert_eq!(direct.matrix, assembled);
    }

    #[test]
    fn classical_r_and_cdybe() {
        let (l, v) = sl2();
        let r = classical_r(&l, &v, &v).unwrap();
        // single-pole form: entries are constants or c/λ
        for i in 0..4 {
            for j in 0..4 {
                assert!(r.get(i, j).den().degree() <= 1);
            }
        }
        assert!(verify_cdybe(&l, &v).unwrap().passed());
        assert!(verify_normal_condition(&l, &v).unwrap().passed());
    }

    #[test]
    fn spin_one_cocycle_numeric() {
        let (l, _) = sl2();
        let g = l.root_system().clone();
        let v3 = irrep(&g, &[2]).unwrap();
        let v2 = Rep::defining(&g);
        let mode = LambdaMode::Numeric { min_samples: 3, seed: 1 };
        let rep = verify_shifted_cocycle(&l, [&v2, &v3, &v2], &mode).unwrap();
        assert!(rep.passed(), "{}", rep.describe());
        assert!(rep.points as u64 > rep.degree_bound);
    }

    #[test]
    fn sl3_levi_identities_numeric() {
        let g = RootSystem::sl(3).unwrap();
        let l = LeviDatum::new(&g, &[0]).unwrap();
        let v = Rep::defining(&g);
        let mode = LambdaMode::Numeric { min_samples: 5, seed: 7 };
        let rep = verify_shifted_cocycle(&l, [&v, &v, &v], &mode).unwrap();
        assert!(rep.passed(), "{}", rep.describe());
        assert!(rep.points as u64 > rep.degree_bound);
        let rep = verify_qdybe(&l, [&v, &v, &v], &mode).unwrap();
        assert!(rep.passed(), "{}", rep.describe());
        assert!(verify_equivariance(&l, &v, &v).unwrap().passed());
    }

    #[test]
    fn sample_points_are_generic_and_distinct() {
        let pts = sample_points(2, 40, 3);
        let mut s = pts.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), 40);
        assert!(pts.iter().flatten().all(|x| x.denom() == &7.into()));
    }
}
