use crate::report::Report;
use dynquant_scalars::{qi, Matrix, Q};
use num_traits::{One, Zero};

pub type Vector = Vec<Q>;

pub(crate) fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

pub(crate) fn axpy(acc: &mut [Q], c: &Q, x: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

pub(crate) fn nonzero(v: &[Q]) -> impl Iterator<Item = (usize, &Q)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero())
}

/// Nonzero entries of a two-tensor.
pub(crate) fn entries(m: &Matrix<Q>) -> Vec<(usize, usize, Q)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.get(r, c).is_zero() {
                out.push((r, c, m.get(r, c).clone()));
            }
        }
    }
    out
}

/// A finite-dimensional Hopf algebra on the basis `e_0..e_{n-1}`.
#[derive(Clone, Debug)]
pub struct FinHopf {
    pub name: String,
    dim: usize,
    /// `e_i e_j`.
    mult: Vec<Vec<Vector>>,
    unit: Vector,
    /// `Δ(e_i)` as the matrix of coefficients of `e_a ⊗ e_b`.
    comult: Vec<Matrix<Q>>,
    counit: Vector,
    /// Column `i` is `S(e_i)`.
    antipode: Matrix<Q>,
    /// Basis degrees and the cap, for truncations of graded algebras.
    grading: Option<(Vec<usize>, usize)>,
}

impl FinHopf {
    pub fn new(
        name: &str,
        mult: Vec<Vec<Vector>>,
        unit: Vector,
        comult: Vec<Matrix<Q>>,
        counit: Vector,
        antipode: Matrix<Q>,
        grading: Option<(Vec<usize>, usize)>,
    ) -> Result<Self, String> {
        let n = unit.len();
        let square = mult.len() == n && mult.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n));
        let co = comult.len() == n && comult.iter().all(|m| m.rows() == n && m.cols() == n);
        if !square || !co || counit.len() != n || antipode.rows() != n || antipode.cols() != n {
            return Err(format!("structure tensors do not match dimension {n}"));
        }
        if let Some((d, _)) = &grading {
            if d.len() != n {
                return Err(format!("{} degrees for dimension {n}", d.len()));
            }
        }
        Ok(FinHopf {
            name: name.to_string(),
            dim: n,
            mult,
            unit,
            comult,
            counit,
            antipode,
            grading,
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
        self.grading.as_ref().map_or(0, |(d, _)| d[i])
    }

    pub fn grading(&self) -> Option<&(Vec<usize>, usize)> {
        self.grading.as_ref()
    }

    /// Whether a tuple of basis elements stays under the degree cap.
    pub fn in_range(&self, idx: &[usize]) -> bool {
        match &self.grading {
            None => true,
            Some((d, cap)) => idx.iter().map(|&i| d[i]).sum::<usize>() <= *cap,
        }
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

    pub fn mul_basis(&self, i: usize, j: usize) -> &[Q] {
        &self.mult[i][j]
    }

    pub fn comult(&self, a: &[Q]) -> Matrix<Q> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (i, x) in nonzero(a) {
            out = out.add(&self.comult[i].scale(x));
        }
        out
    }

    pub fn comult_basis(&self, i: usize) -> &Matrix<Q> {
        &self.comult[i]
    }

    pub fn counit(&self, a: &[Q]) -> Q {
        a.iter().zip(&self.counit).map(|(x, y)| x * y).fold(Q::zero(), |s, t| s + t)
    }

    pub fn antipode(&self, a: &[Q]) -> Vector {
        self.antipode.mul_vec(a)
    }

    pub fn antipode_matrix(&self) -> &Matrix<Q> {
        &self.antipode
    }

    /// `x(1) a S(x(2))`.
    pub fn adjoint(&self, x: &[Q], a: &[Q]) -> Vector {
        let mut out = vec![Q::zero(); self.dim];
        for (p, q, c) in entries(&self.comult(x)) {
            let t = self.mul(&self.mul(&self.basis(p), a), &self.antipode(&self.basis(q)));
            axpy(&mut out, &c, &t);
        }
        out
    }

    /// Group algebra of `Z/n`, basis `g^k`.
    pub fn cyclic(n: usize) -> Self {
        let mult = (0..n)
            .map(|i| (0..n).map(|j| unit_vector(n, (i + j) % n)).collect())
            .collect();
        let comult = (0..n)
            .map(|i| Matrix::from_fn(n, n, |a, b| if a == i && b == i { Q::one() } else { Q::zero() }))
            .collect();
        let antipode = Matrix::from_fn(n, n, |r, c| if r == (n - c) % n { Q::one() } else { Q::zero() });
        FinHopf::new(
            &format!("Q[Z/{n}]"),
            mult,
            unit_vector(n, 0),
            comult,
            vec![Q::one(); n],
            antipode,
            None,
        )
        .expect("consistent by construction")
    }

    /// Sweedler's four-dimensional algebra: `g^2 = 1`, `x^2 = 0`,
    /// `xg = -gx`, `Δg = g ⊗ g`, `Δx = x ⊗ 1 + g ⊗ x`. Basis `g^a x^b` at
    /// index `2b + a`.
    pub fn sweedler() -> Self {
        let idx = |a: usize, b: usize| 2 * b + a;
        let mult = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let (a, b) = (i % 2, i / 2);
                        let (c, d) = (j % 2, j / 2);
                        let mut v = vec![Q::zero(); 4];
                        if b + d < 2 {
                            let sign = if b * c == 1 { -1 } else { 1 };
                            v[idx((a + c) % 2, b + d)] = qi(sign);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut comult = vec![Matrix::zeros(4, 4); 4];
        comult[idx(0, 0)].set(0, 0, Q::one());
        comult[idx(1, 0)].set(1, 1, Q::one());
        // Δx = x ⊗ 1 + g ⊗ x
        comult[idx(0, 1)].set(idx(0, 1), 0, Q::one());
        comult[idx(0, 1)].set(idx(1, 0), idx(0, 1), Q::one());
        // Δ(gx) = gx ⊗ g + 1 ⊗ gx
        comult[idx(1, 1)].set(idx(1, 1), idx(1, 0), Q::one());
        comult[idx(1, 1)].set(0, idx(1, 1), Q::one());
        let counit = vec![Q::one(), Q::one(), Q::zero(), Q::zero()];
        // S(x) = -gx, S(gx) = x
        let mut antipode = Matrix::zeros(4, 4);
        antipode.set(0, 0, Q::one());
        antipode.set(1, 1, Q::one());
        antipode.set(idx(1, 1), idx(0, 1), qi(-1));
        antipode.set(idx(0, 1), idx(1, 1), Q::one());
        FinHopf::new("Sweedler H4", mult, unit_vector(4, 0), comult, counit, antipode, None).expect("consistent by construction")
    }

    /// `S(h)` for abelian `h` of dimension `k`, truncated at degree `cap`.
    /// Basis: monomials of degree at most `cap` in graded-lex order.
    pub fn truncated_uh(k: usize, cap: usize) -> Self {
        let monos = monomials(k, cap);
        let n = monos.len();
        let pos = |e: &[usize]| monos.iter().position(|m| m == e);
        let deg = |e: &[usize]| e.iter().sum::<usize>();
        let mult = monos
            .iter()
            .map(|a| {
                monos
                    .iter()
                    .map(|b| {
                        let s: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        pos(&s).map_or_else(|| vec![Q::zero(); n], |p| unit_vector(n, p))
                    })
                    .collect()
            })
            .collect();
        // Δ(x^a) = Σ_{b <= a} binom(a, b) x^b ⊗ x^{a-b}
        let comult = monos
            .iter()
            .map(|a| {
                let mut m = Matrix::zeros(n, n);
                for (i, b) in monos.iter().enumerate() {
                    if b.iter().zip(a).all(|(x, y)| x <= y) {
                        let rest: Vec<usize> = a.iter().zip(b).map(|(y, x)| y - x).collect();
                        let c = a.iter().zip(b).map(|(&y, &x)| binom(y, x)).product::<u64>();
                        m.set(i, pos(&rest).expect("lower degree"), Q::from_integer((c as i64).into()));
                    }
                }
                m
            })
            .collect();
        let counit = monos.iter().map(|m| if deg(m) == 0 { Q::one() } else { Q::zero() }).collect();
        let antipode = Matrix::from_fn(n, n, |r, c| {
            if r == c {
                qi(if deg(&monos[c]) % 2 == 0 { 1 } else { -1 })
            } else {
                Q::zero()
            }
        });
        let degrees = monos.iter().map(|m| deg(m)).collect();
        FinHopf::new(
            &format!("S(h), dim h = {k}, degree <= {cap}"),
            mult,
            unit_vector(n, 0),
            comult,
            counit,
            antipode,
            Some((degrees, cap)),
        )
        .expect("consistent by construction")
    }

    /// `H0 ⊗ H1`, basis `e_i ⊗ f_j` at index `i·dim H1 + j`.
    pub fn tensor(h0: &FinHopf, h1: &FinHopf) -> Self {
        let (n0, n1) = (h0.dim, h1.dim);
        let n = n0 * n1;
        let split = |i: usize| (i / n1, i % n1);
        let kron = |a: &[Q], b: &[Q]| -> Vector {
            let mut v = vec![Q::zero(); n];
            for (i, x) in nonzero(a) {
                for (j, y) in nonzero(b) {
                    v[i * n1 + j] = x * y;
                }
            }
            v
        };
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let ((a, b), (c, d)) = (split(i), split(j));
                        kron(&h0.mult[a][c], &h1.mult[b][d])
                    })
                    .collect()
            })
            .collect();
        let comult = (0..n)
            .map(|i| {
                let (a, b) = split(i);
                let mut m = Matrix::zeros(n, n);
                for (p, q, x) in entries(&h0.comult[a]) {
                    for (r, s, y) in entries(&h1.comult[b]) {
                        m.set(p * n1 + r, q * n1 + s, &x * &y);
                    }
                }
                m
            })
            .collect();
        let counit = (0..n).map(|i| &h0.counit[i / n1] * &h1.counit[i % n1]).collect();
        let antipode = h0.antipode.kron(&h1.antipode);
        let grading = match (&h0.grading, &h1.grading) {
            (None, None) => None,
            _ => Some((
                (0..n).map(|i| h0.degree(i / n1) + h1.degree(i % n1)).collect(),
                h0.grading.as_ref().map_or(0, |g| g.1) + h1.grading.as_ref().map_or(0, |g| g.1),
            )),
        };
        FinHopf::new(
            &format!("{} ⊗ {}", h0.name, h1.name),
            mult,
            kron(&h0.unit, &h1.unit),
            comult,
            counit,
            antipode,
            grading,
        )
        .expect("consistent by construction")
    }

    /// `(Δ ⊗ id)` applied to a two-tensor, flattened as `(a, b, c)`.
    pub(crate) fn comult_left(&self, t: &Matrix<Q>, right_dim: usize) -> Vector {
        let n = self.dim;
        let mut out = vec![Q::zero(); n * n * right_dim];
        for (p, c, x) in entries(t) {
            for (a, b, y) in entries(&self.comult[p]) {
                out[(a * n + b) * right_dim + c] += &x * &y;
            }
        }
        out
    }

    pub fn check_axioms(&self) -> Report {
        let n = self.dim;
        let mut rep = Report::default();
        let triples = || (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));
        let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));

        let assoc = triples()
            .filter(|&(i, j, k)| self.in_range(&[i, j, k]))
            .find(|&(i, j, k)| self.mul(&self.mult[i][j], &self.basis(k)) != self.mul(&self.basis(i), &self.mult[j][k]));
        rep.push("associativity", assoc.map(|t| format!("at basis triple {t:?}")));

        let unit = (0..n).find(|&i| {
            self.mul(&self.unit, &self.basis(i)) != self.basis(i) || self.mul(&self.basis(i), &self.unit) != self.basis(i)
        });
        rep.push("unit", unit.map(|i| format!("at e_{i}")));

        let coassoc = (0..n).find(|&i| {
            let left = self.comult_left(&self.comult[i], n);
            let mut right = vec![Q::zero(); n * n * n];
            for (a, p, x) in entries(&self.comult[i]) {
                for (b, c, y) in entries(&self.comult[p]) {
                    right[(a * n + b) * n + c] += &x * &y;
                }
            }
            left != right
        });
        rep.push("coassociativity", coassoc.map(|i| format!("at e_{i}")));

        let counit = (0..n).find(|&i| {
            let mut l = vec![Q::zero(); n];
            let mut r = vec![Q::zero(); n];
            for (a, b, x) in entries(&self.comult[i]) {
                l[b] += &x * &self.counit[a];
                r[a] += &x * &self.counit[b];
            }
            l != self.basis(i) || r != self.basis(i)
        });
        rep.push("counit", counit.map(|i| format!("at e_{i}")));

        let delta_mult = pairs().filter(|&(i, j)| self.in_range(&[i, j])).find(|&(i, j)| {
            let lhs = self.comult(&self.mult[i][j]);
            let mut rhs = Matrix::zeros(n, n);
            for (a, b, x) in entries(&self.comult[i]) {
                for (c, d, y) in entries(&self.comult[j]) {
                    let xy = &x * &y;
                    for (p, u) in nonzero(&self.mult[a][c]) {
                        for (q, v) in nonzero(&self.mult[b][d]) {
                            let cur = rhs.get(p, q) + &xy * u * v;
                            rhs.set(p, q, cur);
                        }
                    }
                }
            }
            lhs != rhs
        });
        let unit_delta = {
            let mut m = Matrix::zeros(n, n);
            for (i, x) in nonzero(&self.unit) {
                for (j, y) in nonzero(&self.unit) {
                    m.set(i, j, x * y);
                }
            }
            self.comult(&self.unit) != m
        };
        rep.push(
            "coproduct is multiplicative",
            delta_mult
                .map(|p| format!("at basis pair {p:?}"))
                .or(unit_delta.then(|| "Δ(1) != 1 ⊗ 1".into())),
        );

        let eps_mult = pairs()
            .filter(|&(i, j)| self.in_range(&[i, j]))
            .find(|&(i, j)| self.counit(&self.mult[i][j]) != &self.counit[i] * &self.counit[j]);
        rep.push("counit is multiplicative", eps_mult.map(|p| format!("at basis pair {p:?}")));

        let antipode = (0..n).find(|&i| {
            let mut l = vec![Q::zero(); n];
            let mut r = vec![Q::zero(); n];
            for (a, b, x) in entries(&self.comult[i]) {
                axpy(&mut l, &x, &self.mul(&self.antipode(&self.basis(a)), &self.basis(b)));
                axpy(&mut r, &x, &self.mul(&self.basis(a), &self.antipode(&self.basis(b))));
            }
            let e: Vector = self.unit.iter().map(|u| u * &self.counit[i]).collect();
            l != e || r != e
        });
        rep.push("antipode", antipode.map(|i| format!("at e_{i}")));
        rep
    }
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Exponent vectors in `k` variables of degree at most `cap`, by degree then
/// reverse-lexicographically.
pub(crate) fn monomials(k: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; k]];
    for d in 1..=cap {
        let mut layer = Vec::new();
        fill(k, d, &mut vec![], &mut layer);
        out.extend(layer);
    }
    out
}

fn fill(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() + 1 == k {
        cur.push(left);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for x in (0..=left).rev() {
        cur.push(x);
        fill(k, left - x, cur, out);
        cur.pop();
    }
}
