//! The dynamical shift by a slot must use the full base `C_λ ⊗ V`. Replacing
//! it by the scalar shift `λ + wt_c(v)` vector by vector is the same thing
//! for `l = h` and breaks the cocycle once `l0` acts on `V`.

use dynquant::error::Result;
use dynquant::repcat::Rep;
use dynquant::twist::{cocycle_sides, required_depth, twist_over, Standard, Tracked, TwistSource};
use dynquant::{LeviDatum, Matrix, RootSystem, Q};
use dynquant_scalars::q;

struct ScalarShift;

impl TwistSource<Q> for ScalarShift {
    fn twist(&self, levi: &LeviDatum, lambda: &[Q], a: &Rep, v: &Rep, w: &Rep) -> Result<Tracked<Q>> {
        let triv = Rep::trivial(levi.root_system());
        let n = v.dim() * w.dim();
        let mut m = Matrix::zeros(a.dim() * n, a.dim() * n);
        for i in 0..a.dim() {
            let shifted: Vec<Q> = lambda.iter().zip(levi.c_coords(a.weight(i))).map(|(x, c)| x + c).collect();
            let f = twist_over(levi, &shifted, &triv, v, w, required_depth(levi, v, w))?;
            for r in 0..n {
                for s in 0..n {
                    m.set(i * n + r, i * n + s, f.matrix.get(r, s).clone());
                }
            }
        }
        Ok(Tracked { matrix: m, bound: 0 })
    }
}

fn cocycle_holds(src: &impl TwistSource<Q>, retained: &[usize]) -> bool {
    let g = RootSystem::sl(3).unwrap();
    let l = LeviDatum::new(&g, retained).unwrap();
    let v = Rep::defining(&g);
    let lambda = [q(2, 7), q(-3, 7)];
    let s = cocycle_sides(src, &l, [&v, &v, &v], &lambda[..l.r()]).unwrap();
    s.lhs == s.rhs
}

#[test]
fn scalar_shift_agrees_for_the_cartan() {
    assert!(cocycle_holds(&ScalarShift, &[]));
    assert!(cocycle_holds(&Standard, &[]));
}

#[test]
fn scalar_shift_breaks_the_cocycle_for_a_larger_levi() {
    assert!(!cocycle_holds(&ScalarShift, &[0]));
    assert!(cocycle_holds(&Standard, &[0]));
}
