use dynquant_scalars::{q, series_expand, solve_linear, Field, Matrix, Poly, RatFunc, Solution, Q};
use proptest::prelude::*;

fn small_q() -> impl Strategy<Value = Q> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| q(n, d))
}

/// Polynomial in l1, l2 of total degree <= 2.
fn small_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(small_q(), 6).prop_map(|c| {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let mons = [Poly::one(), x.clone(), y.clone(), x.mul(&x), x.mul(&y), y.mul(&y)];
        mons.iter().zip(&c).fold(Poly::zero(), |acc, (m, k)| acc.add(&m.scale(k)))
    })
}

fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), small_poly()).prop_filter_map(
        "zero denominator",
        |(n, d)| {
            if d.is_zero() {
                None
            } else {
                Some(RatFunc::new(n, d))
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in small_q(), b in small_q(), c in small_q()) {
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
    }

    #[test]
    fn ratfunc_field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.plus(&b).minus(&b), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.over(&b).times(&b), a);
        }
    }

    #[test]
    fn solutions_satisfy_the_system(
        entries in proptest::collection::vec(-3i64..4, 12),
        rhs in proptest::collection::vec(-3i64..4, 3),
    ) {
        let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
        let a = Matrix::from_i64(&rows);
        let b: Vec<Q> = rhs.iter().map(|&x| Q::from_i64(x)).collect();
        match solve_linear(&a, &b) {
            Solution::Unique(x) => prop_assert_eq!(a.mul_vec(&x), b),
            Solution::Family { particular, kernel } => {
                prop_assert_eq!(a.mul_vec(&particular), b);
                for k in kernel {
                    prop_assert!(a.mul_vec(&k).iter().all(|v| v.is_zero()));
                }
            }
            Solution::Inconsistent => {
                let aug = Matrix::from_fn(3, 5, |r, c| if c < 4 { a.get(r, c).clone() } else { b[r].clone() });
                prop_assert!(a.rank() < aug.rank());
            }
        }
    }

    #[test]
    fn series_expansion_is_multiplicative(
        f in small_ratfunc(), g in small_ratfunc(),
        a0 in small_q(), a1 in small_q(), b0 in small_q(), b1 in small_q(),
    ) {
        let a = [a0, a1];
        let b = [b0, b1];
        let (Ok(sf), Ok(sg), Ok(sfg)) = (
            series_expand::<Q>(&f, &a, &b, 4),
            series_expand::<Q>(&g, &a, &b, 4),
            series_expand::<Q>(&f.times(&g), &a, &b, 4),
        ) else {
            return Ok(());
        };
        let prod = sf.mul(&sg);
        let top = prod.order().min(sfg.order());
        for k in -6..=top {
            prop_assert_eq!(prod.coeff(k), sfg.coeff(k));
        }
    }
}
