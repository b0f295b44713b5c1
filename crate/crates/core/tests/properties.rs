//! Property tests for the substrate invariants: reduction modulo grid
//! ideals is multiplicative and evaluation-preserving, lattice normal
//! forms preserve the lattice, and reflections behave like reflections.

use proptest::prelude::*;

use num::Zero;
use toroidal_core::exact::intmat::{complete_to_unimodular, hermite_normal_form, IntMatrix};
use toroidal_core::exact::laurent::{reduce_mod_grid, LaurentPoly};
use toroidal_core::exact::monomial::Monomial;
use toroidal_core::exact::scalar::{self, from_i64, Scalar};
use toroidal_core::root_data::{RealRoot, ToroidalRootSystem, WeightVec};

fn laurent_strategy(n: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (prop::collection::vec(-4i64..=4, n), -5i64..=5, 1i64..=3),
        0..5,
    )
    .prop_map(move |terms| {
        let mut p = LaurentPoly::zero(n);
        for (exps, num, den) in terms {
            p.add_term(Monomial(exps), scalar::ratio(num, den));
        }
        p
    })
}

fn grid_strategy() -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    // one axis with 1..3 distinct nonzero small points, one with 1..2
    (
        prop::sample::subsequence(vec![1i64, 2, 3, -1, -2, 5], 1..=3),
        prop::sample::subsequence(vec![1i64, -3, 4], 1..=2),
    )
        .prop_map(|(a, b)| {
            vec![
                a.into_iter().map(from_i64).collect(),
                b.into_iter().map(from_i64).collect(),
            ]
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_multiplicative(p in laurent_strategy(2), q in laurent_strategy(2), axes in grid_strategy()) {
        let lhs = reduce_mod_grid(&p.mul(&q), &axes).unwrap();
        let rp = reduce_mod_grid(&p, &axes).unwrap();
        let rq = reduce_mod_grid(&q, &axes).unwrap();
        let rhs = reduce_mod_grid(&rp.mul(&rq), &axes).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_preserves_evaluation(p in laurent_strategy(2), axes in grid_strategy()) {
        let r = reduce_mod_grid(&p, &axes).unwrap();
        for a0 in &axes[0] {
            for a1 in &axes[1] {
                let point = vec![a0.clone(), a1.clone()];
                prop_assert_eq!(p.eval(&point), r.eval(&point));
            }
        }
        // support lands inside the exponent box
        for (m, _) in r.terms() {
            prop_assert!(m.0[0] >= 0 && (m.0[0] as usize) < axes[0].len());
            prop_assert!(m.0[1] >= 0 && (m.0[1] as usize) < axes[1].len());
        }
    }

    #[test]
    fn hnf_spans_the_same_lattice(gens in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..5)) {
        let (basis, u) = hermite_normal_form(&gens).unwrap();
        prop_assert!(u.is_unimodular());
        // generators lie in the span of the basis and vice versa
        if !basis.is_empty() {
            let bm = IntMatrix::from_rows_i64(&basis).unwrap();
            for g in &gens {
                prop_assert!(in_lattice(&bm, g));
            }
        } else {
            prop_assert!(gens.iter().all(|g| g.iter().all(|&x| x == 0)));
        }
        let gm_rows: Vec<Vec<i64>> = gens.clone();
        let (gen_basis, _) = hermite_normal_form(&gm_rows).unwrap();
        if !gen_basis.is_empty() {
            let gbm = IntMatrix::from_rows_i64(&gen_basis).unwrap();
            for b in &basis {
                prop_assert!(in_lattice(&gbm, b));
            }
        }
    }

    #[test]
    fn unimodular_completion_det(v in prop::collection::vec(-9i64..=9, 2)) {
        // make the vector primitive by dividing out the gcd
        let g = gcd(v[0].abs(), v[1].abs());
        prop_assume!(g != 0);
        let prim: Vec<i64> = v.iter().map(|&x| x / g).collect();
        let b = complete_to_unimodular(std::slice::from_ref(&prim)).unwrap();
        prop_assert!(b.is_unimodular());
        prop_assert_eq!(b.mul_vec_i64(&prim), vec![1, 0]);
    }

    #[test]
    fn reflections_are_involutions(
        alpha_pick in 0usize..6,
        m in prop::collection::vec(-2i64..=2, 2),
        lam_coords in prop::collection::vec((-3i64..=3, 1i64..=2), 5),
    ) {
        let sys = ToroidalRootSystem::new_type_a(1, 2).unwrap();
        let alpha = alpha_pick % sys.finite_roots().len();
        let gamma = RealRoot { alpha, m };
        let lam = WeightVec {
            coords: lam_coords.iter().map(|&(p, q)| scalar::ratio(p, q)).collect(),
        };
        let once = sys.reflect(&gamma, &lam);
        let twice = sys.reflect(&gamma, &once);
        prop_assert_eq!(twice, lam.clone());
        // the form is invariant
        let mu = sys.w_vec(1).add(&sys.simple_root(1));
        let lhs = sys.form_dual(&sys.reflect(&gamma, &lam), &sys.reflect(&gamma, &mu));
        prop_assert_eq!(lhs, sys.form_dual(&lam, &mu));
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn in_lattice(hnf_rows: &IntMatrix, v: &[i64]) -> bool {
    use num::bigint::BigInt;
    use num::Integer;
    let mut rem: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    for i in 0..hnf_rows.rows {
        let pivot_col = (0..hnf_rows.cols).find(|&j| !hnf_rows[(i, j)].is_zero());
        let Some(pc) = pivot_col else { continue };
        let (q, r) = rem[pc].div_rem(&hnf_rows[(i, pc)]);
        if !r.is_zero() {
            return false;
        }
        for j in 0..hnf_rows.cols {
            let sub = &q * &hnf_rows[(i, j)];
            rem[j] -= sub;
        }
    }
    rem.iter().all(|x| x.is_zero())
}
