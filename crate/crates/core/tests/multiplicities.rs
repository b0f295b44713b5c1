//! The word-straightening construction and the recursion oracle are
//! independent routes to the same weight multiplicities; they must agree
//! layer by layer, including at rank 2 where the imaginary layers carry
//! multiplicity 2.

use std::collections::BTreeMap;

use toroidal_core::exact::scalar;
use toroidal_core::freudenthal::{affine_multiplicities, finite_multiplicities, weyl_dimension};
use toroidal_core::verma::{AffineModule, HighestWeight};

fn layers_of(m: &AffineModule) -> BTreeMap<Vec<i64>, u64> {
    m.layers
        .iter()
        .map(|(nv, l)| (nv.clone(), l.dim() as u64))
        .collect()
}

#[test]
fn affine_construction_agrees_with_recursion_oracle() {
    for (d, hvals, level, depth) in [
        (1usize, vec![0i64], 2i64, 2usize),
        (1, vec![1], 1, 2),
        (1, vec![1], 3, 2),
        (2, vec![0, 0], 1, 2),
        (2, vec![1, 0], 2, 1),
    ] {
        let m = AffineModule::build(
            d,
            HighestWeight { hvals: hvals.clone(), level, dval: scalar::zero() },
            depth,
        )
        .unwrap();
        let mut want = affine_multiplicities(d, &hvals, level, depth).unwrap();
        want.retain(|_, v| *v > 0);
        assert_eq!(
            layers_of(&m),
            want,
            "disagreement at d={d} hvals={hvals:?} level={level} depth={depth}"
        );
    }
}

#[test]
fn finite_construction_agrees_with_oracle_rank_three() {
    // one rank-3 spot check: both routes and the dimension formula
    let m = AffineModule::build_finite(3, &[1, 0, 1]).unwrap();
    let mut want: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for (drop, mult) in finite_multiplicities(3, &[1, 0, 1]).unwrap() {
        if mult > 0 {
            let mut nv = vec![0i64];
            nv.extend(drop);
            want.insert(nv, mult);
        }
    }
    assert_eq!(layers_of(&m), want);
    assert_eq!(
        num::BigInt::from(m.dim()),
        weyl_dimension(3, &[1, 0, 1]).unwrap()
    );
}
