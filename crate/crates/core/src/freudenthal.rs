//! Independent weight-multiplicity oracles: the classical recursion over
//! the finite root system, its affine analogue with imaginary root
//! multiplicities, and the product formula for finite dimensions.
//!
//! Nothing here touches the word-straightening construction; these are
//! the cross-checks for it.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::{self};
use crate::root_data::{ToroidalRootSystem, WeightVec};

fn finite_highest_weight(sys: &ToroidalRootSystem, hvals: &[i64]) -> WeightVec {
    let mut lam = WeightVec::zero(sys.dim());
    for (i, &v) in hvals.iter().enumerate() {
        if v != 0 {
            lam = lam.add(&sys.fundamental_weight(i + 1).scale(&scalar::from_i64(v)));
        }
    }
    lam
}

/// Weight multiplicities of the finite irreducible module, keyed by the
/// simple-root coordinates of the drop below the highest weight.
pub fn finite_multiplicities(d: usize, hvals: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
    if hvals.len() != d || hvals.iter().any(|&v| v < 0) {
        return Err(Error::Domain("need a dominant integral weight".into()));
    }
    let sys = ToroidalRootSystem::new_type_a(d, 1)?;
    let lam = finite_highest_weight(&sys, hvals);
    let rho = sys.rho_finite();
    let lam_rho = lam.add(&rho);
    let lam_rho_norm = sys.form_dual(&lam_rho, &lam_rho);

    let positives: Vec<(Vec<i64>, WeightVec)> = sys
        .finite_roots()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_positive())
        .map(|(idx, r)| (r.coeffs.clone(), sys.finite_root_weight(idx)))
        .collect();

    let drop_weight = |drop: &[i64]| -> WeightVec {
        let mut w = lam.clone();
        for (i, &n) in drop.iter().enumerate() {
            if n != 0 {
                w = w.sub(&sys.simple_root(i + 1).scale(&scalar::from_i64(n)));
            }
        }
        w
    };

    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    mult.insert(vec![0; d], 1);
    // agenda ordered by height so every recursion input is ready
    let mut agenda: BTreeMap<i64, std::collections::BTreeSet<Vec<i64>>> = BTreeMap::new();
    let push_neighbors =
        |agenda: &mut BTreeMap<i64, std::collections::BTreeSet<Vec<i64>>>, drop: &[i64]| {
            for i in 0..d {
                let mut next = drop.to_vec();
                next[i] += 1;
                let h: i64 = next.iter().sum();
                agenda.entry(h).or_default().insert(next);
            }
        };
    push_neighbors(&mut agenda, &vec![0; d]);

    while let Some((&h, _)) = agenda.iter().next() {
        let batch = agenda.remove(&h).unwrap();
        for drop in batch {
            if mult.contains_key(&drop) {
                continue;
            }
            let mu = drop_weight(&drop);
            let mut numerator = scalar::zero();
            for (coeffs, alpha_w) in &positives {
                let mut k = 1i64;
                loop {
                    let shifted: Vec<i64> =
                        drop.iter().zip(coeffs).map(|(a, b)| a - k * b).collect();
                    if shifted.iter().any(|&v| v < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&shifted) {
                        if m > 0 {
                            let shifted_w = mu.add(&alpha_w.scale(&scalar::from_i64(k)));
                            numerator += sys.form_dual(&shifted_w, alpha_w)
                                * scalar::from_i64(m as i64);
                        }
                    }
                    k += 1;
                }
            }
            numerator *= scalar::from_i64(2);
            if numerator.is_zero() {
                continue;
            }
            let mu_rho = mu.add(&rho);
            let denom = &lam_rho_norm - sys.form_dual(&mu_rho, &mu_rho);
            debug_assert!(!denom.is_zero());
            let value = numerator / denom;
            debug_assert!(scalar::is_integer(&value));
            let m = scalar::to_i64(&value).expect("multiplicity fits in i64");
            debug_assert!(m > 0);
            mult.insert(drop.clone(), m as u64);
            push_neighbors(&mut agenda, &drop);
        }
    }
    Ok(mult)
}

/// Finite irreducible dimension by the product formula.
pub fn weyl_dimension(d: usize, hvals: &[i64]) -> Result<BigInt> {
    if hvals.len() != d || hvals.iter().any(|&v| v < 0) {
        return Err(Error::Domain("need a dominant integral weight".into()));
    }
    let sys = ToroidalRootSystem::new_type_a(d, 1)?;
    let lam = finite_highest_weight(&sys, hvals);
    let rho = sys.rho_finite();
    let lam_rho = lam.add(&rho);
    let mut num = scalar::one();
    let mut den = scalar::one();
    for (idx, r) in sys.finite_roots().iter().enumerate() {
        if !r.is_positive() {
            continue;
        }
        let aw = sys.finite_root_weight(idx);
        num *= sys.form_dual(&lam_rho, &aw);
        den *= sys.form_dual(&rho, &aw);
    }
    let v = num / den;
    debug_assert!(v.denom().is_one());
    Ok(v.numer().clone())
}

/// Weight multiplicities of the truncated irreducible affine module,
/// keyed by `(n_0, n_1..n_d)` over the affine simple roots, complete for
/// `n_0 <= depth`. Imaginary layers carry root multiplicity `d`.
pub fn affine_multiplicities(
    d: usize,
    hvals: &[i64],
    level: i64,
    depth: usize,
) -> Result<BTreeMap<Vec<i64>, u64>> {
    if hvals.len() != d || hvals.iter().any(|&v| v < 0) {
        return Err(Error::Domain("need a dominant integral weight".into()));
    }
    let finite_sum: i64 = hvals.iter().sum();
    if level < finite_sum {
        return Err(Error::Domain("level below the finite height".into()));
    }
    let sys = ToroidalRootSystem::new_type_a(d, 1)?;
    let lam = finite_highest_weight(&sys, hvals)
        .add(&sys.w_vec(1).scale(&scalar::from_i64(level)));
    // the affine Weyl vector: finite part plus the dual Coxeter number
    let rho_f = sys.rho_finite();
    let hdual = scalar::one() + sys.pair(&rho_f, &sys.beta_coroot());
    let rho = rho_f.add(&sys.w_vec(1).scale(&hdual));
    let lam_rho = lam.add(&rho);
    let lam_rho_norm = sys.form_dual(&lam_rho, &lam_rho);

    // affine simple roots in order (alpha_0 = the loop one, alpha_1..d)
    let simple = |i: usize| -> WeightVec {
        if i == 0 {
            sys.simple_root(d + 1)
        } else {
            sys.simple_root(i)
        }
    };
    let nvec_weight = |nv: &[i64]| -> WeightVec {
        let mut acc = WeightVec::zero(sys.dim());
        for (i, &c) in nv.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&simple(i).scale(&scalar::from_i64(c)));
            }
        }
        acc
    };

    // positive roots with loop degree <= depth, as (nvec, weight, mult)
    let mut positives: Vec<(Vec<i64>, WeightVec, u64)> = Vec::new();
    for (idx, r) in sys.finite_roots().iter().enumerate() {
        if r.is_positive() {
            let mut nv = vec![0i64; d + 1];
            for (i, &c) in r.coeffs.iter().enumerate() {
                nv[i + 1] = c;
            }
            positives.push((nv, sys.finite_root_weight(idx), 1));
        }
    }
    for k in 1..=depth as i64 {
        let delta_part = sys.delta(1).scale(&scalar::from_i64(k));
        for (idx, r) in sys.finite_roots().iter().enumerate() {
            let mut nv = vec![k; d + 1];
            for (i, &c) in r.coeffs.iter().enumerate() {
                nv[i + 1] += c;
            }
            positives.push((nv, sys.finite_root_weight(idx).add(&delta_part), 1));
        }
        positives.push((vec![k; d + 1], delta_part, d as u64));
    }

    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    mult.insert(vec![0; d + 1], 1);
    let mut agenda: BTreeMap<i64, std::collections::BTreeSet<Vec<i64>>> = BTreeMap::new();
    let push_neighbors = |agenda: &mut BTreeMap<i64, std::collections::BTreeSet<Vec<i64>>>,
                          nv: &[i64]| {
        for i in 0..=d {
            let mut next = nv.to_vec();
            next[i] += 1;
            if next[0] > depth as i64 {
                continue;
            }
            let h: i64 = next.iter().sum();
            agenda.entry(h).or_default().insert(next);
        }
    };
    push_neighbors(&mut agenda, &vec![0; d + 1]);

    while let Some((&h, _)) = agenda.iter().next() {
        let batch = agenda.remove(&h).unwrap();
        for nv in batch {
            if mult.contains_key(&nv) {
                continue;
            }
            let mu = lam.sub(&nvec_weight(&nv));
            let mut numerator = scalar::zero();
            for (alpha_nv, alpha_w, alpha_mult) in &positives {
                let mut k = 1i64;
                loop {
                    let shifted: Vec<i64> = nv
                        .iter()
                        .zip(alpha_nv)
                        .map(|(a, b)| a - k * b)
                        .collect();
                    if shifted.iter().any(|&v| v < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&shifted) {
                        if m > 0 {
                            let shifted_w = mu.add(&alpha_w.scale(&scalar::from_i64(k)));
                            numerator += sys.form_dual(&shifted_w, alpha_w)
                                * scalar::from_i64((m * alpha_mult) as i64);
                        }
                    }
                    k += 1;
                }
            }
            numerator *= scalar::from_i64(2);
            if numerator.is_zero() {
                continue;
            }
            let mu_rho = mu.add(&rho);
            let denom = &lam_rho_norm - sys.form_dual(&mu_rho, &mu_rho);
            debug_assert!(!denom.is_zero());
            let value = numerator / denom;
            debug_assert!(scalar::is_integer(&value));
            let m = scalar::to_i64(&value).expect("multiplicity fits in i64");
            debug_assert!(m > 0);
            mult.insert(nv.clone(), m as u64);
            push_neighbors(&mut agenda, &nv);
        }
    }
    Ok(mult)
}
