//! Job runners. Every job builds what it needs from the config, runs its
//! exact checks, and reports pass/fail with a witness on failure.

use rand::SeedableRng;
use serde_json::json;

use toroidal_core::evaluation::GridMatrix;
use toroidal_core::exact::monomial::Monomial;
use toroidal_core::exact::scalar::{self, Scalar};
use toroidal_core::modules::checks::{
    check_central_operators, check_integrability, module_axiom_check, weight_module_check,
};
use toroidal_core::modules::{
    build_example_41, build_example_42, build_loop_module, compute_gamma, ModVec,
    TruncatedModule,
};
use toroidal_core::root_data::ToroidalRootSystem;
use toroidal_core::tau::{self, TauElement};
use toroidal_core::{twist_module, Error, Result, TauAutomorphism};

use crate::config::{JobConfig, JobSpec};
use crate::report::JobResult;



pub fn run_job(cfg: &JobConfig, job: &JobSpec, seed: u64) -> JobResult {
    let outcome = match job {
        JobSpec::BuildTau { degree_bound } => build_tau(cfg, *degree_bound),
        JobSpec::VerifyBracket { degree_bound, random_trials } => {
            verify_bracket(cfg, *degree_bound, *random_trials, seed)
        }
        JobSpec::GridFactorize {} => grid_factorize(cfg, seed),
        JobSpec::BuildExample41 { degree_bound } => build_41(cfg, *degree_bound),
        JobSpec::BuildExample42 { degree_bound } => build_42(cfg, *degree_bound),
        JobSpec::Gamma {} => gamma(cfg),
        JobSpec::DecomposeLoop {} => decompose_loop(cfg),
        JobSpec::Integrability { family, degree_bound, max_power } => {
            integrability(cfg, family, *degree_bound, *max_power)
        }
        JobSpec::CentralOps { family, degree_bound } => {
            central_ops(cfg, family, *degree_bound)
        }
        JobSpec::Twist { matrix, family } => twist(cfg, matrix, family),
    };
    match outcome {
        Ok(result) => result,
        Err(err) => JobResult::fail(
            job_name(job),
            json!({}),
            json!({ "error": err.to_string() }),
        ),
    }
}

pub fn job_name(job: &JobSpec) -> &'static str {
    match job {
        JobSpec::BuildTau { .. } => "build-tau",
        JobSpec::VerifyBracket { .. } => "verify-bracket",
        JobSpec::GridFactorize { .. } => "grid-factorize",
        JobSpec::BuildExample41 { .. } => "build-example-41",
        JobSpec::BuildExample42 { .. } => "build-example-42",
        JobSpec::Gamma { .. } => "gamma",
        JobSpec::DecomposeLoop { .. } => "decompose-loop",
        JobSpec::Integrability { .. } => "integrability",
        JobSpec::CentralOps { .. } => "central-ops",
        JobSpec::Twist { .. } => "twist",
    }
}

fn system(cfg: &JobConfig) -> Result<ToroidalRootSystem> {
    ToroidalRootSystem::new_type_a(cfg.algebra.rank, cfg.algebra.loops)
}

fn family_module(cfg: &JobConfig, family: &str) -> Result<TruncatedModule> {
    let spec = cfg.psi_spec()?;
    match family {
        "example-41" => build_example_41(&spec, cfg.algebra.loops, cfg.depth),
        "example-42" => build_example_42(&spec, cfg.algebra.loops, cfg.depth),
        other => Err(Error::Domain(format!("unknown module family '{other}'"))),
    }
}

fn build_tau(cfg: &JobConfig, bound: i64) -> Result<JobResult> {
    let sys = system(cfg)?;
    let d = sys.d();
    let n = sys.n();
    let basis = tau::tau_basis(&sys, bound)?;
    // root space dimension table
    let beta: Vec<i64> = (0..d).map(|_| 1).collect();
    let e1: Vec<i64> = std::iter::once(1).chain(std::iter::repeat(0)).take(n).collect();
    let real_dim = tau::root_space(&sys, Some(&beta), &e1)?.len();
    let null_dim = tau::root_space(&sys, None, &e1)?.len();
    let zero_dim = tau::root_space(&sys, None, &vec![0; n])?.len();
    let ok = real_dim == 1 && null_dim == d + n - 1 && zero_dim == d + 2 * n;
    let details = json!({
        "rank": d,
        "loops": n,
        "basis_elements_within_bound": basis.len(),
        "root_space_dims": { "real": real_dim, "null": null_dim, "zero": zero_dim },
    });
    if ok {
        Ok(JobResult::pass("build-tau", details))
    } else {
        Ok(JobResult::fail("build-tau", details, json!("root space dimensions off")))
    }
}

fn verify_bracket(cfg: &JobConfig, bound: i64, trials: usize, seed: u64) -> Result<JobResult> {
    let sys = system(cfg)?;
    let basis = tau::tau_basis(&sys, bound)?;
    let anti = tau::antisymmetry_witness(&basis)?;
    if let Some((i, j)) = anti {
        return Ok(JobResult::fail(
            "verify-bracket",
            json!({ "basis_elements": basis.len() }),
            json!({ "antisymmetry": [basis[i].0, basis[j].0] }),
        ));
    }
    let jac = tau::jacobi_witness(&basis)?;
    if let Some((i, j, k)) = jac {
        return Ok(JobResult::fail(
            "verify-bracket",
            json!({ "basis_elements": basis.len() }),
            json!({ "jacobi": [basis[i].0, basis[j].0, basis[k].0] }),
        ));
    }
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let random = tau::jacobi_random(&sys, bound.max(2), trials, &mut rng)?;
    match random {
        Ok(count) => Ok(JobResult::pass(
            "verify-bracket",
            json!({
                "basis_elements": basis.len(),
                "exhaustive_triples": basis.len() * (basis.len() + 1) * (basis.len() + 2) / 6,
                "random_triples": count,
            }),
        )),
        Err(w) => Ok(JobResult::fail(
            "verify-bracket",
            json!({ "basis_elements": basis.len() }),
            json!({ "jacobi_random": [w.0.to_string(), w.1.to_string(), w.2.to_string()] }),
        )),
    }
}

fn grid_factorize(cfg: &JobConfig, seed: u64) -> Result<JobResult> {
    use rand::Rng;
    let grid = cfg.parse_grid()?;
    let gm = GridMatrix::build(&grid)?;
    let det_dense = gm.matrix().det();
    let det_factored = gm.det_factored();
    let product_matches = gm.dense_factor_product() == *gm.matrix();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let rhs: Vec<Scalar> = (0..gm.size())
        .map(|_| scalar::from_i64(rng.gen_range(-9..=9)))
        .collect();
    let sol = gm.solve_factored(&rhs);
    let round_trip = gm.matrix().mul_vec(&sol) == rhs;
    let dense_sol = gm.solve_transposed_dense(&rhs);
    let transposed_agree = match dense_sol {
        Some(ds) => gm.solve_transposed_factored(&rhs) == ds,
        None => false,
    };
    let ok = !scalar::is_zero(&det_dense)
        && det_dense == det_factored
        && product_matches
        && round_trip
        && transposed_agree;
    let details = json!({
        "size": gm.size(),
        "det": scalar::to_frac_string(&det_dense),
        "factor_product_matches": product_matches,
        "solve_round_trip": round_trip,
        "transposed_solver_agrees": transposed_agree,
    });
    if ok {
        Ok(JobResult::pass("grid-factorize", details))
    } else {
        Ok(JobResult::fail("grid-factorize", details, json!("grid matrix checks failed")))
    }
}

fn module_common_checks(
    name: &'static str,
    module: &TruncatedModule,
    bound: i64,
) -> Result<(bool, serde_json::Value, Option<serde_json::Value>)> {
    let sys = module.sys().clone();
    let ops = tau::tau_basis(&sys, bound)?;
    let axiom = module_axiom_check(module, &ops)?;
    let graded = weight_module_check(module)?;
    let summary = module.summary(name);
    let details = json!({
        "total_dim": summary.total_dim,
        "distinct_weights": summary.weight_dims.len(),
        "weight_dims": serde_json::to_value(&summary.weight_dims).unwrap(),
        "weight_grading_exact": graded.is_none(),
        "axiom_pairs": axiom.pairs_checked,
        "axiom_instances_checked": axiom.instances_checked,
        "axiom_instances_vacuous": axiom.instances_vacuous,
    });
    if axiom.passed() && graded.is_none() {
        Ok((true, details, None))
    } else if !axiom.passed() {
        Ok((false, details, Some(serde_json::to_value(&axiom.failures).unwrap())))
    } else {
        Ok((false, details, Some(json!({ "weight_grading": format!("{graded:?}") }))))
    }
}

fn build_41(cfg: &JobConfig, bound: i64) -> Result<JobResult> {
    let module = family_module(cfg, "example-41")?;
    let (ok, mut details, witness) = module_common_checks("example-41", &module, bound)?;
    // the center must act as zero
    let central = check_central_operators(&module, bound)?;
    let center_zero = central.all_zero();
    details["center_acts_zero"] = json!(center_zero);
    if ok && center_zero {
        Ok(JobResult::pass("build-example-41", details))
    } else {
        Ok(JobResult::fail(
            "build-example-41",
            details,
            witness.unwrap_or_else(|| json!("center acted nonzero")),
        ))
    }
}

fn build_42(cfg: &JobConfig, bound: i64) -> Result<JobResult> {
    let module = family_module(cfg, "example-42")?;
    let (ok, mut details, witness) = module_common_checks("example-42", &module, bound)?;
    let sys = module.sys().clone();
    let n = sys.n();
    let size = sys.d() + 1;
    let spec = cfg.psi_spec()?;
    let expected_level = scalar::from_i64(spec.total_level());
    // K_1 scalar, and vanishing of the other center directions
    let mut level_ok = true;
    let mut kill_ok = true;
    let k1 = TauElement::center_term(size, n, Monomial(vec![0; n]), 0, scalar::one());
    let mut shifted = vec![0i64; n];
    shifted[0] = 1;
    let k1_shifted = TauElement::center_term(size, n, Monomial(shifted), 1, scalar::one());
    for id in 0..module.dim() {
        let mut v = ModVec::new();
        v.insert(id, scalar::one());
        let (out, _) = module.apply(&k1, &v)?;
        let got = out.get(&id).cloned().unwrap_or_else(scalar::zero);
        if got != expected_level || out.len() > 1 {
            level_ok = false;
        }
        let (out, _) = module.apply(&k1_shifted, &v)?;
        if !out.is_empty() {
            kill_ok = false;
        }
        for axis in 1..n {
            let ki = TauElement::center_term(size, n, Monomial(vec![0; n]), axis, scalar::one());
            let (out, _) = module.apply(&ki, &v)?;
            if !out.is_empty() {
                kill_ok = false;
            }
        }
    }
    details["level_scalar"] = json!(scalar::to_frac_string(&expected_level));
    details["level_scalar_uniform"] = json!(level_ok);
    details["non_affine_center_vanishes"] = json!(kill_ok);
    if ok && level_ok && kill_ok {
        Ok(JobResult::pass("build-example-42", details))
    } else {
        Ok(JobResult::fail(
            "build-example-42",
            details,
            witness.unwrap_or_else(|| json!("central scalar checks failed")),
        ))
    }
}

fn gamma(cfg: &JobConfig) -> Result<JobResult> {
    let spec = cfg.psi_spec()?;
    let gamma = compute_gamma(&spec)?;
    let shape = spec.grid.shape();
    let divides = gamma
        .kj
        .iter()
        .zip(&shape)
        .all(|(&k, &nj)| k > 0 && (nj as i64) % k == 0);
    let psi_table = toroidal_core::modules::build_psi(&spec, 1);
    let details = json!({
        "basis": gamma.basis,
        "periods": gamma.kj,
        "index": gamma.index(),
        "periods_divide_axis_sizes": divides,
        "functional_table": serde_json::to_value(&psi_table).unwrap(),
    });
    if divides {
        Ok(JobResult::pass("gamma", details))
    } else {
        Ok(JobResult::fail("gamma", details, json!("period does not divide axis size")))
    }
}

fn decompose_loop(cfg: &JobConfig) -> Result<JobResult> {
    let spec = cfg.psi_spec()?;
    let lp = build_loop_module(&spec, cfg.depth)?;
    let count_ok = lp.component_count() as i64 == lp.gamma.index();
    let free_ok = lp.freeness_check();
    let details = json!({
        "components": lp.component_count(),
        "lattice_index": lp.gamma.index(),
        "freeness": free_ok,
    });
    if count_ok && free_ok {
        Ok(JobResult::pass("decompose-loop", details))
    } else {
        Ok(JobResult::fail("decompose-loop", details, json!("decomposition mismatch")))
    }
}

fn integrability(cfg: &JobConfig, family: &str, bound: i64, max_power: usize) -> Result<JobResult> {
    let module = family_module(cfg, family)?;
    let report = check_integrability(&module, bound, max_power)?;
    let details = json!({
        "family": family,
        "ops_sampled": report.ops_sampled,
        "vectors_checked": report.vectors_checked,
        "outcomes": report.outcomes,
    });
    if report.all_nilpotent_within_window() {
        Ok(JobResult::pass("integrability", details))
    } else {
        Ok(JobResult::fail(
            "integrability",
            details,
            serde_json::to_value(&report.failures).unwrap(),
        ))
    }
}

fn central_ops(cfg: &JobConfig, family: &str, bound: i64) -> Result<JobResult> {
    let module = family_module(cfg, family)?;
    let report = check_central_operators(&module, bound)?;
    let consistent = report.all_actions_proportional_per_degree
        && report
            .entries
            .iter()
            .all(|e| e.injective != Some(false) && e.inverse_verified != Some(false));
    let details = serde_json::to_value(&report).unwrap();
    if consistent {
        Ok(JobResult::pass("central-ops", details))
    } else {
        Ok(JobResult::fail("central-ops", details, json!("central operator inconsistency")))
    }
}

fn twist(cfg: &JobConfig, matrix: &[Vec<i64>], family: &str) -> Result<JobResult> {
    let module = family_module(cfg, family)?;
    let auto = TauAutomorphism::from_rows(matrix)?;
    let sys = module.sys().clone();
    let n = sys.n();
    let size = sys.d() + 1;
    let twisted = twist_module(module.clone(), auto.clone())?;
    let back = twist_module(twisted.clone(), auto.inverse())?;
    // round trip restores the action on the whole degree-1 basis
    let mut round_trip = true;
    for (_, op) in tau::tau_basis(&sys, 1)? {
        for id in 0..module.dim() {
            let mut v = ModVec::new();
            v.insert(id, scalar::one());
            if module.apply(&op, &v)? != back.apply(&op, &v)? {
                round_trip = false;
            }
        }
    }
    // central scalars before and after
    let scalar_of = |m: &TruncatedModule, axis: usize| -> Result<String> {
        let k = TauElement::center_term(size, n, Monomial(vec![0; n]), axis, scalar::one());
        let mut v = ModVec::new();
        v.insert(0, scalar::one());
        let (out, _) = m.apply(&k, &v)?;
        Ok(scalar::to_frac_string(
            &out.get(&0).cloned().unwrap_or_else(scalar::zero),
        ))
    };
    let before: Vec<String> = (0..n).map(|a| scalar_of(&module, a)).collect::<Result<_>>()?;
    let after: Vec<String> = (0..n).map(|a| scalar_of(&twisted, a)).collect::<Result<_>>()?;
    let details = json!({
        "family": family,
        "round_trip_identity": round_trip,
        "center_scalars_before": before,
        "center_scalars_after": after,
    });
    if round_trip {
        Ok(JobResult::pass("twist", details))
    } else {
        Ok(JobResult::fail("twist", details, json!("double twist changed the action")))
    }
}
