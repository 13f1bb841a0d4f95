//! Named computations referenced by the fixture file, and the brute-force
//! oracles that produce frozen expectations for `DERIVED` checks.

use serde::Deserialize;
use serde_json::{json, Value};

use lieform_core::cohomology::{
    classes_independent, cochain_from_map, cohomology, graded_cohomology, is_coboundary, is_cocycle,
    positive_cohomology, weight_decomposition, Coefficients,
};
use lieform_core::comm::{
    cokernel_dim, cyclic1, derivations_comm, fixed_points, harrison2, squares_subalgebra, xi_space,
};
use lieform_core::constructions::{
    ad_squared, adf_squared, current_algebra, divided_powers, sl2, special_derivation, E,
};
use lieform_core::deform::{
    build_deformed, deform, enumerate, fifteen_dim, fifteen_dim_params, fifteen_dim_square_identity,
    fifteen_dim_torus, massey_half, obstruction_pair, perturb, sl2_weight_cocycles, ExtensionContext,
};
use lieform_core::invariants::{
    absolute_zero_divisors, center, centroid, commutant, derivation_algebra, invariant_symmetric_forms,
    is_simple_gf2, two_envelope, verify_torus,
};
use lieform_core::oracle;
use lieform_core::schema::ConstructionSpec;
use lieform_core::{AlgebraTable, Error, Result, Subspace};

fn arg<T: for<'de> Deserialize<'de>>(args: &Value, key: &str) -> Result<T> {
    let v = args.get(key).ok_or_else(|| Error::InvalidParameter(format!("missing argument `{key}`")))?;
    T::deserialize(v).map_err(|e| Error::Json(format!("argument `{key}`: {e}")))
}

fn opt_arg<T: for<'de> Deserialize<'de>>(args: &Value, key: &str) -> Result<Option<T>> {
    match args.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => arg(args, key).map(Some),
    }
}

fn algebra(args: &Value, key: &str) -> Result<AlgebraTable> {
    arg::<ConstructionSpec>(args, key)?.build()
}

fn module(args: &Value) -> Result<Coefficients> {
    arg::<String>(args, "module")?.parse()
}

fn flag(args: &Value, key: &str) -> Result<bool> {
    match arg::<u8>(args, key)? {
        0 => Ok(false),
        1 => Ok(true),
        v => Err(Error::InvalidParameter(format!("`{key}` must be 0 or 1, got {v}"))),
    }
}

fn extension_context(args: &Value) -> Result<ExtensionContext> {
    let n: u32 = arg(args, "n")?;
    let u: Vec<usize> = arg(args, "u")?;
    let dim = divided_powers(n)?.dim();
    ExtensionContext::divided_powers(n, &Subspace::coordinate(dim, &u)?)
}

fn current_with_sl2(args: &Value) -> Result<(AlgebraTable, AlgebraTable)> {
    let a = algebra(args, "coeff")?;
    let l = current_algebra(&sl2(), &a)?;
    Ok((a, l))
}

pub const RECIPES: &[&str] = &[
    "adjoint_h_current",
    "alternating_cyclic",
    "cohomology",
    "comm_derivations",
    "current_trivial_h2",
    "current_trivial_h2_weights",
    "deformation_enumeration",
    "dimension",
    "extension_positive_h2",
    "extension_positive_h2_by_weight",
    "fifteen_dim_family_match",
    "fifteen_dim_invariants",
    "fifteen_dim_torus",
    "harrison2",
    "invariant",
    "prolongation",
    "sl2_h2_classes",
    "sl2_massey",
    "sl2_outer_derivation_classes",
    "squares_dim",
    "validate",
    "weight_decomposition",
    "xi_space",
];

/// Runs the fast code path for `recipe`.
pub fn run(recipe: &str, args: &Value) -> Result<Value> {
    match recipe {
        "dimension" => Ok(json!(algebra(args, "algebra")?.dim())),
        "validate" => Ok(json!(algebra(args, "algebra")?.validate().is_valid())),
        "cohomology" => {
            let l = algebra(args, "algebra")?;
            let (m, n) = (module(args)?, arg::<usize>(args, "degree")?);
            let c = match (opt_arg::<i64>(args, "weight")?, opt_arg::<bool>(args, "positive")?) {
                (Some(w), _) => graded_cohomology(&l, m, n, w)?,
                (None, Some(true)) => positive_cohomology(&l, m, n)?,
                _ => cohomology(&l, m, n)?,
            };
            Ok(json!(c.report.dim_h))
        }
        "weight_decomposition" => {
            let l = algebra(args, "algebra")?;
            Ok(json!(weight_decomposition(&l, module(args)?, arg(args, "degree")?)?))
        }
        "sl2_outer_derivation_classes" => {
            let s = sl2();
            let cs = [cochain_from_map(&s, &ad_squared(&s, E)?)?, cochain_from_map(&s, &adf_squared(&s)?)?];
            let cocycles = cs.iter().map(|c| is_cocycle(&s, c)).collect::<Result<Vec<_>>>()?;
            Ok(json!({
                "cocycles": cocycles.iter().all(|&b| b),
                "independent": classes_independent(&s, &cs)?,
            }))
        }
        "sl2_h2_classes" => {
            let s = sl2();
            let (low, high) = sl2_weight_cocycles(&s)?;
            Ok(json!({
                "cocycles": is_cocycle(&s, &low)? && is_cocycle(&s, &high)?,
                "independent": classes_independent(&s, &[low.clone(), high.clone()])?,
                "weights": [low.homogeneous_weight(&s)?, high.homogeneous_weight(&s)?],
            }))
        }
        "sl2_massey" => {
            let s = sl2();
            let (low, high) = sl2_weight_cocycles(&s)?;
            let mut self_trivial = true;
            let mut deformed_valid = true;
            for c in [&low, &high] {
                let m = massey_half(&s, c, c)?;
                self_trivial &= is_coboundary(&s, &m)?.is_some();
                deformed_valid &= perturb(&s, &[c.clone()])?.jacobi_ok();
            }
            let pair = obstruction_pair(&s, &low, &high)?;
            let pair_trivial = is_coboundary(&s, &pair)?.is_some();
            deformed_valid &= deform(&s, &[high.clone()])?.jacobi_ok();
            Ok(json!({
                "self_brackets_trivial": self_trivial,
                "pair_trivial": pair_trivial,
                "deformed_valid": deformed_valid,
            }))
        }
        "invariant" => {
            let l = algebra(args, "algebra")?;
            let which: String = arg(args, "which")?;
            match which.as_str() {
                "center" => Ok(json!(center(&l)?.dim())),
                "commutant" => Ok(json!(commutant(&l)?.dim())),
                "der" => Ok(json!(derivation_algebra(&l)?.len())),
                "centroid" => Ok(json!(centroid(&l)?.len())),
                "inv_forms" => Ok(json!(invariant_symmetric_forms(&l)?.len())),
                "envelope" => Ok(json!(two_envelope(&l)?.dim())),
                "zero_divisors" => {
                    let z = absolute_zero_divisors(&l)?;
                    Ok(json!({"count": z.count, "subalgebra": z.subalgebra.dim()}))
                }
                "simple" => {
                    let v = is_simple_gf2(&l)?;
                    Ok(json!({"simple": v.simple, "witness_dim": v.witness.map(|w| w.dim())}))
                }
                other => Err(Error::InvalidParameter(format!("unknown invariant `{other}`"))),
            }
        }
        "squares_dim" => Ok(json!(squares_subalgebra(&algebra(args, "algebra")?)?.dim())),
        "alternating_cyclic" => Ok(json!(cyclic1(&algebra(args, "algebra")?, true)?.dim)),
        "comm_derivations" => Ok(json!(derivations_comm(&algebra(args, "algebra")?)?.len())),
        "harrison2" => Ok(json!(harrison2(&algebra(args, "algebra")?)?.dim)),
        "current_trivial_h2" => {
            let (_, l) = current_with_sl2(args)?;
            Ok(json!(cohomology(&l, Coefficients::Trivial, 2)?.report.dim_h))
        }
        "current_trivial_h2_weights" => {
            let (_, l) = current_with_sl2(args)?;
            let t = Coefficients::Trivial;
            Ok(json!({
                "positive": positive_cohomology(&l, t, 2)?.report.dim_h,
                "weight_2": graded_cohomology(&l, t, 2, 2)?.report.dim_h,
                "weight_1": graded_cohomology(&l, t, 2, 1)?.report.dim_h,
                "weight_minus_1": graded_cohomology(&l, t, 2, -1)?.report.dim_h,
            }))
        }
        "adjoint_h_current" => {
            let (_, l) = current_with_sl2(args)?;
            Ok(json!(cohomology(&l, Coefficients::Adjoint, arg(args, "degree")?)?.report.dim_h))
        }
        "extension_positive_h2" => {
            let ctx = extension_context(args)?;
            let direct = positive_cohomology(ctx.table(), Coefficients::Adjoint, 2)?.report.dim_h;
            let (a, d, u) = (ctx.algebra(), ctx.derivation(), ctx.u());
            let formula = fixed_points(d).dim() + cokernel_dim(a, d, u)? + xi_space(a, d, u)?.dim();
            Ok(json!({"direct": direct, "formula": formula}))
        }
        "extension_positive_h2_by_weight" => {
            let ctx = extension_context(args)?;
            let by = weight_decomposition(ctx.table(), Coefficients::Adjoint, 2)?;
            let at = |w: i64| by.get(&w).copied().unwrap_or(0);
            let other: usize = by.iter().filter(|&(&w, _)| w > 0 && w != 2 && w != 4).map(|(_, d)| d).sum();
            Ok(json!({"weight_2": at(2), "weight_4": at(4), "other_positive": other}))
        }
        "xi_space" => {
            let ctx = extension_context(args)?;
            let xi = xi_space(ctx.algebra(), ctx.derivation(), ctx.u())?;
            let basis: Vec<Vec<usize>> = xi.basis.iter().map(|b| b.ones().collect()).collect();
            Ok(json!({"dim": xi.dim(), "basis": basis}))
        }
        "deformation_enumeration" => {
            let ctx = extension_context(args)?;
            let e = enumerate(&ctx)?;
            Ok(json!({"tuples": e.verdicts.len(), "disagreements": e.disagreements}))
        }
        "prolongation" => {
            let ctx = extension_context(args)?;
            let p = fifteen_dim_params(flag(args, "beta")?, flag(args, "delta")?);
            let mu1 = ctx.cocycle_eh(&p.v)?.add(&ctx.cocycle_ed(&p.w)?)?.add(&ctx.cocycle_xi(&p.xi)?)?;
            let pr = lieform_core::deform::prolong_check(ctx.table(), &mu1)?;
            let valid = match &pr.mu2 {
                Some(m2) => deform(ctx.table(), &[mu1, m2.clone()])?.jacobi_ok(),
                None => false,
            };
            Ok(json!({"obstructed": pr.mu2.is_none(), "higher_vanish": pr.higher_vanish, "jacobi_ok": valid}))
        }
        "fifteen_dim_family_match" => {
            let (b, d) = (flag(args, "beta")?, flag(args, "delta")?);
            let u = Subspace::coordinate(4, &[0, 1])?;
            let ctx = ExtensionContext::divided_powers(2, &u)?;
            let built = build_deformed(&ctx, &fifteen_dim_params(b, d))?;
            let direct = fifteen_dim(b, d);
            Ok(json!((0..15).all(|i| (0..15).all(|j| built.product(i, j) == direct.product(i, j)))))
        }
        "fifteen_dim_invariants" => {
            let l = fifteen_dim(flag(args, "beta")?, flag(args, "delta")?);
            let (t, ad) = (Coefficients::Trivial, Coefficients::Adjoint);
            Ok(json!({
                "valid": l.validate().is_valid(),
                "commutant": commutant(&l)?.dim(),
                "simple_gf2": is_simple_gf2(&l)?.simple,
                "h2_trivial": cohomology(&l, t, 2)?.report.dim_h,
                "h1_adjoint": cohomology(&l, ad, 1)?.report.dim_h,
                "h2_adjoint": cohomology(&l, ad, 2)?.report.dim_h,
                "h3_trivial": cohomology(&l, t, 3)?.report.dim_h,
                "der": derivation_algebra(&l)?.len(),
                "envelope": two_envelope(&l)?.dim(),
                "inv_forms": invariant_symmetric_forms(&l)?.len(),
                "zero_divisor_subalgebra": absolute_zero_divisors(&l)?.subalgebra.dim(),
            }))
        }
        "fifteen_dim_torus" => {
            let delta = flag(args, "delta")?;
            let l = fifteen_dim(flag(args, "beta")?, delta);
            let env = two_envelope(&l)?;
            let cert = verify_torus(&env, &fifteen_dim_torus(&l, delta)?)?;
            Ok(json!({
                "dim": cert.dim,
                "valid": cert.valid,
                "square_identity": fifteen_dim_square_identity(&l)?,
            }))
        }
        other => Err(Error::InvalidParameter(format!("unknown recipe `{other}`"))),
    }
}

/// Brute-force evaluation used to freeze `DERIVED` expectations.
pub fn run_oracle(name: &str, args: &Value) -> Result<Value> {
    match name {
        "squares_dim" => Ok(json!(oracle::squares_dim_by_enumeration(&algebra(args, "algebra")?))),
        "alternating_cyclic" => Ok(json!(oracle::alternating_cyclic_dim(&algebra(args, "algebra")?))),
        "harrison2" => Ok(json!(oracle::harrison2_dim(&algebra(args, "algebra")?))),
        "comm_derivations" => Ok(json!(oracle::derivations_dim(&algebra(args, "algebra")?))),
        "inv_forms" => Ok(json!(oracle::invariant_forms_dim(&algebra(args, "algebra")?))),
        "envelope" => Ok(json!(oracle::envelope_dim_by_enumeration(&algebra(args, "algebra")?))),
        "zero_divisors" => {
            let (count, sub) = oracle::zero_divisor_scan(&algebra(args, "algebra")?);
            Ok(json!({"count": count, "subalgebra": sub}))
        }
        // 2·dim(A/A^[2]) + dim ĤC¹(A)
        "current_trivial_h2" => {
            let a = algebra(args, "coeff")?;
            let q = a.dim() - oracle::squares_dim_by_enumeration(&a);
            Ok(json!(2 * q + oracle::alternating_cyclic_dim(&a)))
        }
        // 2·dim A + dim Harⁿ(A,A), with Har¹ = Der
        "adjoint_h_current" => {
            let a = algebra(args, "coeff")?;
            let har = match arg::<usize>(args, "degree")? {
                1 => oracle::derivations_dim(&a),
                2 => oracle::harrison2_dim(&a),
                d => return Err(Error::InvalidParameter(format!("no oracle for degree {d}"))),
            };
            Ok(json!(2 * a.dim() + har))
        }
        // dim A^D + dim A/(D(A)+U) + dim Ξ_{D,U}
        "extension_positive_h2" => {
            let total = extension_formula_oracle(args)?;
            Ok(json!({"direct": total, "formula": total}))
        }
        // weight 2: the formula above; weight 4: maps λ: A → U commuting with D
        "extension_positive_h2_by_weight" => {
            let n: u32 = arg(args, "n")?;
            let u: Vec<usize> = arg(args, "u")?;
            let a = divided_powers(n)?;
            let d = special_derivation(n)?;
            let d_masks: Vec<u64> = (0..a.dim()).map(|m| d.image_of_basis(m).to_u64()).collect();
            let u_masks: Vec<u64> = u.iter().map(|&i| 1 << i).collect();
            Ok(json!({
                "weight_2": extension_formula_oracle(args)?,
                "weight_4": oracle::commuting_lambda_dim(&a, &d_masks, &u_masks),
                "other_positive": 0,
            }))
        }
        other => Err(Error::InvalidParameter(format!("unknown oracle `{other}`"))),
    }
}

fn extension_formula_oracle(args: &Value) -> Result<usize> {
    let n: u32 = arg(args, "n")?;
    let u: Vec<usize> = arg(args, "u")?;
    let a = divided_powers(n)?;
    let d = special_derivation(n)?;
    let dim = a.dim();
    let d_rows: Vec<Vec<u8>> = (0..dim)
        .map(|r| (0..dim).map(|c| u8::from(d.image_of_basis(c).get(r))).collect())
        .collect();
    let fixed = oracle::naive_nullity(dim, &d_rows);
    let mut span: Vec<Vec<u8>> = (0..dim)
        .map(|c| (0..dim).map(|r| u8::from(d.image_of_basis(c).get(r))).collect())
        .collect();
    span.extend(u.iter().map(|&i| (0..dim).map(|r| u8::from(r == i)).collect()));
    let coker = dim - oracle::naive_rank(&span);
    let d_masks: Vec<u64> = (0..dim).map(|m| d.image_of_basis(m).to_u64()).collect();
    let u_masks: Vec<u64> = u.iter().map(|&i| 1 << i).collect();
    let xi = oracle::xi_dim_by_enumeration(&a, &d_masks, &u_masks, a.unit().unwrap_or(0));
    Ok(fixed + coker + xi)
}
