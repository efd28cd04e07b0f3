use std::collections::BTreeMap;
use std::path::Path;

use arens_core::algebra::{validate, StructureAlgebra};
use arens_core::arens::{biend_of_dual, right_topological_center, topological_center, Functional};
use arens_core::duality::{adjoint_density_check, check_biend_inclusion};
use arens_core::exactmath::{format_vector, Matrix, Subspace};
use arens_core::io::{algebra_to_json, field_to_json, matrix_to_json, vector_from_json};
use arens_core::modules::{bicommutant, classify, commutant, trace_ideal, validate_module};
use arens_core::regularity::{
    builtin_family, certificate_flags, certificate_from_json, certificate_to_json, decide_regularity, enlarge,
    extract_square_zero_ideal, family_spec, sampled_ranks, sampler, verify_certificate, Budget, RegularityVerdict,
    SquareZeroCertificate, DEFAULT_SAMPLES, REGISTRY,
};
use serde_json::{json, Map, Value};

use crate::args::{Command, Sampling};
use crate::input::{
    algebra_value, inline_algebra_param, inline_tower, load_algebra, load_module, module_value, read_json,
};
use crate::{Failure, Outcome};

fn core(path: &Path) -> impl Fn(arens_core::Error) -> Failure + '_ {
    move |e| Failure::input(format!("{}: {e}", path.display()))
}

fn subspace_json(s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.basis().iter().map(|v| format_vector(v)).collect::<Vec<_>>(),
    })
}

fn operators_json(s: &Subspace, m: usize) -> Vec<Value> {
    s.basis()
        .iter()
        .map(|v| matrix_to_json(&Matrix::unflatten(s.field(), m, m, v)))
        .collect()
}

pub fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check { input } => check(input),
        Command::Commutant { module } => {
            let u = load_module(module)?;
            let c = commutant(&u).map_err(core(module))?;
            Ok(Outcome::ok(json!({
                "dim": c.dim(),
                "composition": format!("{:?}", c.composition).to_lowercase(),
                "basis": operators_json(&c.span, u.dim()),
                "algebra": algebra_to_json(&c.carrier),
            })))
        }
        Command::Bicommutant { module } => {
            let u = load_module(module)?;
            let b = bicommutant(&u).map_err(core(module))?;
            Ok(Outcome::ok(json!({
                "dim": b.endo.dim(),
                "image_dim": b.image_of_r.dim(),
                "comparison": b.comparison,
                "basis": operators_json(&b.endo.span, u.dim()),
            })))
        }
        Command::TraceIdeal { module } => {
            let u = load_module(module)?;
            let t = trace_ideal(&u).map_err(core(module))?;
            Ok(Outcome::ok(json!({
                "side": t.side,
                "codim": t.codim(),
                "ideal": subspace_json(&t.subspace),
            })))
        }
        Command::Classify { module } => {
            let u = load_module(module)?;
            Ok(Outcome::ok(json!({"flags": classify(&u).map_err(core(module))?})))
        }
        Command::DualCheck { module, with } => {
            let u = load_module(module)?;
            let mut report = json!({"biend_inclusion": check_biend_inclusion(&u).map_err(core(module))?});
            if let Some(other) = with {
                let v = load_module(other)?;
                let d = adjoint_density_check(&u, &v).map_err(core(other))?;
                report["adjoint_density"] = json!({
                    "surjective": d.surjective,
                    "hom_dims": d.hom_dims,
                    "witness": d.witness.as_ref().map(matrix_to_json),
                });
            }
            Ok(Outcome::ok(report))
        }
        Command::ArensCenter { algebra } => {
            let a = load_algebra(algebra)?;
            let left = topological_center(&a);
            let right = right_topological_center(&a);
            Ok(Outcome::ok(json!({
                "dim": a.dim(),
                "left_center": subspace_json(&left),
                "right_center": subspace_json(&right),
                "products_coincide": left.is_full(),
            })))
        }
        Command::ArensBiend { algebra } => {
            let a = load_algebra(algebra)?;
            Ok(Outcome::ok(
                json!({"cross_check": biend_of_dual(&a).map_err(core(algebra))?}),
            ))
        }
        Command::Regularity {
            spec,
            family,
            params,
            levels,
            seed,
            samples,
        } => regularity(
            spec.as_deref(),
            family.as_deref(),
            params.as_deref(),
            levels.as_deref(),
            *seed,
            *samples,
        ),
        Command::Extract {
            algebra,
            witness,
            n0,
            sampling,
        } => extract(algebra, witness.as_deref(), *n0, sampling),
        Command::VerifyCert { input, algebra } => verify(input, algebra.as_deref()),
        Command::FamilyList => Ok(Outcome::ok(json!({
            "families": REGISTRY.iter().map(|(name, about)| json!({"name": name, "about": about})).collect::<Vec<_>>(),
        }))),
    }
}

fn check(path: &Path) -> Result<Outcome, Failure> {
    let v = read_json(path)?;
    let (kind, report, extra) = if v.get("action").is_some() {
        let u = module_value(&v, path)?;
        ("module", validate_module(&u), json!({"dim": u.dim(), "side": u.side()}))
    } else {
        let a = algebra_value(&v, path)?;
        let extra = json!({"dim": a.dim(), "field": field_to_json(a.field()), "commutative": a.is_commutative()});
        ("algebra", validate(&a), extra)
    };
    let mut out = json!({"kind": kind, "valid": report.valid, "violations": report.violations});
    out.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
    Ok(Outcome {
        exit: if report.valid { 0 } else { 2 },
        report: out,
    })
}

fn regularity(
    spec: Option<&Path>,
    family: Option<&str>,
    params: Option<&str>,
    levels: Option<&[usize]>,
    seed: Option<u64>,
    samples: Option<usize>,
) -> Result<Outcome, Failure> {
    let spec_value = spec.map(read_json).transpose()?.unwrap_or(Value::Null);
    let from_spec = |key: &str| spec_value.get(key).cloned();
    let (name, mut param_map): (String, BTreeMap<String, Value>) = match (family, &spec_value) {
        (Some(f), _) => (f.to_string(), BTreeMap::new()),
        (None, Value::Object(o)) if o.contains_key("tower") => ("tower".into(), BTreeMap::new()),
        (None, Value::Object(_)) => family_spec(&spec_value).map_err(|e| Failure::input(e.to_string()))?,
        (None, _) => return Err(Failure::usage("regularity needs --family or --spec")),
    };
    if let Some(tower) = from_spec("tower") {
        let mut m = Map::new();
        m.insert("algebras".into(), tower);
        if let Some(p) = from_spec("projections") {
            m.insert("projections".into(), p);
        }
        inline_tower(&mut m, spec.expect("tower comes from a spec"))?;
        param_map = m.into_iter().collect();
    }
    if let Some(path) = spec {
        inline_algebra_param(&mut param_map, "x", Some(path))?;
    }
    if let Some(text) = params {
        let v: Value = serde_json::from_str(text).map_err(|e| Failure::usage(format!("--params: {e}")))?;
        let Value::Object(o) = v else {
            return Err(Failure::usage("--params must be a JSON object"));
        };
        let mut given: BTreeMap<String, Value> = o.into_iter().collect();
        inline_algebra_param(&mut given, "x", None)?;
        param_map.extend(given);
    }
    let levels: Vec<usize> = match levels {
        Some(l) => l.to_vec(),
        None => match from_spec("levels") {
            Some(v) => serde_json::from_value(v).map_err(|e| Failure::input(format!("levels: {e}")))?,
            None => return Err(Failure::usage("regularity needs --levels")),
        },
    };
    let num = |flag: Option<u64>, key: &str, default: u64| -> Result<u64, Failure> {
        match (flag, from_spec(key)) {
            (Some(x), _) => Ok(x),
            (None, Some(v)) => v
                .as_u64()
                .ok_or_else(|| Failure::input(format!("{key} must be a nonnegative integer"))),
            (None, None) => Ok(default),
        }
    };
    let budget = Budget {
        levels,
        seed: num(seed, "seed", 0)?,
        samples: num(samples.map(|s| s as u64), "samples", DEFAULT_SAMPLES as u64)? as usize,
    };
    let f = builtin_family(&name, &param_map).map_err(|e| Failure::input(e.to_string()))?;
    let report = decide_regularity(&f, &budget).map_err(|e| Failure::input(e.to_string()))?;
    let exit = match report.verdict {
        RegularityVerdict::Regular { .. } => 0,
        RegularityVerdict::NotRegular { .. } => 3,
        RegularityVerdict::Inconclusive { .. } => 4,
    };
    Ok(Outcome {
        exit,
        report: serde_json::to_value(&report).expect("report serializes"),
    })
}

fn parse_witness(a: &StructureAlgebra, text: &str) -> Result<Functional, Failure> {
    let items: Vec<Value> = text.split(',').map(|s| Value::String(s.trim().to_string())).collect();
    let v = vector_from_json(a.field(), &Value::Array(items)).map_err(|e| Failure::usage(format!("--witness: {e}")))?;
    if v.len() != a.dim() {
        return Err(Failure::usage(format!("--witness needs {} entries", a.dim())));
    }
    Ok(Functional(v))
}

fn extract(path: &Path, witness: Option<&str>, n0: Option<usize>, sampling: &Sampling) -> Result<Outcome, Failure> {
    let a = load_algebra(path)?;
    let functionals = sampler(&a, sampling.seed, sampling.samples);
    let (ranks, best) = sampled_ranks(&a, &functionals);
    let (w, rank) = match witness {
        Some(t) => {
            let w = parse_witness(&a, t)?;
            let r = arens_core::arens::rank_map(&a, &w).map_err(core(path))?.rank();
            (w, r)
        }
        None => (functionals[best].clone(), ranks[best]),
    };
    let n0 = n0.unwrap_or(rank);
    let ex = extract_square_zero_ideal(&a, &w, n0, &functionals).map_err(core(path))?;
    let t = &ex.trace;
    let grown = enlarge(&a, &ex.certificate.ideal);
    let codim = grown.codim();
    let enlarged = SquareZeroCertificate {
        level: ex.certificate.level,
        verified: certificate_flags(&a, &grown, codim),
        ideal: grown,
        codim,
    };
    Ok(Outcome::ok(json!({
        "algebra": algebra_to_json(&a),
        "witness": format_vector(&w.0),
        "n0": n0,
        "seed": sampling.seed,
        "samples": sampling.samples,
        "certificate": certificate_to_json(&ex.certificate),
        "enlarged_certificate": certificate_to_json(&enlarged),
        "trace": {
            "a_change": matrix_to_json(t.a_change.forward()),
            "b_change": matrix_to_json(t.b_change.forward()),
            "c_change": matrix_to_json(t.c_change.forward()),
            "compression_ranks": t.compression_ranks,
            "recursion_depth": t.recursion_depth,
            "finite_field_branch": t.finite_field_branch,
            "dims": t.dims,
        },
    })))
}

fn check_one(a: &StructureAlgebra, cert: &Value) -> Result<Value, Failure> {
    let c = certificate_from_json(a.field(), cert).map_err(|e| Failure::input(e.to_string()))?;
    let ok = verify_certificate(a, &c);
    Ok(json!({"level": c.level, "codim": c.codim, "valid": ok}))
}

fn verify(path: &Path, algebra: Option<&Path>) -> Result<Outcome, Failure> {
    let v = read_json(path)?;
    let results: Vec<Value> = if let Some(verdict) = v.get("verdict") {
        let (name, params) =
            family_spec(v.get("family").unwrap_or(&Value::Null)).map_err(|e| Failure::input(e.to_string()))?;
        let f = builtin_family(&name, &params).map_err(|e| Failure::input(e.to_string()))?;
        let certs = verdict
            .get("certificates")
            .and_then(Value::as_array)
            .cloned()
            .unwrap_or_default();
        if certs.is_empty() {
            return Err(Failure::input(format!(
                "{}: the report carries no certificates",
                path.display()
            )));
        }
        certs
            .iter()
            .map(|c| {
                let level = c
                    .get("level")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Failure::input("certificate needs a level"))?;
                let a = f.level(level as usize).map_err(|e| Failure::input(e.to_string()))?;
                check_one(&a, c)
            })
            .collect::<Result<_, _>>()?
    } else {
        let a = match (algebra, v.get("algebra")) {
            (Some(p), _) => load_algebra(p)?,
            (None, Some(inline)) => algebra_value(inline, path)?,
            (None, None) => return Err(Failure::usage("a bare certificate needs --algebra")),
        };
        vec![check_one(&a, v.get("certificate").unwrap_or(&v))?]
    };
    let valid = results.iter().all(|r| r["valid"] == json!(true));
    Ok(Outcome {
        exit: if valid { 0 } else { 2 },
        report: json!({"valid": valid, "certificates": results}),
    })
}
