//! The ten acceptance criteria, exact throughout. Prints one line per
//! criterion and fails the run if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use arens_core::algebra::standard::{truncated_polynomial, unitization_square_zero};
use arens_core::algebra::{construct_from_generators, StructureAlgebra};
use arens_core::arens::{arens_products, biend_of_dual, BidualElement, Functional};
use arens_core::duality::{adjoint_density_check, check_biend_inclusion, InclusionStatus};
use arens_core::exactmath::{random_invertible, random_scalar, BasisChange, FieldSpec, Matrix, Scalar, Subspace};
use arens_core::io::{algebra_to_json, field_to_json};
use arens_core::modules::{
    bicommutant, bicommutant_span, classify, density_check, regular_module, Comparison, ModuleSide, RModule,
};
use arens_core::regularity::{
    builtin_family, decide_regularity, extract_square_zero_ideal, sampled_ranks, sampler, subalgebra_check,
    verify_certificate, Budget, GenRule, RegularityVerdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

fn f5() -> FieldSpec {
    FieldSpec::prime(5).unwrap()
}

fn generated(field: FieldSpec, rng: &mut ChaCha8Rng, max_dim: usize) -> StructureAlgebra {
    loop {
        let triangular = rng.gen_bool(0.5);
        let d = if triangular { 3 } else { 2 };
        let count = rng.gen_range(1..=2);
        let gens: Vec<Matrix> = (0..count)
            .map(|_| {
                Matrix::from_fn(field, d, d, |r, c| {
                    if triangular && r > c {
                        field.zero()
                    } else {
                        random_scalar(field, rng, 2)
                    }
                })
            })
            .collect();
        let a = construct_from_generators(field, d, &gens).unwrap().algebra;
        if (2..=max_dim).contains(&a.dim()) {
            return a;
        }
    }
}

/// 25 algebras over ℚ and 25 over F_5 from random generators, dims 2 to 6.
fn generated_corpus() -> Vec<StructureAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    [FieldSpec::Rational, f5()]
        .into_iter()
        .flat_map(|field| (0..25).map(|_| generated(field, &mut rng, 6)).collect::<Vec<_>>())
        .collect()
}

fn family_level(name: &str, params: Value, level: usize) -> StructureAlgebra {
    let params: BTreeMap<String, Value> = params.as_object().unwrap().clone().into_iter().collect();
    builtin_family(name, &params).unwrap().level(level).unwrap()
}

/// Unital algebras of dimension at most 3 over F_2 from the registry, plus
/// every algebra generated by a single 2×2 or upper triangular 3×3 matrix.
fn f2_corpus() -> Vec<StructureAlgebra> {
    let f = field_to_json(f2());
    let point = algebra_to_json(&arens_core::algebra::standard::ground_field(f2()));
    let mut out = vec![
        family_level("unitization_square_zero", json!({"field": f}), 2),
        family_level("unitization_square_zero", json!({"field": f}), 3),
        family_level("truncated_polynomial", json!({"field": f}), 1),
        family_level("truncated_polynomial", json!({"field": f}), 2),
        family_level("truncated_polynomial", json!({"field": f}), 3),
        family_level("matrix_tower", json!({"field": f, "d": 1}), 1),
        family_level(
            "direct_sum",
            json!({"field": f, "f1": {"family": "truncated_polynomial"}, "f2": {"family": "truncated_polynomial"}}),
            1,
        ),
        family_level(
            "square_zero_extension",
            json!({"field": f, "x": point, "bimodule": "regular"}),
            3,
        ),
    ];
    let field = f2();
    for bits in 0u32..16 {
        let g = Matrix::from_fn(field, 2, 2, |r, c| field.from_i64(((bits >> (2 * r + c)) & 1) as i64));
        out.push(construct_from_generators(field, 2, &[g]).unwrap().algebra);
    }
    for bits in 0u32..64 {
        let mut k = 0;
        let g = Matrix::from_fn(field, 3, 3, |r, c| {
            if r > c {
                return field.zero();
            }
            k += 1;
            field.from_i64(((bits >> (k - 1)) & 1) as i64)
        });
        let a = construct_from_generators(field, 3, &[g]).unwrap().algebra;
        if a.dim() <= 3 {
            out.push(a);
        }
    }
    let mut unique: Vec<StructureAlgebra> = Vec::new();
    for a in out {
        if !unique.contains(&a) {
            unique.push(a);
        }
    }
    unique
}

fn all_elements(a: &StructureAlgebra) -> Vec<Vec<Scalar>> {
    let p = a.field().order().unwrap() as usize;
    let n = a.dim();
    (0..p.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let x = code % p;
                    code /= p;
                    a.field().from_i64(x as i64)
                })
                .collect()
        })
        .collect()
}

fn random_vector(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(field, rng, 3)).collect()
}

fn products_agree(a: &StructureAlgebra, s: &[Scalar], t: &[Scalar]) -> Result<(), String> {
    let (first, second) = arens_products(a, &BidualElement(s.to_vec()), &BidualElement(t.to_vec())).unwrap();
    let table = a.multiply(s, t).unwrap();
    ensure(first.0 == table && second.0 == table, || {
        format!("products differ for s={s:?}, t={t:?}")
    })
}

fn criterion_1(corpus: &[StructureAlgebra], small: &[StructureAlgebra]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pairs = 0;
    for a in corpus {
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                products_agree(a, &a.basis_vector(i), &a.basis_vector(j))?;
                pairs += 1;
            }
        }
        for _ in 0..5 {
            let (s, t) = (
                random_vector(a.field(), n, &mut rng),
                random_vector(a.field(), n, &mut rng),
            );
            products_agree(a, &s, &t)?;
            pairs += 1;
        }
    }
    for a in small {
        let elems = all_elements(a);
        for s in &elems {
            for t in &elems {
                products_agree(a, s, t)?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{} algebras over Q and F_5, {} over F_2, {pairs} pairs",
        corpus.len(),
        small.len()
    ))
}

fn criterion_2(all: &[StructureAlgebra]) -> Outcome {
    for (k, a) in all.iter().enumerate() {
        let r = biend_of_dual(a).unwrap();
        ensure(r.equal && r.lend_matches, || format!("algebra {k}: {r:?}"))?;
    }
    Ok(format!("{} algebras", all.len()))
}

fn criterion_3(all: &[StructureAlgebra]) -> Outcome {
    for (n, a) in all.iter().enumerate() {
        let a = Arc::new(a.clone());
        for k in 1..=3 {
            let u = regular_module(a.clone(), ModuleSide::Left).power(k).unwrap();
            let c = bicommutant(&u).unwrap().comparison;
            ensure(c == Comparison::Equal, || format!("algebra {n}, R^{k}: {c:?}"))?;
        }
    }
    Ok(format!("{} algebras, k = 1, 2, 3", all.len()))
}

/// `R·e` (left) or `e·R` (right) with the restricted action.
fn cut(a: &Arc<StructureAlgebra>, e: &[Scalar], side: ModuleSide) -> Option<RModule> {
    let field = a.field();
    let n = a.dim();
    let mul = |x: &[Scalar], y: &[Scalar]| a.multiply(x, y).unwrap();
    let image = |i: usize, v: &[Scalar]| match side {
        ModuleSide::Left => mul(&a.basis_vector(i), v),
        ModuleSide::Right => mul(v, &a.basis_vector(i)),
    };
    let s = Subspace::span(field, n, (0..n).map(|i| image(i, e)).collect()).unwrap();
    if s.is_zero() {
        return None;
    }
    let m = s.dim();
    let action = (0..n)
        .map(|i| {
            let cols: Vec<Vec<Scalar>> = s.basis().iter().map(|b| s.coordinates(&image(i, b)).unwrap()).collect();
            Matrix::from_columns(field, m, &cols)
        })
        .collect();
    Some(RModule::new(a.clone(), side, m, action).unwrap())
}

fn idempotents(a: &StructureAlgebra, limit: usize) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let field = a.field();
    (1u32..(1 << n))
        .map(|bits| {
            (0..n)
                .map(|i| field.from_i64(((bits >> i) & 1) as i64))
                .collect::<Vec<_>>()
        })
        .filter(|e| e.as_slice() != a.unit() && &a.multiply(e, e).unwrap() == e)
        .take(limit)
        .collect()
}

/// A module where every basis element but the unit acts as zero.
fn augmentation(a: &Arc<StructureAlgebra>, field: FieldSpec) -> RModule {
    let action = (0..a.dim())
        .map(|i| Matrix::from_fn(field, 1, 1, |_, _| a.unit()[i].clone()))
        .collect();
    RModule::new(a.clone(), ModuleSide::Left, 1, action).unwrap()
}

/// Free modules, idempotent cuts and a few modules outside the hypotheses.
fn module_corpus(corpus: &[StructureAlgebra], small: &[StructureAlgebra]) -> Vec<RModule> {
    let mut out = Vec::new();
    let picks = corpus
        .iter()
        .filter(|a| a.dim() <= 5)
        .take(14)
        .chain(small.iter().take(10));
    for a in picks {
        let a = Arc::new(a.clone());
        out.push(regular_module(a.clone(), ModuleSide::Left));
        out.push(regular_module(a.clone(), ModuleSide::Right));
        if a.dim() <= 3 {
            out.push(regular_module(a.clone(), ModuleSide::Left).power(2).unwrap());
        }
        for e in idempotents(&a, 2) {
            out.extend(cut(&a, &e, ModuleSide::Left));
            out.extend(cut(&a, &e, ModuleSide::Right));
        }
    }
    for field in [FieldSpec::Rational, f5(), f2()] {
        for a in [
            truncated_polynomial(field, 2),
            truncated_polynomial(field, 3),
            unitization_square_zero(field, 3),
        ] {
            let a = Arc::new(a);
            let simple = augmentation(&a, field);
            out.push(simple.direct_sum(&regular_module(a.clone(), ModuleSide::Left)).unwrap());
            out.push(simple);
        }
    }
    out
}

fn criterion_4(modules: &[RModule]) -> Outcome {
    let (mut holds, mut na) = (0, 0);
    for (k, u) in modules.iter().enumerate() {
        let r = check_biend_inclusion(u).unwrap();
        let h = r.hypotheses;
        let expect = |hyp: bool, got: InclusionStatus| {
            if hyp {
                got == InclusionStatus::Holds
            } else {
                got == InclusionStatus::ExpectedNa
            }
        };
        ensure(
            expect(h.faithful && h.torsionless && h.t_accessible, r.inclusion_i)
                && expect(h.faithful && h.projective, r.inclusion_ii),
            || format!("module {k}: {r:?}"),
        )?;
        for s in [r.inclusion_i, r.inclusion_ii] {
            match s {
                InclusionStatus::Holds => holds += 1,
                InclusionStatus::ExpectedNa => na += 1,
                InclusionStatus::Fails => return Err(format!("module {k} reports FAILS")),
            }
        }
    }
    ensure(na > 0, || "no module outside the hypotheses".into())?;
    Ok(format!("{} modules, {holds} HOLDS, {na} EXPECTED_NA", modules.len()))
}

fn criterion_5(modules: &[RModule]) -> Outcome {
    let eligible: Vec<&RModule> = modules
        .iter()
        .filter(|u| u.dim() <= 4 && u.algebra().dim() <= 5)
        .collect();
    let mut pairs = 0;
    for u in &eligible {
        for v in &eligible {
            if u.side() != v.side() || !u.same_algebra(v) {
                continue;
            }
            let d = adjoint_density_check(u, v).unwrap();
            ensure(d.surjective, || {
                format!("pair dims ({}, {}): {:?}", u.dim(), v.dim(), d.hom_dims)
            })?;
            pairs += 1;
        }
    }
    ensure(pairs > 0, || "no pairs".into())?;
    Ok(format!("{pairs} pairs"))
}

fn criterion_6() -> Outcome {
    let family = |name: &str| builtin_family(name, &BTreeMap::new()).unwrap();
    let report = decide_regularity(
        &family("unitization_square_zero"),
        &Budget::new(vec![4, 8, 16, 32, 64], 7),
    )
    .unwrap();
    let ranks = report.profile.ranks();
    ensure(ranks.iter().all(|&r| r <= 2), || format!("ranks {ranks:?}"))?;
    match &report.verdict {
        RegularityVerdict::Regular { certificates, codim: 1 } if certificates.iter().all(|c| c.codim == 1) => {}
        v => return Err(format!("unitization: {v:?}")),
    }
    let report = decide_regularity(&family("truncated_polynomial"), &Budget::new(vec![4, 8, 16], 7)).unwrap();
    match &report.verdict {
        RegularityVerdict::NotRegular { ranks, .. } if ranks == &[4, 8, 16] => {}
        v => return Err(format!("polynomial: {v:?}")),
    }
    Ok(format!(
        "unitization Regular, codim 1, ranks {ranks:?}; polynomial NotRegular, ranks [4, 8, 16]"
    ))
}

fn small_algebra(field: FieldSpec, rng: &mut ChaCha8Rng) -> StructureAlgebra {
    loop {
        let d = rng.gen_range(2..=3);
        let g = Matrix::from_fn(field, d, d, |r, c| {
            if r > c {
                field.zero()
            } else {
                random_scalar(field, rng, 2)
            }
        });
        let a = construct_from_generators(field, d, &[g]).unwrap().algebra;
        if a.dim() <= 3 {
            return a;
        }
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut instances, mut over_f2, mut compressed) = (0, 0, 0);
    for i in 0..22u64 {
        let field = if i % 4 == 3 || i >= 18 {
            f2()
        } else {
            FieldSpec::Rational
        };
        let x = small_algebra(field, &mut rng);
        let dx = x.dim();
        let bimodule = if dx <= 2 && i % 3 == 0 { "matrix" } else { "regular" };
        let dv = if bimodule == "matrix" { dx * dx } else { dx };
        let top = if dx + 3 * dv - dx <= 8 { 3 } else { 2 };
        let levels: Vec<usize> = (0..=top).map(|k| dx + k * dv).collect();
        let params: BTreeMap<String, Value> = json!({
            "field": field_to_json(field),
            "x": algebra_to_json(&x),
            "bimodule": bimodule,
            "seed": i,
            "scramble": 1000 + i,
        })
        .as_object()
        .unwrap()
        .clone()
        .into_iter()
        .collect();
        let f = builtin_family("square_zero_extension", &params).unwrap();
        let report = decide_regularity(&f, &Budget::new(levels.clone(), i)).unwrap();
        let certificates = match report.verdict {
            RegularityVerdict::Regular { certificates, codim } if codim <= dx => certificates,
            v => {
                return Err(format!(
                    "instance {i} (dim X = {dx}, {bimodule}, levels {levels:?}): {v:?}"
                ))
            }
        };
        for c in &certificates {
            let a = f.level(c.level).unwrap();
            ensure(verify_certificate(&a, c), || {
                format!("instance {i}: level {} does not verify", c.level)
            })?;
        }

        // covariance at the top level under a further recorded change
        let a = f.level(*levels.last().unwrap()).unwrap();
        let change = BasisChange::new(random_invertible(field, a.dim(), &mut rng)).unwrap();
        let b = a.change_basis(&change).unwrap();
        let transport = |rho: &Functional| Functional(change.forward().vec_mul(&rho.0));
        let s = sampler(&a, i, 8);
        let (ranks, best) = sampled_ranks(&a, &s);
        let s_b: Vec<Functional> = s.iter().map(transport).collect();
        let ex_a =
            extract_square_zero_ideal(&a, &s[best], ranks[best], &s).map_err(|e| format!("instance {i}: {e}"))?;
        let ex_b = extract_square_zero_ideal(&b, &transport(&s[best]), ranks[best], &s_b)
            .map_err(|e| format!("instance {i}, changed basis: {e}"))?;
        let moved = Subspace::span(
            field,
            a.dim(),
            ex_a.certificate
                .ideal
                .subspace
                .basis()
                .iter()
                .map(|v| change.to_new(v))
                .collect(),
        )
        .unwrap();
        ensure(ex_b.certificate.ideal.subspace == moved, || {
            format!("instance {i}: covariance fails")
        })?;
        ensure(verify_certificate(&b, &ex_b.certificate), || {
            format!("instance {i}: moved certificate")
        })?;
        if field.is_finite() {
            over_f2 += 1;
            if ex_a.trace.finite_field_branch && ex_a.trace.recursion_depth >= 1 {
                compressed += 1;
            }
        }
        instances += 1;
    }
    ensure(over_f2 >= 5 && compressed == over_f2, || {
        format!("{over_f2} over F_2, {compressed} compressed")
    })?;
    Ok(format!(
        "{instances} instances, {over_f2} over F_2 through the compression branch"
    ))
}

fn criterion_8(modules: &[RModule]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut checked, mut solved, mut unsolved) = (0, 0, 0);
    let mut offenders = Vec::new();
    for (k, u) in modules.iter().enumerate() {
        let flags = classify(u).unwrap();
        if !(flags.t_accessible && flags.faithful) {
            continue;
        }
        checked += 1;
        let m = u.dim();
        let field = u.field();
        let before = unsolved;
        for bv in bicommutant_span(u).basis() {
            let b = Matrix::unflatten(field, m, m, bv);
            for _ in 0..10 {
                let size = rng.gen_range(1..=3);
                let g: Vec<Vec<Scalar>> = (0..size).map(|_| random_vector(field, m, &mut rng)).collect();
                match density_check(u, &b, &g).unwrap() {
                    Some(r) => {
                        for x in &g {
                            ensure(u.act(&r, x) == b.mul_vec(x), || format!("module {k}: r·x != b(x)"))?;
                        }
                        solved += 1;
                    }
                    None => unsolved += 1,
                }
            }
        }
        if unsolved > before {
            let image = arens_core::modules::image_of_algebra(u).dim();
            offenders.push(format!(
                "module {k} (dim {m} over a dim {} algebra, Biend dim {}, image of R dim {image})",
                u.algebra().dim(),
                bicommutant_span(u).dim()
            ));
        }
    }
    ensure(checked > 0, || "no eligible modules".into())?;
    ensure(offenders.is_empty(), || {
        format!(
            "{unsolved} of {} sets G have no r; {}",
            solved + unsolved,
            offenders.join("; ")
        )
    })?;
    Ok(format!("{checked} modules, {solved} sets G"))
}

fn criterion_9() -> Outcome {
    let f = builtin_family("unitization_square_zero", &BTreeMap::new()).unwrap();
    let budget = Budget::new(vec![4, 8, 16, 32], 9);
    for seed in 1..=5u64 {
        let rule = GenRule::Seeded {
            seed,
            count: 1 + (seed as usize % 2),
        };
        let r = subalgebra_check(&f, &rule, &budget).unwrap();
        let ok = r.bounded_by_parent
            && r.records
                .iter()
                .all(|x| x.sub_max_rank <= x.parent_max_rank && x.parent_max_rank <= 2);
        ensure(ok, || format!("rule {seed}: {r:?}"))?;
    }
    Ok("5 seeded rules, levels 4, 8, 16, 32".into())
}

fn write(dir: &Path, name: &str, v: &Value) {
    std::fs::write(dir.join(name), serde_json::to_string_pretty(v).unwrap()).unwrap();
}

fn cli_suite(dir: &Path) -> Vec<(String, i32, Vec<u8>)> {
    let bin = env!("CARGO_BIN_EXE_arens");
    let alg = unitization_square_zero(f5(), 3);
    write(dir, "alg.json", &algebra_to_json(&alg));
    let module = arens_core::io::module_to_json(&regular_module(Arc::new(alg), ModuleSide::Left));
    write(dir, "mod.json", &module);
    write(
        dir,
        "tower.json",
        &json!({"tower": [algebra_to_json(&truncated_polynomial(FieldSpec::Rational, 2)), algebra_to_json(&truncated_polynomial(FieldSpec::Rational, 3)), algebra_to_json(&truncated_polynomial(FieldSpec::Rational, 4))], "levels": [2, 3, 4], "seed": 3}),
    );
    let runs: Vec<Vec<&str>> = vec![
        vec!["check", "alg.json"],
        vec!["commutant", "mod.json"],
        vec!["bicommutant", "mod.json"],
        vec!["trace-ideal", "mod.json"],
        vec!["classify", "mod.json"],
        vec!["dual-check", "mod.json", "--with", "mod.json"],
        vec!["arens-center", "alg.json"],
        vec!["arens-biend", "alg.json"],
        vec![
            "regularity",
            "--family",
            "unitization_square_zero",
            "--levels",
            "4,8,16,32",
            "--seed",
            "7",
            "--out",
            "reg.json",
        ],
        vec![
            "regularity",
            "--family",
            "truncated_polynomial",
            "--levels",
            "4,8,16",
            "--seed",
            "7",
        ],
        vec!["regularity", "--spec", "tower.json"],
        vec!["extract", "alg.json", "--seed", "7"],
        vec!["verify-cert", "reg.json"],
        vec!["family-list"],
    ];
    runs.iter()
        .map(|args| {
            let out = Command::new(bin)
                .current_dir(dir)
                .args(args)
                .args(["--format", "json"])
                .output()
                .unwrap();
            let mut bytes = out.stdout;
            if args.contains(&"--out") {
                bytes.extend(std::fs::read(dir.join("reg.json")).unwrap());
            }
            (args.join(" "), out.status.code().unwrap_or(-1), bytes)
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let first = cli_suite(dir.path());
    let second = cli_suite(dir.path());
    for ((cmd, c1, b1), (_, c2, b2)) in first.iter().zip(&second) {
        ensure(c1 == c2 && b1 == b2, || format!("`{cmd}` differs between runs"))?;
        let parsed: Value = serde_json::from_slice(b1).map_err(|e| format!("`{cmd}`: {e}"))?;
        ensure(parsed["schema_version"] == json!(1), || {
            format!("`{cmd}`: no schema_version")
        })?;
    }
    let codes: Vec<i32> = first.iter().map(|r| r.1).collect();
    ensure(codes == [0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 3, 0, 0, 0], || {
        format!("exit codes {codes:?}")
    })?;
    Ok(format!("{} commands, byte-identical", first.len()))
}

fn main() {
    let start = Instant::now();
    let corpus = generated_corpus();
    let small = f2_corpus();
    let all: Vec<StructureAlgebra> = corpus.iter().chain(&small).cloned().collect();
    let modules = module_corpus(&corpus, &small);
    let criteria: Vec<Criterion> = vec![
        (
            "Arens products coincide with the table product",
            Box::new(|| criterion_1(&corpus, &small)),
        ),
        (
            "Biend(R*) is right multiplication by the topological center",
            Box::new(|| criterion_2(&all)),
        ),
        ("bicommutant of R^k is the image of R", Box::new(|| criterion_3(&all))),
        (
            "biendomorphism inclusions under their hypotheses",
            Box::new(|| criterion_4(&modules)),
        ),
        ("adjoints are dense", Box::new(|| criterion_5(&modules))),
        ("golden family verdicts", Box::new(criterion_6)),
        ("extraction round trip and covariance", Box::new(criterion_7)),
        ("density of R in the bicommutant", Box::new(|| criterion_8(&modules))),
        ("subalgebras keep the rank bound", Box::new(criterion_9)),
        ("deterministic CLI reports", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
