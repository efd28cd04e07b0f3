use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::standard::{matrix_algebra, truncated_polynomial, unitization_square_zero};
use crate::algebra::{StructureAlgebra, TowerRule, TruncationFamily};
use crate::error::{Error, Result};
use crate::exactmath::{random_invertible, BasisChange, FieldSpec, Matrix, Scalar};
use crate::io::{algebra_from_json, field_from_json, matrix_from_json};

pub const REGISTRY: &[(&str, &str)] = &[
    (
        "unitization_square_zero",
        "F·1 ⊕ R_0 with R_0·R_0 = 0; level N has dimension N (N ≥ 2)",
    ),
    ("truncated_polynomial", "F[x]/(x^N) (N ≥ 1)"),
    ("matrix_tower", "the constant tower M_d(F); param d (default 2)"),
    ("direct_sum", "blockwise A_N × B_N of two families; params f1, f2"),
    (
        "square_zero_extension",
        "X ⋉ V^k (k ≥ 0) for a fixed algebra X and bimodule V; params x, bimodule (regular|matrix), seed, scramble",
    ),
    (
        "tower",
        "explicit level algebras; params algebras, projections (optional); level = dimension",
    ),
];

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

fn field_param(params: &BTreeMap<String, Value>) -> Result<FieldSpec> {
    match params.get("field") {
        None => Ok(FieldSpec::Rational),
        Some(v) => field_from_json(v).map_err(|e| bad(format!("field: {e}"))),
    }
}

fn usize_param(params: &BTreeMap<String, Value>, key: &str, default: usize) -> Result<usize> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| bad(format!("{key} must be a nonnegative integer"))),
    }
}

#[derive(Debug)]
struct Unitization(FieldSpec);

impl TowerRule for Unitization {
    fn field(&self) -> FieldSpec {
        self.0
    }
    fn admissible(&self, level: usize) -> bool {
        level >= 2
    }
    fn build(&self, level: usize) -> Result<StructureAlgebra> {
        Ok(unitization_square_zero(self.0, level))
    }
}

#[derive(Debug)]
struct Polynomial(FieldSpec);

impl TowerRule for Polynomial {
    fn field(&self) -> FieldSpec {
        self.0
    }
    fn admissible(&self, level: usize) -> bool {
        level >= 1
    }
    fn build(&self, level: usize) -> Result<StructureAlgebra> {
        Ok(truncated_polynomial(self.0, level))
    }
}

#[derive(Debug)]
struct MatrixTower {
    field: FieldSpec,
    d: usize,
}

impl TowerRule for MatrixTower {
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn admissible(&self, level: usize) -> bool {
        level >= 1
    }
    fn build(&self, _level: usize) -> Result<StructureAlgebra> {
        Ok(matrix_algebra(self.field, self.d))
    }
}

#[derive(Debug)]
struct DirectSum {
    first: TruncationFamily,
    second: TruncationFamily,
}

impl TowerRule for DirectSum {
    fn field(&self) -> FieldSpec {
        self.first.field()
    }
    fn admissible(&self, level: usize) -> bool {
        self.first.admissible(level) && self.second.admissible(level)
    }
    fn build(&self, level: usize) -> Result<StructureAlgebra> {
        self.first.level(level)?.direct_sum(&self.second.level(level)?)
    }
    fn projection(&self, big: usize, small: usize, _: &StructureAlgebra, _: &StructureAlgebra) -> Matrix {
        let p1 = self.first.projection(big, small).expect("admissible levels");
        let p2 = self.second.projection(big, small).expect("admissible levels");
        p1.block_diag(&p2)
    }
}

/// Which `X`-bimodule `V` is repeated to fill out the levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bimodule {
    /// `V = X` with `x·m·y = xmy`.
    Regular,
    /// `V = M_{dim X}(F)` with `x·m·y = L_x m L_y`.
    Matrix,
}

#[derive(Debug)]
struct SquareZeroExtension {
    x: StructureAlgebra,
    /// Operators of `x_i` on `V` from the left and from the right.
    left: Vec<Matrix>,
    right: Vec<Matrix>,
    scramble: Option<u64>,
}

impl SquareZeroExtension {
    fn new(x: StructureAlgebra, bimodule: Bimodule, seed: u64, scramble: Option<u64>) -> Result<Self> {
        let field = x.field();
        let d = x.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_invertible(field, d, &mut rng);
        let g_inv = g.inverse().expect("invertible");
        let conj = |g: &Matrix, g_inv: &Matrix, m: Matrix| g.mul(&m).mul(g_inv);
        let lx: Vec<Matrix> = (0..d)
            .map(|i| conj(&g, &g_inv, x.left_mult_matrix(&x.basis_vector(i))))
            .collect();
        let (left, right) = match bimodule {
            Bimodule::Regular => {
                let rx = (0..d)
                    .map(|i| conj(&g, &g_inv, x.right_mult_matrix(&x.basis_vector(i))))
                    .collect();
                (lx, rx)
            }
            Bimodule::Matrix => {
                let h = random_invertible(field, d, &mut rng);
                let h_inv = h.inverse().expect("invertible");
                let rx: Vec<Matrix> = (0..d)
                    .map(|i| conj(&h, &h_inv, x.left_mult_matrix(&x.basis_vector(i))))
                    .collect();
                // vec(m) row-major: (A m)_{rc} = Σ A_{rs} m_{sc}, (m B)_{rc} = Σ m_{rs} B_{sc}
                let left = lx
                    .iter()
                    .map(|a| {
                        Matrix::from_fn(field, d * d, d * d, |p, q| {
                            let (r, c, s, c2) = (p / d, p % d, q / d, q % d);
                            if c == c2 {
                                a.get(r, s).clone()
                            } else {
                                field.zero()
                            }
                        })
                    })
                    .collect();
                let right = rx
                    .iter()
                    .map(|b| {
                        Matrix::from_fn(field, d * d, d * d, |p, q| {
                            let (r, c, r2, s) = (p / d, p % d, q / d, q % d);
                            if r == r2 {
                                b.get(s, c).clone()
                            } else {
                                field.zero()
                            }
                        })
                    })
                    .collect();
                (left, right)
            }
        };
        Ok(SquareZeroExtension {
            x,
            left,
            right,
            scramble,
        })
    }

    fn v_dim(&self) -> usize {
        self.left[0].rows()
    }

    fn copies(&self, level: usize) -> Option<usize> {
        let (dx, dv) = (self.x.dim(), self.v_dim());
        (level >= dx && (level - dx).is_multiple_of(dv)).then(|| (level - dx) / dv)
    }

    fn unscrambled(&self, level: usize) -> Result<StructureAlgebra> {
        let field = self.x.field();
        let dx = self.x.dim();
        let dv = self.v_dim();
        let k = self.copies(level).ok_or_else(|| bad(format!("level {level}")))?;
        let mut entries: Vec<(usize, usize, usize, Scalar)> = self
            .x
            .structure_constants()
            .iter()
            .map(|c| (c.i, c.j, c.k, c.value.clone()))
            .collect();
        for copy in 0..k {
            let base = dx + copy * dv;
            for i in 0..dx {
                for p in 0..dv {
                    for q in 0..dv {
                        let l = self.left[i].get(q, p);
                        if !l.is_zero() {
                            entries.push((i, base + p, base + q, l.clone()));
                        }
                        let r = self.right[i].get(q, p);
                        if !r.is_zero() {
                            entries.push((base + p, i, base + q, r.clone()));
                        }
                    }
                }
            }
        }
        let mut unit = self.x.unit().to_vec();
        unit.resize(level, field.zero());
        StructureAlgebra::new(field, level, None, entries, Some(unit))
    }

    fn scramble_change(&self, level: usize) -> Option<BasisChange> {
        self.scramble.map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s ^ level as u64);
            BasisChange::new(random_invertible(self.x.field(), level, &mut rng)).expect("invertible")
        })
    }
}

impl TowerRule for SquareZeroExtension {
    fn field(&self) -> FieldSpec {
        self.x.field()
    }
    fn admissible(&self, level: usize) -> bool {
        self.copies(level).is_some()
    }
    fn build(&self, level: usize) -> Result<StructureAlgebra> {
        let plain = self.unscrambled(level)?;
        match self.scramble_change(level) {
            Some(c) => plain.change_basis(&c),
            None => Ok(plain),
        }
    }
    fn projection(&self, _: usize, _: usize, from: &StructureAlgebra, to: &StructureAlgebra) -> Matrix {
        let field = self.x.field();
        let plain = Matrix::from_fn(field, to.dim(), from.dim(), |r, c| {
            if r == c {
                field.one()
            } else {
                field.zero()
            }
        });
        match (self.scramble_change(from.dim()), self.scramble_change(to.dim())) {
            (Some(big), Some(small)) => small.inverse().mul(&plain).mul(big.forward()),
            _ => plain,
        }
    }
}

/// A user-supplied tower; level = dimension.
#[derive(Debug)]
struct Explicit {
    field: FieldSpec,
    levels: Vec<StructureAlgebra>,
    /// `projections[i]` maps level `i+1` onto level `i`.
    projections: Vec<Matrix>,
}

impl Explicit {
    fn index(&self, dim: usize) -> Option<usize> {
        self.levels.iter().position(|a| a.dim() == dim)
    }
}

impl TowerRule for Explicit {
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn admissible(&self, level: usize) -> bool {
        self.index(level).is_some()
    }
    fn build(&self, level: usize) -> Result<StructureAlgebra> {
        Ok(self.levels[self.index(level).expect("admissible")].clone())
    }
    fn projection(&self, from: usize, to: usize, big: &StructureAlgebra, _: &StructureAlgebra) -> Matrix {
        let (hi, lo) = (self.index(from).expect("level"), self.index(to).expect("level"));
        let mut p = Matrix::identity(self.field, big.dim());
        for i in (lo..hi).rev() {
            p = self.projections[i].mul(&p);
        }
        p
    }
}

/// A tower from explicit level algebras (strictly increasing dimension)
/// and optional projections between consecutive levels.
pub fn explicit_tower(levels: Vec<StructureAlgebra>, projections: Option<Vec<Matrix>>) -> Result<TruncationFamily> {
    let mut params = BTreeMap::new();
    params.insert(
        "algebras".to_string(),
        Value::Array(levels.iter().map(crate::io::algebra_to_json).collect()),
    );
    if let Some(p) = &projections {
        params.insert(
            "projections".to_string(),
            Value::Array(p.iter().map(crate::io::matrix_to_json).collect()),
        );
    }
    tower_with_params(levels, projections, params)
}

fn tower_from_params(params: &BTreeMap<String, Value>) -> Result<TruncationFamily> {
    let levels = params
        .get("algebras")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("tower needs an \"algebras\" array"))?
        .iter()
        .map(algebra_from_json)
        .collect::<Result<Vec<_>>>()?;
    let field = levels.first().ok_or_else(|| bad("tower: no levels"))?.field();
    let projections = params
        .get("projections")
        .map(|v| projections_from_json(field, v))
        .transpose()?;
    tower_with_params(levels, projections, params.clone())
}

fn tower_with_params(
    levels: Vec<StructureAlgebra>,
    projections: Option<Vec<Matrix>>,
    params: BTreeMap<String, Value>,
) -> Result<TruncationFamily> {
    let field = levels.first().ok_or_else(|| bad("tower: no levels"))?.field();
    if levels.windows(2).any(|w| w[1].dim() <= w[0].dim()) {
        return Err(bad("tower: level dimensions must strictly increase"));
    }
    let projections = match projections {
        Some(p) if p.len() + 1 != levels.len() => {
            return Err(bad("tower: need one projection between consecutive levels"))
        }
        Some(p) => p,
        None => levels
            .windows(2)
            .map(|w| {
                Matrix::from_fn(field, w[0].dim(), w[1].dim(), |r, c| {
                    if r == c {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
            })
            .collect(),
    };
    for (i, p) in projections.iter().enumerate() {
        if p.rows() != levels[i].dim() || p.cols() != levels[i + 1].dim() {
            return Err(bad(format!("tower: projection {i} has the wrong shape")));
        }
    }
    if levels.iter().any(|a| a.field() != field) {
        return Err(bad("tower: levels over different fields"));
    }
    let family = TruncationFamily::new(
        "tower",
        params,
        Arc::new(Explicit {
            field,
            levels: levels.clone(),
            projections,
        }),
    );
    for w in levels.windows(2) {
        family.check_coherence(w[1].dim(), w[0].dim())?;
    }
    Ok(family)
}

/// Looks up a family in the registry. `params` may carry `field`
/// (default ℚ) and `level_set: "pow2"`.
pub fn builtin_family(name: &str, params: &BTreeMap<String, Value>) -> Result<TruncationFamily> {
    if name == "tower" {
        return tower_from_params(params);
    }
    let field = field_param(params)?;
    let rule: Arc<dyn TowerRule> = match name {
        "unitization_square_zero" => Arc::new(Unitization(field)),
        "truncated_polynomial" => Arc::new(Polynomial(field)),
        "matrix_tower" => {
            let d = usize_param(params, "d", 2)?;
            if d == 0 {
                return Err(bad("matrix_tower: d must be positive"));
            }
            Arc::new(MatrixTower { field, d })
        }
        "direct_sum" => {
            let sub = |key: &str| -> Result<TruncationFamily> {
                let spec = params.get(key).ok_or_else(|| bad(format!("direct_sum needs {key}")))?;
                let (name, mut p) = family_spec(spec)?;
                p.entry("field".into())
                    .or_insert_with(|| crate::io::field_to_json(field));
                builtin_family(&name, &p)
            };
            let (first, second) = (sub("f1")?, sub("f2")?);
            if first.field() != second.field() {
                return Err(bad("direct_sum: summands over different fields"));
            }
            Arc::new(DirectSum { first, second })
        }
        "square_zero_extension" => {
            let x = algebra_from_json(params.get("x").ok_or_else(|| bad("square_zero_extension needs x"))?)?;
            if !x.is_valid() {
                return Err(bad("square_zero_extension: x is not a valid algebra"));
            }
            let bimodule = match params.get("bimodule").and_then(Value::as_str).unwrap_or("matrix") {
                "regular" => Bimodule::Regular,
                "matrix" => Bimodule::Matrix,
                other => return Err(bad(format!("unknown bimodule {other:?}"))),
            };
            let seed = params.get("seed").and_then(Value::as_u64).unwrap_or(0);
            let scramble = params.get("scramble").and_then(Value::as_u64);
            Arc::new(SquareZeroExtension::new(x, bimodule, seed, scramble)?)
        }
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    let family = TruncationFamily::new(name, params.clone(), rule);
    match params.get("level_set").and_then(Value::as_str) {
        None | Some("all") => Ok(family),
        Some("pow2") => Ok(family.restrict_to_powers_of_two()),
        Some(other) => Err(bad(format!("unknown level_set {other:?}"))),
    }
}

/// Splits `{"family": name, "params": {...}}` (or a bare name string).
pub fn family_spec(v: &Value) -> Result<(String, BTreeMap<String, Value>)> {
    match v {
        Value::String(s) => Ok((s.clone(), BTreeMap::new())),
        Value::Object(o) => {
            let name = o
                .get("family")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("family spec needs \"family\""))?;
            let params = match o.get("params") {
                None | Some(Value::Null) => BTreeMap::new(),
                Some(Value::Object(p)) => p.clone().into_iter().collect(),
                Some(_) => return Err(bad("params must be an object")),
            };
            Ok((name.to_string(), params))
        }
        _ => Err(bad("family spec must be a name or an object")),
    }
}

/// Builds `{"family", "params"}` for embedding in reports.
pub fn family_to_json(f: &TruncationFamily) -> Value {
    json!({"family": f.name(), "params": f.params()})
}

/// Parses a matrix list for explicit towers.
pub fn projections_from_json(field: FieldSpec, v: &Value) -> Result<Vec<Matrix>> {
    v.as_array()
        .ok_or_else(|| bad("projections must be an array"))?
        .iter()
        .map(|m| matrix_from_json(field, m))
        .collect()
}
