use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    annihilators, common_preimage, is_square_zero, largest_ideal_in, IdealBasis, IdealSide, StructureAlgebra,
};
use crate::arens::{rank_map, Functional};
use crate::error::{Error, Result};
use crate::exactmath::{dot, format_vector, BasisChange, FieldSpec, Matrix, Scalar, Subspace};
use crate::io::vector_from_json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CertificateFlags {
    pub is_ideal: bool,
    pub square_zero: bool,
    pub codim_finite: bool,
}

impl CertificateFlags {
    pub fn all(&self) -> bool {
        self.is_ideal && self.square_zero && self.codim_finite
    }
}

/// A two-sided ideal `J` with `J² = 0`, with its codimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareZeroCertificate {
    pub level: usize,
    pub ideal: IdealBasis,
    pub codim: usize,
    pub verified: CertificateFlags,
}

impl Serialize for SquareZeroCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        certificate_to_json(self).serialize(s)
    }
}

/// `{"level", "codim", "ideal": {"side", "basis"}, "verified"}` with
/// scalars as strings.
pub fn certificate_to_json(c: &SquareZeroCertificate) -> Value {
    json!({
        "level": c.level,
        "codim": c.codim,
        "ideal": {
            "side": c.ideal.side,
            "ambient_dim": c.ideal.subspace.ambient_dim(),
            "basis": c.ideal.subspace.basis().iter().map(|v| format_vector(v)).collect::<Vec<_>>(),
        },
        "verified": c.verified,
    })
}

/// Reads a certificate back. The stored flags are kept as claims; use
/// [`verify_certificate`] to check them.
pub fn certificate_from_json(field: FieldSpec, v: &Value) -> Result<SquareZeroCertificate> {
    let schema = |m: &str| Error::Schema(m.to_string());
    let num = |key: &str, from: &Value| {
        from.get(key)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| schema(&format!("certificate needs integer {key:?}")))
    };
    let ideal = v.get("ideal").ok_or_else(|| schema("certificate needs \"ideal\""))?;
    let ambient = num("ambient_dim", ideal)?;
    let side = match ideal.get("side") {
        None => IdealSide::TwoSided,
        Some(s) => serde_json::from_value(s.clone()).map_err(|e| schema(&format!("side: {e}")))?,
    };
    let basis = ideal
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("ideal needs a \"basis\" array"))?
        .iter()
        .map(|b| vector_from_json(field, b))
        .collect::<Result<Vec<_>>>()?;
    if basis.iter().any(|b| b.len() != ambient) {
        return Err(schema("ideal basis vectors must have length ambient_dim"));
    }
    let verified = match v.get("verified") {
        None => CertificateFlags {
            is_ideal: false,
            square_zero: false,
            codim_finite: false,
        },
        Some(f) => serde_json::from_value(f.clone()).map_err(|e| schema(&format!("verified: {e}")))?,
    };
    Ok(SquareZeroCertificate {
        level: num("level", v)?,
        ideal: IdealBasis {
            subspace: Subspace::span(field, ambient, basis)?,
            side,
        },
        codim: num("codim", v)?,
        verified,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageDims {
    pub r1: usize,
    pub r2: usize,
    pub r0: usize,
    pub s: usize,
    pub l: usize,
}

/// How a certificate was reached.
#[derive(Clone, Debug)]
pub struct ExtractionTrace {
    /// New `a`-basis in which the witness is the first coordinate functional.
    pub a_change: BasisChange,
    /// `b`- and `c`-bases bringing the witness form to `diag(1, …, 1, 0, …)`.
    pub b_change: BasisChange,
    pub c_change: BasisChange,
    /// Maximal ranks of the successive compressed forms.
    pub compression_ranks: Vec<usize>,
    pub recursion_depth: usize,
    pub finite_field_branch: bool,
    pub dims: StageDims,
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub certificate: SquareZeroCertificate,
    pub trace: ExtractionTrace,
}

/// Basis change making `ω` the first coordinate functional.
pub fn witness_basis_change(a: &StructureAlgebra, omega: &Functional) -> Result<BasisChange> {
    let field = a.field();
    let n = a.dim();
    let Some(p) = omega.0.iter().position(|x| !x.is_zero()) else {
        return Ok(BasisChange::identity(field, n));
    };
    let mut rows = vec![omega.0.clone()];
    rows.extend((0..n).filter(|&i| i != p).map(|i| a.basis_vector(i)));
    let g = Matrix::from_rows(field, rows)?;
    let f = g.inverse().ok_or(Error::Singular)?;
    BasisChange::from_pair(f, g)
}

/// `(P, Q)` invertible with `Pᵀ M Q = diag(I_r, 0)`, returned as basis
/// changes whose forward matrices are `P` and `Q`.
pub fn normalize_form(m: &Matrix) -> Result<(BasisChange, BasisChange)> {
    let field = m.field();
    let (r, t, pivots) = m.rref_with_transform();
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut q_cols: Vec<Vec<Scalar>> = pivots
        .iter()
        .map(|&p| {
            (0..n)
                .map(|i| if i == p { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut col = vec![field.zero(); n];
        col[f] = field.one();
        for (k, &p) in pivots.iter().enumerate() {
            col[p] = -r.get(k, f);
        }
        q_cols.push(col);
    }
    let q = Matrix::from_columns(field, n, &q_cols);
    Ok((BasisChange::new(t.transpose())?, BasisChange::new(q)?))
}

/// Products `x_p · y_q` of two bases.
fn products(a: &StructureAlgebra, xs: &[Vec<Scalar>], ys: &[Vec<Scalar>]) -> Vec<Vec<Vec<Scalar>>> {
    xs.iter().map(|x| ys.iter().map(|y| a.mul(x, y)).collect()).collect()
}

fn form(a: &StructureAlgebra, prods: &[Vec<Vec<Scalar>>], cols: usize, rho: &[Scalar]) -> Matrix {
    let field = a.field();
    Matrix::from_fn(field, prods.len(), cols, |p, q| dot(field, rho, &prods[p][q]))
}

fn combine(
    field: crate::exactmath::FieldSpec,
    n: usize,
    coeffs: &[Vec<Scalar>],
    basis: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    coeffs
        .iter()
        .map(|c| {
            let mut v = vec![field.zero(); n];
            for (x, b) in c.iter().zip(basis) {
                if !x.is_zero() {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi = &*vi + &(x * bi);
                    }
                }
            }
            v
        })
        .collect()
}

fn all_zero(prods: &[Vec<Vec<Scalar>>]) -> bool {
    prods.iter().flatten().flatten().all(Scalar::is_zero)
}

fn add_scaled(x: &[Scalar], t: &Scalar, y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + &(t * b)).collect()
}

/// Searches `ω + t·ω′` for a functional whose form on the current pair of
/// subspaces has rank above `n`.
fn contradiction(
    a: &StructureAlgebra,
    prods: &[Vec<Vec<Scalar>>],
    cols: usize,
    omega: &[Scalar],
    next: &[Scalar],
    n: usize,
) -> Error {
    let field = a.field();
    let ts: Vec<Scalar> = match field.order() {
        Some(p) => (1..p.min(9)).map(|t| field.from_i64(t as i64)).collect(),
        None => [1, -1, 2, -2, 3].iter().map(|&t| field.from_i64(t)).collect(),
    };
    let mut candidates = vec![next.to_vec()];
    candidates.extend(ts.iter().map(|t| add_scaled(omega, t, next)));
    for c in candidates {
        let r = form(a, prods, cols, &c).rank();
        if r > n {
            return Error::NotMaximalRank {
                claimed: n,
                found: r,
                functional: format_vector(&c),
            };
        }
    }
    Error::ExtractionFailed(format!(
        "compressed form keeps rank {n} and no functional of larger rank was found"
    ))
}

/// Runs the square-zero-ideal extraction on `a` from a witness of rank
/// `n0`. `sampler` supplies the functionals maximized over when the form
/// has to be compressed.
pub fn extract_square_zero_ideal(
    a: &StructureAlgebra,
    witness: &Functional,
    n0: usize,
    sampler: &[Functional],
) -> Result<Extraction> {
    let field = a.field();
    let n = a.dim();
    let m0 = rank_map(a, witness)?;
    let r = m0.rank();
    if r > n0 {
        return Err(Error::NotMaximalRank {
            claimed: n0,
            found: r,
            functional: format_vector(&witness.0),
        });
    }
    if r < n0 {
        return Err(Error::ExtractionFailed(format!("witness has rank {r}, not {n0}")));
    }
    let a_change = witness_basis_change(a, witness)?;
    let (b_change, c_change) = normalize_form(&m0)?;

    // left and right radicals of (x, y) ↦ ω(xy)
    let mut xs: Vec<Vec<Scalar>> = m0.transpose().kernel().basis().to_vec();
    let mut ys: Vec<Vec<Scalar>> = m0.kernel().basis().to_vec();
    let mut current = witness.0.clone();
    let mut bound = n0;
    let mut ranks = Vec::new();
    let finite = field.is_finite();
    loop {
        let prods = products(a, &xs, &ys);
        let zero = all_zero(&prods);
        if zero && !(finite && ranks.is_empty()) {
            break;
        }
        let (best, next_rank) = sampler
            .iter()
            .enumerate()
            .map(|(idx, rho)| (idx, form(a, &prods, ys.len(), &rho.0).rank()))
            .fold((None, 0), |acc, (idx, rk)| {
                if acc.0.is_none() || rk > acc.1 {
                    (Some(idx), rk)
                } else {
                    acc
                }
            });
        ranks.push(next_rank);
        if zero {
            break;
        }
        let Some(best) = best.filter(|_| next_rank > 0) else {
            return Err(Error::ExtractionFailed(
                "sampler does not detect the nonzero products".into(),
            ));
        };
        let next = &sampler[best].0;
        if next_rank >= bound {
            return Err(contradiction(a, &prods, ys.len(), &current, next, bound));
        }
        let m = form(a, &prods, ys.len(), next);
        xs = combine(field, n, m.transpose().kernel().basis(), &xs);
        ys = combine(field, n, m.kernel().basis(), &ys);
        current = next.clone();
        bound = next_rank;
    }

    let r1 = Subspace::span(field, n, xs)?;
    let r2 = Subspace::span(field, n, ys)?;
    let r0 = r1.intersect(&r2)?;
    let lefts: Vec<Matrix> = (0..n).map(|i| a.left_mult_matrix(&a.basis_vector(i))).collect();
    let s = r0.intersect(&common_preimage(&r0, &lefts, n))?;
    let l = Subspace::span(
        field,
        n,
        lefts
            .iter()
            .flat_map(|m| s.basis().iter().map(move |v| m.mul_vec(v)))
            .collect(),
    )?;
    let ideal = largest_ideal_in(a, &l);
    let codim = ideal.codim();
    let verified = certificate_flags(a, &ideal, codim);
    if !verified.all() {
        return Err(Error::ExtractionFailed(format!(
            "certificate does not verify: {verified:?}"
        )));
    }
    Ok(Extraction {
        certificate: SquareZeroCertificate {
            level: n,
            ideal,
            codim,
            verified,
        },
        trace: ExtractionTrace {
            a_change,
            b_change,
            c_change,
            recursion_depth: ranks.len(),
            compression_ranks: ranks,
            finite_field_branch: finite,
            dims: StageDims {
                r1: r1.dim(),
                r2: r2.dim(),
                r0: r0.dim(),
                s: s.dim(),
                l: l.dim(),
            },
        },
    })
}

fn two_sided_annihilator(a: &StructureAlgebra, s: &Subspace) -> Subspace {
    let (l, r) = annihilators(a, s);
    l.intersect(&r).expect("same ambient")
}

/// Grows a square-zero ideal `J`: with `J'` the largest ideal inside the
/// annihilator of `J`, the ideal `J' ∩ ann(J')` is square-zero and
/// contains `J`. Repeats until nothing changes.
pub fn enlarge(a: &StructureAlgebra, j: &IdealBasis) -> IdealBasis {
    let mut current = j.clone();
    loop {
        let outer = largest_ideal_in(a, &two_sided_annihilator(a, &current.subspace));
        let k = outer
            .subspace
            .intersect(&two_sided_annihilator(a, &outer.subspace))
            .expect("same ambient");
        let bigger = largest_ideal_in(a, &k);
        if bigger.dim() > current.dim()
            && is_square_zero(a, &bigger.subspace)
            && bigger.subspace.contains(&current.subspace).unwrap_or(false)
        {
            current = bigger;
        } else {
            return current;
        }
    }
}

pub fn certificate_flags(a: &StructureAlgebra, ideal: &IdealBasis, codim: usize) -> CertificateFlags {
    let s = &ideal.subspace;
    CertificateFlags {
        is_ideal: s.ambient_dim() == a.dim() && ideal.side == IdealSide::TwoSided && ideal.verify(a),
        square_zero: s.ambient_dim() == a.dim() && is_square_zero(a, s),
        codim_finite: s.ambient_dim() == a.dim() && s.dim() + codim == a.dim(),
    }
}

/// Re-checks a certificate from scratch against `a`.
pub fn verify_certificate(a: &StructureAlgebra, cert: &SquareZeroCertificate) -> bool {
    cert.ideal.subspace.field() == a.field() && certificate_flags(a, &cert.ideal, cert.codim).all()
}
