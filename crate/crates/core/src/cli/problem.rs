//! The JSON problem file and its conversion into library types.
//!
//! Complex scalars are `[re, im]`, matrices are row-major nested arrays of
//! scalars and polynomials are arrays of `{"e": [exponents], "c": [re, im]}`.

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::fredholm::{CochainComplex, CochainMap};
use crate::koszul::{CommutingTuple, DEFAULT_COMMUTE_TOL};
use crate::linalg::{ComplexMatrix, RankPolicy};
use crate::poly::MultiPolynomial;
use crate::symbol::LimitSchedule;

/// A validation failure located at a field path such as
/// `payload.matrices[1][0]`.
#[derive(Clone, Debug, PartialEq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.path.is_empty() || self.path == "." {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

type InputResult<T> = std::result::Result<T, InputError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Koszul,
    JointTorsion,
    TameSymbol,
    CareyPincus,
    Noether,
    Axioms,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Koszul => "koszul",
            Kind::JointTorsion => "joint-torsion",
            Kind::TameSymbol => "tame-symbol",
            Kind::CareyPincus => "carey-pincus",
            Kind::Noether => "noether",
            Kind::Axioms => "axioms",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: String,
    pub kind: Kind,
    pub payload: serde_json::Value,
    #[serde(default)]
    pub policy: Option<RankPolicy>,
    #[serde(default)]
    pub schedule: Option<LimitSchedule>,
}

pub type Scalar = [f64; 2];
pub type MatrixData = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TermData {
    pub e: Vec<u32>,
    pub c: Scalar,
}

pub type PolyData = Vec<TermData>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoszulPayload {
    pub matrices: Vec<MatrixData>,
    #[serde(default)]
    pub commute_tol: Option<f64>,
    /// Optional base point `λ`; the complex is then `K(A - λ)`.
    #[serde(default)]
    pub point: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum JointTorsionPayload {
    /// An explicit cochain complex with two commuting endomorphisms, given
    /// degreewise from `start`.
    Complex(ComplexModel),
    /// Polynomial functions of a commuting tuple acting on `K(h(A))`.
    Koszul(KoszulModel),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexModel {
    pub start: i32,
    pub dims: Vec<usize>,
    pub differentials: Vec<MatrixData>,
    pub f: Vec<MatrixData>,
    pub g: Vec<MatrixData>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoszulModel {
    pub matrices: Vec<MatrixData>,
    #[serde(default)]
    pub commute_tol: Option<f64>,
    #[serde(default)]
    pub h: Vec<PolyData>,
    pub f: PolyData,
    pub g: PolyData,
}

/// Without `h`, `f` and `g` are univariate and the closed form on a smooth
/// curve applies; with `h` the limit procedure runs in the plane.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TameSymbolPayload {
    #[serde(default)]
    pub h: Option<PolyData>,
    pub f: PolyData,
    pub g: PolyData,
    pub point: Vec<Scalar>,
    #[serde(default)]
    pub radius: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscPayload {
    pub f: PolyData,
    pub g: PolyData,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoetherPayload {
    pub f: PolyData,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomsPayload {
    pub h: PolyData,
    pub f1: PolyData,
    pub f2: PolyData,
    pub f3: PolyData,
    pub t: PolyData,
    pub point: Vec<Scalar>,
}

/// Parses the top level strictly; unknown keys are rejected.
pub fn parse_problem(text: &str) -> InputResult<ProblemFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: ProblemFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        InputError::new(path, e.into_inner().to_string())
    })?;
    if file.version != "1" {
        return Err(InputError::new("version", format!("unsupported version {:?}, expected \"1\"", file.version)));
    }
    Ok(file)
}

/// Deserializes the payload, reporting failures under `payload.…`.
pub fn payload<T: DeserializeOwned>(value: &serde_json::Value) -> InputResult<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." { "payload".to_string() } else { format!("payload.{inner}") };
        InputError::new(path, e.into_inner().to_string())
    })
}

pub fn scalar(path: &str, s: &Scalar) -> InputResult<Complex64> {
    if s.iter().all(|x| x.is_finite()) {
        Ok(Complex64::new(s[0], s[1]))
    } else {
        Err(InputError::new(path, "complex entries must be finite"))
    }
}

pub fn point(path: &str, p: &[Scalar]) -> InputResult<Vec<Complex64>> {
    p.iter()
        .enumerate()
        .map(|(i, s)| scalar(&format!("{path}[{i}]"), s))
        .collect()
}

/// A matrix with consistent row lengths; `shape` pins the expected size.
pub fn matrix(path: &str, m: &MatrixData, shape: Option<(usize, usize)>) -> InputResult<ComplexMatrix> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for (i, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(InputError::new(
                format!("{path}[{i}]"),
                format!("row has {} entries, expected {cols}", row.len()),
            ));
        }
    }
    if let Some((r, c)) = shape {
        // An empty list stands for any matrix with a zero dimension.
        let empty_ok = rows == 0 && (r == 0 || c == 0);
        if !empty_ok && (rows, cols) != (r, c) {
            return Err(InputError::new(path, format!("matrix is {rows}x{cols}, expected {r}x{c}")));
        }
        if empty_ok {
            return Ok(ComplexMatrix::zeros(r, c));
        }
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for (i, row) in m.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            out[(i, j)] = scalar(&format!("{path}[{i}][{j}]"), s)?;
        }
    }
    Ok(out)
}

fn square_matrices(path: &str, ms: &[MatrixData]) -> InputResult<Vec<ComplexMatrix>> {
    let dim = ms.first().map_or(0, Vec::len);
    ms.iter()
        .enumerate()
        .map(|(j, m)| matrix(&format!("{path}[{j}]"), m, Some((dim, dim))))
        .collect()
}

/// A polynomial whose exponent vectors all have length `nvars`, or the
/// common length of the first term when `nvars` is `None`.
pub fn polynomial(path: &str, p: &PolyData, nvars: Option<usize>) -> InputResult<MultiPolynomial> {
    let n = match nvars.or_else(|| p.first().map(|t| t.e.len())) {
        Some(n) => n,
        None => return Err(InputError::new(path, "polynomial needs at least one term")),
    };
    let mut terms = Vec::with_capacity(p.len());
    for (i, t) in p.iter().enumerate() {
        if t.e.len() != n {
            return Err(InputError::new(
                format!("{path}[{i}].e"),
                format!("exponent vector has length {}, expected {n}", t.e.len()),
            ));
        }
        terms.push((t.e.clone(), scalar(&format!("{path}[{i}].c"), &t.c)?));
    }
    MultiPolynomial::from_terms(n, terms).map_err(|e| InputError::new(path, e.to_string()))
}

pub fn tuple(path: &str, ms: &[MatrixData], commute_tol: Option<f64>) -> std::result::Result<CommutingTuple, Conversion> {
    let mats = square_matrices(path, ms)?;
    let tol = commute_tol.unwrap_or(DEFAULT_COMMUTE_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(InputError::new("payload.commute_tol", "must be positive").into());
    }
    if mats.is_empty() {
        return Err(InputError::new(path, "at least one matrix is required").into());
    }
    CommutingTuple::with_tolerance(mats, tol).map_err(Conversion::Library)
}

/// Either a located input error or a library error raised while building.
#[derive(Debug)]
pub enum Conversion {
    Input(InputError),
    Library(crate::Error),
}

impl From<InputError> for Conversion {
    fn from(e: InputError) -> Self {
        Conversion::Input(e)
    }
}

impl From<crate::Error> for Conversion {
    fn from(e: crate::Error) -> Self {
        Conversion::Library(e)
    }
}

impl ComplexModel {
    pub fn build(&self) -> std::result::Result<(CochainComplex, CochainMap, CochainMap), Conversion> {
        if self.dims.is_empty() {
            return Err(InputError::new("payload.dims", "at least one degree is required").into());
        }
        let expected = self.dims.len() - 1;
        if self.differentials.len() != expected {
            return Err(InputError::new(
                "payload.differentials",
                format!("{} differentials given, expected {expected}", self.differentials.len()),
            )
            .into());
        }
        let d = self
            .differentials
            .iter()
            .enumerate()
            .map(|(i, m)| {
                matrix(&format!("payload.differentials[{i}]"), m, Some((self.dims[i + 1], self.dims[i])))
            })
            .collect::<InputResult<Vec<_>>>()?;
        let x = CochainComplex::new(self.start, self.dims.clone(), d)?;
        let map = |name: &str, ms: &[MatrixData]| -> std::result::Result<CochainMap, Conversion> {
            if ms.len() != self.dims.len() {
                return Err(InputError::new(
                    format!("payload.{name}"),
                    format!("{} components given, expected {}", ms.len(), self.dims.len()),
                )
                .into());
            }
            let comps = ms
                .iter()
                .enumerate()
                .map(|(i, m)| matrix(&format!("payload.{name}[{i}]"), m, Some((self.dims[i], self.dims[i]))))
                .collect::<InputResult<Vec<_>>>()?;
            Ok(CochainMap::from_components(self.start, comps))
        };
        Ok((x.clone(), map("f", &self.f)?, map("g", &self.g)?))
    }
}

/// The effective policy: file value, then the command-line override.
pub fn effective_policy(file: Option<RankPolicy>, relative: Option<f64>) -> InputResult<RankPolicy> {
    let mut p = file.unwrap_or_default();
    if let Some(r) = relative {
        p.relative_threshold = r;
    }
    if !(p.relative_threshold > 0.0 && p.relative_threshold < 1.0) {
        return Err(InputError::new("policy.relative_threshold", "must lie in (0, 1)"));
    }
    if !(p.absolute_floor >= 0.0 && p.absolute_floor.is_finite()) {
        return Err(InputError::new("policy.absolute_floor", "must be finite and nonnegative"));
    }
    Ok(p)
}
