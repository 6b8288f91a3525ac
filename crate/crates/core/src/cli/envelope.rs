//! The result envelope printed by every command.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, ErrorClass};
use crate::scalar::PolarScalar;

use super::problem::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Warning,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Info,
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    pub level: Level,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Diagnostic {
    pub fn new(level: Level, code: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            level,
            code: code.into(),
            message: message.into(),
            path: None,
            data: None,
        }
    }

    pub fn warning(code: &str, message: impl Into<String>) -> Self {
        Self::new(Level::Warning, code, message)
    }

    pub fn info(code: &str, message: impl Into<String>) -> Self {
        Self::new(Level::Info, code, message)
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub status: Status,
    pub value: Value,
    pub details: Value,
    pub diagnostics: Vec<Diagnostic>,
    pub timing_ms: f64,
}

/// Exit codes of the command line.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const NON_STABILIZATION: i32 = 4;
}

/// What a successful command produced, before timing is attached.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub value: Value,
    pub details: Value,
    pub diagnostics: Vec<Diagnostic>,
    /// Set by `verify` when a property fails.
    pub failed: bool,
}

impl Outcome {
    pub fn new(value: Value, details: Value) -> Self {
        Outcome {
            value,
            details,
            diagnostics: Vec::new(),
            failed: false,
        }
    }

    pub fn push(&mut self, d: Diagnostic) {
        self.diagnostics.push(d);
    }

    /// Envelope and exit code.
    pub fn finish(self, timing_ms: f64) -> (Envelope, i32) {
        let has_warning = self.diagnostics.iter().any(|d| d.level == Level::Warning);
        let (status, code) = if self.failed {
            (Status::Error, exit::VERIFY_FAILED)
        } else if has_warning {
            (Status::Warning, exit::OK)
        } else {
            (Status::Ok, exit::OK)
        };
        (
            Envelope {
                status,
                value: self.value,
                details: self.details,
                diagnostics: self.diagnostics,
                timing_ms,
            },
            code,
        )
    }
}

/// A failure that ends a command.
#[derive(Debug)]
pub enum Failure {
    Input(InputError),
    Library(Error),
    Io { path: String, message: String },
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<super::problem::Conversion> for Failure {
    fn from(c: super::problem::Conversion) -> Self {
        match c {
            super::problem::Conversion::Input(e) => Failure::Input(e),
            super::problem::Conversion::Library(e) => Failure::Library(e),
        }
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) | Failure::Io { .. } => exit::VALIDATION,
            Failure::Library(e) => match e.class() {
                ErrorClass::Validation => exit::VALIDATION,
                ErrorClass::Numerical => exit::NUMERICAL,
                ErrorClass::NonStabilization => exit::NON_STABILIZATION,
            },
        }
    }

    pub fn diagnostic(&self) -> Diagnostic {
        match self {
            Failure::Input(e) => Diagnostic {
                level: Level::Error,
                code: "validation".into(),
                message: e.message.clone(),
                path: Some(e.path.clone()),
                data: None,
            },
            Failure::Io { path, message } => Diagnostic {
                level: Level::Error,
                code: "io".into(),
                message: message.clone(),
                path: Some(path.clone()),
                data: None,
            },
            Failure::Library(e) => {
                let code = match e.class() {
                    ErrorClass::Validation => "validation",
                    ErrorClass::Numerical => "numerical",
                    ErrorClass::NonStabilization => "non-stabilization",
                };
                let data = match e {
                    Error::NonStabilization { steps, tail } => Some(json!({
                        "steps": steps,
                        "tail": tail.iter().map(|z| complex(*z)).collect::<Vec<_>>(),
                    })),
                    Error::NonCommuting { i, j, defect } => Some(json!({"i": i, "j": j, "defect": defect})),
                    Error::MapsDoNotCommute { degree, defect } | Error::NotChainMap { degree, defect } => {
                        Some(json!({"degree": degree, "defect": defect}))
                    }
                    _ => None,
                };
                Diagnostic {
                    level: Level::Error,
                    code: code.into(),
                    message: e.to_string(),
                    path: None,
                    data,
                }
            }
        }
    }

    pub fn envelope(&self, timing_ms: f64) -> Envelope {
        Envelope {
            status: Status::Error,
            value: Value::Null,
            details: Value::Null,
            diagnostics: vec![self.diagnostic()],
            timing_ms,
        }
    }
}

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn scalar(s: PolarScalar) -> Value {
    complex(s.to_complex())
}

/// Magnitude, phase and logarithmic magnitude of a scalar.
pub fn polar(s: PolarScalar) -> Value {
    json!({
        "magnitude": s.magnitude(),
        "phase": s.phase(),
        "ln_magnitude": s.ln_magnitude(),
    })
}

fn render_scalar(v: &Value) -> Option<String> {
    let a = v.as_array()?;
    if a.len() != 2 {
        return None;
    }
    let (re, im) = (a[0].as_f64()?, a[1].as_f64()?);
    let z = Complex64::new(re, im);
    Some(format!("{re:.12} {} {:.12}i  (|z| = {:.12}, arg = {:.12})", if im < 0.0 { "-" } else { "+" }, im.abs(), z.norm(), z.arg()))
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    if let Some(s) = render_scalar(v) {
        out.push_str(&s);
        out.push('\n');
        return;
    }
    match v {
        Value::Object(map) => {
            out.push('\n');
            for (k, x) in map {
                out.push_str(&format!("{pad}  {k}: "));
                render_value(x, indent + 2, out);
            }
        }
        other => {
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
}

/// The `--format human` rendering: rectangular values with magnitude and
/// phase, then details and diagnostics.
pub fn human(e: &Envelope) -> String {
    let mut out = String::new();
    let status = match e.status {
        Status::Ok => "ok",
        Status::Warning => "warning",
        Status::Error => "error",
    };
    out.push_str(&format!("status: {status}\n"));
    if !e.value.is_null() {
        out.push_str("value: ");
        render_value(&e.value, 0, &mut out);
    }
    if !e.details.is_null() {
        out.push_str("details: ");
        render_value(&e.details, 0, &mut out);
    }
    for d in &e.diagnostics {
        let level = match d.level {
            Level::Info => "info",
            Level::Warning => "warning",
            Level::Error => "error",
        };
        match &d.path {
            Some(p) => out.push_str(&format!("{level} [{}] {p}: {}\n", d.code, d.message)),
            None => out.push_str(&format!("{level} [{}] {}\n", d.code, d.message)),
        }
    }
    out.push_str(&format!("time: {:.3} ms\n", e.timing_ms));
    out
}
