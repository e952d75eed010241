//! On-disk input formats: observer lists, trace tables, and scenario
//! files. All numeric values are JSON strings so that exact rationals
//! survive the trip; the active arithmetic mode decides which
//! spellings are legal (`"3/5"` only in exact mode, `"0.6"` only in
//! float mode, plain integers in both).

use rgk_core::algebra::{AlgebraError, GramTable};
use rgk_core::einstein::{monad_from_velocity, EinsteinError, ThreeVelocity};
use rgk_core::minkowski::{Endo4, MetricContext, MinkowskiError, Vector4};
use rgk_core::observer::{observer_from_monad, Observer, ObserverError};
use rgk_core::scalar::{ArithmeticMode, Scalar};
use serde::Deserialize;
use std::collections::BTreeSet;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("bad scalar {text:?}: {reason}")]
    BadScalar { text: String, reason: String },
    #[error("observer {id:?} must give exactly one of `monad` or `velocity`")]
    MonadOrVelocity { id: String },
    #[error("unknown metric {0:?}; use \"minkowski-+++\" or an explicit 4x4 matrix")]
    UnknownMetric(String),
    #[error("unknown mode {0:?}; use \"exact\" or \"float\"")]
    UnknownMode(String),
    #[error("query {index} has no \"op\" field")]
    MissingOp { index: usize },
    #[error("query {index}: unknown op {op:?}; one of velocity, compose, invert, magnitude, algebra, check, einstein, frobenius")]
    UnknownOp { index: usize, op: String },
    #[error("query {index} ({op}): unexpected field {field:?}; allowed: {allowed}")]
    UnknownQueryField {
        index: usize,
        op: String,
        field: String,
        allowed: String,
    },
    #[error("query {index} ({op}): {source}")]
    QueryShape {
        index: usize,
        op: String,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Metric(#[from] MinkowskiError),
    #[error(transparent)]
    Observer(#[from] ObserverError),
    #[error(transparent)]
    Einstein(#[from] EinsteinError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Parse a scalar string under the mode's literal policy: exact mode
/// rejects decimal spellings, float mode rejects `a/b` rationals.
pub fn parse_scalar(text: &str, mode: ArithmeticMode) -> Result<Scalar, FileError> {
    let value: Scalar = text.parse().map_err(|_| FileError::BadScalar {
        text: text.to_owned(),
        reason: "expected an integer, a/b, or a decimal".to_owned(),
    })?;
    match (mode, &value) {
        (ArithmeticMode::Exact, Scalar::Approx(_)) => Err(FileError::BadScalar {
            text: text.to_owned(),
            reason: "decimal spellings are not allowed in exact mode".to_owned(),
        }),
        (ArithmeticMode::Float, Scalar::Exact(_)) if text.contains('/') => {
            Err(FileError::BadScalar {
                text: text.to_owned(),
                reason: "a/b rationals are not allowed in float mode".to_owned(),
            })
        }
        _ => Ok(value.in_mode(mode)),
    }
}

pub fn parse_vector3(
    parts: &[String; 3],
    mode: ArithmeticMode,
) -> Result<ThreeVelocity, FileError> {
    Ok(ThreeVelocity::new([
        parse_scalar(&parts[0], mode)?,
        parse_scalar(&parts[1], mode)?,
        parse_scalar(&parts[2], mode)?,
    ]))
}

pub fn parse_vector4(parts: &[String; 4], mode: ArithmeticMode) -> Result<Vector4, FileError> {
    Ok(Vector4::new([
        parse_scalar(&parts[0], mode)?,
        parse_scalar(&parts[1], mode)?,
        parse_scalar(&parts[2], mode)?,
        parse_scalar(&parts[3], mode)?,
    ]))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FileError::Json {
        path: path.display().to_string(),
        source,
    })
}

/// One observer, given either by its four monad components or by a
/// coordinate three-velocity (boosted out of the rest monad, which
/// requires the standard diagonal metric).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObserverSpec {
    pub id: String,
    #[serde(default)]
    pub monad: Option<[String; 4]>,
    #[serde(default)]
    pub velocity: Option<[String; 3]>,
}

impl ObserverSpec {
    pub fn build(&self, ctx: &MetricContext) -> Result<Observer, FileError> {
        let monad = match (&self.monad, &self.velocity) {
            (Some(parts), None) => parse_vector4(parts, ctx.mode())?,
            (None, Some(parts)) => {
                let v = parse_vector3(parts, ctx.mode())?;
                monad_from_velocity(&v, ctx)?
            }
            _ => {
                return Err(FileError::MonadOrVelocity {
                    id: self.id.clone(),
                })
            }
        };
        Ok(observer_from_monad(&self.id, &monad, ctx)?)
    }
}

/// Load a bare JSON array of observers (the `--observers` file).
pub fn load_observers(path: &Path, ctx: &MetricContext) -> Result<Vec<Observer>, FileError> {
    let specs: Vec<ObserverSpec> = read_json(path)?;
    specs.iter().map(|spec| spec.build(ctx)).collect()
}

/// A trace table on disk: the object list plus the off-diagonal
/// pairings (diagonals are always 1; omitted pairs stay unset and only
/// matter if a word actually crosses them).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramFile {
    pub objects: Vec<String>,
    #[serde(default)]
    pub traces: Vec<TraceEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceEntry {
    pub a: String,
    pub b: String,
    pub t: String,
}

pub fn load_gram(path: &Path, ctx: &MetricContext) -> Result<GramTable, FileError> {
    let file: GramFile = read_json(path)?;
    let mut gram = GramTable::with_objects(file.objects.iter().map(String::as_str))?;
    for entry in &file.traces {
        let value = parse_scalar(&entry.t, ctx.mode())?;
        gram.set_trace(&entry.a, &entry.b, value)?;
    }
    Ok(gram)
}

/// The metric field: the name of the default diagonal metric, or an
/// explicit matrix of scalar strings.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MetricSpec {
    Named(String),
    Explicit(Box<[[String; 4]; 4]>),
}

/// A self-contained scenario: context settings, the observer family,
/// and a query list. Settings left out fall back to c = 1, the default
/// metric, exact mode, tolerance 1e-9.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default)]
    pub c: Option<String>,
    #[serde(default)]
    pub metric: Option<MetricSpec>,
    #[serde(default)]
    pub mode: Option<String>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    pub observers: Vec<ObserverSpec>,
    #[serde(default)]
    pub queries: Vec<serde_json::Value>,
}

pub fn load_scenario(path: &Path) -> Result<ScenarioFile, FileError> {
    read_json(path)
}

impl ScenarioFile {
    /// Build the metric context the scenario asks for.
    pub fn context(&self) -> Result<MetricContext, FileError> {
        let mode = match self.mode.as_deref() {
            None | Some("exact") => ArithmeticMode::Exact,
            Some("float") => ArithmeticMode::Float,
            Some(other) => return Err(FileError::UnknownMode(other.to_owned())),
        };
        let c = match &self.c {
            Some(text) => parse_scalar(text, mode)?,
            None => Scalar::from_int(1),
        };
        let tolerance = self.tolerance.unwrap_or(1e-9);
        let g = match &self.metric {
            None => MetricContext::default_metric(),
            Some(MetricSpec::Named(name)) if name == "minkowski-+++" => {
                MetricContext::default_metric()
            }
            Some(MetricSpec::Named(name)) => return Err(FileError::UnknownMetric(name.clone())),
            Some(MetricSpec::Explicit(rows)) => {
                let mut parsed = [
                    [
                        Scalar::zero(),
                        Scalar::zero(),
                        Scalar::zero(),
                        Scalar::zero(),
                    ],
                    [
                        Scalar::zero(),
                        Scalar::zero(),
                        Scalar::zero(),
                        Scalar::zero(),
                    ],
                    [
                        Scalar::zero(),
                        Scalar::zero(),
                        Scalar::zero(),
                        Scalar::zero(),
                    ],
                    [
                        Scalar::zero(),
                        Scalar::zero(),
                        Scalar::zero(),
                        Scalar::zero(),
                    ],
                ];
                for (i, row) in rows.iter().enumerate() {
                    for (j, text) in row.iter().enumerate() {
                        parsed[i][j] = parse_scalar(text, mode)?;
                    }
                }
                Endo4::from_rows(parsed)
            }
        };
        Ok(MetricContext::new(g, c, mode, tolerance)?)
    }
}

/// A parsed query. Unknown ops and unknown fields are rejected.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum QuerySpec {
    Velocity {
        from: String,
        to: String,
    },
    Compose {
        chain: Vec<String>,
    },
    Invert {
        from: String,
        to: String,
    },
    Magnitude {
        from: String,
        to: String,
    },
    Algebra {
        expr: String,
    },
    Check {
        suite: String,
        #[serde(default)]
        trials: Option<u32>,
        #[serde(default)]
        seed: Option<u64>,
    },
    Einstein {
        u: [String; 3],
        v: [String; 3],
        #[serde(default)]
        w: Option<[String; 3]>,
    },
    Frobenius {
        tau: String,
    },
}

impl QuerySpec {
    /// A compact one-line label used to echo the query in reports.
    pub fn label(&self) -> String {
        match self {
            QuerySpec::Velocity { from, to } => format!("velocity {from} -> {to}"),
            QuerySpec::Compose { chain } => format!("compose {}", chain.join(" -> ")),
            QuerySpec::Invert { from, to } => format!("invert {from} -> {to}"),
            QuerySpec::Magnitude { from, to } => format!("magnitude {from} -> {to}"),
            QuerySpec::Algebra { expr } => format!("algebra {expr}"),
            QuerySpec::Check { suite, .. } => format!("check {suite}"),
            QuerySpec::Einstein { w: None, .. } => "einstein u+v".to_owned(),
            QuerySpec::Einstein { w: Some(_), .. } => "einstein u+v+w".to_owned(),
            QuerySpec::Frobenius { tau } => format!("frobenius tau={tau}"),
        }
    }
}

fn allowed_fields(op: &str) -> Option<&'static [&'static str]> {
    Some(match op {
        "velocity" | "invert" | "magnitude" => &["op", "from", "to"],
        "compose" => &["op", "chain"],
        "algebra" => &["op", "expr"],
        "check" => &["op", "suite", "trials", "seed"],
        "einstein" => &["op", "u", "v", "w"],
        "frobenius" => &["op", "tau"],
        _ => return None,
    })
}

/// Validate and decode the `index`-th raw query value.
pub fn parse_query(index: usize, value: &serde_json::Value) -> Result<QuerySpec, FileError> {
    let map = value.as_object().ok_or(FileError::MissingOp { index })?;
    let op = map
        .get("op")
        .and_then(|v| v.as_str())
        .ok_or(FileError::MissingOp { index })?
        .to_owned();
    let allowed = allowed_fields(&op).ok_or_else(|| FileError::UnknownOp {
        index,
        op: op.clone(),
    })?;
    let known: BTreeSet<&str> = allowed.iter().copied().collect();
    for field in map.keys() {
        if !known.contains(field.as_str()) {
            return Err(FileError::UnknownQueryField {
                index,
                op,
                field: field.clone(),
                allowed: allowed.join(", "),
            });
        }
    }
    serde_json::from_value(value.clone()).map_err(|source| FileError::QueryShape {
        index,
        op,
        source,
    })
}
