//! Report assembly and rendering. Every command produces a [`Report`]
//! — context echo, observer echo, one outcome per query — which can be
//! rendered as JSON (stable: object keys are sorted, scalars are
//! strings) or as aligned text.

use rgk_core::einstein::ThreeVelocity;
use rgk_core::minkowski::{Endo4, MetricContext, Vector4};
use rgk_core::scalar::{ArithmeticMode, Scalar};
use rgk_core::suites::SuiteReport;
use rgk_core::velocity::VelocityArrow;
use serde_json::{json, Value};

/// How a single query ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Computed, and any embedded pass/fail verdict passed.
    Ok,
    /// Computed, but an embedded verdict (a check suite) failed.
    Failed,
    /// Could not be computed.
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Error => "error",
        }
    }
}

/// One query's outcome: the echoed query, how it ended, the payload
/// (or error message), and whether the numbers stayed exact.
#[derive(Clone, Debug)]
pub struct QueryOutcome {
    pub query: String,
    pub status: Status,
    pub result: Value,
    pub provenance: &'static str,
}

impl QueryOutcome {
    pub fn ok(query: impl Into<String>, result: Value, exact: bool) -> Self {
        QueryOutcome {
            query: query.into(),
            status: Status::Ok,
            result,
            provenance: provenance_str(exact),
        }
    }

    pub fn failed(query: impl Into<String>, result: Value, exact: bool) -> Self {
        QueryOutcome {
            query: query.into(),
            status: Status::Failed,
            result,
            provenance: provenance_str(exact),
        }
    }

    pub fn error(
        query: impl Into<String>,
        message: impl std::fmt::Display,
        ctx: &MetricContext,
    ) -> Self {
        QueryOutcome {
            query: query.into(),
            status: Status::Error,
            result: json!({ "message": message.to_string() }),
            provenance: provenance_str(ctx.mode() == ArithmeticMode::Exact),
        }
    }
}

fn provenance_str(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "float"
    }
}

/// A full command report.
#[derive(Clone, Debug)]
pub struct Report {
    pub c: String,
    pub mode: String,
    pub observers: Vec<(String, Vector4)>,
    pub outcomes: Vec<QueryOutcome>,
}

impl Report {
    pub fn new(ctx: &MetricContext) -> Self {
        Report {
            c: scalar_text(ctx.c()),
            mode: ctx.mode().to_string(),
            observers: Vec::new(),
            outcomes: Vec::new(),
        }
    }

    pub fn with_observers<'a, I>(mut self, observers: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a Vector4)>,
    {
        self.observers = observers
            .into_iter()
            .map(|(id, monad)| (id.to_owned(), monad.clone()))
            .collect();
        self
    }

    pub fn push(&mut self, outcome: QueryOutcome) {
        self.outcomes.push(outcome);
    }

    pub fn all_ok(&self) -> bool {
        self.outcomes.iter().all(|o| o.status == Status::Ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "c": self.c,
            "mode": self.mode,
            "observers": self
                .observers
                .iter()
                .map(|(id, monad)| json!({ "id": id, "monad": vector4_value(monad) }))
                .collect::<Vec<_>>(),
            "results": self
                .outcomes
                .iter()
                .map(|o| {
                    json!({
                        "query": o.query,
                        "status": o.status.as_str(),
                        "result": o.result,
                        "provenance": o.provenance,
                    })
                })
                .collect::<Vec<_>>(),
            "passed": self.all_ok(),
        })
    }

    pub fn render_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(&self.to_json()).expect("report JSON serializes");
        text.push('\n');
        text
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("c = {}, mode = {}\n", self.c, self.mode));
        if !self.observers.is_empty() {
            out.push_str("observers:\n");
            for (id, monad) in &self.observers {
                out.push_str(&format!("  {:<10} {}\n", id, monad));
            }
        }
        for outcome in &self.outcomes {
            out.push_str(&format!(
                "[{:<6}] {}  ({})\n",
                outcome.status.as_str(),
                outcome.query,
                outcome.provenance
            ));
            render_value(&outcome.result, 1, &mut out);
        }
        out.push_str(if self.all_ok() {
            "all queries ok\n"
        } else {
            "some queries did not pass\n"
        });
        out
    }
}

fn render_value(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, val) in map {
                match val {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(val, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(Value::is_array) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(val, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{key} = {}\n", inline_value(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                let flat = match item {
                    Value::Object(_) => false,
                    Value::Array(inner) => inner.iter().all(|v| !v.is_array() && !v.is_object()),
                    _ => true,
                };
                if flat {
                    out.push_str(&format!("{pad}- {}\n", inline_value(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_value(item, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline_value(value))),
    }
}

fn inline_value(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline_value).collect();
            format!("({})", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// Scalars render as strings in every payload: `"3/5"` exact,
/// shortest-round-trip decimal in float mode.
pub fn scalar_text(s: &Scalar) -> String {
    s.to_string()
}

pub fn scalar_value(s: &Scalar) -> Value {
    Value::String(scalar_text(s))
}

pub fn vector4_value(v: &Vector4) -> Value {
    Value::Array(v.components().iter().map(scalar_value).collect())
}

pub fn three_velocity_value(v: &ThreeVelocity) -> Value {
    Value::Array(v.components().iter().map(scalar_value).collect())
}

pub fn endo_value(m: &Endo4) -> Value {
    Value::Array(
        (0..4)
            .map(|i| Value::Array((0..4).map(|j| scalar_value(m.entry(i, j))).collect()))
            .collect(),
    )
}

/// Shared payload for anything that yields a velocity arrow.
pub fn arrow_value(arrow: &VelocityArrow) -> Value {
    json!({
        "source": arrow.source(),
        "target": arrow.target(),
        "vec": vector4_value(arrow.vec()),
        "speed_sq": scalar_value(arrow.speed_sq()),
        "op": endo_value(arrow.op()),
    })
}

pub fn arrow_is_exact(arrow: &VelocityArrow) -> bool {
    arrow.vec().is_exact() && arrow.speed_sq().is_exact() && arrow.op().is_exact()
}

/// Payload for a suite run: per-check lines plus the verdict.
pub fn suite_value(report: &SuiteReport) -> Value {
    json!({
        "suite": report.suite,
        "trials": report.trials,
        "seed": report.seed,
        "checks": report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                })
            })
            .collect::<Vec<_>>(),
        "passed": report.passed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_rendering_is_deterministic_and_sorted() {
        let ctx = MetricContext::minkowski();
        let mut report = Report::new(&ctx);
        report.push(QueryOutcome::ok(
            "demo",
            json!({ "zeta": "1", "alpha": "2" }),
            true,
        ));
        let a = report.render_json();
        let b = report.render_json();
        assert_eq!(a, b);
        // serde_json maps are ordered, so "alpha" prints before "zeta".
        let alpha = a.find("alpha").unwrap();
        let zeta = a.find("zeta").unwrap();
        assert!(alpha < zeta);
    }

    #[test]
    fn text_rendering_indents_nested_payloads() {
        let ctx = MetricContext::minkowski();
        let mut report = Report::new(&ctx);
        report.push(QueryOutcome::ok(
            "demo",
            json!({ "outer": { "inner": "1" }, "list": ["1", "2"] }),
            true,
        ));
        let text = report.render_text();
        assert!(text.contains("outer:\n"));
        assert!(text.contains("  inner = 1"));
        assert!(text.contains("list = (1, 2)"));
        assert!(text.ends_with("all queries ok\n"));
    }

    #[test]
    fn failed_outcomes_flip_the_verdict() {
        let ctx = MetricContext::minkowski();
        let mut report = Report::new(&ctx);
        report.push(QueryOutcome::failed("demo", json!({}), true));
        assert!(!report.all_ok());
        assert!(report.render_text().contains("some queries did not pass"));
        assert_eq!(report.to_json()["passed"], json!(false));
    }
}
