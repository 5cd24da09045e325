//! Report types shared by every check, plus JSON and CSV rendering.
//!
//! JSON is canonical. CSV flattens `rows` only: one header line holding the
//! row keys in the order the check declares them, then one line per row.
//! Nested values (complex numbers, lists) are written as compact JSON.

use serde::Serialize;
use serde_json::{Map, Value};

use ksum_core::FieldCtx;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Row indices listed in a summary before truncation.
const VIOLATION_LIST_CAP: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

impl FieldInfo {
    pub fn of(ctx: &FieldCtx) -> Self {
        FieldInfo { p: ctx.p(), n: ctx.n(), modulus: ctx.modulus().to_vec() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// LHS is bounded above by a constant times the RHS.
    Upper,
    /// LHS is bounded below by a constant times the RHS.
    Lower,
}

/// One checked statement. Assertable statements carry a verdict; report-only
/// statements carry the extreme ratio over the sweep instead.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Statement {
    pub name: String,
    pub assertable: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation_rows: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax: Option<usize>,
}

impl Statement {
    /// `outcomes` pairs each checked row index with its verdict.
    pub fn assertion<I: IntoIterator<Item = (usize, bool)>>(name: &str, outcomes: I) -> Self {
        let mut checked = 0;
        let mut failed = Vec::new();
        for (row, ok) in outcomes {
            checked += 1;
            if !ok {
                failed.push(row);
            }
        }
        let violations = failed.len();
        failed.truncate(VIOLATION_LIST_CAP);
        Statement {
            name: name.to_string(),
            assertable: true,
            checked,
            passed: Some(violations == 0),
            violations: Some(violations),
            violation_rows: Some(failed),
            direction: None,
            empirical_constant: None,
            argmax: None,
        }
    }

    /// The empirical constant is the largest ratio for an upper bound and the
    /// smallest for a lower bound; ties keep the earliest row.
    pub fn empirical<I: IntoIterator<Item = (usize, f64)>>(name: &str, direction: Direction, ratios: I) -> Self {
        let mut checked = 0;
        let mut best: Option<(usize, f64)> = None;
        for (row, r) in ratios {
            checked += 1;
            let better = match (best, direction) {
                (None, _) => true,
                (Some((_, b)), Direction::Upper) => r > b,
                (Some((_, b)), Direction::Lower) => r < b,
            };
            if better {
                best = Some((row, r));
            }
        }
        Statement {
            name: name.to_string(),
            assertable: false,
            checked,
            passed: None,
            violations: None,
            violation_rows: None,
            direction: Some(direction),
            empirical_constant: best.map(|b| b.1),
            argmax: best.map(|b| b.0),
        }
    }

    fn failures(&self) -> usize {
        self.violations.unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub passed: bool,
    pub violations: usize,
    /// Headline ratio of the check and the row attaining it.
    pub max_ratio: Option<f64>,
    pub argmax: Option<usize>,
    pub empirical_constant: Option<f64>,
    pub statements: Vec<Statement>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Meta {
    pub seed: u64,
    pub version: &'static str,
    /// Null unless timing was requested, so reruns stay byte-identical.
    pub walltime_ms: Option<u64>,
    pub mode: String,
    pub sampling: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub field: FieldInfo,
    /// True when the check contains at least one pass/fail statement.
    pub assertable: bool,
    pub rows: Vec<Value>,
    pub summary: Summary,
    pub meta: Meta,
}

pub struct ReportBuilder {
    check: &'static str,
    field: FieldInfo,
    rows: Vec<Value>,
    statements: Vec<Statement>,
    headline: Option<(f64, usize)>,
    empirical_constant: Option<f64>,
    extra: Map<String, Value>,
    seed: u64,
    mode: String,
    sampling: String,
}

impl ReportBuilder {
    pub fn new(check: &'static str, ctx: &FieldCtx, seed: u64, mode: String, sampling: String) -> Self {
        ReportBuilder {
            check,
            field: FieldInfo::of(ctx),
            rows: Vec::new(),
            statements: Vec::new(),
            headline: None,
            empirical_constant: None,
            extra: Map::new(),
            seed,
            mode,
            sampling,
        }
    }

    pub fn rows<T: Serialize>(&mut self, rows: &[T]) -> &mut Self {
        self.rows = rows.iter().map(|r| serde_json::to_value(r).expect("row serializes")).collect();
        self
    }

    pub fn statement(&mut self, s: Statement) -> &mut Self {
        self.statements.push(s);
        self
    }

    /// Sets the summary's `max_ratio`/`argmax` from `(row, ratio)` pairs.
    pub fn headline<I: IntoIterator<Item = (usize, f64)>>(&mut self, ratios: I) -> &mut Self {
        for (row, r) in ratios {
            if self.headline.is_none_or(|(b, _)| r > b) {
                self.headline = Some((r, row));
            }
        }
        self
    }

    pub fn empirical_constant(&mut self, c: Option<f64>) -> &mut Self {
        self.empirical_constant = c;
        self
    }

    pub fn extra<T: Serialize>(&mut self, key: &str, value: T) -> &mut Self {
        self.extra.insert(key.to_string(), serde_json::to_value(value).expect("value serializes"));
        self
    }

    pub fn build(self) -> CheckReport {
        let violations = self.statements.iter().map(Statement::failures).sum();
        CheckReport {
            check: self.check.to_string(),
            field: self.field,
            assertable: self.statements.iter().any(|s| s.assertable),
            summary: Summary {
                rows: self.rows.len(),
                passed: violations == 0,
                violations,
                max_ratio: self.headline.map(|h| h.0),
                argmax: self.headline.map(|h| h.1),
                empirical_constant: self.empirical_constant,
                statements: self.statements,
                extra: self.extra,
            },
            rows: self.rows,
            meta: Meta {
                seed: self.seed,
                version: VERSION,
                walltime_ms: None,
                mode: self.mode,
                sampling: self.sampling,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AllSummary {
    pub passed: bool,
    pub violations: usize,
    pub checks: usize,
    pub failed_checks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AllMeta {
    pub seed: u64,
    pub version: &'static str,
    pub walltime_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AllReport {
    pub check: String,
    pub reports: Vec<CheckReport>,
    pub summary: AllSummary,
    pub meta: AllMeta,
}

impl AllReport {
    pub fn new(seed: u64, reports: Vec<CheckReport>) -> Self {
        let failed_checks = reports
            .iter()
            .filter(|r| !r.summary.passed)
            .map(|r| format!("{}:{}^{}", r.check, r.field.p, r.field.n))
            .collect();
        AllReport {
            check: "all".to_string(),
            summary: AllSummary {
                passed: reports.iter().all(|r| r.summary.passed),
                violations: reports.iter().map(|r| r.summary.violations).sum(),
                checks: reports.len(),
                failed_checks,
            },
            reports,
            meta: AllMeta { seed, version: VERSION, walltime_ms: None },
        }
    }
}

/// Anything the CLI can print.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Check(Box<CheckReport>),
    All(Box<AllReport>),
    /// Single-case records from the per-case commands.
    Record(Value),
}

impl Output {
    pub fn passed(&self) -> bool {
        match self {
            Output::Check(r) => r.summary.passed,
            Output::All(r) => r.summary.passed,
            Output::Record(_) => true,
        }
    }

    pub fn set_walltime(&mut self, ms: u64) {
        match self {
            Output::Check(r) => r.meta.walltime_ms = Some(ms),
            Output::All(r) => {
                r.meta.walltime_ms = Some(ms);
            }
            Output::Record(_) => {}
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = match self {
            Output::Check(r) => serde_json::to_string_pretty(r),
            Output::All(r) => serde_json::to_string_pretty(r),
            Output::Record(v) => serde_json::to_string_pretty(v),
        }
        .expect("report serializes");
        s.push('\n');
        s
    }

    /// Aggregate reports become one CSV block per sub-report, each preceded by
    /// a `# check=... p=... n=...` line and separated by a blank line.
    pub fn to_csv(&self) -> String {
        match self {
            Output::Check(r) => rows_csv(&r.rows),
            Output::All(all) => {
                let blocks: Vec<String> = all
                    .reports
                    .iter()
                    .map(|r| format!("# check={} p={} n={}\n{}", r.check, r.field.p, r.field.n, rows_csv(&r.rows)))
                    .collect();
                blocks.join("\n")
            }
            Output::Record(v) => rows_csv(std::slice::from_ref(v)),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn rows_csv(rows: &[Value]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = match rows.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        _ => Vec::new(),
    };
    if !header.is_empty() {
        w.write_record(&header).expect("in-memory write");
    }
    for row in rows {
        if let Value::Object(m) = row {
            let record: Vec<String> = header.iter().map(|k| m.get(k).map(cell).unwrap_or_default()).collect();
            w.write_record(&record).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}
