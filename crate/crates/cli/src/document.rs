//! The output document shared by every subcommand.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable, e.g. a prime of bad reduction.
    Skip,
    Error,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItemOutcome {
    pub suite: String,
    pub item_id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    pub observed: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ItemOutcome {
    pub fn new(suite: &str, item_id: impl Into<String>, status: Status, observed: Value) -> Self {
        ItemOutcome { suite: suite.into(), item_id: item_id.into(), status, expected: None, observed, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errors: usize,
}

impl Summary {
    pub fn of(items: &[ItemOutcome]) -> Self {
        let count = |s: Status| items.iter().filter(|i| i.status == s).count();
        Summary {
            total: items.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skip),
            errors: count(Status::Error),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.errors == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub schema_version: &'static str,
    pub invocation: Value,
    pub items: Vec<ItemOutcome>,
    pub summary: Summary,
    /// Only present with `--timing`, so that default output is reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ResultDocument {
    pub fn new(invocation: Value, items: Vec<ItemOutcome>) -> Self {
        let summary = Summary::of(&items);
        ResultDocument { schema_version: SCHEMA_VERSION, invocation, items, summary, elapsed_ms: None }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn to_table(&self) -> String {
        const WIDTH: usize = 96;
        let id_width = self.items.iter().map(|i| i.suite.len() + i.item_id.len() + 1).max().unwrap_or(0).min(48);
        let mut out = String::new();
        for item in &self.items {
            let id = format!("{}/{}", item.suite, item.item_id);
            let mut shown = item.detail.clone().unwrap_or_else(|| compact(&item.observed));
            if shown.chars().count() > WIDTH {
                shown = shown.chars().take(WIDTH - 3).collect::<String>() + "...";
            }
            let _ = writeln!(out, "{:<5}  {id:<id_width$}  {shown}", item.status.label());
        }
        let s = &self.summary;
        let _ = write!(
            out,
            "{} items: {} passed, {} failed, {} skipped, {} errors",
            s.total, s.passed, s.failed, s.skipped, s.errors
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = write!(out, " ({ms} ms)");
        }
        out.push('\n');
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
