//! Checked-in expected values, looked up by suite and item.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

const BUILTIN: &str = include_str!("../data/expectations.json");
const MAX_ENTRIES: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpectationError {
    #[error("malformed expectations file: {0}")]
    Malformed(String),
    #[error("duplicate expectation for {suite}/{item_id}")]
    Duplicate { suite: String, item_id: String },
    #[error("expectation for {suite}/{item_id} has an empty key")]
    EmptyKey { suite: String, item_id: String },
    #[error("too many expectations ({0})")]
    TooMany(usize),
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub suite: String,
    /// Exact item id, or a prefix ending in `*`.
    pub item_id: String,
    pub expected: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expectations(Vec<Expectation>);

impl Expectations {
    pub fn parse(text: &str) -> Result<Self, ExpectationError> {
        let entries: Vec<Expectation> =
            serde_json::from_str(text).map_err(|e| ExpectationError::Malformed(e.to_string()))?;
        if entries.len() > MAX_ENTRIES {
            return Err(ExpectationError::TooMany(entries.len()));
        }
        let mut seen = BTreeSet::new();
        for e in &entries {
            if e.suite.is_empty() || e.item_id.is_empty() {
                return Err(ExpectationError::EmptyKey { suite: e.suite.clone(), item_id: e.item_id.clone() });
            }
            if !seen.insert((e.suite.as_str(), e.item_id.as_str())) {
                return Err(ExpectationError::Duplicate { suite: e.suite.clone(), item_id: e.item_id.clone() });
            }
        }
        Ok(Expectations(entries))
    }

    /// The file shipped with the crate.
    pub fn builtin() -> &'static Expectations {
        static CELL: OnceLock<Expectations> = OnceLock::new();
        CELL.get_or_init(|| Expectations::parse(BUILTIN).expect("shipped expectations parse"))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Exact match first, then the longest matching `prefix*` pattern.
    pub fn lookup(&self, suite: &str, item_id: &str) -> Option<&Value> {
        let in_suite = || self.0.iter().filter(move |e| e.suite == suite);
        if let Some(e) = in_suite().find(|e| e.item_id == item_id) {
            return Some(&e.expected);
        }
        in_suite()
            .filter_map(|e| e.item_id.strip_suffix('*').map(|prefix| (prefix, e)))
            .filter(|(prefix, _)| item_id.starts_with(prefix))
            .max_by_key(|(prefix, _)| prefix.len())
            .map(|(_, e)| &e.expected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let e = Expectations::builtin();
        assert!(e.len() > 20);
        assert_eq!(e.lookup("l-table", "p=13").unwrap()["coeffs"][4], 338);
        assert_eq!(e.lookup("greene", "p=7").unwrap()["failures"], 0);
        assert_eq!(e.lookup("periods", "beta1*beta2 lambda=3/10").unwrap()["value"], "2");
        assert!(e.lookup("l-table", "p=23").is_none());
        assert!(e.lookup("nope", "x").is_none());
    }

    #[test]
    fn longest_prefix_wins() {
        let e = Expectations::parse(
            r#"[{"suite":"s","item_id":"*","expected":1},{"suite":"s","item_id":"ab*","expected":2},
                {"suite":"s","item_id":"abc","expected":3}]"#,
        )
        .unwrap();
        assert_eq!(e.lookup("s", "abc"), Some(&Value::from(3)));
        assert_eq!(e.lookup("s", "abd"), Some(&Value::from(2)));
        assert_eq!(e.lookup("s", "x"), Some(&Value::from(1)));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(Expectations::parse("{}"), Err(ExpectationError::Malformed(_))));
        assert!(matches!(
            Expectations::parse(r#"[{"suite":"s","item_id":"a","expected":1,"extra":0}]"#),
            Err(ExpectationError::Malformed(_))
        ));
        let dup = r#"[{"suite":"s","item_id":"a","expected":1},{"suite":"s","item_id":"a","expected":2}]"#;
        assert!(matches!(Expectations::parse(dup), Err(ExpectationError::Duplicate { .. })));
        assert!(matches!(
            Expectations::parse(r#"[{"suite":"","item_id":"a","expected":1}]"#),
            Err(ExpectationError::EmptyKey { .. })
        ));
    }
}
