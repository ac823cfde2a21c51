//! Versioned, serialisable run reports.
//!
//! Everything that varies between identical runs lives in the `timestamp`
//! object, so two runs with the same configuration serialise to the same
//! bytes once that object is removed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A rectangular table with fixed column names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in table {}", self.name);
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows rendered as strings, with floats in shortest round-trip form.
    pub fn string_rows(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(cell_string).collect()).collect()
    }
}

pub fn cell_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// A JSON number, or `null` for non-finite values.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// One checked claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub value: Option<f64>,
    pub threshold: Option<f64>,
    /// The invariant being checked, quoted from its source statement.
    pub anchor: String,
    /// Failure came from an exhausted budget rather than a violated bound.
    pub budget: bool,
    pub detail: Option<String>,
}

impl Assertion {
    /// `value <= threshold`.
    pub fn at_most(name: &str, value: f64, threshold: f64, anchor: &str) -> Self {
        Assertion {
            name: name.into(),
            pass: value <= threshold,
            value: Some(value),
            threshold: Some(threshold),
            anchor: anchor.into(),
            budget: false,
            detail: None,
        }
    }

    /// `value >= threshold`.
    pub fn at_least(name: &str, value: f64, threshold: f64, anchor: &str) -> Self {
        Assertion { pass: value >= threshold, ..Self::at_most(name, value, threshold, anchor) }
    }

    pub fn holds(name: &str, pass: bool, anchor: &str) -> Self {
        Assertion {
            name: name.into(),
            pass,
            value: None,
            threshold: None,
            anchor: anchor.into(),
            budget: false,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn from_error(name: &str, anchor: &str, err: &crate::Error) -> Self {
        Assertion {
            name: name.into(),
            pass: false,
            value: None,
            threshold: None,
            anchor: anchor.into(),
            budget: err.is_budget(),
            detail: Some(err.to_string()),
        }
    }
}

/// Wall-clock data, excluded from determinism comparisons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timestamp {
    pub unix_seconds: u64,
    pub elapsed_seconds: f64,
}

impl Timestamp {
    pub fn now(elapsed_seconds: f64) -> Self {
        let unix_seconds =
            std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Timestamp { unix_seconds, elapsed_seconds }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: u32,
    pub library_version: String,
    pub command: String,
    pub seed: u64,
    /// Echo of the validated configuration.
    pub config: Value,
    pub tables: Vec<Table>,
    pub summary: BTreeMap<String, Value>,
    pub assertions: Vec<Assertion>,
    pub pass: bool,
    pub timestamp: Timestamp,
}

impl ScanReport {
    pub fn new(command: &str, seed: u64, config: Value) -> Self {
        ScanReport {
            schema: SCHEMA_VERSION,
            library_version: LIBRARY_VERSION.into(),
            command: command.into(),
            seed,
            config,
            tables: Vec::new(),
            summary: BTreeMap::new(),
            assertions: Vec::new(),
            pass: true,
            timestamp: Timestamp { unix_seconds: 0, elapsed_seconds: 0.0 },
        }
    }

    pub fn push_assertion(&mut self, a: Assertion) {
        self.pass &= a.pass;
        self.assertions.push(a);
    }

    pub fn failed(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// JSON with the `timestamp` object removed.
    pub fn to_json_without_timestamp(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serialises");
        if let Value::Object(m) = &mut v {
            m.remove("timestamp");
        }
        serde_json::to_string_pretty(&v).expect("value serialises")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        let r: ScanReport = serde_json::from_str(s).map_err(|e| crate::Error::Config(format!("invalid report: {e}")))?;
        if r.schema != SCHEMA_VERSION {
            return Err(crate::Error::Config(format!("unsupported report schema {}", r.schema)));
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_timestamp_exclusion() {
        let mut r = ScanReport::new("eval", 7, serde_json::json!({"alpha": [0.5]}));
        let mut t = Table::new("values", &["k", "value"]);
        t.push(vec![Value::from(0), num(0.25)]);
        r.tables.push(t);
        r.push_assertion(Assertion::at_most("x", 1.0, 2.0, "anchor"));
        let mut r2 = r.clone();
        r2.timestamp = Timestamp::now(1.5);
        assert_eq!(r.to_json_without_timestamp(), r2.to_json_without_timestamp());
        assert_ne!(r.to_json(), r2.to_json());
        assert_eq!(ScanReport::from_json(&r2.to_json()).unwrap(), r2);
        assert!(r.pass);
        r.push_assertion(Assertion::at_least("y", 1.0, 2.0, "anchor"));
        assert!(!r.pass);
    }

    #[test]
    fn non_finite_is_null() {
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(cell_string(&num(0.1)), "0.1");
    }
}
