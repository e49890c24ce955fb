//! Machine-readable reports. Every key is always present; absent values are `null`.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub sicov: f64,
    pub sicor: f64,
    pub dcov: f64,
    pub dcor: f64,
    /// Only defined for one-dimensional margins with nonzero variance.
    pub pearson: Option<f64>,
    pub alpha: f64,
    pub mode: &'static str,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    /// Tuples per term family; only used in incomplete mode.
    pub budget: Option<u64>,
    pub rng: &'static str,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CiReport {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    pub variance_hat: f64,
    pub k1_budget: u64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TestReport {
    pub statistic: f64,
    pub p_value: f64,
    pub reject: bool,
    pub permutations: usize,
    pub level: f64,
    pub alpha: f64,
    pub mode: &'static str,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    pub rng: &'static str,
    pub ci: Option<CiReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub atoms: usize,
    pub alpha: f64,
    pub sicov_population: f64,
    /// `null` when the population denominator is zero.
    pub sicor_population: Option<f64>,
    pub sicov_quadrature: f64,
    pub quadrature_error: f64,
    pub quadrature_tail: f64,
    pub quadrature_tail_bound: f64,
    /// Both sides of `E|X − X′|^α = c(1,α)⁻¹ ∫ (1 − Re φ_{X−X′}(t)) |t|^{−1−α} dt`.
    pub lemma_quadrature: f64,
    pub lemma_moment: f64,
}

/// A rectangular result table.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub scenario: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}_{k}") };
                flatten(&key, child, out);
            }
        }
        other => out.push((prefix.to_string(), cell(other))),
    }
}

/// One-record CSV (header line and value line) of a report. Nested objects
/// become `parent_child` columns; lists are joined with `;`.
///
/// A `null` nested object has no columns of its own, so callers pass
/// `template` (the same report with the object filled in) to keep the
/// header fixed.
pub fn record_csv<T: Serialize>(report: &T, template: Option<&T>) -> String {
    let value = serde_json::to_value(report).expect("reports serialise");
    let mut fields = Vec::new();
    flatten("", &value, &mut fields);
    if let Some(t) = template {
        let mut shape = Vec::new();
        flatten("", &serde_json::to_value(t).expect("reports serialise"), &mut shape);
        fields = shape
            .into_iter()
            .map(|(k, _)| {
                let v = fields.iter().find(|(key, _)| *key == k).map(|(_, v)| v.clone()).unwrap_or_default();
                (k, v)
            })
            .collect();
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields.iter().map(|f| f.0.as_str())).expect("in-memory write");
    w.write_record(fields.iter().map(|f| f.1.as_str())).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

pub fn table_csv(table: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row.iter().map(cell)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_objects_flatten() {
        #[derive(Serialize)]
        struct R {
            a: f64,
            ci: Option<Inner>,
        }
        #[derive(Serialize)]
        struct Inner {
            lower: f64,
            warnings: Vec<String>,
        }
        let full = R { a: 1.5, ci: Some(Inner { lower: -1.0, warnings: vec!["w1".into(), "w2".into()] }) };
        assert_eq!(record_csv(&full, None), "a,ci_lower,ci_warnings\n1.5,-1.0,w1;w2\n");
        let empty = R { a: 2.0, ci: None };
        assert_eq!(record_csv(&empty, Some(&full)), "a,ci_lower,ci_warnings\n2.0,,\n");
    }

    #[test]
    fn tables() {
        let t = Table { scenario: "s", columns: vec!["k", "v"], rows: vec![vec![json!(1), json!(0.25)], vec![json!(2), Value::Null]] };
        assert_eq!(table_csv(&t), "k,v\n1,0.25\n2,\n");
    }
}
