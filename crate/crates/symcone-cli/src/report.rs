use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::{Format, RunConfig};

/// One named check with the digest of its inputs and the measured outcome.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub digest: String,
    pub max_violation: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl CheckRecord {
    /// `inputs` describes everything the check consumed; its digest makes
    /// records comparable across runs without embedding the raw inputs.
    pub fn new(name: &str, inputs: &Value, max_violation: f64, tol: f64) -> CheckRecord {
        CheckRecord {
            name: name.to_string(),
            digest: digest16(inputs),
            max_violation,
            tol,
            pass: max_violation.is_finite() && max_violation <= tol,
            wall_ms: None,
        }
    }

    pub fn with_wall_ms(mut self, wall_ms: Option<u64>) -> CheckRecord {
        self.wall_ms = wall_ms;
        self
    }
}

/// Full run report. Serialization is deterministic: struct field order is
/// fixed and every embedded map is key-sorted by serde_json.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub version: String,
    pub config: RunConfig,
    pub records: Vec<CheckRecord>,
    pub overall_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

impl Report {
    pub fn new(suite: &str, config: &RunConfig) -> Report {
        Report {
            suite: suite.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            records: Vec::new(),
            overall_pass: true,
            result: None,
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.overall_pass &= record.pass;
        self.records.push(record);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
        }
    }

    /// CSV flattens the per-check records; the dims suite flattens its
    /// result table instead since it has no checks.
    fn render_csv(&self) -> String {
        if self.suite == "dims" {
            let mut s = String::from("n,dimension\n");
            if let Some(rows) = self.result.as_ref().and_then(|r| r.get("rows")).and_then(Value::as_array) {
                for row in rows {
                    s.push_str(&format!(
                        "{},{}\n",
                        row.get("n").and_then(Value::as_u64).unwrap_or(0),
                        row.get("dimension").and_then(Value::as_u64).unwrap_or(0),
                    ));
                }
            }
            return s;
        }
        let timed = self.records.iter().any(|r| r.wall_ms.is_some());
        let mut s = String::from(if timed {
            "name,digest,max_violation,tol,pass,wall_ms\n"
        } else {
            "name,digest,max_violation,tol,pass\n"
        });
        for r in &self.records {
            s.push_str(&format!(
                "{},{},{},{},{}",
                r.name, r.digest, r.max_violation, r.tol, r.pass
            ));
            if timed {
                s.push_str(&format!(",{}", r.wall_ms.map_or(String::new(), |w| w.to_string())));
            }
            s.push('\n');
        }
        s
    }
}

/// First 16 hex chars of the SHA-256 of the canonical JSON of `inputs`.
/// serde_json maps are key-sorted, so equal inputs digest equally.
pub fn digest16(inputs: &Value) -> String {
    let mut hasher = Sha256::new();
    hasher.update(inputs.to_string().as_bytes());
    let out = hasher.finalize();
    out.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Run `f`, returning its value and the elapsed milliseconds when requested.
pub fn timed<T>(timings: bool, f: impl FnOnce() -> T) -> (T, Option<u64>) {
    if !timings {
        return (f(), None);
    }
    let start = std::time::Instant::now();
    let value = f();
    (value, Some(start.elapsed().as_millis() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn config() -> RunConfig {
        RunConfig {
            n: 2,
            alpha: 1.0,
            abc: [1.0, 1.0, 1.0],
            seed: 7,
            tol_geom: 1e-5,
            tol_exact: 1e-10,
            samples: 1_000_000,
            fd_step: None,
            trials: 100,
        }
    }

    #[test]
    fn digest_is_stable_and_order_insensitive() {
        let a = digest16(&json!({"x": 1, "y": 2}));
        let b = digest16(&json!({"y": 2, "x": 1}));
        assert_eq!(a, b);
        assert_eq!(a.len(), 16);
        assert_ne!(a, digest16(&json!({"x": 1, "y": 3})));
    }

    #[test]
    fn overall_pass_tracks_every_record() {
        let mut rep = Report::new("verify", &config());
        rep.push(CheckRecord::new("a", &json!({}), 0.0, 1e-10));
        assert!(rep.overall_pass);
        rep.push(CheckRecord::new("b", &json!({}), 2e-10, 1e-10));
        assert!(!rep.overall_pass);
        rep.push(CheckRecord::new("c", &json!({}), 0.0, 1e-10));
        assert!(!rep.overall_pass);
    }

    #[test]
    fn non_finite_violation_fails() {
        let rec = CheckRecord::new("nan", &json!({}), f64::NAN, 1e-10);
        assert!(!rec.pass);
    }

    #[test]
    fn json_render_is_reproducible_and_parses() {
        let mut rep = Report::new("verify", &config());
        rep.push(CheckRecord::new("a", &json!({"k": 1}), 1.25e-12, 1e-10));
        let one = rep.render(Format::Json);
        let two = rep.render(Format::Json);
        assert_eq!(one, two);
        let v: Value = serde_json::from_str(&one).unwrap();
        assert_eq!(v["suite"], "verify");
        assert_eq!(v["records"][0]["max_violation"], json!(1.25e-12));
        assert!(v["records"][0].get("wall_ms").is_none());
    }

    #[test]
    fn csv_render_has_header_and_rows() {
        let mut rep = Report::new("verify", &config());
        rep.push(CheckRecord::new("a", &json!({}), 0.0, 1e-10));
        let csv = rep.render(Format::Csv);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "name,digest,max_violation,tol,pass");
        assert!(lines.next().unwrap().starts_with("a,"));
    }

    #[test]
    fn dims_csv_flattens_the_table() {
        let mut rep = Report::new("dims", &config());
        rep.result = Some(json!({"rows": [
            {"n": 1, "dimension": 1},
            {"n": 2, "dimension": 2},
            {"n": 3, "dimension": 3},
        ]}));
        let csv = rep.render(Format::Csv);
        assert_eq!(csv, "n,dimension\n1,1\n2,2\n3,3\n");
    }
}
