//! Report records and their json / csv / text renderings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::Format;

/// Integers go out as JSON numbers when they fit in 64 bits, as strings otherwise.
pub fn int_value(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(b.to_string()),
    }
}

pub fn int_values(v: &[BigInt]) -> Vec<Value> {
    v.iter().map(int_value).collect()
}

fn tuple(values: &[Value]) -> String {
    let inner: Vec<String> = values.iter().map(plain).collect();
    format!("({})", inner.join(", "))
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => "null".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "null".into(), ToString::to_string)
}

fn opt_tuple(v: &Option<Vec<Value>>) -> String {
    v.as_ref().map_or_else(|| "null".into(), |h| tuple(h))
}

/// Renders a flat record as one CSV header line plus one row.
fn csv_record<T: Serialize>(record: &T) -> String {
    let Value::Object(map) = serde_json::to_value(record).expect("serializable") else {
        unreachable!("records are structs")
    };
    let header: Vec<&str> = map.keys().map(String::as_str).collect();
    let row: Vec<String> = map.values().map(plain).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn json<T: Serialize>(record: &T) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct HvectorReport {
    pub t: u32,
    pub n: u32,
    pub grading: String,
    pub dim: u32,
    pub h_vector: Option<Vec<Value>>,
    #[serde(rename = "a_invariant_Y")]
    pub a_invariant_y: i64,
    pub a_invariant_rescaled: Option<i64>,
    #[serde(rename = "gorenstein_R")]
    pub gorenstein_r: bool,
    pub palindrome: Option<bool>,
    pub unimodal: Option<bool>,
    pub gap: Option<Value>,
    pub prime: u64,
    pub seed: u64,
    pub version: String,
    #[serde(rename = "h_vector_R")]
    pub h_vector_r: Option<Vec<Value>>,
    #[serde(rename = "a_invariant_R_Y")]
    pub a_invariant_r_y: i64,
    #[serde(rename = "a_invariant_R_rescaled")]
    pub a_invariant_r_rescaled: Option<i64>,
    #[serde(rename = "canonical_module_R")]
    pub canonical_module_r: String,
    #[serde(rename = "palindrome_R")]
    pub palindrome_r: Option<bool>,
    #[serde(rename = "unimodal_R")]
    pub unimodal_r: Option<bool>,
    /// YGrading oracle values of the cover, emitted when it has no h-vector.
    #[serde(rename = "cover_table_Y")]
    pub cover_table_y: Option<Vec<u64>>,
}

impl HvectorReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv_record(self),
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "socover {}  prime={} seed={}", self.version, self.prime, self.seed);
        let _ = writeln!(s, "R = K[Y^T Y]  t={} n={}", self.t, self.n);
        let _ = writeln!(s, "  dim              {}", self.dim);
        let _ = writeln!(s, "  gorenstein       {}", self.gorenstein_r);
        let _ = writeln!(s, "  canonical module {}", self.canonical_module_r);
        let _ = writeln!(
            s,
            "  a-invariant      {} (YGrading), {} (Rescaled)",
            self.a_invariant_r_y,
            opt(&self.a_invariant_r_rescaled)
        );
        let _ = writeln!(s, "  h-vector         {}", opt_tuple(&self.h_vector_r));
        let _ = writeln!(
            s,
            "  palindrome       {}  unimodal {}",
            opt(&self.palindrome_r),
            opt(&self.unimodal_r)
        );
        let _ = writeln!(s, "cover = K[Y^T Y, maxminors(Y)]  ({})", self.grading);
        let _ = writeln!(s, "  gorenstein       true");
        let _ = writeln!(
            s,
            "  a-invariant      {} (YGrading), {} (Rescaled)",
            self.a_invariant_y,
            opt(&self.a_invariant_rescaled)
        );
        match &self.h_vector {
            Some(h) => {
                let _ = writeln!(s, "  h-vector         {}", tuple(h));
                let _ = writeln!(
                    s,
                    "  palindrome       {}  unimodal {}",
                    opt(&self.palindrome),
                    opt(&self.unimodal)
                );
            }
            None => {
                let _ = writeln!(s, "  h-vector         none (odd t has no semistandard grading)");
            }
        }
        if let Some(gap) = &self.gap {
            let m = self.t / 2;
            let _ = writeln!(s, "  gap h_{m} - h_{}   {}", m + 1, plain(gap));
        }
        if let Some(table) = &self.cover_table_y {
            let _ = writeln!(s, "  H (YGrading)     {:?}", table);
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub m: u32,
    pub t: u32,
    pub n: u32,
    pub dim: u32,
    pub h_vector: Vec<Value>,
    pub gap: Value,
    pub unimodal: bool,
    pub expected_gap: i64,
    pub ok: bool,
    pub oracle: Option<Vec<u64>>,
    pub prime: u64,
    pub seed: u64,
    pub version: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub prime: u64,
    pub seed: u64,
    pub version: String,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut s = String::new();
                for (i, row) in self.rows.iter().enumerate() {
                    let rec = csv_record(row);
                    let mut lines = rec.lines();
                    let header = lines.next().unwrap_or_default();
                    if i == 0 {
                        s.push_str(header);
                        s.push('\n');
                    }
                    for l in lines {
                        s.push_str(l);
                        s.push('\n');
                    }
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                let _ = writeln!(s, "socover {}  prime={} seed={}", self.version, self.prime, self.seed);
                for r in &self.rows {
                    let _ = writeln!(
                        s,
                        "m={} t={} n={} dim={} h={} gap={} unimodal={} {}",
                        r.m,
                        r.t,
                        r.n,
                        r.dim,
                        tuple(&r.h_vector),
                        plain(&r.gap),
                        r.unimodal,
                        if r.ok { "ok" } else { "MISMATCH" }
                    );
                }
                s
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeCheck {
    pub degree: u32,
    pub expected: Value,
    pub oracle: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesCheck {
    pub ring: String,
    pub grading: String,
    /// Where the reference series came from.
    pub reference: String,
    pub series: Option<String>,
    pub degrees: Vec<DegreeCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobianCheck {
    pub generators: String,
    pub jacobian_rank: u64,
    pub krull_dim: u32,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub t: u32,
    pub n: u32,
    pub max_deg: u32,
    pub pass: bool,
    pub first_mismatch: Option<String>,
    pub series: Vec<SeriesCheck>,
    pub jacobian: Vec<JacobianCheck>,
    pub prime: u64,
    pub reference_prime: u64,
    pub seed: u64,
    pub version: String,
}

impl VerifyReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut s = String::from("t,n,check,degree,expected,oracle,ok,prime,seed,version\n");
                for c in &self.series {
                    for d in &c.degrees {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{},{},{},{},{}",
                            self.t, self.n, c.ring, d.degree, plain(&d.expected), d.oracle, d.ok,
                            self.prime, self.seed, self.version
                        );
                    }
                }
                for j in &self.jacobian {
                    let _ = writeln!(
                        s,
                        "{},{},jacobian {},,{},{},{},{},{},{}",
                        self.t, self.n, j.generators, j.krull_dim, j.jacobian_rank, j.ok,
                        self.prime, self.seed, self.version
                    );
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                let _ = writeln!(
                    s,
                    "socover {}  prime={} reference_prime={} seed={}",
                    self.version, self.prime, self.reference_prime, self.seed
                );
                let _ = writeln!(s, "verify t={} n={} max_deg={}", self.t, self.n, self.max_deg);
                for c in &self.series {
                    let _ = writeln!(s, "{} [{}] reference: {}", c.ring, c.grading, c.reference);
                    if let Some(series) = &c.series {
                        let _ = writeln!(s, "  series   {series}");
                    }
                    let exp: Vec<Value> = c.degrees.iter().map(|d| d.expected.clone()).collect();
                    let got: Vec<Value> = c.degrees.iter().map(|d| Value::from(d.oracle)).collect();
                    let _ = writeln!(s, "  expected H = {}", tuple(&exp));
                    let _ = writeln!(s, "  oracle   H = {}", tuple(&got));
                }
                for j in &self.jacobian {
                    let _ = writeln!(
                        s,
                        "jacobian {}: rank {} vs dim {} {}",
                        j.generators,
                        j.jacobian_rank,
                        j.krull_dim,
                        if j.ok { "ok" } else { "MISMATCH" }
                    );
                }
                match &self.first_mismatch {
                    None => {
                        let _ = writeln!(s, "PASS");
                    }
                    Some(m) => {
                        let _ = writeln!(s, "FAIL: {m}");
                    }
                }
                s
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReportOut {
    pub t: u32,
    pub n: u32,
    pub samples: usize,
    pub so_fixed: usize,
    pub reflection_sign: usize,
    pub failures: Vec<String>,
    pub delta_identity: bool,
    pub p_generators_factor: Option<bool>,
    pub pass: bool,
    pub prime: u64,
    pub seed: u64,
    pub version: String,
}

impl InvarianceReportOut {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv_record(self),
            Format::Text => {
                let mut s = String::new();
                let _ = writeln!(s, "socover {}  prime={} seed={}", self.version, self.prime, self.seed);
                let _ = writeln!(s, "invariance t={} n={}", self.t, self.n);
                let _ = writeln!(s, "  SO_t fixes all generators   {}/{}", self.so_fixed, self.samples);
                let _ = writeln!(
                    s,
                    "  reflection negates minors   {}/{}",
                    self.reflection_sign, self.samples
                );
                let _ = writeln!(s, "  det(Y'^T Y') = det(Y')^2    {}", self.delta_identity);
                let _ = writeln!(s, "  p-generators = Delta*minor  {}", opt(&self.p_generators_factor));
                for f in &self.failures {
                    let _ = writeln!(s, "  failure: {f}");
                }
                let _ = writeln!(s, "{}", if self.pass { "PASS" } else { "FAIL" });
                s
            }
        }
    }
}
