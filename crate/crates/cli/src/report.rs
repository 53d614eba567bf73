//! Benchmark reports: one record per (dataset, method), rendered as a human
//! table, a Markdown comparison table, or JSON lines.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::Method;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub dataset: String,
    pub n: u64,
    pub d: u64,
    pub sigma: u64,
    pub method: Method,
    pub width_bytes: u8,
    /// Median over `reps` runs of the compute phase only.
    pub seconds: f64,
    pub reps: usize,
    /// Peak bytes charged by the method, excluding text, suffix array and
    /// document array.
    pub peak_workspace_bytes: u64,
    pub verified: bool,
    /// For `inplace`: whether the suffix array came back byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sa_restored: Option<bool>,
    /// Buffers deliberately left out of the workspace figure.
    pub excluded: Vec<(String, u64)>,
}

impl BenchReport {
    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn format_bytes(bytes: u64) -> String {
    const UNITS: [&str; 4] = ["B", "KB", "MB", "GB"];
    let mut v = bytes as f64;
    let mut u = 0;
    while v >= 1024.0 && u + 1 < UNITS.len() {
        v /= 1024.0;
        u += 1;
    }
    if u == 0 {
        format!("{bytes} B")
    } else {
        format!("{v:.2} {}", UNITS[u])
    }
}

pub fn human_table(reports: &[BenchReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:>12} {:>8} {:>6} {:<12} {:>10} {:>12} {:>9}",
        "dataset", "N", "d", "sigma", "method", "time (s)", "workspace", "verified"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<20} {:>12} {:>8} {:>6} {:<12} {:>10.4} {:>12} {:>9}",
            r.dataset,
            r.n,
            r.d,
            r.sigma,
            r.method.name(),
            r.seconds,
            format_bytes(r.peak_workspace_bytes),
            if r.verified { "yes" } else { "NO" }
        );
    }
    out
}

/// One row per dataset, a Time and a Workspace column per method.
pub fn markdown_table(reports: &[BenchReport]) -> String {
    let mut methods: Vec<Method> = Vec::new();
    let mut rows: BTreeMap<(String, u64), BTreeMap<Method, &BenchReport>> = BTreeMap::new();
    let mut order: Vec<(String, u64)> = Vec::new();
    for r in reports {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
        let key = (r.dataset.clone(), r.n);
        if !rows.contains_key(&key) {
            order.push(key.clone());
        }
        rows.entry(key).or_default().insert(r.method, r);
    }

    let mut out = String::from("| Dataset | N | d | σ |");
    for m in &methods {
        let _ = write!(out, " {m} Time (s) | {m} Workspace |");
    }
    out.push_str("\n|---|---:|---:|---:|");
    for _ in &methods {
        out.push_str("---:|---:|");
    }
    out.push('\n');
    for key in order {
        let row = &rows[&key];
        let any = row.values().next().expect("row has a report");
        let _ = write!(out, "| {} | {} | {} | {} |", any.dataset, any.n, any.d, any.sigma);
        for m in &methods {
            match row.get(m) {
                Some(r) => {
                    let _ = write!(out, " {:.4} | {} |", r.seconds, format_bytes(r.peak_workspace_bytes));
                }
                None => out.push_str(" – | – |"),
            }
        }
        out.push('\n');
    }
    out
}

pub fn median(samples: &mut [f64]) -> f64 {
    assert!(!samples.is_empty(), "median of no samples");
    samples.sort_by(|a, b| a.total_cmp(b));
    let k = samples.len();
    if k % 2 == 1 {
        samples[k / 2]
    } else {
        (samples[k / 2 - 1] + samples[k / 2]) / 2.0
    }
}
