//! Report rows, verdicts and the on-disk layout of a run.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Suite;

/// CSV header shared by every suite table.
pub const CSV_COLUMNS: [&str; 7] = [
    "suite",
    "assertion",
    "symbol",
    "truncation",
    "value",
    "threshold",
    "verdict",
];

/// `Info` marks a measurement that carries no assertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    Info,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Info => "info",
        }
    }

    /// `value ≤ threshold`, failing on NaN.
    pub fn at_most(value: f64, threshold: f64) -> Self {
        if value <= threshold {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn equal(value: i64, expected: i64, conclusive: bool) -> Self {
        if !conclusive {
            Verdict::Inconclusive
        } else if value == expected {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Truncation parameters that produced a row. `n` orders rows; `label`
/// is what the table shows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Truncation {
    pub n: usize,
    pub label: String,
}

impl Truncation {
    pub fn circle(n: usize) -> Self {
        Self {
            n,
            label: format!("N={n}"),
        }
    }

    pub fn cone(geo: &conelab_cone::ConeGeometry) -> Self {
        Self {
            n: geo.n(),
            label: format!(
                "N={} h={:.6} T-={} T+={} t_cut={}",
                geo.n(),
                geo.h(),
                geo.t_minus(),
                geo.t_plus(),
                geo.t_cut()
            ),
        }
    }

    /// A comparison between a geometry and its refinement.
    pub fn doubling(
        coarse: &conelab_cone::ConeGeometry,
        fine: &conelab_cone::ConeGeometry,
    ) -> Self {
        Self {
            n: fine.n(),
            label: format!(
                "N={}->{} h={:.6}->{:.6} T-={} T+={} t_cut={}",
                coarse.n(),
                fine.n(),
                coarse.h(),
                fine.h(),
                coarse.t_minus(),
                coarse.t_plus(),
                coarse.t_cut()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub suite: Suite,
    pub assertion: String,
    pub symbol: String,
    pub truncation: Truncation,
    pub value: f64,
    pub threshold: Option<f64>,
    pub verdict: Verdict,
}

impl Row {
    pub fn new(
        suite: Suite,
        assertion: impl Into<String>,
        symbol: impl Into<String>,
        truncation: Truncation,
        value: f64,
        threshold: Option<f64>,
        verdict: Verdict,
    ) -> Self {
        Self {
            suite,
            assertion: assertion.into(),
            symbol: symbol.into(),
            truncation,
            value,
            threshold,
            verdict,
        }
    }

    pub fn info(
        suite: Suite,
        assertion: impl Into<String>,
        symbol: impl Into<String>,
        truncation: Truncation,
        value: f64,
    ) -> Self {
        Self::new(
            suite,
            assertion,
            symbol,
            truncation,
            value,
            None,
            Verdict::Info,
        )
    }

    /// Passes when `value ≤ threshold`.
    pub fn bound(
        suite: Suite,
        assertion: impl Into<String>,
        symbol: impl Into<String>,
        truncation: Truncation,
        value: f64,
        threshold: f64,
    ) -> Self {
        let verdict = Verdict::at_most(value, threshold);
        Self::new(
            suite,
            assertion,
            symbol,
            truncation,
            value,
            Some(threshold),
            verdict,
        )
    }

    fn csv_record(&self) -> [String; 7] {
        [
            self.suite.name().to_string(),
            self.assertion.clone(),
            self.symbol.clone(),
            self.truncation.label.clone(),
            format!("{:e}", self.value),
            self.threshold.map(|t| format!("{t:e}")).unwrap_or_default(),
            self.verdict.name().to_string(),
        ]
    }
}

/// Orders rows by suite, then symbol, then truncation. The sort is stable,
/// so rows with equal keys keep the order of the cells that produced them.
pub fn sort_rows(rows: &mut [Row]) {
    rows.sort_by(|a, b| {
        (a.suite, &a.symbol, &a.truncation).cmp(&(b.suite, &b.symbol, &b.truncation))
    });
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub info: usize,
}

impl Counts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
            Verdict::Info => self.info += 1,
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.fail > 0 {
            Verdict::Fail
        } else if self.inconclusive > 0 {
            Verdict::Inconclusive
        } else if self.pass > 0 {
            Verdict::Pass
        } else {
            Verdict::Info
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssertionSummary {
    pub suite: Suite,
    pub assertion: String,
    pub verdict: Verdict,
    pub counts: Counts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub table: String,
    pub rows: usize,
    pub verdict: Verdict,
    pub counts: Counts,
}

/// The verdict summary written next to the tables.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub run_id: String,
    pub version: String,
    pub status: Verdict,
    pub exit_code: i32,
    pub csv_columns: [&'static str; 7],
    pub suites: Vec<SuiteSummary>,
    pub assertions: Vec<AssertionSummary>,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub run_id: String,
    pub suites: Vec<Suite>,
    pub rows: Vec<Row>,
    /// Wall-clock seconds per suite, kept apart from the report body.
    pub timing: Vec<(Suite, f64)>,
}

/// Status codes of `conelab run`.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_CONFIG: i32 = 64;

impl ExperimentReport {
    pub fn rows_of(&self, suite: Suite) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(move |r| r.suite == suite)
    }

    pub fn status(&self) -> Verdict {
        let mut c = Counts::default();
        for r in &self.rows {
            c.add(r.verdict);
        }
        match c.verdict() {
            Verdict::Info => Verdict::Pass,
            v => v,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Verdict::Fail => EXIT_FAIL,
            Verdict::Inconclusive => EXIT_INCONCLUSIVE,
            _ => EXIT_PASS,
        }
    }

    pub fn summary(&self) -> Summary {
        let mut suites = Vec::new();
        for &s in &self.suites {
            let mut counts = Counts::default();
            let mut rows = 0;
            for r in self.rows_of(s) {
                counts.add(r.verdict);
                rows += 1;
            }
            suites.push(SuiteSummary {
                suite: s,
                table: format!("{s}.csv"),
                rows,
                verdict: counts.verdict(),
                counts,
            });
        }
        let mut by_assertion: BTreeMap<(Suite, String), Counts> = BTreeMap::new();
        for r in &self.rows {
            by_assertion
                .entry((r.suite, assertion_family(&r.assertion).to_string()))
                .or_default()
                .add(r.verdict);
        }
        let assertions = by_assertion
            .into_iter()
            .filter(|(_, c)| c.verdict() != Verdict::Info)
            .map(|((suite, assertion), counts)| AssertionSummary {
                suite,
                assertion,
                verdict: counts.verdict(),
                counts,
            })
            .collect();
        Summary {
            run_id: self.run_id.clone(),
            version: crate::BUILD_VERSION.to_string(),
            status: self.status(),
            exit_code: self.exit_code(),
            csv_columns: CSV_COLUMNS,
            suites,
            assertions,
        }
    }

    /// CSV body of one suite table.
    pub fn csv(&self, suite: Suite) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS)?;
        for r in self.rows_of(suite) {
            w.write_record(r.csv_record())?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    /// Writes `<suite>.csv`, `summary.json` and `timing.json` under
    /// `output_dir/run_id/` and returns that directory.
    pub fn write(&self, output_dir: &Path) -> std::io::Result<PathBuf> {
        let dir = output_dir.join(&self.run_id);
        std::fs::create_dir_all(&dir)?;
        for &s in &self.suites {
            let body = self.csv(s).map_err(std::io::Error::other)?;
            std::fs::write(dir.join(format!("{s}.csv")), body)?;
        }
        let summary =
            serde_json::to_string_pretty(&self.summary()).map_err(std::io::Error::other)?;
        std::fs::write(dir.join("summary.json"), summary + "\n")?;
        let timing: BTreeMap<String, f64> = self
            .timing
            .iter()
            .map(|(s, t)| (s.name().to_string(), *t))
            .collect();
        let timing = serde_json::to_string_pretty(&timing).map_err(std::io::Error::other)?;
        std::fs::write(dir.join("timing.json"), timing + "\n")?;
        Ok(dir)
    }
}

/// Assertion name without its `@instance` or `[step]` qualifier.
pub fn assertion_family(a: &str) -> &str {
    let end = a.find(['@', '[']).unwrap_or(a.len());
    &a[..end]
}
