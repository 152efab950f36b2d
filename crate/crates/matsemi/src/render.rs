//! Output formats. JSON is canonical; CSV columns are fixed per report type.

use std::fmt::Write;

use matsemi_core::{CheckReport, Elem};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub trait Render: Serialize {
    fn csv(&self) -> String;
    fn text(&self) -> String;
}

pub fn render<T: Render + ?Sized>(r: &T, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("reports serialize") + "\n",
        Format::Csv => r.csv(),
        Format::Text => r.text(),
    }
}

pub fn join(xs: &[Elem]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub const CHECK_CSV_HEADER: &str = "predicate,pass,checked,violations,first_witness";

pub fn check_csv_row(r: &CheckReport) -> String {
    format!(
        "{},{},{},{},{}",
        r.predicate,
        r.pass,
        r.counts.checked,
        r.counts.violations,
        r.first_witness().map(join).unwrap_or_default()
    )
}

pub fn check_text(r: &CheckReport) -> String {
    let mut s = format!(
        "{:<28} {}  {} checked, {} violations",
        r.predicate,
        if r.pass { "PASS" } else { "FAIL" },
        r.counts.checked,
        r.counts.violations
    );
    if let Some(w) = r.first_witness() {
        let _ = write!(s, "  first witness ({})", join(w));
    }
    s
}

/// CSV with the check-report columns, one row per report.
pub fn checks_csv<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> String {
    let mut s = String::from(CHECK_CSV_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&check_csv_row(r));
        s.push('\n');
    }
    s
}

pub fn checks_text<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> String {
    reports.into_iter().map(|r| check_text(r) + "\n").collect()
}

impl Render for CheckReport {
    fn csv(&self) -> String {
        checks_csv([self])
    }

    fn text(&self) -> String {
        checks_text([self])
    }
}

impl Render for Vec<CheckReport> {
    fn csv(&self) -> String {
        checks_csv(self)
    }

    fn text(&self) -> String {
        checks_text(self)
    }
}
