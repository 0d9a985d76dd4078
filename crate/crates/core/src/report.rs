//! Text, JSON and CSV rendering of analysis results.
//!
//! JSON objects keep a fixed key order and carry scalars as exact strings,
//! so equal inputs give byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;

use crate::engine::{CheckReport, IndexReport, NonstabilityReport, ScanSample, ScanTable};
use crate::scalar::GaussianRational as GR;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    classification: String,
    index_trace: Option<i64>,
    index_winding: Option<i64>,
    quotient_index: Option<usize>,
    pathway_notes: &'a [String],
    defects_in_ideal: bool,
    samples: &'a [ScanSample],
    #[serde(skip_serializing_if = "Option::is_none")]
    r_star: Option<&'a GR>,
}

impl<'a> ReportDoc<'a> {
    fn new(r: &'a IndexReport, samples: &'a [ScanSample]) -> Self {
        ReportDoc {
            classification: r.classification.to_string(),
            index_trace: r.index_trace,
            index_winding: r.index_winding,
            quotient_index: r.quotient_index,
            pathway_notes: &r.pathway_notes,
            defects_in_ideal: r.defects_in_ideal,
            samples,
            r_star: None,
        }
    }
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), T::to_string)
}

fn text_report(r: &IndexReport) -> String {
    let mut out = String::new();
    writeln!(out, "classification: {}", r.classification).unwrap();
    writeln!(out, "index (trace): {}", opt(&r.index_trace)).unwrap();
    writeln!(out, "index (winding): {}", opt(&r.index_winding)).unwrap();
    writeln!(out, "quotient index: {}", opt(&r.quotient_index)).unwrap();
    writeln!(out, "defects in ideal: {}", r.defects_in_ideal).unwrap();
    for n in &r.pathway_notes {
        writeln!(out, "note: {n}").unwrap();
    }
    out
}

pub fn emit_report(r: &IndexReport, format: Format) -> String {
    match format {
        Format::Text => text_report(r),
        Format::Json => json(&ReportDoc::new(r, &[])),
        Format::Csv => format!(
            "classification,index_trace,index_winding,quotient_index,defects_in_ideal\n{},{},{},{},{}\n",
            r.classification,
            r.index_trace.map_or(String::new(), |v| v.to_string()),
            r.index_winding.map_or(String::new(), |v| v.to_string()),
            r.quotient_index.map_or(String::new(), |v| v.to_string()),
            r.defects_in_ideal
        ),
    }
}

fn samples_csv(samples: &[ScanSample]) -> String {
    let mut out = String::from("lambda,classification,index\n");
    for s in samples {
        writeln!(out, "{},{},{}", s.lambda, s.classification, s.index.map_or(String::new(), |v| v.to_string()))
            .unwrap();
    }
    out
}

/// A scan table together with the report of the unshifted operator.
pub fn emit_scan(r: &IndexReport, table: &ScanTable, format: Format) -> String {
    match format {
        Format::Csv => samples_csv(&table.samples),
        Format::Json => {
            let mut doc = ReportDoc::new(r, &table.samples);
            doc.r_star = table.r_star.as_ref();
            json(&doc)
        }
        Format::Text => {
            let mut out = text_report(r);
            writeln!(out, "r*: {}", opt(&table.r_star)).unwrap();
            for s in &table.samples {
                writeln!(
                    out,
                    "lambda {:<14} {:<14} index {}",
                    s.lambda.to_string(),
                    s.classification.to_string(),
                    opt(&s.index)
                )
                .unwrap();
            }
            out
        }
    }
}

/// Exact matrix window, one row per line.
pub fn emit_window(rows: &[Vec<GR>], format: Format) -> String {
    match format {
        Format::Json => json(&rows),
        Format::Csv | Format::Text => {
            let mut out = String::new();
            for row in rows {
                let cells: Vec<String> = row.iter().map(GR::to_string).collect();
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
            out
        }
    }
}

#[derive(Serialize)]
struct SuiteDoc<'a> {
    suite: &'a str,
    seed: u64,
    passed: bool,
    cases: &'a [CheckReport],
}

pub fn emit_checks(suite: &str, seed: u64, cases: &[CheckReport], format: Format) -> String {
    let passed = cases.iter().all(|c| c.passed);
    match format {
        Format::Json => json(&SuiteDoc { suite, seed, passed, cases }),
        Format::Csv => {
            let mut out = String::from("case,passed\n");
            for c in cases {
                writeln!(out, "\"{}\",{}", c.name.replace('"', "\"\""), c.passed).unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in cases {
                writeln!(out, "[{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name).unwrap();
                for d in c.details.iter().filter(|d| d.starts_with("FAILED")) {
                    writeln!(out, "    {d}").unwrap();
                }
            }
            let failed = cases.iter().filter(|c| !c.passed).count();
            writeln!(out, "suite {suite} (seed {seed}): {} cases, {failed} failed", cases.len()).unwrap();
            out
        }
    }
}

pub fn emit_nonstability(r: &NonstabilityReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => samples_csv(&r.samples),
        Format::Text => {
            let mut out = format!("operator: {}\n", r.operator);
            for s in &r.samples {
                writeln!(out, "lambda {:<14} {:<14} index {}", s.lambda.to_string(), s.classification.to_string(), opt(&s.index))
                    .unwrap();
            }
            for line in &r.summary {
                writeln!(out, "{line}").unwrap();
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{eval, parse};
    use crate::engine::{analyze, punctured_scan};

    fn report(s: &str) -> IndexReport {
        analyze(&eval(&parse(s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn json_keys_in_order() {
        let out = emit_report(&report("T(z)"), Format::Json);
        let compact: String = out.split_whitespace().collect();
        assert!(compact.starts_with(r#"{"classification":"Fredholm","index_trace":-1,"index_winding":-1,"#), "{out}");
        assert!(compact.contains(r#""samples":[]"#));
    }

    #[test]
    fn scan_csv_header_and_empty_radii() {
        let a = eval(&parse("T(z)").unwrap()).unwrap();
        let r = analyze(&a).unwrap();
        let table = punctured_scan(&a, &[crate::scalar::rat(1, 8)], 4).unwrap();
        let csv = emit_scan(&r, &table, Format::Csv);
        assert!(csv.starts_with("lambda,classification,index\n1/8,Fredholm,-1\n"), "{csv}");
        let empty = punctured_scan(&a, &[], 4).unwrap();
        let out = emit_scan(&r, &empty, Format::Json);
        assert!(out.contains("\"samples\": []"), "{out}");
    }

    #[test]
    fn no_floats_in_json() {
        let a = eval(&parse("T((z-1/2)^2/(z-3))").unwrap()).unwrap();
        let table = punctured_scan(&a, &[crate::scalar::rat(1, 16)], 8).unwrap();
        let out = emit_scan(&analyze(&a).unwrap(), &table, Format::Json);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        fn walk(v: &serde_json::Value) {
            match v {
                serde_json::Value::Number(n) => assert!(n.is_i64() || n.is_u64()),
                serde_json::Value::Array(a) => a.iter().for_each(walk),
                serde_json::Value::Object(o) => o.values().for_each(walk),
                _ => {}
            }
        }
        walk(&v);
    }
}
