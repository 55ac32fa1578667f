//! Census ingestion and batch positivity classification.
//!
//! Records are JSON lines `{"name", "pd", "fibered", "expected_mirror_jones"}`.
//! The bundled PD codes come from public knot tables and are inputs, not
//! ground truth: the pipeline recomputes each Jones polynomial and checks it
//! against the expected (printed) polynomial.  Table chirality conventions
//! vary, so the expected polynomial is compared against both the computed V
//! and its mirror, and the matching form is recorded; a record matching
//! neither is a mismatch and fails the run.

use std::collections::BTreeSet;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::diagram::{orient_and_sign, parse_pd};
use crate::error::{Error, Result};
use crate::jones::{jones_polynomial_capped, DEFAULT_CAP};
use crate::laurent::{lp_degrees, lp_invert_var, parse_jones, quarter_to_string};
use crate::obstructions::{classify_positivity, PositivityVerdict, Verdict};

/// One census entry as stored on disk.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    /// PD text of the tabulated diagram.
    pub pd: String,
    pub fibered: bool,
    /// Paper-printed polynomial of the knot's mirror, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_mirror_jones: Option<String>,
}

/// Loads and validates census records from a JSONL file.
pub fn load_census(path: &Path) -> Result<Vec<KnotRecord>> {
    let file = std::fs::File::open(path)?;
    load_census_reader(std::io::BufReader::new(file))
}

/// Loads records from any reader; blank lines are skipped but still count
/// toward the reported line numbers.
pub fn load_census_reader<R: BufRead>(reader: R) -> Result<Vec<KnotRecord>> {
    let mut records = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let record: KnotRecord = serde_json::from_str(line).map_err(|e| Error::CensusLoad {
            line: lineno,
            msg: format!("malformed record: {e}"),
        })?;
        let with_name = |e: Error| Error::CensusLoad {
            line: lineno,
            msg: format!("record {:?}: {e}", record.name),
        };
        if !seen.insert(record.name.clone()) {
            return Err(Error::CensusLoad {
                line: lineno,
                msg: format!("duplicate name {:?}", record.name),
            });
        }
        let pd = parse_pd(&record.pd).map_err(with_name)?;
        orient_and_sign(&pd).map_err(with_name)?;
        if let Some(expected) = &record.expected_mirror_jones {
            parse_jones(expected).map_err(with_name)?;
        }
        records.push(record);
    }
    Ok(records)
}

/// Which form of the computed polynomial matched the expected one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchKind {
    AsGiven,
    Mirrored,
    Mismatch,
}

impl std::fmt::Display for MatchKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatchKind::AsGiven => "as-given",
            MatchKind::Mirrored => "mirrored",
            MatchKind::Mismatch => "mismatch",
        })
    }
}

/// Census result for one record.  Degrees are quarter-exponents of the
/// matched form (the as-given polynomial when nothing was expected or the
/// expectation failed).
#[derive(Clone, Debug)]
pub struct ReportRecord {
    pub name: String,
    pub matched_form: Option<MatchKind>,
    pub min_q: i64,
    pub max_q: i64,
    pub verdict: PositivityVerdict,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportSummary {
    pub total: usize,
    pub not_positive: usize,
    pub inconclusive: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub records: Vec<ReportRecord>,
    pub summary: ReportSummary,
}

impl Report {
    /// True when some expected polynomial was reproduced by neither form;
    /// the CLI exits nonzero in that case.
    pub fn has_mismatches(&self) -> bool {
        self.summary.mismatches > 0
    }
}

/// Runs the pipeline over the records with the default state-sum cap.
pub fn run_census(records: &[KnotRecord]) -> Result<Report> {
    run_census_capped(records, DEFAULT_CAP)
}

/// Computes V per record, matches it (or its mirror) against the expected
/// polynomial, classifies positivity, and aggregates in name order.
pub fn run_census_capped(records: &[KnotRecord], cap: usize) -> Result<Report> {
    let mut sorted: Vec<&KnotRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    let mut out = Vec::with_capacity(sorted.len());
    let mut summary = ReportSummary {
        total: sorted.len(),
        ..Default::default()
    };
    for record in sorted {
        let d = orient_and_sign(&parse_pd(&record.pd)?)?;
        let result = jones_polynomial_capped(&d, cap)?;
        let v = &result.jones;
        let inverted = lp_invert_var(v);
        let matched_form = match &record.expected_mirror_jones {
            None => None,
            Some(expected) => {
                let expected = parse_jones(expected)?;
                Some(if *v == expected {
                    MatchKind::AsGiven
                } else if inverted == expected {
                    MatchKind::Mirrored
                } else {
                    MatchKind::Mismatch
                })
            }
        };
        let reported = match matched_form {
            Some(MatchKind::Mirrored) => &inverted,
            _ => v,
        };
        let (min_q, max_q) = lp_degrees(reported)?;
        let verdict = classify_positivity(&record.name, v, record.fibered)?;
        match verdict.verdict {
            Verdict::NotPositive => summary.not_positive += 1,
            Verdict::Inconclusive => summary.inconclusive += 1,
        }
        if matched_form == Some(MatchKind::Mismatch) {
            summary.mismatches += 1;
        }
        out.push(ReportRecord {
            name: record.name.clone(),
            matched_form,
            min_q,
            max_q,
            verdict,
        });
    }
    Ok(Report {
        records: out,
        summary,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

/// Quarter-exponent rendered as a JSON number: integer degrees stay
/// integers, half/quarter degrees become exact binary fractions.
pub fn degree_json(q: i64) -> serde_json::Value {
    if q % 4 == 0 {
        json!(q / 4)
    } else {
        json!(q as f64 / 4.0)
    }
}

/// Serializes a report deterministically.  Text mode mirrors the paper's
/// presentation: name, min deg, max deg, 4·min deg, verdict.
pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => {
            let mut out = String::new();
            for r in &report.records {
                let mut line = format!(
                    "{}: min deg {}, max deg {}, 4*min deg {} -> {}",
                    r.name,
                    quarter_to_string(r.min_q),
                    quarter_to_string(r.max_q),
                    r.min_q,
                    r.verdict.verdict
                );
                if r.verdict.verdict == Verdict::NotPositive && r.max_q > 4 * r.min_q {
                    // 4·min deg in t-units equals the quarter-exponent itself.
                    line.push_str(&format!(" ({} > {})", quarter_to_string(r.max_q), r.min_q));
                }
                if r.matched_form == Some(MatchKind::Mismatch) {
                    line.push_str(" [EXPECTED POLYNOMIAL MISMATCH]");
                }
                out.push_str(&line);
                out.push('\n');
            }
            out.push_str(&format!(
                "summary: {} records, {} not positive, {} inconclusive, {} mismatches\n",
                report.summary.total,
                report.summary.not_positive,
                report.summary.inconclusive,
                report.summary.mismatches
            ));
            out
        }
        ReportFormat::Json => {
            let records: Vec<serde_json::Value> = report
                .records
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "matched_form": r.matched_form.map(|m| m.to_string()),
                        "min_deg": degree_json(r.min_q),
                        "max_deg": degree_json(r.max_q),
                        "verdict": r.verdict.verdict,
                        "obstructions": r.verdict.forms,
                    })
                })
                .collect();
            let doc = json!({
                "records": records,
                "summary": {
                    "total": report.summary.total,
                    "not_positive": report.summary.not_positive,
                    "inconclusive": report.summary.inconclusive,
                    "mismatches": report.summary.mismatches,
                },
            });
            let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
            out.push('\n');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn record(name: &str, pd: &str, expected: Option<&str>) -> String {
        let mut v = json!({"name": name, "pd": pd, "fibered": true});
        if let Some(e) = expected {
            v["expected_mirror_jones"] = json!(e);
        }
        serde_json::to_string(&v).unwrap()
    }

    #[test]
    fn load_empty_and_blank() {
        assert!(load_census_reader(Cursor::new("")).unwrap().is_empty());
        let recs = load_census_reader(Cursor::new(format!(
            "\n{}\n\n",
            record("trefoil", "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]", None)
        )))
        .unwrap();
        assert_eq!(recs.len(), 1);
        assert!(recs[0].fibered);
    }

    #[test]
    fn load_errors_carry_line_numbers() {
        let good = record("a", "X[1,1,2,2]", None);
        let bad_json = "{not json";
        let input = format!("{good}\n{bad_json}\n");
        match load_census_reader(Cursor::new(input)).unwrap_err() {
            Error::CensusLoad { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let bad_pd = record("b", "X[1,2,3]", None);
        let input = format!("\n{good}\n{bad_pd}\n");
        match load_census_reader(Cursor::new(input)).unwrap_err() {
            Error::CensusLoad { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("\"b\""), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let dup = format!("{good}\n{good}\n");
        assert!(matches!(
            load_census_reader(Cursor::new(dup)),
            Err(Error::CensusLoad { line: 2, .. })
        ));
        let bad_poly = record("c", "X[1,1,2,2]", Some("t^^3"));
        assert!(load_census_reader(Cursor::new(bad_poly)).is_err());
    }

    #[test]
    fn census_controls() {
        let input = format!(
            "{}\n{}\n",
            record("right-trefoil", "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]", None),
            record("left-trefoil", "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]", None),
        );
        let records = load_census_reader(Cursor::new(input)).unwrap();
        let report = run_census(&records).unwrap();
        assert_eq!(report.summary.total, 2);
        assert_eq!(report.summary.inconclusive, 2);
        assert!(!report.has_mismatches());
        // Sorted by name: left before right.
        assert_eq!(report.records[0].name, "left-trefoil");
        assert_eq!(report.records[0].matched_form, None);
        assert_eq!(
            (report.records[0].min_q, report.records[0].max_q),
            (-16, -4)
        );
    }

    #[test]
    fn matching_and_mismatch() {
        let records = load_census_reader(Cursor::new(format!(
            "{}\n{}\n{}\n",
            // Left trefoil's mirror polynomial is the right trefoil's.
            record(
                "m",
                "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]",
                Some("t + t^3 - t^4")
            ),
            record(
                "g",
                "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]",
                Some("t + t^3 - t^4")
            ),
            record("x", "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]", Some("t - t^4")),
        )))
        .unwrap();
        let report = run_census(&records).unwrap();
        let by_name = |n: &str| report.records.iter().find(|r| r.name == n).unwrap();
        assert_eq!(by_name("m").matched_form, Some(MatchKind::Mirrored));
        assert_eq!((by_name("m").min_q, by_name("m").max_q), (4, 16));
        assert_eq!(by_name("g").matched_form, Some(MatchKind::AsGiven));
        assert_eq!(by_name("x").matched_form, Some(MatchKind::Mismatch));
        assert!(report.has_mismatches());
        assert_eq!(report.summary.mismatches, 1);
        let text = emit_report(&report, ReportFormat::Text);
        assert!(text.contains("x: min deg 1, max deg 4, 4*min deg 4 -> INCONCLUSIVE [EXPECTED POLYNOMIAL MISMATCH]"), "{text}");
    }

    #[test]
    fn text_report_shape() {
        // Left trefoil: the mirror is positive, so the verdict stays open.
        let records = load_census_reader(Cursor::new(record(
            "k",
            "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]",
            None,
        )))
        .unwrap();
        let report = run_census(&records).unwrap();
        let text = emit_report(&report, ReportFormat::Text);
        assert_eq!(
            text,
            "k: min deg -4, max deg -1, 4*min deg -16 -> INCONCLUSIVE\n\
             summary: 1 records, 0 not positive, 1 inconclusive, 0 mismatches\n"
        );
        // A fibered link ruled out in both forms prints the degree excess.
        let records = load_census_reader(Cursor::new(record(
            "cyclic",
            crate::generators::CYCLIC_FIXTURE_PD,
            None,
        )))
        .unwrap();
        let report = run_census(&records).unwrap();
        let text = emit_report(&report, ReportFormat::Text);
        assert_eq!(
            text,
            "cyclic: min deg 1/2, max deg 9/2, 4*min deg 2 -> NOT POSITIVE (9/2 > 2)\n\
             summary: 1 records, 1 not positive, 0 inconclusive, 0 mismatches\n"
        );
    }

    #[test]
    fn json_report_shape_and_determinism() {
        let records = load_census_reader(Cursor::new(format!(
            "{}\n",
            record("hopf", "X[1,3,2,4];X[3,1,4,2]", Some("-t^(1/2) - t^(5/2)"))
        )))
        .unwrap();
        let report = run_census(&records).unwrap();
        let a = emit_report(&report, ReportFormat::Json);
        let b = emit_report(&run_census(&records).unwrap(), ReportFormat::Json);
        assert_eq!(a, b, "report generation must be byte-deterministic");
        let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
        let rec = &doc["records"][0];
        assert_eq!(rec["name"], "hopf");
        assert_eq!(rec["matched_form"], "as-given");
        assert_eq!(rec["min_deg"], json!(0.5));
        assert_eq!(rec["max_deg"], json!(2.5));
        assert_eq!(rec["verdict"], "Inconclusive");
        assert_eq!(rec["obstructions"][0]["form"], "as-given");
        assert_eq!(doc["summary"]["total"], 1);
    }

    #[test]
    fn bundled_census_loads_and_matches() {
        let path =
            std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/census12.jsonl");
        let records = load_census(&path).unwrap();
        assert_eq!(records.len(), 7);
        assert!(records.iter().all(|r| r.fibered));
        assert!(records.iter().all(|r| r.expected_mirror_jones.is_some()));
        let report = run_census(&records).unwrap();
        assert!(!report.has_mismatches());
        for r in &report.records {
            assert_eq!(r.matched_form, Some(MatchKind::Mirrored), "{}", r.name);
            assert_eq!((r.min_q, r.max_q), (12, 52), "{}", r.name);
            assert_eq!(r.verdict.verdict, Verdict::NotPositive, "{}", r.name);
        }
        let text = emit_report(&report, ReportFormat::Text);
        for line in text.lines().take(7) {
            assert!(line.ends_with("NOT POSITIVE (13 > 12)"), "{line}");
        }
        assert!(
            text.ends_with("summary: 7 records, 7 not positive, 0 inconclusive, 0 mismatches\n")
        );
    }

    #[test]
    fn empty_report() {
        let report = run_census(&[]).unwrap();
        assert_eq!(
            emit_report(&report, ReportFormat::Text),
            "summary: 0 records, 0 not positive, 0 inconclusive, 0 mismatches\n"
        );
        let doc: serde_json::Value =
            serde_json::from_str(&emit_report(&report, ReportFormat::Json)).unwrap();
        assert_eq!(doc["records"].as_array().unwrap().len(), 0);
    }
}
