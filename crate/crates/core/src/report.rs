//! Machine-readable result records shared by the CLI and the verification suites.

use serde::{Deserialize, Serialize};

/// The divergence parameter a record was computed at.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameter {
    Alpha(f64),
    Q(f64),
}

/// One computed case. `rel_error = abs_error/(1 + |reference|)` is the quantity
/// compared against `tolerance`; both errors are 0 when there is no reference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub pair: (String, String),
    pub parameter: Option<Parameter>,
    pub method: String,
    pub value: f64,
    pub reference: Option<f64>,
    pub abs_error: f64,
    pub rel_error: f64,
    pub tolerance: f64,
}

impl Record {
    pub fn new(
        pair: (impl Into<String>, impl Into<String>),
        parameter: Option<Parameter>,
        method: impl Into<String>,
        value: f64,
        reference: Option<f64>,
        tolerance: f64,
    ) -> Self {
        let (abs_error, rel_error) = match reference {
            Some(r) => {
                let e = (value - r).abs();
                (e, e / (1.0 + r.abs()))
            }
            None => (0.0, 0.0),
        };
        Self {
            pair: (pair.0.into(), pair.1.into()),
            parameter,
            method: method.into(),
            value,
            reference,
            abs_error,
            rel_error,
            tolerance,
        }
    }

    /// A check whose error is computed by the caller (residuals, violations).
    pub fn check(
        label: impl Into<String>,
        parameter: Option<Parameter>,
        method: impl Into<String>,
        error: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            pair: (label.into(), String::new()),
            parameter,
            method: method.into(),
            value: error,
            reference: None,
            abs_error: error,
            rel_error: error,
            tolerance,
        }
    }

    pub fn passes(&self) -> bool {
        self.rel_error <= self.tolerance
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub max_error: f64,
    pub worst_case: Option<usize>,
    pub failures: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    /// Builds the summary; the worst case is the record with the largest
    /// `rel_error/tolerance` ratio, first index on ties.
    pub fn new(title: impl Into<String>, records: Vec<Record>) -> Self {
        let mut worst: Option<(usize, f64)> = None;
        let mut max_error = 0.0f64;
        let mut failures = 0;
        for (i, r) in records.iter().enumerate() {
            max_error = max_error.max(r.rel_error);
            if !r.passes() {
                failures += 1;
            }
            let ratio = if r.tolerance > 0.0 {
                r.rel_error / r.tolerance
            } else if r.rel_error > 0.0 {
                f64::INFINITY
            } else {
                0.0
            };
            if worst.is_none_or(|(_, w)| ratio > w) {
                worst = Some((i, ratio));
            }
        }
        let summary = Summary {
            cases: records.len(),
            max_error,
            worst_case: worst.map(|(i, _)| i),
            failures,
            pass: failures == 0,
        };
        Self {
            title: title.into(),
            records,
            summary,
        }
    }

    pub fn worst(&self) -> Option<&Record> {
        self.summary.worst_case.map(|i| &self.records[i])
    }

    pub fn merge(title: impl Into<String>, reports: Vec<Report>) -> Self {
        let records = reports.into_iter().flat_map(|r| r.records).collect();
        Self::new(title, records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn summary_tracks_failures() {
        let recs = vec![
            Record::new(
                ("p", "q"),
                Some(Parameter::Alpha(0.0)),
                "both",
                1.0,
                Some(1.0 + 1e-12),
                1e-9,
            ),
            Record::new(
                ("p", "r"),
                Some(Parameter::Q(0.3)),
                "both",
                2.0,
                Some(2.1),
                1e-9,
            ),
            Record::check("residual", None, "ode", 0.0, 0.0),
        ];
        let rep = Report::new("t", recs);
        assert_eq!(rep.summary.failures, 1);
        assert!(!rep.summary.pass);
        assert_eq!(rep.summary.worst_case, Some(1));
        assert!(rep
            .records
            .iter()
            .all(|r| r.abs_error >= 0.0 && r.rel_error >= 0.0));
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop::num::f64::NORMAL | prop::num::f64::ZERO | prop::num::f64::SUBNORMAL
    }

    proptest! {
        #[test]
        fn json_round_trip(
            values in prop::collection::vec((finite(), finite(), any::<bool>(), 0.0f64..1.0), 0..20),
        ) {
            let records = values
                .iter()
                .enumerate()
                .map(|(i, (v, r, alpha, t))| {
                    let param = if *alpha { Parameter::Alpha(*t) } else { Parameter::Q(*t) };
                    Record::new((format!("a{i}"), format!("b{i}")), Some(param), "closed", *v, Some(*r), 1e-8)
                })
                .filter(|r| r.abs_error.is_finite())
                .collect();
            let rep = Report::new("round trip", records);
            let text = serde_json::to_string(&rep).unwrap();
            let back: Report = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, rep);
        }
    }
}
