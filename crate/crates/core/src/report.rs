//! Report schema shared by the command-line tool and the simulators.

use serde::{Deserialize, Serialize};

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, render_decimal, to_f64, Rational};
use crate::simulate::{Estimate, EstimateReport};

/// Places used for every decimal rendering.
pub const DECIMAL_PLACES: u32 = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportValue {
    pub measure: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub player: Option<usize>,
    /// Exact value as `p/q`; absent for estimates with no exact form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    /// Non-numeric results such as outcomes or counterexamples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl ReportValue {
    pub fn exact(measure: impl Into<String>, player: Option<usize>, value: &Rational) -> Self {
        ReportValue {
            measure: measure.into(),
            player,
            exact: Some(format_rational(value)),
            decimal: Some(render_decimal(value, DECIMAL_PLACES)),
            std_error: None,
            text: None,
        }
    }

    /// A Monte Carlo estimate; the exact field holds the sample mean.
    pub fn estimate(measure: impl Into<String>, player: Option<usize>, e: &Estimate) -> Self {
        ReportValue {
            std_error: Some(e.std_error),
            ..Self::exact(measure, player, &e.mean)
        }
    }

    pub fn text(
        measure: impl Into<String>,
        player: Option<usize>,
        text: impl Into<String>,
    ) -> Self {
        ReportValue {
            measure: measure.into(),
            player,
            exact: None,
            decimal: None,
            std_error: None,
            text: Some(text.into()),
        }
    }

    pub fn exact_value(&self) -> Result<Option<Rational>> {
        self.exact.as_deref().map(parse_rational).transpose()
    }

    pub fn value_f64(&self) -> Option<f64> {
        self.exact_value().ok().flatten().map(|v| to_f64(&v))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 of each input file, in argument order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub input_digests: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    pub values: Vec<ReportValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            tool: "qpower".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input_digests: Vec::new(),
            seed: None,
            trials: None,
            values: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, value: ReportValue) {
        self.values.push(value);
    }

    pub fn push_exact(&mut self, measure: &str, value: &Rational) {
        self.push(ReportValue::exact(measure, None, value));
    }

    pub fn push_allocation(&mut self, measure: &str, values: &Allocation) {
        for (i, v) in values.iter() {
            self.push(ReportValue::exact(measure, Some(i), v));
        }
    }

    /// Scalar reports carry no player; per-player reports one row each.
    pub fn push_estimates(&mut self, measure: &str, est: &EstimateReport) {
        let per_player = est.estimates.len() > 1 || measure != "qbar";
        for (i, e) in est.estimates.iter().enumerate() {
            self.push(ReportValue::estimate(measure, per_player.then_some(i), e));
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// First value with the given measure name and player.
    pub fn find(&self, measure: &str, player: Option<usize>) -> Option<&ReportValue> {
        self.values
            .iter()
            .find(|v| v.measure == measure && v.player == player)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One CSV record per value, in [`CSV_HEADER`] order.
    pub fn csv_records(&self) -> Vec<[String; 6]> {
        self.values
            .iter()
            .map(|v| {
                [
                    v.measure.clone(),
                    v.player.map(|p| p.to_string()).unwrap_or_default(),
                    v.exact.clone().unwrap_or_default(),
                    v.decimal.clone().unwrap_or_default(),
                    v.std_error.map(|s| s.to_string()).unwrap_or_default(),
                    v.text.clone().unwrap_or_default(),
                ]
            })
            .collect()
    }
}

pub const CSV_HEADER: [&str; 6] = ["measure", "player", "exact", "decimal", "std_error", "text"];
