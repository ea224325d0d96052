//! Report types and their JSON/CSV renderings.
//!
//! Floats are written with 17 significant digits so identical runs give
//! byte-identical output; exact values are `"p/q"` strings.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use vbslab::density_oracle::EntropyReport;
use vbslab::exact_algebra::rational_string;

use crate::config::Format;
use crate::CliError;

/// Float rendered in scientific notation with 17 significant digits;
/// non-finite values become `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F17(pub f64);

impl F17 {
    pub fn text(self) -> String {
        if self.0.is_finite() {
            format!("{:.16e}", self.0)
        } else {
            String::new()
        }
    }
}

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(self.text()).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn exact_text(r: &BigRational) -> String {
    rational_string(r)
}

pub fn exact_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, Serialize)]
pub struct Level {
    /// `J` for SU(2) spectra, `(l,m)` class for SU(n); absent for oracle levels.
    #[serde(rename = "J")]
    pub label: Option<String>,
    #[serde(rename = "twice_J")]
    pub twice_j: Option<i64>,
    pub lambda_exact: Option<String>,
    pub lambda_float: F17,
    pub degeneracy: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Renyi {
    pub alpha: F17,
    pub entropy: F17,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entropies {
    pub von_neumann: F17,
    pub renyi: Vec<Renyi>,
}

impl From<&EntropyReport> for Entropies {
    fn from(r: &EntropyReport) -> Self {
        Entropies {
            von_neumann: F17(r.von_neumann),
            renyi: r
                .renyi
                .iter()
                .map(|&(a, s)| Renyi {
                    alpha: F17(a),
                    entropy: F17(s),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Route {
    pub method: String,
    pub exact: bool,
    pub levels: Vec<Level>,
    /// `Σ degeneracy·λ` as an exact rational, for exact routes.
    pub trace_exact: Option<String>,
    pub trace_float: F17,
    /// Nonzero eigenvalues counted with multiplicity.
    pub support_dim: usize,
    pub entropies: Entropies,
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub method: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub reference: String,
    pub method: String,
    /// Present when both routes are exact.
    pub exact_equal: Option<bool>,
    /// Largest gap between the sorted nonzero spectra; `null` when their
    /// support dimensions differ.
    pub max_deviation: F17,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub comparisons: Vec<Comparison>,
    pub max_deviation: F17,
}

#[derive(Clone, Debug, Serialize)]
pub struct Limit {
    pub support_dim: usize,
    pub lambda_exact: String,
    /// `ln D`, the value of every entropy in the limit.
    pub entropy: F17,
    /// `ln D - S_vN` for each route.
    pub deficits: Vec<Deficit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Deficit {
    pub method: String,
    pub von_neumann_deficit: F17,
}

#[derive(Clone, Debug, Serialize)]
pub struct CutEdge {
    pub u: usize,
    pub v: usize,
    pub m: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Degeneracy {
    pub vertex_count: usize,
    pub block: Vec<usize>,
    pub boundary: Vec<usize>,
    pub cut_edges: Vec<CutEdge>,
    /// Big integers are strings.
    pub katsura_degeneracy: String,
    pub hilbert_dim: String,
    pub bound_ok: bool,
    pub unique_ground_state: bool,
    pub violations: Vec<String>,
    pub kernel_dimension: Option<usize>,
    pub support_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ModelEcho {
    pub kind: String,
    pub spin: Option<String>,
    pub spins: Option<Vec<String>>,
    pub multiplicities: Option<Vec<u32>>,
    pub n: Option<usize>,
    #[serde(rename = "L")]
    pub l: Option<usize>,
    #[serde(rename = "N")]
    pub n_bulk: Option<usize>,
    pub block: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelEcho>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub routes: Vec<Route>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<Limit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<Degeneracy>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            model: None,
            routes: Vec::new(),
            skipped: Vec::new(),
            cross_check: None,
            limit: None,
            degeneracy: None,
            checks: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv(),
        }
    }

    /// One table per command: checks for `verify`, key/value pairs for
    /// `degeneracy`, entropies for `entropy`, levels otherwise. A leading
    /// `method` column keeps multi-route output in one table.
    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        if !self.checks.is_empty() {
            w.write_record(["check", "passed", "detail"]).map_err(io)?;
            for c in &self.checks {
                w.write_record([
                    c.name.as_str(),
                    if c.passed { "true" } else { "false" },
                    c.detail.as_str(),
                ])
                .map_err(io)?;
            }
        } else if let Some(d) = self.degeneracy.as_ref().filter(|_| self.command == "degeneracy") {
            w.write_record(["key", "value"]).map_err(io)?;
            let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let cut = d
                .cut_edges
                .iter()
                .map(|e| format!("{}-{}:{}", e.u, e.v, e.m))
                .collect::<Vec<_>>()
                .join(" ");
            let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
            let rows = [
                ("vertex_count", d.vertex_count.to_string()),
                ("block", join(&d.block)),
                ("boundary", join(&d.boundary)),
                ("cut_edges", cut),
                ("katsura_degeneracy", d.katsura_degeneracy.clone()),
                ("hilbert_dim", d.hilbert_dim.clone()),
                ("bound_ok", d.bound_ok.to_string()),
                ("unique_ground_state", d.unique_ground_state.to_string()),
                ("violations", d.violations.join(" ")),
                ("kernel_dimension", opt(d.kernel_dimension)),
                ("support_dim", opt(d.support_dim)),
            ];
            for (k, v) in rows {
                w.write_record([k, v.as_str()]).map_err(io)?;
            }
        } else if self.command == "entropy" {
            w.write_record(["method", "alpha", "entropy"]).map_err(io)?;
            for r in &self.routes {
                w.write_record([r.method.as_str(), "1", &F17(r.entropies.von_neumann.0).text()])
                    .map_err(io)?;
                for x in &r.entropies.renyi {
                    w.write_record([r.method.as_str(), &x.alpha.0.to_string(), &x.entropy.text()])
                        .map_err(io)?;
                }
            }
            if let Some(l) = &self.limit {
                w.write_record(["limit", "all", &l.entropy.text()]).map_err(io)?;
            }
        } else {
            w.write_record(["method", "J", "twice_J", "lambda_exact", "lambda_float", "degeneracy"])
                .map_err(io)?;
            for r in &self.routes {
                for lv in &r.levels {
                    w.write_record([
                        r.method.clone(),
                        lv.label.clone().unwrap_or_default(),
                        lv.twice_j.map(|t| t.to_string()).unwrap_or_default(),
                        lv.lambda_exact.clone().unwrap_or_default(),
                        lv.lambda_float.text(),
                        lv.degeneracy.to_string(),
                    ])
                    .map_err(io)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }
}
