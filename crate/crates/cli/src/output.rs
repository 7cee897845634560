//! What a job prints: a report and, for constructive commands, a document.

use std::fmt::Write as _;

use gerstenhaber::io::ReportDoc;
use pointcheck::{CoisotropyResult, SampleSetReport};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportBody {
    /// exact residuals
    Symbolic(ReportDoc),
    Coisotropy(CoisotropyResult),
    Groupoid(SampleSetReport),
}

impl ReportBody {
    pub fn passed(&self) -> bool {
        match self {
            ReportBody::Symbolic(r) => r.passed,
            ReportBody::Coisotropy(r) => r.passed,
            ReportBody::Groupoid(r) => r.passed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Output {
    pub command: String,
    pub passed: bool,
    pub report: ReportBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
}

impl Output {
    pub fn new(command: &str, report: ReportBody, result: Option<serde_json::Value>) -> Self {
        Output { command: command.into(), passed: report.passed(), report, result }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("outputs serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        writeln!(s, "{}: {verdict}", self.command).unwrap();
        match &self.report {
            ReportBody::Symbolic(r) => {
                let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
                for c in &r.checks {
                    let bad = c.residuals.iter().filter(|x| !x.zero).count();
                    let mark = if c.passed { "ok  " } else { "FAIL" };
                    writeln!(s, "  {mark} {:width$}  {} residuals, {bad} nonzero", c.name, c.residuals.len()).unwrap();
                    for x in c.residuals.iter().filter(|x| !x.zero) {
                        writeln!(s, "         {} = {}", x.label, x.value).unwrap();
                    }
                }
                for (name, v) in &r.flags {
                    writeln!(s, "  flag {name} = {v}").unwrap();
                }
                if self.result.is_some() {
                    writeln!(s, "  (constructed document: --json or --output FILE)").unwrap();
                }
            }
            ReportBody::Coisotropy(r) => {
                writeln!(
                    s,
                    "  max residual {:.3e} (tolerance {:.1e} × ‖Π‖ = {:.3e})",
                    r.max_residual,
                    r.tolerance,
                    r.tolerance * r.scale
                )
                .unwrap();
            }
            ReportBody::Groupoid(r) => {
                let set = &r.settings;
                writeln!(
                    s,
                    "  {:?}, {} samples, seed {}, convention {:?}, h = {:.1e}",
                    set.group, set.count, set.seed, set.convention, set.fd_step
                )
                .unwrap();
                writeln!(s, "  max multiplicativity residual {:.3e} (tolerance {:.1e})", r.max_multiplicativity, set.tolerance)
                    .unwrap();
                writeln!(s, "  max quasi-Poisson residual {:.3e} (tolerance {:.1e})", r.max_quasi_poisson, set.fd_tolerance)
                    .unwrap();
                for x in r.samples.iter().filter(|x| !(x.multiplicative && x.quasi_poisson_ok)) {
                    writeln!(
                        s,
                        "    sample {}: multiplicativity {:.3e}, quasi-Poisson {:.3e}{}",
                        x.index,
                        x.multiplicativity,
                        x.quasi_poisson,
                        if x.quasi_poisson_stable { "" } else { " (unstable)" }
                    )
                    .unwrap();
                }
                for o in &r.readings {
                    writeln!(
                        s,
                        "  reading {:?}: multiplicative {} (max {:.2e}); coordinate change {:.2e}, α/β {:.2e}, inversion {:.2e}",
                        o.reading, o.multiplicative, o.max_residual, o.coordinate_change, o.base_projection, o.inversion
                    )
                    .unwrap();
                }
            }
        }
        s
    }
}
