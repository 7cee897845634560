//! Residual reports. Checks carry the residuals themselves, not just a verdict.

use std::fmt;

use crate::exterior::Multivector;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum ResidualValue<S: Scalar> {
    Function(Polynomial<S>),
    Multi(Multivector<S>),
}

impl<S: Scalar> ResidualValue<S> {
    pub fn is_zero(&self) -> bool {
        match self {
            ResidualValue::Function(p) => p.is_zero(),
            ResidualValue::Multi(m) => m.is_zero(),
        }
    }
}

impl<S: Scalar> fmt::Display for ResidualValue<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidualValue::Function(p) => write!(f, "{p}"),
            ResidualValue::Multi(m) => write!(f, "{m}"),
        }
    }
}

impl<S: Scalar> From<Polynomial<S>> for ResidualValue<S> {
    fn from(p: Polynomial<S>) -> Self {
        ResidualValue::Function(p)
    }
}

impl<S: Scalar> From<Multivector<S>> for ResidualValue<S> {
    fn from(m: Multivector<S>) -> Self {
        ResidualValue::Multi(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residual<S: Scalar> {
    pub label: String,
    pub value: ResidualValue<S>,
}

/// A named family of residuals; passes iff every residual is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Check<S: Scalar> {
    pub name: String,
    pub residuals: Vec<Residual<S>>,
}

impl<S: Scalar> Check<S> {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            residuals: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, value: impl Into<ResidualValue<S>>) {
        self.residuals.push(Residual {
            label: label.into(),
            value: value.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|r| r.value.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Residual<S>> {
        self.residuals.iter().filter(|r| !r.value.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report<S: Scalar> {
    pub checks: Vec<Check<S>>,
    /// Informational flags such as `h_is_subalgebra`.
    pub flags: Vec<(String, bool)>,
}

impl<S: Scalar> Report<S> {
    pub fn new(checks: Vec<Check<S>>) -> Self {
        Report {
            checks,
            flags: Vec::new(),
        }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn merge(mut self, other: Report<S>) -> Self {
        self.checks.extend(other.checks);
        self.flags.extend(other.flags);
        self
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    pub fn check(&self, name: &str) -> Option<&Check<S>> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `(label, printed value)` of every nonzero residual.
    pub fn defects(&self) -> Vec<(String, String)> {
        self.checks
            .iter()
            .flat_map(|c| {
                c.failures()
                    .map(move |r| (format!("{}: {}", c.name, r.label), r.value.to_string()))
            })
            .collect()
    }
}

impl<S: Scalar> fmt::Display for Report<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let bad = c.failures().count();
            writeln!(
                f,
                "{:<5} {} ({} residuals, {} nonzero)",
                if bad == 0 { "ok" } else { "FAIL" },
                c.name,
                c.residuals.len(),
                bad
            )?;
            for r in c.failures() {
                writeln!(f, "      {} = {}", r.label, r.value)?;
            }
        }
        for (n, v) in &self.flags {
            writeln!(f, "      {n} = {v}")?;
        }
        Ok(())
    }
}
