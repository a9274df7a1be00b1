//! Serializable records of verified claims.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::FieldElem;

pub const SCHEMA: &str = "toda-certificate/1";

/// One term of a witness: canonical monomial text and its coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub monomial: String,
    pub coeff: FieldElem,
}

/// A named element in canonical text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub terms: Vec<Term>,
}

impl Witness {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub version: String,
    pub claim: String,
    pub inputs: BTreeMap<String, String>,
    pub witnesses: Vec<Witness>,
    pub residuals: Vec<Witness>,
    pub kernel_dim: Option<usize>,
    pub scalars: BTreeMap<String, FieldElem>,
    pub checks: Vec<Check>,
    pub notes: BTreeMap<String, String>,
}

impl Certificate {
    pub fn new(claim: impl Into<String>) -> Self {
        Certificate {
            schema: SCHEMA.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            claim: claim.into(),
            inputs: BTreeMap::new(),
            witnesses: Vec::new(),
            residuals: Vec::new(),
            kernel_dim: None,
            scalars: BTreeMap::new(),
            checks: Vec::new(),
            notes: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn push_check(&mut self, c: Check) -> &mut Self {
        self.checks.push(c);
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check::new(name, passed, detail));
        passed
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.notes.insert(key.into(), value.into());
        self
    }

    pub fn scalar(&mut self, key: impl Into<String>, value: FieldElem) -> &mut Self {
        self.scalars.insert(key.into(), value);
        self
    }

    /// All checks passed and every residual is the zero element.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.residuals.iter().all(Witness::is_zero)
    }

    pub fn first_failure(&self) -> Option<String> {
        self.checks
            .iter()
            .find(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .or_else(|| {
                self.residuals
                    .iter()
                    .find(|w| !w.is_zero())
                    .map(|w| format!("nonzero residual {}", w.name))
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}
