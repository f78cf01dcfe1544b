//! Scenario files: JSON descriptions of one pair `(a, γ)` plus optional
//! equivalent pairs and tame subfields.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algext::AlgebraicElement;
use crate::basefield::{BaseField, ValuedField};
use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::minpair::{Candidate, MinimalPair};
use crate::ordvals::OrderedValue;
use crate::verifier::Status;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub base: BaseField,
    /// Coefficients of `Q`, constant term first.
    #[serde(rename = "Q")]
    pub q: Vec<String>,
    pub gamma: OrderedValue,
    pub minimality: MinimalitySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectations>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equivalents: Vec<EquivalentSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subfields: Vec<SubfieldSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinimalityMode {
    Krasner,
    Bruteforce,
    Assert,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinimalitySpec {
    pub mode: MinimalityMode,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<CandidateSpec>,
}

impl MinimalitySpec {
    pub fn krasner() -> Self {
        MinimalitySpec {
            mode: MinimalityMode::Krasner,
            candidates: Vec::new(),
        }
    }
}

/// An element of `K` as a string, or an algebraic element by its minimal
/// polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CandidateSpec {
    Element(String),
    MinPoly {
        #[serde(rename = "Q")]
        q: Vec<String>,
    },
}

/// Values cross-checked against the computation when present.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalentSpec {
    pub id: String,
    #[serde(rename = "Q")]
    pub q: Vec<String>,
    pub minimality: MinimalitySpec,
}

/// A tame subfield `K(b)`, `b = B(a)`, for the sandwich check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubfieldSpec {
    pub id: String,
    #[serde(rename = "Qb")]
    pub qb: Vec<String>,
    pub b_expr: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_status: Option<Status>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Scenario {
    pub fn from_json(s: &str) -> Result<Self> {
        let sc: Scenario = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if sc.schema_version != SCHEMA_VERSION {
            return Err(Error::Scenario(format!("unsupported schema_version {}", sc.schema_version)));
        }
        Ok(sc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Scenario::from_json(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

pub fn parse_poly<K: ValuedField>(k: &K, coeffs: &[String]) -> Result<Poly<K>> {
    let c = coeffs.iter().map(|s| k.parse_elem(s)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(k.clone(), c))
}

pub fn format_poly<K: ValuedField>(p: &Poly<K>) -> Vec<String> {
    p.coeffs().iter().map(|c| p.field().format(c)).collect()
}

fn candidates<K: ValuedField>(k: &K, spec: &MinimalitySpec) -> Result<Vec<Candidate<K>>> {
    spec.candidates
        .iter()
        .map(|c| match c {
            CandidateSpec::Element(s) => Ok(Candidate::Element(k.parse_elem(s)?)),
            CandidateSpec::MinPoly { q } => Ok(Candidate::MinPoly(parse_poly(k, q)?)),
        })
        .collect()
}

/// Certifies `Q` and the minimality of `(a, γ)` as the spec requests.
pub fn build_pair<K: ValuedField>(
    k: &K,
    q: &[String],
    gamma: &OrderedValue,
    spec: &MinimalitySpec,
) -> Result<(MinimalPair<K>, Vec<String>)> {
    let a = Arc::new(AlgebraicElement::certify(k.clone(), parse_poly(k, q)?)?);
    match spec.mode {
        MinimalityMode::Assert => Ok((MinimalPair::asserted(a, gamma.clone())?, Vec::new())),
        MinimalityMode::Krasner | MinimalityMode::Bruteforce => MinimalPair::certify(a, gamma.clone(), &candidates(k, spec)?),
    }
}
