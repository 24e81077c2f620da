//! Ordered ledgers of exact inequality checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{rat_str, Rat};
use crate::mukai::{MukaiVector, SurfaceData};
use crate::stabspace::StabilityParam;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "!=")]
    Ne,
}

impl Relation {
    pub fn holds(self, lhs: &Rat, rhs: &Rat) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Ne => lhs != rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Ne => "!=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    #[serde(with = "rat_str")]
    pub lhs: Rat,
    #[serde(rename = "rel")]
    pub relation: Relation,
    #[serde(with = "rat_str")]
    pub rhs: Rat,
    pub passed: bool,
}

impl CheckEntry {
    /// Evaluates `lhs relation rhs` exactly.
    pub fn new(name: impl Into<String>, lhs: Rat, relation: Relation, rhs: Rat) -> Self {
        let passed = relation.holds(&lhs, &rhs);
        CheckEntry { name: name.into(), lhs, relation, rhs, passed }
    }

    /// A yes/no fact recorded as `1 = 1` or `0 = 1`.
    pub fn boolean(name: impl Into<String>, holds: bool) -> Self {
        let one = Rat::from_integer(1.into());
        let lhs = if holds { one.clone() } else { Rat::from_integer(0.into()) };
        CheckEntry::new(name, lhs, Relation::Eq, one)
    }
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} {} {}",
            if self.passed { "ok" } else { "FAIL" },
            self.name,
            self.lhs,
            self.relation.symbol(),
            self.rhs
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A hypothesis of the theorem does not hold, so it says nothing.
    Inapplicable,
}

/// The witness stability condition recorded by the `M_L` certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sigma3 {
    #[serde(with = "rat_str")]
    pub b: Rat,
    #[serde(with = "rat_str")]
    pub w_sq: Rat,
}

impl From<&StabilityParam> for Sigma3 {
    fn from(p: &StabilityParam) -> Self {
        Sigma3 { b: p.b.clone(), w_sq: p.w_sq.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub subject: MukaiVector,
    pub surface: SurfaceData,
    pub checks: Vec<CheckEntry>,
    #[serde(serialize_with = "ser_params")]
    pub params: Vec<(String, Rat)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma3: Option<Sigma3>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_bound: Option<u32>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
}

fn ser_params<S: serde::Serializer>(params: &[(String, Rat)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(params.len()))?;
    for (k, v) in params {
        map.serialize_entry(k, &v.to_string())?;
    }
    map.end()
}

impl Certificate {
    pub fn param(&self, name: &str) -> Option<&Rat> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn check(&self, name_prefix: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name.starts_with(name_prefix))
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }
}
