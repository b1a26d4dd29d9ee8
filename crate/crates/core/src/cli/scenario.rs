use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::properties::{Budget, Property};

const BUILTIN: &str = include_str!("../../fixtures/scenarios.toml");

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    Stated,
    Trivial,
    Computed,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct Expectation {
    pub check: String,
    pub value: String,
    pub basis: Basis,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    Properties { ring: String, group: Option<String> },
    CrossCheck { ring: String, group: String },
    Hamiltonian { groups: Vec<String> },
    Audit { corpus: Vec<String> },
    FirstRow { ring: String, n: usize },
    Semisimple { ring: String, group: String },
    Factorwise { ring: String, group: String },
    FieldFactors { corpus: Vec<String> },
    DirectSum { parts: Vec<String> },
    Radical { ring: String, group: Option<String> },
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
pub struct BudgetSpec {
    pub pairs: u64,
    pub triples: u64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct Scenario {
    pub id: String,
    pub family: String,
    pub description: String,
    #[serde(flatten)]
    pub construction: Construction,
    #[serde(default)]
    pub expect: Vec<Expectation>,
    #[serde(default)]
    pub budget: Option<BudgetSpec>,
}

impl Scenario {
    pub fn budget(&self, base: &Budget) -> Budget {
        match self.budget {
            Some(b) => Budget {
                max_pairs: b.pairs,
                max_triples: b.triples,
                mode: base.mode,
            },
            None => *base,
        }
    }

    pub fn matches(&self, filter: &str) -> bool {
        self.id == filter || self.family == filter
    }

    fn validate(&self) -> Result<()> {
        if self.expect.is_empty() {
            return Err(Error::invalid(format!("scenario {} expects nothing", self.id)));
        }
        for e in &self.expect {
            if Property::parse(&e.check).is_ok() && !matches!(e.value.as_str(), "Holds" | "Fails") {
                return Err(Error::invalid(format!(
                    "scenario {}: expected status for {} must be Holds or Fails",
                    self.id, e.check
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
struct ScenarioFile {
    scenario: Vec<Scenario>,
}

pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| Error::invalid(format!("scenario file: {e}")))?;
    let mut ids = std::collections::HashSet::new();
    for s in &file.scenario {
        s.validate()?;
        if !ids.insert(s.id.clone()) {
            return Err(Error::invalid(format!("duplicate scenario id {}", s.id)));
        }
    }
    Ok(file.scenario)
}

/// The scenarios compiled into the binary.
pub fn builtin_scenarios() -> Vec<Scenario> {
    parse_scenarios(BUILTIN).expect("built-in scenarios are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_file_loads() {
        let all = builtin_scenarios();
        assert!(all.len() > 20);
        assert!(all.iter().any(|s| s.family == "hamiltonian"));
        assert!(all.iter().all(|s| !s.expect.is_empty()));
    }

    #[test]
    fn rejects_unknown_status_and_duplicates() {
        let bad = r#"
            [[scenario]]
            id = "a"
            family = "f"
            description = "d"
            kind = "properties"
            ring = "Z/2"
            expect = [{ check = "reversible", value = "Maybe", basis = "trivial" }]
        "#;
        assert!(parse_scenarios(bad).is_err());
        let dup = r#"
            [[scenario]]
            id = "a"
            family = "f"
            description = "d"
            kind = "properties"
            ring = "Z/2"
            expect = [{ check = "reversible", value = "Holds", basis = "trivial" }]
            [[scenario]]
            id = "a"
            family = "f"
            description = "d"
            kind = "properties"
            ring = "Z/3"
            expect = [{ check = "reversible", value = "Holds", basis = "trivial" }]
        "#;
        assert!(parse_scenarios(dup).is_err());
    }
}
