use rayon::prelude::*;
use serde_json::{json, Value};

use super::{check_property, Budget, Property, PropertyVerdict, Status};
use crate::rings::Ring;

/// Edges of the implication diagram that are checked, premise first.
/// Symmetric implies reversible because every ring here has an identity.
pub const EDGES: [(Property, Property); 10] = [
    (Property::Reduced, Property::Symmetric),
    (Property::Reduced, Property::Reversible),
    (Property::Symmetric, Property::Reversible),
    (Property::Symmetric, Property::Si),
    (Property::Reversible, Property::Si),
    (Property::Duo, Property::DuoRight),
    (Property::Duo, Property::DuoLeft),
    (Property::DuoRight, Property::Si),
    (Property::DuoLeft, Property::Si),
    (Property::Si, Property::TwoPrimal),
];

const COLUMNS: [Property; 8] = [
    Property::Reduced,
    Property::Symmetric,
    Property::Reversible,
    Property::Duo,
    Property::DuoRight,
    Property::DuoLeft,
    Property::Si,
    Property::TwoPrimal,
];

#[derive(Debug, Clone)]
pub struct AuditRow {
    pub ring: String,
    pub verdicts: Vec<PropertyVerdict>,
}

impl AuditRow {
    pub fn verdict(&self, p: Property) -> &PropertyVerdict {
        self.verdicts
            .iter()
            .find(|v| v.property == p)
            .expect("every audited property is evaluated")
    }

    pub fn status(&self, p: Property) -> Status {
        self.verdict(p).status
    }
}

#[derive(Debug, Clone)]
pub struct EdgeViolation {
    pub ring: String,
    pub premise: Property,
    pub conclusion: Property,
    pub conclusion_verdict: PropertyVerdict,
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    pub violations: Vec<EdgeViolation>,
    pub edges_checked: usize,
    pub edges_not_evaluated: usize,
}

/// Evaluates every audited property on every ring and checks the edges.
/// An edge with an `Unknown` end is counted as not evaluated.
pub fn implication_audit(corpus: &[Ring], budget: &Budget) -> AuditReport {
    let rows: Vec<AuditRow> = corpus
        .par_iter()
        .map(|r| AuditRow {
            ring: r.label(),
            verdicts: COLUMNS.iter().map(|&p| check_property(&**r, p, budget)).collect(),
        })
        .collect();
    let mut violations = Vec::new();
    let mut edges_checked = 0;
    let mut edges_not_evaluated = 0;
    for row in &rows {
        for (premise, conclusion) in EDGES {
            match (row.status(premise), row.status(conclusion)) {
                (Status::Unknown, _) | (_, Status::Unknown) => edges_not_evaluated += 1,
                (Status::Holds, Status::Fails) => {
                    edges_checked += 1;
                    violations.push(EdgeViolation {
                        ring: row.ring.clone(),
                        premise,
                        conclusion,
                        conclusion_verdict: row.verdict(conclusion).clone(),
                    });
                }
                _ => edges_checked += 1,
            }
        }
    }
    AuditReport {
        rows,
        violations,
        edges_checked,
        edges_not_evaluated,
    }
}

fn mark(s: Status) -> &'static str {
    match s {
        Status::Holds => "+",
        Status::Fails => "-",
        Status::Unknown => "?",
    }
}

impl AuditReport {
    /// The diagram followed by one row of satisfaction marks per ring.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("          reduced\n");
        out.push_str("         /       \\\n");
        out.push_str("  symmetric  -->  reversible        duo --> right duo / left duo\n");
        out.push_str("         \\       /                           |\n");
        out.push_str("             SI  <---------------------------+\n");
        out.push_str("             |\n");
        out.push_str("          2-primal\n\n");
        let width = self.rows.iter().map(|r| r.ring.len()).max().unwrap_or(4).max(4);
        out.push_str(&format!("{:width$}", "ring"));
        for p in COLUMNS {
            out.push_str(&format!(" {:>10}", p.name()));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("{:width$}", row.ring));
            for p in COLUMNS {
                out.push_str(&format!(" {:>10}", mark(row.status(p))));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "\nedges checked: {}, not evaluated: {}, violated: {}\n",
            self.edges_checked,
            self.edges_not_evaluated,
            self.violations.len()
        ));
        for v in &self.violations {
            out.push_str(&format!(
                "VIOLATION {}: {} holds but {} fails: {}\n",
                v.ring,
                v.premise,
                v.conclusion,
                v.conclusion_verdict.summary()
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows.iter().map(|r| json!({
                "ring": r.ring,
                "verdicts": r.verdicts.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "violations": self.violations.iter().map(|v| json!({
                "ring": v.ring,
                "premise": v.premise,
                "conclusion": v.conclusion,
                "witness": v.conclusion_verdict.witness.as_ref().map(|w| w.to_json()),
            })).collect::<Vec<_>>(),
            "edges_checked": self.edges_checked,
            "edges_not_evaluated": self.edges_not_evaluated,
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groupring::GroupRing;
    use crate::groups::make_quaternion8;
    use crate::rings::{make_gf_default, make_matrix_ring, make_zmod};

    #[test]
    fn commutative_corpus_is_clean() {
        let corpus: Vec<Ring> = (2..=12).map(|n| make_zmod(n).unwrap()).collect();
        let report = implication_audit(&corpus, &Budget::default());
        assert!(report.violations.is_empty());
        assert_eq!(report.edges_not_evaluated, 0);
        assert_eq!(report.edges_checked, 11 * EDGES.len());
    }

    #[test]
    fn matrix_ring_fails_all_and_stays_consistent() {
        let corpus = vec![make_matrix_ring(make_gf_default(2, 1).unwrap(), 2).unwrap()];
        let report = implication_audit(&corpus, &Budget::default());
        assert!(report.violations.is_empty());
        for p in COLUMNS {
            assert_eq!(report.rows[0].status(p), Status::Fails, "{p}");
        }
    }

    #[test]
    fn f2q8_pattern() {
        let r: Ring = Arc::new(GroupRing::new(make_gf_default(2, 1).unwrap(), Arc::new(make_quaternion8())).unwrap());
        let report = implication_audit(&[r], &Budget::default());
        assert!(report.violations.is_empty());
        let row = &report.rows[0];
        assert_eq!(row.status(Property::Reversible), Status::Holds);
        assert_eq!(row.status(Property::Si), Status::Holds);
        assert_eq!(row.status(Property::TwoPrimal), Status::Holds);
        assert_eq!(row.status(Property::Symmetric), Status::Fails);
        assert!(report.render().contains("2primal"));
    }
}
