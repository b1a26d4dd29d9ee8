use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::scenario::{builtin_scenarios, Basis, Construction, Scenario};
use crate::decompose::{
    commutative_semisimple_factors_are_fields, verify_direct_sum, verify_factorwise,
    verify_semisimple_equivalences, CompositionReport, FactorKind,
};
use crate::error::{Error, Result};
use crate::groupring::GroupRing;
use crate::groups::parse_group;
use crate::properties::{
    check_property, implication_audit, mirror_duo_witness, Budget, Property, PropertyVerdict, Status,
};
use crate::rings::{is_nilpotent, is_semisimple, jacobson_radical, parse_ring, MatrixRing, Ring, DEFAULT_RING_CAP};

/// `ring_expr`, or the group ring `ring_expr[group_expr]`.
pub fn build_ring(ring_expr: &str, group_expr: Option<&str>) -> Result<Ring> {
    let base = parse_ring(ring_expr)?;
    match group_expr.map(str::trim).filter(|g| !g.is_empty()) {
        None => Ok(base),
        Some(g) => Ok(Arc::new(GroupRing::new(base, Arc::new(parse_group(g)?))?)),
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub construction: String,
    pub verdict: PropertyVerdict,
    /// Whether a failing witness reproduces under the raw definition.
    pub replayed: Option<bool>,
    pub wall_ms: u64,
}

impl CheckReport {
    pub fn to_json(&self) -> Value {
        let mut v = self.verdict.to_json();
        let obj = v.as_object_mut().expect("object");
        if let Some(r) = self.replayed {
            obj.insert("replayed".into(), json!(r));
        }
        obj.insert("wall_ms".into(), json!(self.wall_ms));
        v
    }

    pub fn render(&self) -> String {
        let v = &self.verdict;
        let mut out = format!(
            "ring:      {}\nproperty:  {}\nstatus:    {}\ncertified: {}\nwork:      {}\n",
            self.construction, v.property, v.status, v.certified, v.work
        );
        if let Some(w) = &v.witness {
            out.push_str(&format!("witness:   {:?}\n", w.kind));
            for (e, s) in w.elements.iter().zip(&w.rendered) {
                out.push_str(&format!("  [{e}] {s}\n"));
            }
        }
        if let Some(r) = self.replayed {
            out.push_str(&format!("replayed:  {r}\n"));
        }
        if let Some(n) = &v.note {
            out.push_str(&format!("note:      {n}\n"));
        }
        out
    }
}

pub fn run_check(ring_expr: &str, group_expr: Option<&str>, property: Property, budget: &Budget) -> Result<CheckReport> {
    let start = Instant::now();
    let ring = build_ring(ring_expr, group_expr)?;
    let verdict = check_property(&*ring, property, budget);
    let replayed = verdict.witness.as_ref().map(|w| w.replay(&*ring));
    Ok(CheckReport {
        construction: ring.label(),
        verdict,
        replayed,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Observation {
    pub check: String,
    pub expected: String,
    pub observed: String,
    pub basis: Basis,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub id: String,
    pub family: String,
    pub description: String,
    pub construction: Vec<String>,
    pub verdicts: Vec<PropertyVerdict>,
    pub observations: Vec<Observation>,
    /// Witnesses that did not reproduce, and other internal inconsistencies.
    pub problems: Vec<String>,
    pub details: Option<String>,
    pub work: u64,
    pub wall_ms: u64,
    pub pass: bool,
}

impl Report {
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "id": self.id,
            "family": self.family,
            "description": self.description,
            "construction": self.construction,
            "verdicts": self.verdicts.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            "observations": self.observations,
            "problems": self.problems,
            "work": self.work,
            "pass": self.pass,
        });
        if timing {
            v.as_object_mut()
                .expect("object")
                .insert("wall_ms".into(), json!(self.wall_ms));
        }
        v
    }

    fn error(s: &Scenario, e: Error) -> Self {
        Report {
            id: s.id.clone(),
            family: s.family.clone(),
            description: s.description.clone(),
            construction: vec![],
            verdicts: vec![],
            observations: vec![],
            problems: vec![format!("error: {e}")],
            details: None,
            work: 0,
            wall_ms: 0,
            pass: false,
        }
    }
}

#[derive(Default)]
struct Observed {
    construction: Vec<String>,
    verdicts: Vec<PropertyVerdict>,
    values: BTreeMap<String, String>,
    problems: Vec<String>,
    details: Option<String>,
}

impl Observed {
    fn set(&mut self, key: impl Into<String>, value: impl ToString) {
        self.values.insert(key.into(), value.to_string());
    }

    fn verdict(&mut self, ring: &Ring, property: Property, budget: &Budget) -> Status {
        let v = check_property(&**ring, property, budget);
        if let Some(w) = &v.witness {
            if !w.replay(&**ring) {
                self.problems
                    .push(format!("{} {} witness does not replay", ring.label(), property));
            }
        }
        let status = v.status;
        self.set(property.name(), status);
        self.verdicts.push(v);
        status
    }

    fn composition(&mut self, report: &CompositionReport, key: &str) {
        self.construction.push(report.whole.clone());
        self.construction.extend(report.parts.iter().cloned());
        for row in &report.rows {
            self.set(row.property.name(), row.whole);
        }
        let ok = report.rows.iter().all(|r| r.consistent);
        self.set(key, if ok { "consistent" } else { "inconsistent" });
        self.set("certified", report.rows.iter().all(|r| r.certified));
        self.details = Some(serde_json::to_string(&report.to_json()).expect("json"));
    }
}

fn sizes(v: impl IntoIterator<Item = u64>) -> String {
    let mut v: Vec<u64> = v.into_iter().collect();
    v.sort_unstable();
    format!("{v:?}")
}

fn evaluate(s: &Scenario, budget: &Budget) -> Result<Observed> {
    let mut o = Observed::default();
    let wanted = || s.expect.iter().filter_map(|e| Property::parse(&e.check).ok());
    match &s.construction {
        Construction::Properties { ring, group } => {
            let r = build_ring(ring, group.as_deref())?;
            o.construction.push(r.label());
            for p in wanted() {
                o.verdict(&r, p, budget);
            }
        }
        Construction::CrossCheck { ring, group } => {
            let r = build_ring(ring, Some(group))?;
            o.construction.push(r.label());
            let left = o.verdict(&r, Property::DuoLeft, budget);
            let right = o.verdict(&r, Property::DuoRight, budget);
            let rev = o.verdict(&r, Property::Reversible, budget);
            let si = o.verdict(&r, Property::Si, budget);
            let certified = |p: Property, o: &Observed| {
                o.verdicts.iter().any(|v| v.property == p && v.certified)
            };
            if certified(Property::DuoLeft, &o) && certified(Property::DuoRight, &o) {
                o.set("sides-agree", left == right);
            }
            if certified(Property::Reversible, &o) && certified(Property::Si, &o) {
                o.set("reversible-si-agree", rev == si);
            }
            let gr = r.as_group_ring().ok_or_else(|| Error::invalid("cross-check needs a group ring"))?;
            let mut mirror = "none";
            for v in o.verdicts.iter().filter(|v| matches!(v.property, Property::DuoLeft | Property::DuoRight)) {
                if let Some(w) = &v.witness {
                    let m = mirror_duo_witness(gr, w).expect("duo witness");
                    mirror = if m.replay(gr) && (mirror != "invalid") { "valid" } else { "invalid" };
                }
            }
            o.set("mirror", mirror);
        }
        Construction::Hamiltonian { groups } => {
            for g in groups {
                let group = parse_group(g)?;
                o.construction.push(group.label().to_string());
                o.set(format!("hamiltonian:{g}"), group.is_hamiltonian());
            }
        }
        Construction::Audit { corpus } => {
            let rings = corpus.iter().map(|e| parse_ring(e)).collect::<Result<Vec<_>>>()?;
            o.construction = rings.iter().map(|r| r.label()).collect();
            let report = implication_audit(&rings, budget);
            for row in &report.rows {
                for v in &row.verdicts {
                    if let Some(w) = &v.witness {
                        let r = rings.iter().find(|r| r.label() == row.ring).expect("audited ring");
                        if !w.replay(&**r) {
                            o.problems.push(format!("{} {} witness does not replay", row.ring, v.property));
                        }
                    }
                }
            }
            o.set("violations", report.violations.len());
            o.set("not-evaluated", report.edges_not_evaluated);
            o.details = Some(report.render());
        }
        Construction::FirstRow { ring, n } => {
            let m = MatrixRing::new(parse_ring(ring)?, *n, DEFAULT_RING_CAP)?;
            o.construction.push(crate::rings::FiniteRing::label(&m));
            let ideal = m.first_row_ideal();
            o.set("right-ideal", ideal.is_valid(&m));
            o.set("left-absorbs", ideal.absorbs_left(&m));
        }
        Construction::Semisimple { ring, group } => {
            let rep = verify_semisimple_equivalences(parse_ring(ring)?, Arc::new(parse_group(group)?), budget)?;
            o.construction.push(rep.ring.clone());
            for v in &rep.verdicts {
                o.set(v.property.name(), v.status);
            }
            o.verdicts.extend(rep.verdicts.iter().cloned());
            o.set("hypothesis", if rep.hypothesis_holds() { "satisfied" } else { "hypothesis-failed" });
            o.set("group-ring-semisimple", rep.group_ring_semisimple);
            o.set(
                "equivalence",
                serde_json::to_value(&rep.equivalence).expect("json").as_str().expect("string"),
            );
            let d = &rep.decomposition;
            o.set("factor-sizes", sizes(d.factor_sizes()));
            o.set(
                "non-division-sizes",
                sizes(
                    d.factor_sizes()
                        .into_iter()
                        .zip(&d.factor_kinds)
                        .filter(|(_, &k)| k != FactorKind::DivisionRing)
                        .map(|(s, _)| s),
                ),
            );
            o.set("decomposition-checks", if d.checks.all() { "pass" } else { "fail" });
            o.details = Some(serde_json::to_string(&rep.to_json()).expect("json"));
        }
        Construction::Factorwise { ring, group } => {
            let rep = verify_factorwise(parse_ring(ring)?, Arc::new(parse_group(group)?), budget)?;
            o.composition(&rep, "composition");
        }
        Construction::FieldFactors { corpus } => {
            let mut all = true;
            for e in corpus {
                let r = parse_ring(e)?;
                o.construction.push(r.label());
                all &= commutative_semisimple_factors_are_fields(&r)? == Some(true);
            }
            o.set("all-fields", all);
        }
        Construction::DirectSum { parts } => {
            let rings = parts.iter().map(|e| parse_ring(e)).collect::<Result<Vec<_>>>()?;
            let rep = verify_direct_sum(&rings, budget)?;
            o.composition(&rep, "direct-sum");
        }
        Construction::Radical { ring, group } => {
            let r = build_ring(ring, group.as_deref())?;
            o.construction.push(r.label());
            let rad = jacobson_radical(&*r);
            o.set("radical-size", rad.len());
            o.set("radical-nilpotent", rad.carrier.iter().all(|&a| is_nilpotent(&*r, a)));
            o.set("semisimple", is_semisimple(&*r));
        }
    }
    Ok(o)
}

pub fn run_scenario(s: &Scenario, budget: &Budget) -> Report {
    let start = Instant::now();
    let budget = s.budget(budget);
    let observed = match evaluate(s, &budget) {
        Ok(o) => o,
        Err(e) => return Report::error(s, e),
    };
    let observations: Vec<Observation> = s
        .expect
        .iter()
        .map(|e| {
            let got = observed.values.get(&e.check).cloned().unwrap_or_else(|| "missing".into());
            Observation {
                check: e.check.clone(),
                expected: e.value.clone(),
                pass: got == e.value,
                observed: got,
                basis: e.basis,
            }
        })
        .collect();
    let pass = observed.problems.is_empty() && observations.iter().all(|o| o.pass);
    Report {
        id: s.id.clone(),
        family: s.family.clone(),
        description: s.description.clone(),
        construction: observed.construction,
        work: observed.verdicts.iter().map(|v| v.work).sum(),
        verdicts: observed.verdicts,
        observations,
        problems: observed.problems,
        details: observed.details,
        wall_ms: start.elapsed().as_millis() as u64,
        pass,
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    /// Scenario id or family.
    pub only: Option<String>,
    pub workers: usize,
    pub budget: Budget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            only: None,
            workers: 1,
            budget: Budget::default(),
        }
    }
}

/// Runs the selected scenarios on a pool of `workers` threads; reports are
/// ordered by scenario id.
pub fn run_builtin_suite(opts: &SuiteOptions) -> Result<Vec<Report>> {
    run_scenarios(&builtin_scenarios(), opts)
}

pub fn run_scenarios(scenarios: &[Scenario], opts: &SuiteOptions) -> Result<Vec<Report>> {
    let selected: Vec<&Scenario> = scenarios
        .iter()
        .filter(|s| opts.only.as_deref().is_none_or(|f| s.matches(f)))
        .collect();
    if selected.is_empty() {
        return Err(Error::invalid(format!(
            "no scenario matches '{}'",
            opts.only.as_deref().unwrap_or_default()
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::invalid(e.to_string()))?;
    let mut reports: Vec<Report> = pool.install(|| {
        selected
            .par_iter()
            .map(|s| run_scenario(s, &opts.budget))
            .collect()
    });
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

pub fn suite_exit_code(reports: &[Report]) -> i32 {
    if reports.iter().all(|r| r.pass) {
        0
    } else {
        1
    }
}

pub fn reports_to_json(reports: &[Report], timing: bool) -> Value {
    Value::Array(reports.iter().map(|r| r.to_json(timing)).collect())
}

/// One line per scenario plus failing observations.
pub fn render_reports(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "{} {:<24} {:>8} ms  {}\n",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.wall_ms,
            r.description
        ));
        for o in r.observations.iter().filter(|o| !o.pass) {
            out.push_str(&format!(
                "       {}: expected {}, observed {}\n",
                o.check, o.expected, o.observed
            ));
        }
        for p in &r.problems {
            out.push_str(&format!("       {p}\n"));
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    out.push_str(&format!("{passed}/{} scenarios passed\n", reports.len()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_builds_group_rings() {
        let r = run_check("Z/2", Some("Q8"), Property::Reversible, &Budget::default()).unwrap();
        assert_eq!(r.construction, "Z/2[Q8]");
        assert_eq!(r.verdict.status, Status::Holds);
        let r = run_check("M2(GF(2))", None, Property::Duo, &Budget::default()).unwrap();
        assert_eq!(r.verdict.status, Status::Fails);
        assert_eq!(r.replayed, Some(true));
    }

    #[test]
    fn parse_errors_surface() {
        assert!(matches!(
            run_check("Z/", None, Property::Reduced, &Budget::default()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn filter_by_family() {
        let opts = SuiteOptions {
            only: Some("hamiltonian".into()),
            ..Default::default()
        };
        let reports = run_builtin_suite(&opts).unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.pass), "{}", render_reports(&reports));
        let opts = SuiteOptions {
            only: Some("nothing".into()),
            ..Default::default()
        };
        assert!(run_builtin_suite(&opts).is_err());
    }
}
