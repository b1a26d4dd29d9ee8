//! Decision procedures for reduced, reversible, symmetric, SI, duo and
//! 2-primal rings. Every failing verdict carries a witness that can be
//! replayed against the raw definition.

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groupring::GroupRing;
use crate::rings::{is_nilpotent, Elem, FiniteRing, Side};

mod audit;
mod checks;

pub use audit::{implication_audit, AuditReport, AuditRow, EdgeViolation, EDGES};
pub use checks::{
    check_duo, check_property, check_reduced, check_reduced_with, check_reversible, check_si,
    check_symmetric, check_two_primal, check_two_primal_with,
};

/// Largest ring whose principal ideals are rebuilt by brute force on replay.
const REPLAY_SCAN_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
            Status::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

impl Status {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Holds" | "holds" => Ok(Status::Holds),
            "Fails" | "fails" => Ok(Status::Fails),
            "Unknown" | "unknown" => Ok(Status::Unknown),
            other => Err(Error::invalid(format!("unknown status '{other}'"))),
        }
    }

    /// Conjunction with `Unknown` absorbing only `Holds`.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
            (Status::Holds, Status::Holds) => Status::Holds,
            _ => Status::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Reduced,
    Reversible,
    Symmetric,
    Si,
    DuoLeft,
    DuoRight,
    Duo,
    TwoPrimal,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Reduced,
        Property::Reversible,
        Property::Symmetric,
        Property::Si,
        Property::DuoLeft,
        Property::DuoRight,
        Property::Duo,
        Property::TwoPrimal,
    ];

    /// The four properties tied together for semisimple group rings.
    pub const SEMISIMPLE_FOUR: [Property; 4] =
        [Property::Duo, Property::Symmetric, Property::Reversible, Property::Si];

    pub fn name(self) -> &'static str {
        match self {
            Property::Reduced => "reduced",
            Property::Reversible => "reversible",
            Property::Symmetric => "symmetric",
            Property::Si => "si",
            Property::DuoLeft => "duo-left",
            Property::DuoRight => "duo-right",
            Property::Duo => "duo",
            Property::TwoPrimal => "2primal",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown property '{s}'")))
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Property {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Canonical order; witnesses are lexicographically first.
    Deterministic,
    /// Shuffled visiting order, or sampling when the ring is too large to
    /// shuffle.
    Seeded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: u64,
    pub max_triples: u64,
    pub mode: Mode,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 1 << 24,
            max_triples: 1 << 26,
            mode: Mode::Deterministic,
        }
    }
}

impl Budget {
    pub fn new(max_pairs: u64, max_triples: u64, mode: Mode) -> Result<Self> {
        if max_pairs == 0 || max_triples == 0 {
            return Err(Error::invalid("budgets must be positive"));
        }
        Ok(Budget {
            max_pairs,
            max_triples,
            mode,
        })
    }

    pub fn with_mode(self, mode: Mode) -> Self {
        Budget { mode, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `(a)`: nonzero and nilpotent.
    Nilpotent,
    /// `(a, b)`: `ab = 0`, `ba != 0`.
    Reversible,
    /// `(a, b, c)`: `abc = 0`, `acb != 0`.
    Symmetric,
    /// `(a, x, b)`: `ab = 0`, `axb != 0`.
    Si,
    /// `(a, x)`: `x*a` is not in `aR`.
    RightDuo,
    /// `(a, x)`: `a*x` is not in `Ra`.
    LeftDuo,
    /// `(a, b)`: nilpotent, nilpotent, `a + b` is not.
    NilpotentSum,
    /// `(a, x)`: `a` nilpotent, `x*a` is not.
    NilpotentLeftMultiple,
    /// `(a, x)`: `a` nilpotent, `a*x` is not.
    NilpotentRightMultiple,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub elements: Vec<Elem>,
    pub rendered: Vec<String>,
    json: Vec<Value>,
}

impl Witness {
    pub fn new<R: FiniteRing + ?Sized>(r: &R, kind: WitnessKind, elements: Vec<Elem>) -> Self {
        let rendered = elements.iter().map(|&e| r.render(e)).collect();
        let json = elements.iter().map(|&e| r.element_json(e)).collect();
        Witness {
            kind,
            elements,
            rendered,
            json,
        }
    }

    /// Re-evaluates the defining condition directly on `r`.
    pub fn replay<R: FiniteRing + ?Sized>(&self, r: &R) -> bool {
        let e = &self.elements;
        let m = |a, b| r.mul(a, b);
        let nil = |a| is_nilpotent(r, a);
        match (self.kind, e.as_slice()) {
            (WitnessKind::Nilpotent, &[a]) => a != r.zero() && nil(a),
            (WitnessKind::Reversible, &[a, b]) => m(a, b) == 0 && m(b, a) != 0,
            (WitnessKind::Symmetric, &[a, b, c]) => m(m(a, b), c) == 0 && m(m(a, c), b) != 0,
            (WitnessKind::Si, &[a, x, b]) => m(a, b) == 0 && m(m(a, x), b) != 0,
            (WitnessKind::RightDuo, &[a, x]) => !in_principal(r, a, m(x, a), Side::Right),
            (WitnessKind::LeftDuo, &[a, x]) => !in_principal(r, a, m(a, x), Side::Left),
            (WitnessKind::NilpotentSum, &[a, b]) => nil(a) && nil(b) && !nil(r.add(a, b)),
            (WitnessKind::NilpotentLeftMultiple, &[a, x]) => nil(a) && !nil(m(x, a)),
            (WitnessKind::NilpotentRightMultiple, &[a, x]) => nil(a) && !nil(m(a, x)),
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "kind": self.kind, "elements": self.json })
    }
}

/// `y` in `aR` (side `Right`) or `Ra` (side `Left`).
fn in_principal<R: FiniteRing + ?Sized>(r: &R, a: Elem, y: Elem, side: Side) -> bool {
    if r.size() <= REPLAY_SCAN_LIMIT {
        (0..r.size()).any(|t| match side {
            Side::Left => r.mul(t, a) == y,
            _ => r.mul(a, t) == y,
        })
    } else {
        match side {
            Side::Left => r.left_ideal_membership(a)(y),
            _ => r.right_ideal_membership(a)(y),
        }
    }
}

/// Maps a one-sided duo witness through the classical involution: if
/// `x*a` is outside `aR` then `a* x*` is outside `R a*`, and conversely.
pub fn mirror_duo_witness(gr: &GroupRing, w: &Witness) -> Option<Witness> {
    let kind = match w.kind {
        WitnessKind::RightDuo => WitnessKind::LeftDuo,
        WitnessKind::LeftDuo => WitnessKind::RightDuo,
        _ => return None,
    };
    let elements = w.elements.iter().map(|&e| gr.involution_index(e)).collect();
    Some(Witness::new(gr, kind, elements))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyVerdict {
    pub ring: String,
    pub property: Property,
    pub status: Status,
    pub witness: Option<Witness>,
    /// The verdict is definitive: either the search space was exhausted,
    /// or a replayable witness was found.
    pub certified: bool,
    pub work: u64,
    pub mode: Mode,
    pub note: Option<String>,
}

impl PropertyVerdict {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "ring": self.ring,
            "property": self.property,
            "status": self.status,
            "certified": self.certified,
            "work": self.work,
            "mode": match self.mode { Mode::Deterministic => "det", Mode::Seeded(_) => "rand" },
        });
        let obj = v.as_object_mut().expect("object literal");
        if let Some(w) = &self.witness {
            obj.insert("witness".into(), w.to_json());
        }
        if let Mode::Seeded(seed) = self.mode {
            obj.insert("seed".into(), json!(seed));
        }
        if let Some(note) = &self.note {
            obj.insert("note".into(), json!(note));
        }
        v
    }

    /// Short human-readable line.
    pub fn summary(&self) -> String {
        let mut s = format!("{} {}: {}", self.ring, self.property, self.status);
        if !self.certified {
            s.push_str(" (uncertified)");
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness ({})", w.rendered.join("; ")));
        }
        s
    }
}

impl Serialize for PropertyVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::make_zmod;

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(Property::parse(p.name()).unwrap(), p);
        }
        assert!(Property::parse("nil").is_err());
    }

    #[test]
    fn status_conjunction() {
        assert_eq!(Status::Holds.and(Status::Holds), Status::Holds);
        assert_eq!(Status::Unknown.and(Status::Fails), Status::Fails);
        assert_eq!(Status::Unknown.and(Status::Holds), Status::Unknown);
    }

    #[test]
    fn budgets_must_be_positive() {
        assert!(Budget::new(0, 1, Mode::Deterministic).is_err());
        assert!(Budget::new(1, 1, Mode::Seeded(3)).is_ok());
    }

    #[test]
    fn replay_rejects_non_witnesses() {
        let z4 = make_zmod(4).unwrap();
        assert!(Witness::new(&*z4, WitnessKind::Nilpotent, vec![2]).replay(&*z4));
        assert!(!Witness::new(&*z4, WitnessKind::Nilpotent, vec![1]).replay(&*z4));
        assert!(!Witness::new(&*z4, WitnessKind::Reversible, vec![2, 2]).replay(&*z4));
        assert!(!Witness::new(&*z4, WitnessKind::Reversible, vec![2]).replay(&*z4));
    }
}
