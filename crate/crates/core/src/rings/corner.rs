use super::{Elem, FiniteRing, Ring};
use crate::error::{Error, Result};

/// The corner ring `e R e` of an idempotent `e`, with identity `e`.
///
/// Local index `i` is the `i`-th smallest parent index in `e R e`.
#[derive(Debug, Clone)]
pub struct CornerRing {
    parent: Ring,
    idempotent: Elem,
    elements: Vec<Elem>,
    commutative: bool,
}

impl CornerRing {
    pub fn new(parent: Ring, e: Elem) -> Result<Self> {
        if parent.mul(e, e) != e {
            return Err(Error::invalid(format!(
                "{} is not idempotent",
                parent.render(e)
            )));
        }
        let mut elements: Vec<Elem> = (0..parent.size())
            .map(|r| parent.mul(parent.mul(e, r), e))
            .collect();
        elements.sort_unstable();
        elements.dedup();
        let mut corner = CornerRing {
            parent,
            idempotent: e,
            elements,
            commutative: false,
        };
        let gens = corner.additive_generators();
        corner.commutative = gens
            .iter()
            .all(|&a| gens.iter().all(|&b| corner.mul(a, b) == corner.mul(b, a)));
        Ok(corner)
    }

    pub fn parent(&self) -> &Ring {
        &self.parent
    }

    pub fn idempotent(&self) -> Elem {
        self.idempotent
    }

    /// Parent index of a local element.
    pub fn lift(&self, a: Elem) -> Elem {
        self.elements[a as usize]
    }

    /// Local index of a parent element lying in `e R e`.
    pub fn project(&self, x: Elem) -> Option<Elem> {
        self.elements.binary_search(&x).ok().map(|i| i as Elem)
    }

    fn local(&self, x: Elem) -> Elem {
        self.project(x).expect("corner ring is closed under its operations")
    }
}

impl FiniteRing for CornerRing {
    fn size(&self) -> u64 {
        self.elements.len() as u64
    }

    fn one(&self) -> Elem {
        self.local(self.idempotent)
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.local(self.parent.add(self.lift(a), self.lift(b)))
    }

    fn neg(&self, a: Elem) -> Elem {
        self.local(self.parent.neg(self.lift(a)))
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.local(self.parent.mul(self.lift(a), self.lift(b)))
    }

    fn characteristic(&self) -> u64 {
        super::additive_order(self, self.one())
    }

    fn is_commutative(&self) -> bool {
        self.commutative
    }

    fn label(&self) -> String {
        format!(
            "[{}]{}[{}]",
            self.parent.render(self.idempotent),
            self.parent.label(),
            self.parent.render(self.idempotent)
        )
    }

    fn render(&self, a: Elem) -> String {
        self.parent.render(self.lift(a))
    }

    fn parse_element(&self, s: &str) -> Result<Elem> {
        let x = self.parent.parse_element(s)?;
        self.project(x)
            .ok_or_else(|| Error::parse(0, format!("'{s}' is not in the corner ring")))
    }

    fn element_json(&self, a: Elem) -> serde_json::Value {
        self.parent.element_json(self.lift(a))
    }
}
