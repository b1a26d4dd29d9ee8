use std::sync::Arc;

use super::{Elem, FiniteRing, Ring};
use crate::error::Result;

/// Rings up to this size get memoized operation tables.
pub const TABLE_LIMIT: u64 = 1024;

/// A ring with memoized `add`/`mul`/`neg` tables. Rendering, parsing and the
/// label are delegated to the ring it was built from; indices are unchanged.
#[derive(Debug)]
pub struct TableRing {
    size: u64,
    one: Elem,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    unit: Vec<bool>,
    characteristic: u64,
    commutative: bool,
    additive_generators: Vec<Elem>,
    source: Ring,
}

impl TableRing {
    /// Tabulates `source`. Panics if `source` exceeds [`TABLE_LIMIT`].
    pub fn new(source: Ring) -> Self {
        let size = source.size();
        assert!(size <= TABLE_LIMIT, "table ring too large");
        let n = size as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = source.add(a as Elem, b as Elem) as u16;
                mul[a * n + b] = source.mul(a as Elem, b as Elem) as u16;
            }
        }
        let neg = (0..n).map(|a| source.neg(a as Elem) as u16).collect();
        let one = source.one();
        let unit = (0..n).map(|a| (0..n).any(|b| mul[a * n + b] as Elem == one)).collect();
        TableRing {
            size,
            one,
            add,
            mul,
            neg,
            unit,
            characteristic: source.characteristic(),
            commutative: source.is_commutative(),
            additive_generators: source.additive_generators(),
            source,
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }
}

/// Wraps `ring` in a [`TableRing`] when it is small enough.
pub fn tabulate(ring: Ring) -> Ring {
    if ring.size() <= TABLE_LIMIT {
        Arc::new(TableRing::new(ring))
    } else {
        ring
    }
}

impl FiniteRing for TableRing {
    fn size(&self) -> u64 {
        self.size
    }

    fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[(a * self.size + b) as usize] as Elem
    }

    #[inline]
    fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize] as Elem
    }

    #[inline]
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[(a * self.size + b) as usize] as Elem
    }

    fn characteristic(&self) -> u64 {
        self.characteristic
    }

    fn is_commutative(&self) -> bool {
        self.commutative
    }

    fn label(&self) -> String {
        self.source.label()
    }

    fn render(&self, a: Elem) -> String {
        self.source.render(a)
    }

    fn parse_element(&self, s: &str) -> Result<Elem> {
        self.source.parse_element(s)
    }

    fn element_json(&self, a: Elem) -> serde_json::Value {
        self.source.element_json(a)
    }

    fn additive_generators(&self) -> Vec<Elem> {
        self.additive_generators.clone()
    }

    fn is_unit(&self, a: Elem) -> bool {
        self.unit[a as usize]
    }
}
