//! Finite rings with identity behind one index-based contract.
//!
//! Every ring enumerates its elements as dense indices `0..size`, with `0`
//! the zero element. Index order is the canonical element order used for
//! deterministic scans and witness selection.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::Result;

mod corner;
mod gf;
mod matrix;
mod parse;
mod structure;
mod sum;
mod table;
mod zmod;

pub use corner::CornerRing;
pub use gf::{find_irreducible, is_irreducible, is_prime, make_gf, make_gf_default, GaloisField};
pub use matrix::{make_matrix_ring, make_matrix_ring_capped, MatrixRing};
pub use parse::{parse_ring, parse_ring_capped};
pub use structure::{
    additive_generators, additive_order, additive_span, center, is_division_ring, is_nilpotent,
    is_semisimple, jacobson_radical, nilpotents, units, verify_ring_axioms,
};
pub use sum::{direct_sum, direct_sum_capped, DirectSum};
pub use table::{tabulate, TableRing, TABLE_LIMIT};
pub use zmod::{make_zmod, Zmod};

use crate::groupring::GroupRing;

/// Element of a finite ring, as its canonical index.
pub type Elem = u64;

/// Shared handle to any finite ring.
pub type Ring = Arc<dyn FiniteRing>;

/// Default cap on ring carriers that are scanned element by element.
pub const DEFAULT_RING_CAP: u64 = 1 << 20;

pub trait FiniteRing: Send + Sync + fmt::Debug {
    fn size(&self) -> u64;

    fn zero(&self) -> Elem {
        0
    }

    fn one(&self) -> Elem;

    fn add(&self, a: Elem, b: Elem) -> Elem;

    fn neg(&self, a: Elem) -> Elem;

    fn mul(&self, a: Elem, b: Elem) -> Elem;

    fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Additive order of `one`.
    fn characteristic(&self) -> u64;

    fn is_commutative(&self) -> bool;

    /// Canonical expression; re-parses to the same construction where the
    /// ring came from the expression language.
    fn label(&self) -> String;

    fn render(&self, a: Elem) -> String;

    fn parse_element(&self, s: &str) -> Result<Elem>;

    fn element_json(&self, a: Elem) -> serde_json::Value {
        serde_json::json!({ "index": a, "literal": self.render(a) })
    }

    /// Generators of the additive group.
    fn additive_generators(&self) -> Vec<Elem> {
        structure::greedy_additive_generators(self)
    }

    /// Generators of the ring as a module over its central coefficient
    /// subring (the integers for a bare ring, the base ring for a group
    /// ring). Every set the property checkers scan is closed under those
    /// coefficients, so testing a linear condition on these suffices.
    fn module_generators(&self) -> Vec<Elem> {
        self.additive_generators()
    }

    /// Elements generating the ring as a ring together with its central
    /// coefficients; an element is central iff it commutes with these.
    fn algebra_generators(&self) -> Vec<Elem> {
        self.module_generators()
    }

    fn is_unit(&self, a: Elem) -> bool {
        let one = self.one();
        (0..self.size()).any(|b| self.mul(a, b) == one)
    }

    /// Calls `visit` on every `b` with `a * b = 0` in ascending order until it
    /// returns `false`. Returns the number of candidates examined.
    fn for_each_right_annihilator(&self, a: Elem, visit: &mut dyn FnMut(Elem) -> bool) -> u64 {
        let mut work = 0;
        for b in 0..self.size() {
            work += 1;
            if self.mul(a, b) == 0 && !visit(b) {
                break;
            }
        }
        work
    }

    /// Module generators of the right annihilator of `a`, when the ring can
    /// compute them without enumerating the annihilator.
    fn right_annihilator_generators(&self, _a: Elem) -> Option<Vec<Elem>> {
        None
    }

    /// Membership test for the principal right ideal `a * R`.
    fn right_ideal_membership(&self, a: Elem) -> Box<dyn Fn(Elem) -> bool + Send + Sync + '_> {
        let set: HashSet<Elem> = (0..self.size()).map(|r| self.mul(a, r)).collect();
        Box::new(move |y| set.contains(&y))
    }

    /// Membership test for the principal left ideal `R * a`.
    fn left_ideal_membership(&self, a: Elem) -> Box<dyn Fn(Elem) -> bool + Send + Sync + '_> {
        let set: HashSet<Elem> = (0..self.size()).map(|r| self.mul(r, a)).collect();
        Box::new(move |y| set.contains(&y))
    }

    /// Structured candidate pairs `(a, b)` tried before a general
    /// reversibility scan.
    fn seed_pairs(&self) -> Vec<(Elem, Elem)> {
        Vec::new()
    }

    fn as_group_ring(&self) -> Option<&GroupRing> {
        None
    }
}

/// Which side(s) a subset ideal absorbs multiplication on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// An explicit subset of a ring claimed to be an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetIdeal {
    /// Sorted, deduplicated.
    pub carrier: Vec<Elem>,
    pub side: Side,
}

impl SubsetIdeal {
    pub fn new(mut carrier: Vec<Elem>, side: Side) -> Self {
        carrier.sort_unstable();
        carrier.dedup();
        SubsetIdeal { carrier, side }
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.carrier.binary_search(&a).is_ok()
    }

    pub fn is_additive_subgroup<R: FiniteRing + ?Sized>(&self, r: &R) -> bool {
        self.contains(r.zero())
            && self.carrier.iter().all(|&a| self.contains(r.neg(a)))
            && self
                .carrier
                .iter()
                .all(|&a| self.carrier.iter().all(|&b| self.contains(r.add(a, b))))
    }

    /// `x * a` stays inside for every `x`.
    pub fn absorbs_left<R: FiniteRing + ?Sized>(&self, r: &R) -> bool {
        let gens = r.additive_generators();
        self.carrier
            .iter()
            .all(|&a| gens.iter().all(|&x| self.contains(r.mul(x, a))))
    }

    /// `a * x` stays inside for every `x`.
    pub fn absorbs_right<R: FiniteRing + ?Sized>(&self, r: &R) -> bool {
        let gens = r.additive_generators();
        self.carrier
            .iter()
            .all(|&a| gens.iter().all(|&x| self.contains(r.mul(a, x))))
    }

    /// Checks closure plus absorption on the declared side(s).
    pub fn is_valid<R: FiniteRing + ?Sized>(&self, r: &R) -> bool {
        self.is_additive_subgroup(r)
            && match self.side {
                Side::Left => self.absorbs_left(r),
                Side::Right => self.absorbs_right(r),
                Side::TwoSided => self.absorbs_left(r) && self.absorbs_right(r),
            }
    }
}

/// Mixed-radix digits of `idx`, least significant first.
pub(crate) fn digits(mut idx: u64, radix: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(idx % radix);
        idx /= radix;
    }
    out
}

pub(crate) fn undigits(ds: &[u64], radix: u64) -> u64 {
    ds.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Splits `s` at top-level occurrences of `sep` (outside any brackets).
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Reads an integer literal (possibly negative) as a multiple of one.
pub(crate) fn integer_element<R: FiniteRing + ?Sized>(r: &R, s: &str) -> Option<Elem> {
    let s = s.trim();
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let k: u128 = digits.parse().ok()?;
    let k = (k % r.characteristic() as u128) as u64;
    let e = structure::multiple(r, r.one(), k);
    Some(if negative { r.neg(e) } else { e })
}
