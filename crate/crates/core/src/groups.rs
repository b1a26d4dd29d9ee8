//! Finite groups given by explicit multiplication tables.
//!
//! Elements are dense indices `0..order`. Every constructor validates the
//! table (Latin square, identity, associativity) before handing it out, so a
//! `FiniteGroup` value is always a group.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default cap on the order of a constructed group.
pub const DEFAULT_GROUP_CAP: usize = 256;

const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
const ASSOCIATIVITY_SAMPLES: usize = 10_000;
const ASSOCIATIVITY_SEED: u64 = 0x5eed_9a55;

/// A word in the generators: `(generator index, exponent)` factors.
pub type Word = Vec<(usize, u32)>;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    label: String,
    generator_names: Vec<String>,
    words: Vec<Word>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table and validates it.
    ///
    /// `words` gives a normal-form word for every element, used for
    /// rendering and parsing element literals.
    pub fn from_table(
        table: Vec<u32>,
        label: impl Into<String>,
        generator_names: Vec<String>,
        words: Vec<Word>,
    ) -> Result<Self> {
        let n2 = table.len();
        let order = (n2 as f64).sqrt().round() as usize;
        if order == 0 || order * order != n2 {
            return Err(Error::InvalidGroup(format!(
                "table length {n2} is not a positive square"
            )));
        }
        if words.len() != order {
            return Err(Error::InvalidGroup("one word per element required".into()));
        }
        for w in &words {
            if w.iter().any(|&(g, _)| g >= generator_names.len()) {
                return Err(Error::InvalidGroup("word uses unknown generator".into()));
            }
        }
        if table.iter().any(|&v| v as usize >= order) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        let mut seen = vec![false; order];
        for r in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..order {
                let v = table[r * order + c] as usize;
                if seen[v] {
                    return Err(Error::InvalidGroup(format!("row {r} is not a permutation")));
                }
                seen[v] = true;
            }
        }
        for c in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..order {
                let v = table[r * order + c] as usize;
                if seen[v] {
                    return Err(Error::InvalidGroup(format!(
                        "column {c} is not a permutation"
                    )));
                }
                seen[v] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| {
                (0..order).all(|g| table[e * order + g] as usize == g && table[g * order + e] as usize == g)
            })
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![0; order];
        for (g, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&h| table[g * order + h] as usize == identity)
                .expect("Latin square row contains identity");
        }
        let group = FiniteGroup {
            order,
            table,
            identity,
            inverse,
            label: label.into(),
            generator_names,
            words,
        };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Least `k >= 1` with `e^k = 1`.
    pub fn element_order(&self, e: usize) -> usize {
        let mut k = 1;
        let mut acc = e;
        while acc != self.identity {
            acc = self.mul(acc, e);
            k += 1;
        }
        k
    }

    /// `<e>` listed as `1, e, e^2, ...`.
    pub fn cyclic_subgroup(&self, e: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut acc = e;
        while acc != self.identity {
            out.push(acc);
            acc = self.mul(acc, e);
        }
        out
    }

    /// Smallest subgroup containing `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(self.identity);
        let mut frontier = vec![self.identity];
        while let Some(h) = frontier.pop() {
            for &g in gens {
                let p = self.mul(h, g);
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        if s.iter().any(|&e| e >= self.order) {
            return false;
        }
        let mut member = vec![false; self.order];
        for &e in s {
            member[e] = true;
        }
        member[self.identity]
            && s.iter().all(|&a| member[self.inv(a)])
            && s.iter().all(|&a| s.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Whether the subgroup `s` is normal. Errors if `s` is not a subgroup.
    pub fn is_normal(&self, s: &[usize]) -> Result<bool> {
        if !self.is_subgroup(s) {
            return Err(Error::NotSubgroup);
        }
        let mut member = vec![false; self.order];
        for &e in s {
            member[e] = true;
        }
        Ok((0..self.order).all(|a| {
            let ai = self.inv(a);
            s.iter().all(|&h| member[self.mul(self.mul(a, h), ai)])
        }))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Non-abelian with every cyclic subgroup normal.
    pub fn is_hamiltonian(&self) -> bool {
        !self.is_abelian()
            && (0..self.order).all(|e| {
                self.is_normal(&self.cyclic_subgroup(e))
                    .expect("cyclic subgroups are subgroups")
            })
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let class: BTreeSet<usize> = (0..self.order)
                .map(|a| self.mul(self.mul(a, g), self.inv(a)))
                .collect();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    pub fn word(&self, e: usize) -> &Word {
        &self.words[e]
    }

    /// Renders an element as a word such as `x^2*y`; the identity is `1`.
    pub fn render_element(&self, e: usize) -> String {
        let w = &self.words[e];
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&(g, k)| {
                let name = &self.generator_names[g];
                if k == 1 {
                    name.clone()
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parses a word `g1^k1*g2*...` (or `1`) over the named generators.
    pub fn parse_word(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(0, "empty group word"));
        }
        let mut acc = self.identity;
        let mut offset = 0;
        for factor in s.split('*') {
            let f = factor.trim();
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => {
                    let k: u64 = e.trim().parse().map_err(|_| {
                        Error::parse(offset, format!("bad exponent in '{f}'"))
                    })?;
                    (n.trim(), k)
                }
                None => (f, 1),
            };
            let g = if name == "1" {
                self.identity
            } else {
                let gi = self
                    .generator_names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::parse(offset, format!("unknown generator '{name}'")))?;
                self.generator_element(gi)
            };
            acc = self.mul(acc, self.pow(g, exp));
            offset += factor.len() + 1;
        }
        Ok(acc)
    }

    /// The element whose normal-form word is the single generator `gi`.
    pub fn generator_element(&self, gi: usize) -> usize {
        self.words
            .iter()
            .position(|w| w.as_slice() == [(gi, 1)])
            .expect("every generator has a one-letter word")
    }
}

/// Cyclic group of order `n`, generator `c`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::invalid("cyclic group order must be positive"));
    }
    let table = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
        .collect();
    let words = (0..n)
        .map(|i| if i == 0 { vec![] } else { vec![(0, i as u32)] })
        .collect();
    let names = if n == 1 { vec![] } else { vec!["c".to_string()] };
    let words = if n == 1 { vec![vec![]] } else { words };
    FiniteGroup::from_table(table, format!("C{n}"), names, words)
}

fn q8_mul(a: usize, b: usize) -> usize {
    let (i, j) = (a % 4, a / 4);
    let (k, l) = (b % 4, b / 4);
    // y x^k = x^-k y and y^2 = x^2
    let e = if j == 0 { i + k } else { i + 4 - k };
    if j + l == 2 {
        (e + 2) % 4
    } else {
        e % 4 + 4 * ((j + l) % 2)
    }
}

/// The quaternion group `<x, y | x^4 = 1, x^2 = y^2, y^-1 x y = x^-1>`.
///
/// Element `i + 4j` is `x^i y^j`, so the order is
/// `1, x, x^2, x^3, y, xy, x^2y, x^3y`.
pub fn make_quaternion8() -> FiniteGroup {
    let table = (0..8)
        .flat_map(|a| (0..8).map(move |b| q8_mul(a, b) as u32))
        .collect();
    let words = (0..8)
        .map(|e| {
            let (i, j) = (e % 4, e / 4);
            let mut w = Vec::new();
            if i > 0 {
                w.push((0, i as u32));
            }
            if j > 0 {
                w.push((1, 1));
            }
            w
        })
        .collect();
    let g = FiniteGroup::from_table(table, "Q8", vec!["x".into(), "y".into()], words)
        .expect("quaternion table is a group");
    let (x, y) = (1, 4);
    debug_assert_eq!(g.pow(x, 4), g.identity());
    debug_assert_eq!(g.pow(x, 2), g.pow(y, 2));
    debug_assert_eq!(g.mul(g.mul(g.inv(y), x), y), g.inv(x));
    g
}

/// Dihedral group of order `2n`; element `i + n*j` is `r^i s^j`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::invalid("dihedral group needs n >= 3"));
    }
    let m = 2 * n;
    let mut table = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let (i, j) = (a % n, a / n);
            let (k, l) = (b % n, b / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            table.push((rot + n * ((j + l) % 2)) as u32);
        }
    }
    let words = (0..m)
        .map(|e| {
            let (i, j) = (e % n, e / n);
            let mut w = Vec::new();
            if i > 0 {
                w.push((0, i as u32));
            }
            if j > 0 {
                w.push((1, 1));
            }
            w
        })
        .collect();
    FiniteGroup::from_table(table, format!("D{n}"), vec!["r".into(), "s".into()], words)
}

/// Direct product with the default order cap.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_capped(g, h, DEFAULT_GROUP_CAP)
}

/// Direct product; element `(a, b)` has index `a + |g| * b`.
pub fn direct_product_capped(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let (ng, nh) = (g.order(), h.order());
    let order = ng * nh;
    if order > cap {
        return Err(Error::CapExceeded {
            what: format!("group {}x{}", g.label, h.label),
            needed: order as u128,
            cap: cap as u128,
        });
    }
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            let a = g.mul(x % ng, y % ng);
            let b = h.mul(x / ng, y / ng);
            table.push((a + ng * b) as u32);
        }
    }
    let mut names = g.generator_names.clone();
    let offset = names.len();
    for name in &h.generator_names {
        let mut candidate = name.clone();
        let mut suffix = 2;
        while names.contains(&candidate) {
            candidate = format!("{name}{suffix}");
            suffix += 1;
        }
        names.push(candidate);
    }
    let words = (0..order)
        .map(|x| {
            let mut w = g.words[x % ng].clone();
            w.extend(h.words[x / ng].iter().map(|&(gi, k)| (gi + offset, k)));
            w
        })
        .collect();
    FiniteGroup::from_table(table, format!("{}x{}", g.label, h.label), names, words)
}

/// Parses `Q8`, `C<n>`, `D<n>` joined by `x`, left-associatively.
pub fn parse_group(expr: &str) -> Result<FiniteGroup> {
    parse_group_capped(expr, DEFAULT_GROUP_CAP)
}

pub fn parse_group_capped(expr: &str, cap: usize) -> Result<FiniteGroup> {
    let mut acc: Option<FiniteGroup> = None;
    let mut pos = 0;
    for part in expr.split('x') {
        let tok = part.trim();
        let factor = parse_group_factor(tok, pos)?;
        acc = Some(match acc {
            None => factor,
            Some(prev) => direct_product_capped(&prev, &factor, cap)?,
        });
        pos += part.len() + 1;
    }
    let g = acc.ok_or_else(|| Error::parse(0, "empty group expression"))?;
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: format!("group {}", g.label),
            needed: g.order() as u128,
            cap: cap as u128,
        });
    }
    Ok(g)
}

fn parse_group_factor(tok: &str, pos: usize) -> Result<FiniteGroup> {
    let number = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| Error::parse(pos, format!("expected a number in group factor '{tok}'")))
    };
    match tok.chars().next() {
        _ if tok == "Q8" => Ok(make_quaternion8()),
        Some('C') => make_cyclic(number(&tok[1..])?),
        Some('D') => make_dihedral(number(&tok[1..])?),
        _ => Err(Error::parse(pos, format!("unknown group factor '{tok}'"))),
    }
}
