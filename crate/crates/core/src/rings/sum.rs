use std::sync::Arc;

use super::zmod::gcd;
use super::{split_top_level, tabulate, Elem, FiniteRing, Ring, DEFAULT_RING_CAP};
use crate::error::{Error, Result};

/// Componentwise ring on a tuple of parts; part 0 is the least significant
/// mixed-radix digit.
#[derive(Debug, Clone)]
pub struct DirectSum {
    parts: Vec<Ring>,
    radix: Vec<u64>,
    size: u64,
}

impl DirectSum {
    pub fn new(parts: Vec<Ring>, cap: u64) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("direct sum needs at least one part"));
        }
        let mut radix = Vec::with_capacity(parts.len());
        let mut size: u64 = 1;
        for p in &parts {
            radix.push(size);
            size = size.checked_mul(p.size()).filter(|&s| s <= cap).ok_or_else(|| {
                Error::CapExceeded {
                    what: "direct sum".into(),
                    needed: parts.iter().map(|p| p.size() as u128).product(),
                    cap: cap as u128,
                }
            })?;
        }
        Ok(DirectSum { parts, radix, size })
    }

    pub fn parts(&self) -> &[Ring] {
        &self.parts
    }

    pub fn component(&self, a: Elem, i: usize) -> Elem {
        a / self.radix[i] % self.parts[i].size()
    }

    pub fn components(&self, a: Elem) -> Vec<Elem> {
        (0..self.parts.len()).map(|i| self.component(a, i)).collect()
    }

    pub fn encode(&self, comps: &[Elem]) -> Elem {
        comps.iter().zip(&self.radix).map(|(c, r)| c * r).sum()
    }

    /// Image of a part element with zeros elsewhere.
    pub fn embed(&self, i: usize, e: Elem) -> Elem {
        let mut comps: Vec<Elem> = self.parts.iter().map(|p| p.zero()).collect();
        comps[i] = e;
        self.encode(&comps)
    }

    fn zip_with(&self, a: Elem, b: Elem, f: impl Fn(&Ring, Elem, Elem) -> Elem) -> Elem {
        let comps: Vec<Elem> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, p)| f(p, self.component(a, i), self.component(b, i)))
            .collect();
        self.encode(&comps)
    }
}

pub fn direct_sum(parts: &[Ring]) -> Result<Ring> {
    direct_sum_capped(parts, DEFAULT_RING_CAP)
}

pub fn direct_sum_capped(parts: &[Ring], cap: u64) -> Result<Ring> {
    Ok(tabulate(Arc::new(DirectSum::new(parts.to_vec(), cap)?)))
}

impl FiniteRing for DirectSum {
    fn size(&self) -> u64 {
        self.size
    }

    fn one(&self) -> Elem {
        let comps: Vec<Elem> = self.parts.iter().map(|p| p.one()).collect();
        self.encode(&comps)
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.zip_with(a, b, |p, x, y| p.add(x, y))
    }

    fn neg(&self, a: Elem) -> Elem {
        self.zip_with(a, a, |p, x, _| p.neg(x))
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.zip_with(a, b, |p, x, y| p.mul(x, y))
    }

    fn characteristic(&self) -> u64 {
        self.parts
            .iter()
            .map(|p| p.characteristic())
            .fold(1, |acc, c| acc / gcd(acc, c) * c)
    }

    fn is_commutative(&self) -> bool {
        self.parts.iter().all(|p| p.is_commutative())
    }

    fn label(&self) -> String {
        self.parts
            .iter()
            .map(|p| {
                let l = p.label();
                if self.parts.len() > 1 && l.contains("(+)") {
                    format!("({l})")
                } else {
                    l
                }
            })
            .collect::<Vec<_>>()
            .join("(+)")
    }

    fn render(&self, a: Elem) -> String {
        let comps: Vec<String> = (0..self.parts.len())
            .map(|i| self.parts[i].render(self.component(a, i)))
            .collect();
        format!("({})", comps.join(", "))
    }

    fn parse_element(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, format!("direct-sum literal must be (a, b, ..): '{s}'")))?;
        let pieces = split_top_level(inner, ',');
        if pieces.len() != self.parts.len() {
            return Err(Error::parse(0, format!("expected {} components", self.parts.len())));
        }
        let comps = pieces
            .iter()
            .zip(&self.parts)
            .map(|(piece, p)| p.parse_element(piece))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.encode(&comps))
    }

    fn additive_generators(&self) -> Vec<Elem> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.additive_generators().into_iter().map(move |g| (i, g)))
            .map(|(i, g)| self.embed(i, g))
            .collect()
    }

    fn is_unit(&self, a: Elem) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, p)| p.is_unit(self.component(a, i)))
    }
}
