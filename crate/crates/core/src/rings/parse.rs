//! Ring expressions: `Z/<n>`, `GF(<p>)`, `GF(<p>^<k>)`, `M<n>(<ring>)`,
//! sums joined by `(+)`, parentheses, and group rings `<ring>[<group>]`.

use std::sync::Arc;

use super::{direct_sum_capped, make_gf_default, make_matrix_ring_capped, make_zmod, Ring, DEFAULT_RING_CAP};
use crate::error::{Error, Result};
use crate::groupring::GroupRing;
use crate::groups::parse_group;

pub fn parse_ring(expr: &str) -> Result<Ring> {
    parse_ring_capped(expr, DEFAULT_RING_CAP)
}

pub fn parse_ring_capped(expr: &str, cap: u64) -> Result<Ring> {
    let mut p = Parser { src: expr, pos: 0, cap };
    let ring = p.sum()?;
    p.skip_ws();
    if p.pos != expr.len() {
        return Err(Error::parse(p.pos, format!("unexpected '{}'", &expr[p.pos..])));
    }
    Ok(ring)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    cap: u64,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{token}'")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let len = self.rest().chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Err(Error::parse(self.pos, "expected a number"));
        }
        let v = self.rest()[..len]
            .parse()
            .map_err(|_| Error::parse(self.pos, "number out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn sum(&mut self) -> Result<Ring> {
        let mut parts = vec![self.term()?];
        while self.eat("(+)") {
            parts.push(self.term()?);
        }
        if parts.len() == 1 {
            Ok(parts.pop().unwrap())
        } else {
            direct_sum_capped(&parts, self.cap)
        }
    }

    fn term(&mut self) -> Result<Ring> {
        let mut ring = self.atom()?;
        loop {
            self.skip_ws();
            if !self.rest().starts_with('[') {
                break;
            }
            let start = self.pos + 1;
            let close = self.rest().find(']').ok_or_else(|| Error::parse(self.pos, "unclosed '['"))?;
            let group_expr = &self.src[start..self.pos + close];
            let group = parse_group(group_expr).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::parse(start + pos, msg),
                other => other,
            })?;
            ring = Arc::new(GroupRing::new(ring, Arc::new(group))?);
            self.pos += close + 1;
        }
        Ok(ring)
    }

    fn atom(&mut self) -> Result<Ring> {
        self.skip_ws();
        let at = self.pos;
        if self.eat("Z/") {
            make_zmod(self.number()?)
        } else if self.eat("GF(") {
            let p = self.number()?;
            let k = if self.eat("^") { self.number()? } else { 1 };
            self.expect(")")?;
            make_gf_default(p, k as usize).map_err(|e| match e {
                Error::Parse { .. } => e,
                other => Error::parse(at, other.to_string()),
            })
        } else if self.eat("M") {
            let n = self.number()?;
            self.expect("(")?;
            let base = self.sum()?;
            self.expect(")")?;
            make_matrix_ring_capped(base, n as usize, self.cap)
        } else if self.rest().starts_with('(') && !self.rest().starts_with("(+)") {
            self.pos += 1;
            let inner = self.sum()?;
            self.expect(")")?;
            Ok(inner)
        } else {
            Err(Error::parse(at, "expected Z/<n>, GF(..), M<n>(..) or '('"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_expressions() {
        assert_eq!(parse_ring("Z/4").unwrap().size(), 4);
        assert_eq!(parse_ring("GF(2^2)").unwrap().size(), 4);
        assert_eq!(parse_ring("GF(3)").unwrap().size(), 3);
        assert_eq!(parse_ring("M2(GF(2))").unwrap().size(), 16);
        let s = parse_ring("GF(2)(+)Z/3").unwrap();
        assert_eq!(s.size(), 6);
        assert_eq!(s.characteristic(), 6);
        let gr = parse_ring("GF(2)[Q8]").unwrap();
        assert_eq!(gr.size(), 256);
        let mixed = parse_ring("GF(2)[Q8](+)Z/3").unwrap();
        assert_eq!(mixed.size(), 768);
    }

    #[test]
    fn labels_round_trip() {
        for expr in [
            "Z/12",
            "GF(2^3)",
            "M2(GF(2))",
            "GF(2)(+)Z/3",
            "(GF(2)(+)Z/3)(+)M2(GF(2))",
            "GF(2)[Q8](+)Z/3",
            "Z/4[C2]",
            "M2(Z/2(+)Z/3)",
        ] {
            let r = parse_ring(expr).unwrap();
            let again = parse_ring(&r.label()).unwrap();
            assert_eq!(again.label(), r.label(), "{expr}");
            assert_eq!(again.size(), r.size());
            let n = r.size().min(50);
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(r.mul(a, b), again.mul(a, b));
                }
            }
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_ring("GF(2)(+)Q/3") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_ring("Z/4 junk"), Err(Error::Parse { pos: 4, .. })));
        assert!(parse_ring("GF(4)").is_err());
        assert!(parse_ring("M2(GF(2)").is_err());
        assert!(matches!(parse_ring("Z/2[Q9]"), Err(Error::Parse { pos: 4, .. })));
    }
}
