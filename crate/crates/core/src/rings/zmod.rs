use std::sync::Arc;

use super::{integer_element, Elem, FiniteRing, Ring};
use crate::error::{Error, Result};

/// Integers modulo `n`, computed on the fly.
#[derive(Debug, Clone)]
pub struct Zmod {
    n: u64,
}

impl Zmod {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("Z/{n}: modulus must be at least 2")));
        }
        if n > u32::MAX as u64 {
            return Err(Error::invalid(format!("Z/{n}: modulus too large")));
        }
        Ok(Zmod { n })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }
}

pub fn make_zmod(n: u64) -> Result<Ring> {
    Ok(Arc::new(Zmod::new(n)?))
}

impl FiniteRing for Zmod {
    fn size(&self) -> u64 {
        self.n
    }

    fn one(&self) -> Elem {
        1
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        (a + b) % self.n
    }

    fn neg(&self, a: Elem) -> Elem {
        (self.n - a) % self.n
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        a * b % self.n
    }

    fn characteristic(&self) -> u64 {
        self.n
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn label(&self) -> String {
        format!("Z/{}", self.n)
    }

    fn render(&self, a: Elem) -> String {
        a.to_string()
    }

    fn parse_element(&self, s: &str) -> Result<Elem> {
        integer_element(self, s).ok_or_else(|| Error::parse(0, format!("not an integer: '{s}'")))
    }

    fn additive_generators(&self) -> Vec<Elem> {
        vec![1]
    }

    fn is_unit(&self, a: Elem) -> bool {
        gcd(a, self.n) == 1
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
