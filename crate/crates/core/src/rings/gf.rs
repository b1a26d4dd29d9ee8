use std::sync::Arc;

use super::{digits, integer_element, undigits, Elem, FiniteRing, Ring};
use crate::error::{Error, Result};

/// Largest field this crate tabulates.
const FIELD_LIMIT: u64 = 1024;

/// `GF(p^k)` as polynomials over `Z/p` modulo an irreducible polynomial.
///
/// Element index is `sum c_i p^i` for the coefficient vector `c` of the
/// residue (constant term first).
#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    size: u64,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    default_modulus: bool,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero residue mod a prime")
}

/// Remainder of `a` modulo `m` over `Z/p`; `m` must be nonzero.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod(*m.last().expect("nonzero modulus"), p);
    while r.len() >= m.len() {
        let shift = r.len() - m.len();
        let factor = r.last().unwrap() * lead_inv % p;
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - factor * mc % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Exhaustive factor search: no monic divisor of degree `1..=deg/2`.
pub fn is_irreducible(p: u64, modulus: &[u64]) -> bool {
    let m = trim(modulus.to_vec());
    if m.len() < 2 {
        return false;
    }
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut f = digits(low, p, d);
            f.push(1);
            if poly_rem(&m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of degree `k` in coefficient index order.
pub fn find_irreducible(p: u64, k: usize) -> Option<Vec<u64>> {
    (0..p.checked_pow(k as u32)?).find_map(|low| {
        let mut m = digits(low, p, k);
        m.push(1);
        is_irreducible(p, &m).then_some(m)
    })
}

/// `GF(p^k)` with the built-in modulus (first monic irreducible).
pub fn make_gf_default(p: u64, k: usize) -> Result<Ring> {
    let modulus = if is_prime(p) {
        find_irreducible(p, k).ok_or_else(|| Error::invalid("no irreducible polynomial"))?
    } else {
        return Err(Error::NotPrime(p));
    };
    Ok(Arc::new(GaloisField::build(p, k, modulus, true)?))
}

/// `GF(p^k)` modulo the given polynomial (coefficients constant term first).
pub fn make_gf(p: u64, k: usize, modulus: &[u64]) -> Result<Ring> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let m = trim(modulus.iter().map(|c| c % p).collect());
    if m.len() != k + 1 {
        return Err(Error::invalid(format!("modulus must have degree {k}")));
    }
    if !is_irreducible(p, &m) {
        return Err(Error::ReducibleModulus(p));
    }
    let lead_inv = inv_mod(m[k], p);
    let monic: Vec<u64> = m.iter().map(|c| c * lead_inv % p).collect();
    let default = find_irreducible(p, k).as_deref() == Some(monic.as_slice());
    Ok(Arc::new(GaloisField::build(p, k, monic, default)?))
}

impl GaloisField {
    fn build(p: u64, k: usize, modulus: Vec<u64>, default_modulus: bool) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("field degree must be at least 1"));
        }
        let size = p
            .checked_pow(k as u32)
            .filter(|&s| s <= FIELD_LIMIT)
            .ok_or_else(|| Error::CapExceeded {
                what: format!("GF({p}^{k})"),
                needed: (p as u128).saturating_pow(k as u32),
                cap: FIELD_LIMIT as u128,
            })?;
        let n = size as usize;
        let coeffs: Vec<Vec<u64>> = (0..size).map(|i| digits(i, p, k)).collect();
        let encode = |v: &[u64]| {
            let mut full = v.to_vec();
            full.resize(k, 0);
            undigits(&full, p) as u32
        };
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u64> = coeffs[a].iter().zip(&coeffs[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = encode(&s);
                let prod = poly_rem(&poly_mul(&trim(coeffs[a].clone()), &trim(coeffs[b].clone()), p), &modulus, p);
                mul[a * n + b] = encode(&prod);
            }
        }
        let neg = (0..n)
            .map(|a| encode(&coeffs[a].iter().map(|&c| (p - c) % p).collect::<Vec<_>>()))
            .collect();
        Ok(GaloisField {
            p,
            k,
            modulus,
            size,
            add,
            mul,
            neg,
            default_modulus,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn coeffs(&self, a: Elem) -> Vec<u64> {
        digits(a, self.p, self.k)
    }

    fn parse_polynomial(&self, s: &str) -> Result<Elem> {
        let p = self.p;
        let mut acc = vec![0u64; self.k];
        let normalized = s.replace('-', "+-");
        for raw in normalized.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                continue;
            }
            let (negative, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, term),
            };
            let (coef, power) = match body.split_once('*') {
                Some((c, rest)) => (c.trim(), Some(rest.trim())),
                None if body.starts_with('t') => ("1", Some(body)),
                None => (body, None),
            };
            let coef: u64 = coef
                .parse::<u64>()
                .map_err(|_| Error::parse(0, format!("bad field coefficient in '{term}'")))?
                % p;
            let degree = match power {
                None => 0,
                Some("t") => 1,
                Some(t) => t
                    .strip_prefix("t^")
                    .and_then(|d| d.trim().parse::<usize>().ok())
                    .ok_or_else(|| Error::parse(0, format!("bad field term '{term}'")))?,
            };
            let coef = if negative { (p - coef) % p } else { coef };
            // reduce t^degree modulo the modulus
            let mut mono = vec![0u64; degree + 1];
            mono[degree] = coef;
            let reduced = poly_rem(&mono, &self.modulus, p);
            for (i, c) in reduced.into_iter().enumerate() {
                acc[i] = (acc[i] + c) % p;
            }
        }
        Ok(undigits(&acc, p))
    }
}

impl FiniteRing for GaloisField {
    fn size(&self) -> u64 {
        self.size
    }

    fn one(&self) -> Elem {
        1
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[(a * self.size + b) as usize] as Elem
    }

    fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize] as Elem
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[(a * self.size + b) as usize] as Elem
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn label(&self) -> String {
        let base = if self.k == 1 {
            format!("GF({})", self.p)
        } else {
            format!("GF({}^{})", self.p, self.k)
        };
        if self.default_modulus {
            base
        } else {
            let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            format!("{base}{{{}}}", m.join(","))
        }
    }

    fn render(&self, a: Elem) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        let c = self.coeffs(a);
        let terms: Vec<String> = (0..self.k)
            .rev()
            .filter(|&d| c[d] != 0)
            .map(|d| match (d, c[d]) {
                (0, v) => v.to_string(),
                (1, 1) => "t".to_string(),
                (1, v) => format!("{v}*t"),
                (d, 1) => format!("t^{d}"),
                (d, v) => format!("{v}*t^{d}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    fn parse_element(&self, s: &str) -> Result<Elem> {
        match integer_element(self, s) {
            Some(e) => Ok(e),
            None => self.parse_polynomial(s),
        }
    }

    fn additive_generators(&self) -> Vec<Elem> {
        (0..self.k).map(|i| self.p.pow(i as u32)).collect()
    }

    fn is_unit(&self, a: Elem) -> bool {
        a != 0
    }
}
