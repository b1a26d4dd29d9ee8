use std::sync::Arc;

use super::{
    checked_pow, digits, is_division_ring, split_top_level, tabulate, undigits, Elem, FiniteRing,
    Ring, Side, SubsetIdeal, DEFAULT_RING_CAP,
};
use crate::error::{Error, Result};

/// `n x n` matrices over a base ring; entry `(i, j)` is digit `i*n + j` of
/// the mixed-radix index.
#[derive(Debug, Clone)]
pub struct MatrixRing {
    base: Ring,
    n: usize,
    size: u64,
}

impl MatrixRing {
    pub fn new(base: Ring, n: usize, cap: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("matrix dimension must be at least 1"));
        }
        if !base.is_commutative() && !is_division_ring(&*base) {
            return Err(Error::invalid(format!(
                "matrix base {} must be commutative or a division ring",
                base.label()
            )));
        }
        let size = checked_pow(base.size(), (n * n) as u32)
            .filter(|&s| s <= cap)
            .ok_or_else(|| Error::CapExceeded {
                what: format!("M{n}({})", base.label()),
                needed: (base.size() as u128).saturating_pow((n * n) as u32),
                cap: cap as u128,
            })?;
        Ok(MatrixRing { base, n, size })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn entries(&self, a: Elem) -> Vec<Elem> {
        digits(a, self.base.size(), self.n * self.n)
    }

    pub fn encode(&self, entries: &[Elem]) -> Elem {
        undigits(entries, self.base.size())
    }

    /// The matrix unit `E_ij`.
    pub fn matrix_unit(&self, i: usize, j: usize) -> Elem {
        let mut e = vec![self.base.zero(); self.n * self.n];
        e[i * self.n + j] = self.base.one();
        self.encode(&e)
    }

    /// Matrices whose rows other than the first are zero; a right ideal
    /// that is not a left ideal once `n >= 2`.
    pub fn first_row_ideal(&self) -> SubsetIdeal {
        let q = self.base.size();
        let n = self.n;
        let carrier = (0..q.pow(n as u32))
            .map(|row| {
                let mut e = digits(row, q, n);
                e.resize(n * n, self.base.zero());
                self.encode(&e)
            })
            .collect();
        SubsetIdeal::new(carrier, Side::Right)
    }
}

pub fn make_matrix_ring(base: Ring, n: usize) -> Result<Ring> {
    make_matrix_ring_capped(base, n, DEFAULT_RING_CAP)
}

pub fn make_matrix_ring_capped(base: Ring, n: usize, cap: u64) -> Result<Ring> {
    Ok(tabulate(Arc::new(MatrixRing::new(base, n, cap)?)))
}

impl FiniteRing for MatrixRing {
    fn size(&self) -> u64 {
        self.size
    }

    fn one(&self) -> Elem {
        let n = self.n;
        let e: Vec<Elem> = (0..n * n)
            .map(|k| if k / n == k % n { self.base.one() } else { self.base.zero() })
            .collect();
        self.encode(&e)
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.entries(a), self.entries(b));
        let s: Vec<Elem> = x.iter().zip(&y).map(|(&u, &v)| self.base.add(u, v)).collect();
        self.encode(&s)
    }

    fn neg(&self, a: Elem) -> Elem {
        let s: Vec<Elem> = self.entries(a).iter().map(|&u| self.base.neg(u)).collect();
        self.encode(&s)
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let n = self.n;
        let (x, y) = (self.entries(a), self.entries(b));
        let mut out = vec![self.base.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.base.zero();
                for k in 0..n {
                    acc = self.base.add(acc, self.base.mul(x[i * n + k], y[k * n + j]));
                }
                out[i * n + j] = acc;
            }
        }
        self.encode(&out)
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn is_commutative(&self) -> bool {
        self.n == 1 && self.base.is_commutative()
    }

    fn label(&self) -> String {
        format!("M{}({})", self.n, self.base.label())
    }

    fn render(&self, a: Elem) -> String {
        let n = self.n;
        let e = self.entries(a);
        let rows: Vec<String> = (0..n)
            .map(|i| {
                let cells: Vec<String> = (0..n).map(|j| self.base.render(e[i * n + j])).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    fn parse_element(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(0, format!("matrix literal must be [[..],..]: '{s}'")))?;
        let rows = split_top_level(inner, ',');
        if rows.len() != self.n {
            return Err(Error::parse(0, format!("expected {} rows", self.n)));
        }
        let mut entries = Vec::with_capacity(self.n * self.n);
        for row in rows {
            let row = row.trim();
            let cells = row
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::parse(0, format!("bad matrix row '{row}'")))?;
            let cells = split_top_level(cells, ',');
            if cells.len() != self.n {
                return Err(Error::parse(0, format!("expected {} columns", self.n)));
            }
            for c in cells {
                entries.push(self.base.parse_element(c)?);
            }
        }
        Ok(self.encode(&entries))
    }

    fn additive_generators(&self) -> Vec<Elem> {
        let gens = self.base.additive_generators();
        let n = self.n;
        let mut out = Vec::new();
        for k in 0..n * n {
            for &g in &gens {
                let mut e = vec![self.base.zero(); n * n];
                e[k] = g;
                out.push(self.encode(&e));
            }
        }
        out
    }
}
