//! Group rings `RG` of a finite group over a finite commutative ring.
//!
//! An element is its coefficient vector indexed by group elements. As a
//! [`FiniteRing`] the element index is the mixed-radix number with the
//! coefficient of group element `0` (the identity for the built-in groups)
//! as least significant digit.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{kernel_basis, rank, Coefficients, Echelon, PrimeFrame, SplitSolver};
use crate::rings::{
    additive_order, integer_element, split_top_level, verify_ring_axioms, Elem, FiniteRing, Ring,
};

/// Largest coefficient ring accepted as a group-ring base.
pub const BASE_LIMIT: u64 = 1024;

const MAX_GROUP: usize = 256;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    parent: u64,
    coeffs: Vec<u32>,
}

impl GroupRingElement {
    /// Coefficient of group element `g`, as a base-ring index.
    pub fn coeff(&self, g: usize) -> Elem {
        self.coeffs[g] as Elem
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Result of a right-annihilator computation.
#[derive(Debug, Clone)]
pub struct AnnihilatorDescriptor {
    /// Basis over the coefficient field, when the base is a field.
    pub basis: Option<Vec<GroupRingElement>>,
    /// Elements in canonical order; partial when `complete` is false.
    pub elements: Vec<GroupRingElement>,
    pub complete: bool,
}

#[derive(Debug)]
pub struct GroupRing {
    id: u64,
    base: Ring,
    k: Coefficients,
    /// Prime-field coordinates of a base that is not a field but has prime
    /// characteristic.
    frame: Option<PrimeFrame>,
    group: Arc<FiniteGroup>,
    n: usize,
    q: u64,
    radix: Vec<u64>,
    size: u64,
    characteristic: u64,
    commutative: bool,
}

impl GroupRing {
    pub fn new(base: Ring, group: Arc<FiniteGroup>) -> Result<Self> {
        if !base.is_commutative() {
            return Err(Error::invalid(format!(
                "group ring base {} must be commutative",
                base.label()
            )));
        }
        let q = base.size();
        if q > BASE_LIMIT {
            return Err(Error::CapExceeded {
                what: format!("group ring base {}", base.label()),
                needed: q as u128,
                cap: BASE_LIMIT as u128,
            });
        }
        let n = group.order();
        if n > MAX_GROUP {
            return Err(Error::CapExceeded {
                what: format!("group {}", group.label()),
                needed: n as u128,
                cap: MAX_GROUP as u128,
            });
        }
        let size = q.checked_pow(n as u32).ok_or_else(|| Error::CapExceeded {
            what: format!("{}[{}]", base.label(), group.label()),
            needed: (q as u128).saturating_pow(n as u32),
            cap: u64::MAX as u128,
        })?;
        let radix = (0..n).map(|i| q.pow(i as u32)).collect();
        let k = Coefficients::from_ring(&*base);
        let commutative = group.is_abelian();
        let frame = if k.is_field() { None } else { PrimeFrame::new(&*base) };
        let mut gr = GroupRing {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            base,
            k,
            frame,
            group,
            n,
            q,
            radix,
            size,
            characteristic: 0,
            commutative,
        };
        gr.characteristic = additive_order(&gr, gr.one());
        verify_ring_axioms(&gr, 16, 256, 0x6a0u64 ^ gr.size)?;
        Ok(gr)
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn base_is_field(&self) -> bool {
        self.k.is_field()
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.k
    }

    fn wrap(&self, coeffs: Vec<u32>) -> GroupRingElement {
        GroupRingElement {
            parent: self.id,
            coeffs,
        }
    }

    fn check(&self, a: &GroupRingElement) -> Result<()> {
        if a.parent != self.id {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    /// Element with the given base-ring coefficients, one per group element.
    pub fn element(&self, coeffs: &[Elem]) -> Result<GroupRingElement> {
        if coeffs.len() != self.n {
            return Err(Error::invalid(format!(
                "expected {} coefficients, got {}",
                self.n,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.q) {
            return Err(Error::invalid(format!("coefficient {c} is not a base element")));
        }
        Ok(self.wrap(coeffs.iter().map(|&c| c as u32).collect()))
    }

    pub fn zero_element(&self) -> GroupRingElement {
        self.wrap(vec![0; self.n])
    }

    pub fn one_element(&self) -> GroupRingElement {
        self.basis(self.group.identity())
    }

    /// The group element `g` as a ring element.
    pub fn basis(&self, g: usize) -> GroupRingElement {
        let mut c = vec![0; self.n];
        c[g] = self.k.one();
        self.wrap(c)
    }

    pub fn encode(&self, a: &GroupRingElement) -> Elem {
        self.encode_slice(&a.coeffs)
    }

    pub fn decode(&self, idx: Elem) -> GroupRingElement {
        let mut c = vec![0; self.n];
        self.decode_into(idx, &mut c);
        self.wrap(c)
    }

    #[inline]
    fn encode_slice(&self, c: &[u32]) -> Elem {
        c.iter().zip(&self.radix).map(|(&x, &r)| x as u64 * r).sum()
    }

    #[inline]
    fn decode_into(&self, mut idx: Elem, out: &mut [u32]) {
        for slot in out.iter_mut() {
            *slot = (idx % self.q) as u32;
            idx /= self.q;
        }
    }

    #[inline]
    fn convolve(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        out.iter_mut().for_each(|v| *v = 0);
        let table = self.group.table();
        for (g, &ag) in a.iter().enumerate() {
            if ag == 0 {
                continue;
            }
            let row = &table[g * self.n..(g + 1) * self.n];
            for (h, &bh) in b.iter().enumerate() {
                if bh != 0 {
                    let gh = row[h] as usize;
                    out[gh] = self.k.add(out[gh], self.k.mul(ag, bh));
                }
            }
        }
    }

    pub fn gr_mul(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = vec![0; self.n];
        self.convolve(&a.coeffs, &b.coeffs, &mut out);
        Ok(self.wrap(out))
    }

    pub fn gr_add(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.k.add(x, y)).collect()))
    }

    pub fn gr_neg(&self, a: &GroupRingElement) -> GroupRingElement {
        self.wrap(a.coeffs.iter().map(|&x| self.k.neg(x)).collect())
    }

    /// Classical involution: the coefficient of `g` moves to `g^-1`.
    pub fn involution(&self, a: &GroupRingElement) -> GroupRingElement {
        let mut out = vec![0; self.n];
        for (g, &c) in a.coeffs.iter().enumerate() {
            out[self.group.inv(g)] = c;
        }
        self.wrap(out)
    }

    pub fn involution_index(&self, a: Elem) -> Elem {
        self.encode(&self.involution(&self.decode(a)))
    }

    /// Coefficient of the group identity.
    pub fn trace(&self, a: &GroupRingElement) -> Elem {
        a.coeffs[self.group.identity()] as Elem
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self, a: &GroupRingElement) -> Elem {
        a.coeffs.iter().fold(0, |acc, &c| self.k.add(acc, c)) as Elem
    }

    /// Matrix of `b -> a*b` on coefficient vectors, as rows.
    pub fn left_mul_matrix(&self, a: &GroupRingElement) -> Vec<Vec<Elem>> {
        to_rows(&self.left_columns(&a.coeffs))
    }

    /// Matrix of `b -> b*a` on coefficient vectors, as rows.
    pub fn right_mul_matrix(&self, a: &GroupRingElement) -> Vec<Vec<Elem>> {
        to_rows(&self.right_columns(&a.coeffs))
    }

    /// Column `h` is `a * h`.
    fn left_columns(&self, a: &[u32]) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|h| {
                let mut col = vec![0; self.n];
                for (g, &ag) in a.iter().enumerate() {
                    col[self.group.mul(g, h)] = ag;
                }
                col
            })
            .collect()
    }

    /// Column `h` is `h * a`.
    fn right_columns(&self, a: &[u32]) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|h| {
                let mut col = vec![0; self.n];
                for (g, &ag) in a.iter().enumerate() {
                    col[self.group.mul(h, g)] = ag;
                }
                col
            })
            .collect()
    }

    fn transpose(cols: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let m = cols.first().map_or(0, |c| c.len());
        (0..m).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }

    /// All `b` with `a*b = 0`. Over a field the basis comes from
    /// elimination; elements are listed in canonical order, at most `limit`.
    pub fn right_annihilator(&self, a: &GroupRingElement, limit: usize) -> Result<AnnihilatorDescriptor> {
        self.check(a)?;
        let basis = if self.k.is_field() {
            Some(
                kernel_basis(&self.k, &Self::transpose(&self.left_columns(&a.coeffs)))
                    .into_iter()
                    .map(|v| self.wrap(v))
                    .collect(),
            )
        } else {
            None
        };
        let mut elements = Vec::new();
        let mut complete = true;
        self.for_each_right_annihilator(self.encode(a), &mut |b| {
            if elements.len() == limit {
                complete = false;
                return false;
            }
            elements.push(self.decode(b));
            true
        });
        Ok(AnnihilatorDescriptor {
            basis,
            elements,
            complete,
        })
    }

    fn render_coeff(&self, c: u32) -> String {
        let s = self.base.render(c as Elem);
        if !s.chars().all(|c| c.is_ascii_digit()) {
            format!("({s})")
        } else {
            s
        }
    }

    pub fn render_element(&self, a: &GroupRingElement) -> String {
        let one = self.k.one();
        let terms: Vec<String> = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(g, &c)| {
                if g == self.group.identity() {
                    self.render_coeff(c)
                } else if c == one {
                    self.group.render_element(g)
                } else {
                    format!("{}*{}", self.render_coeff(c), self.group.render_element(g))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Parses literals such as `1 + x + 2*x^2*y` or `(t + 1)*x`.
    pub fn parse_literal(&self, s: &str) -> Result<GroupRingElement> {
        let mut acc = vec![0u32; self.n];
        for (offset, negative, term) in split_signed_terms(s)? {
            let factors = split_top_level(term, '*');
            let first = factors[0].trim();
            let (coef, word_factors) = if first.starts_with('(') || first.chars().all(|c| c.is_ascii_digit()) {
                let coef = if let Some(inner) = first.strip_prefix('(').and_then(|f| f.strip_suffix(')')) {
                    self.base.parse_element(inner).map_err(|e| shift(e, offset))?
                } else {
                    integer_element(&*self.base, first)
                        .ok_or_else(|| Error::parse(offset, format!("bad coefficient '{first}'")))?
                };
                (coef as u32, &factors[1..])
            } else {
                (self.k.one(), &factors[..])
            };
            let g = if word_factors.is_empty() {
                self.group.identity()
            } else {
                self.group
                    .parse_word(&word_factors.join("*"))
                    .map_err(|e| shift(e, offset))?
            };
            let c = if negative { self.k.neg(coef) } else { coef };
            acc[g] = self.k.add(acc[g], c);
        }
        Ok(self.wrap(acc))
    }

    pub fn element_to_json(&self, a: &GroupRingElement) -> serde_json::Value {
        serde_json::json!({
            "index": self.encode(a),
            "literal": self.render_element(a),
            "coeffs": a.coeffs,
            "group": self.group.label(),
            "ring": self.base.label(),
        })
    }
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::parse(offset + pos, msg),
        other => other,
    }
}

/// Splits at top-level `+`/`-`; yields `(byte offset, negative, term)`.
fn split_signed_terms(s: &str) -> Result<Vec<(usize, bool, &str)>> {
    let mut cuts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if ch == '-' && cuts.is_empty() && !negative && s[start..i].trim().is_empty() {
                    negative = true;
                } else {
                    cuts.push((start, i, negative));
                    negative = ch == '-';
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    cuts.push((start, s.len(), negative));
    cuts.into_iter()
        .map(|(from, to, neg)| {
            let raw = &s[from..to];
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::parse(from, "empty term"));
            }
            Ok((from + (raw.len() - raw.trim_start().len()), neg, term))
        })
        .collect()
}

fn to_rows(cols: &[Vec<u32>]) -> Vec<Vec<Elem>> {
    let m = cols.first().map_or(0, |c| c.len());
    (0..m).map(|i| cols.iter().map(|c| c[i] as Elem).collect()).collect()
}

impl FiniteRing for GroupRing {
    fn size(&self) -> u64 {
        self.size
    }

    fn one(&self) -> Elem {
        self.k.one() as u64 * self.radix[self.group.identity()]
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        let (mut x, mut y) = ([0u32; MAX_GROUP], [0u32; MAX_GROUP]);
        let (x, y) = (&mut x[..self.n], &mut y[..self.n]);
        self.decode_into(a, x);
        self.decode_into(b, y);
        for (xi, &yi) in x.iter_mut().zip(y.iter()) {
            *xi = self.k.add(*xi, yi);
        }
        self.encode_slice(x)
    }

    fn neg(&self, a: Elem) -> Elem {
        let mut x = [0u32; MAX_GROUP];
        let x = &mut x[..self.n];
        self.decode_into(a, x);
        for xi in x.iter_mut() {
            *xi = self.k.neg(*xi);
        }
        self.encode_slice(x)
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (mut x, mut y, mut z) = ([0u32; MAX_GROUP], [0u32; MAX_GROUP], [0u32; MAX_GROUP]);
        let (x, y, z) = (&mut x[..self.n], &mut y[..self.n], &mut z[..self.n]);
        self.decode_into(a, x);
        self.decode_into(b, y);
        self.convolve(x, y, z);
        self.encode_slice(z)
    }

    fn characteristic(&self) -> u64 {
        self.characteristic
    }

    fn is_commutative(&self) -> bool {
        self.commutative
    }

    fn label(&self) -> String {
        let base = self.base.label();
        if base.contains("(+)") {
            format!("({base})[{}]", self.group.label())
        } else {
            format!("{base}[{}]", self.group.label())
        }
    }

    fn render(&self, a: Elem) -> String {
        self.render_element(&self.decode(a))
    }

    fn parse_element(&self, s: &str) -> Result<Elem> {
        Ok(self.encode(&self.parse_literal(s)?))
    }

    fn element_json(&self, a: Elem) -> serde_json::Value {
        self.element_to_json(&self.decode(a))
    }

    fn additive_generators(&self) -> Vec<Elem> {
        let gens = self.base.additive_generators();
        (0..self.n)
            .flat_map(|g| gens.iter().map(move |&c| c * self.radix[g]))
            .collect()
    }

    fn module_generators(&self) -> Vec<Elem> {
        (0..self.n).map(|g| self.encode(&self.basis(g))).collect()
    }

    fn is_unit(&self, a: Elem) -> bool {
        let coeffs = self.decode(a).coeffs;
        let cols = self.left_columns(&coeffs);
        if self.k.is_field() {
            return rank(&self.k, &Self::transpose(&cols)) == self.n;
        }
        if let Some(f) = &self.frame {
            let pcols = self.prime_columns(f, &cols);
            return rank(f.prime_field(), &Self::transpose(&pcols)) == pcols.len();
        }
        match SplitSolver::new(&self.k, &cols) {
            Some(solver) => {
                let mut count = 0;
                solver.for_each_solution(&vec![0; self.n], &mut |_| {
                    count += 1;
                    count < 2
                });
                count == 1
            }
            None => {
                let one = self.one();
                (0..self.size).any(|b| self.mul(a, b) == one)
            }
        }
    }

    fn for_each_right_annihilator(&self, a: Elem, visit: &mut dyn FnMut(Elem) -> bool) -> u64 {
        let coeffs = self.decode(a).coeffs;
        let cols = self.left_columns(&coeffs);
        match SplitSolver::new(&self.k, &cols) {
            Some(solver) => solver.for_each_solution(&vec![0; self.n], visit),
            None => {
                let mut work = 0;
                for b in 0..self.size {
                    work += 1;
                    if self.mul(a, b) == 0 && !visit(b) {
                        break;
                    }
                }
                work
            }
        }
    }

    fn right_annihilator_generators(&self, a: Elem) -> Option<Vec<Elem>> {
        let cols = self.left_columns(&self.decode(a).coeffs);
        if let Some(f) = &self.frame {
            let pcols = self.prime_columns(f, &cols);
            return Some(
                kernel_basis(f.prime_field(), &Self::transpose(&pcols))
                    .iter()
                    .map(|x| self.element_from_prime(f, x))
                    .collect(),
            );
        }
        if !self.k.is_field() {
            return None;
        }
        Some(
            kernel_basis(&self.k, &Self::transpose(&cols))
                .iter()
                .map(|v| self.encode_slice(v))
                .collect(),
        )
    }

    fn right_ideal_membership(&self, a: Elem) -> Box<dyn Fn(Elem) -> bool + Send + Sync + '_> {
        let cols = self.left_columns(&self.decode(a).coeffs);
        self.column_space_membership(cols)
    }

    fn left_ideal_membership(&self, a: Elem) -> Box<dyn Fn(Elem) -> bool + Send + Sync + '_> {
        let cols = self.right_columns(&self.decode(a).coeffs);
        self.column_space_membership(cols)
    }

    /// Pairs `(g(1 - x), 1 + x + ... + x^(n-1))` with `n` the order of `x`;
    /// their product is zero and the reversed product vanishes exactly when
    /// `g x g^-1` lies in `<x>`.
    fn seed_pairs(&self) -> Vec<(Elem, Elem)> {
        let id = self.group.identity();
        let one = self.k.one();
        let minus_one = self.k.neg(one);
        let mut seeds = Vec::new();
        for x in (0..self.n).filter(|&x| x != id) {
            let mut b = vec![0u32; self.n];
            for p in self.group.cyclic_subgroup(x) {
                b[p] = one;
            }
            let b = self.encode_slice(&b);
            for g in 0..self.n {
                let mut a = vec![0u32; self.n];
                a[g] = one;
                let gx = self.group.mul(g, x);
                a[gx] = self.k.add(a[gx], minus_one);
                seeds.push((self.encode_slice(&a), b));
            }
        }
        seeds
    }

    fn as_group_ring(&self) -> Option<&GroupRing> {
        Some(self)
    }
}

impl GroupRing {
    /// Columns of the `F_p`-linear map with coefficient columns `cols`, one
    /// per pair (group element, base basis element).
    fn prime_columns(&self, f: &PrimeFrame, cols: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let d = f.dimension();
        cols.iter()
            .flat_map(|col| {
                (0..d).map(move |j| {
                    let beta = f.basis(j);
                    col.iter()
                        .flat_map(|&c| f.coords(self.k.mul(beta, c)).iter().copied())
                        .collect()
                })
            })
            .collect()
    }

    fn prime_coords(&self, f: &PrimeFrame, coeffs: &[u32]) -> Vec<u32> {
        coeffs.iter().flat_map(|&c| f.coords(c).iter().copied()).collect()
    }

    fn element_from_prime(&self, f: &PrimeFrame, x: &[u32]) -> Elem {
        let coeffs: Vec<u32> = x.chunks(f.dimension()).map(|chunk| f.combine(&self.k, chunk)).collect();
        self.encode_slice(&coeffs)
    }

    fn column_space_membership(&self, cols: Vec<Vec<u32>>) -> Box<dyn Fn(Elem) -> bool + Send + Sync + '_> {
        if let Some(f) = &self.frame {
            let span = Echelon::new(f.prime_field(), &self.prime_columns(f, &cols));
            return Box::new(move |y| {
                let mut v = vec![0u32; self.n];
                self.decode_into(y, &mut v);
                span.contains(f.prime_field(), &self.prime_coords(f, &v))
            });
        }
        if self.k.is_field() {
            let span = Echelon::new(&self.k, &cols);
            Box::new(move |y| {
                let mut v = vec![0u32; self.n];
                self.decode_into(y, &mut v);
                span.contains(&self.k, &v)
            })
        } else if let Some(solver) = SplitSolver::new(&self.k, &cols) {
            Box::new(move |y| {
                let mut v = vec![0u32; self.n];
                self.decode_into(y, &mut v);
                solver.has_solution(&v)
            })
        } else {
            let a_cols = cols;
            Box::new(move |y| {
                (0..self.size).any(|r| {
                    let mut x = vec![0u32; self.n];
                    self.decode_into(r, &mut x);
                    let mut out = vec![0u32; self.n];
                    for (col, &c) in a_cols.iter().zip(&x) {
                        for (o, &v) in out.iter_mut().zip(col) {
                            *o = self.k.add(*o, self.k.mul(c, v));
                        }
                    }
                    self.encode_slice(&out) == y
                })
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_cyclic, make_quaternion8};
    use crate::rings::{make_gf_default, make_zmod};

    fn f2q8() -> GroupRing {
        GroupRing::new(make_gf_default(2, 1).unwrap(), Arc::new(make_quaternion8())).unwrap()
    }

    #[test]
    fn basis_products() {
        let r = f2q8();
        let g = r.group().clone();
        for a in 0..8 {
            for b in 0..8 {
                let p = r.gr_mul(&r.basis(a), &r.basis(b)).unwrap();
                assert_eq!(p, r.basis(g.mul(a, b)));
            }
        }
        let a = r.parse_literal("1 + x + y").unwrap();
        assert_eq!(r.gr_mul(&a, &r.one_element()).unwrap(), a);
    }

    #[test]
    fn eq1_product_vanishes() {
        let r = f2q8();
        let a = r.parse_literal("1 + x").unwrap();
        let b = r.parse_literal("1 + x + x^2 + x^3").unwrap();
        assert!(r.gr_mul(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn parent_mismatch() {
        let r1 = f2q8();
        let r2 = f2q8();
        assert_eq!(
            r1.gr_mul(&r1.one_element(), &r2.one_element()),
            Err(Error::ParentMismatch)
        );
    }

    #[test]
    fn involution_and_trace_basics() {
        let r = f2q8();
        let x = r.basis(1);
        assert_eq!(r.involution(&x), r.basis(3));
        assert_eq!(r.trace(&r.one_element()), 1);
        for g in 1..8 {
            assert_eq!(r.trace(&r.basis(g)), 0);
        }
        let one_minus_x = r.parse_literal("1 - x").unwrap();
        assert_eq!(r.augmentation(&one_minus_x), 0);
        assert_eq!(r.augmentation(&r.basis(5)), 1);
    }

    #[test]
    fn left_mul_matrix_shapes() {
        let r = f2q8();
        let id = r.left_mul_matrix(&r.one_element());
        for (i, row) in id.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, u64::from(i == j));
            }
        }
        let g = 5;
        let perm = r.left_mul_matrix(&r.basis(g));
        for (i, row) in perm.iter().enumerate() {
            for (h, &v) in row.iter().enumerate() {
                assert_eq!(v, u64::from(i == r.group().mul(g, h)));
            }
        }
    }

    #[test]
    fn annihilator_examples() {
        let r = f2q8();
        let unit = r.one_element();
        let ann = r.right_annihilator(&unit, 1000).unwrap();
        assert_eq!(ann.elements, vec![r.zero_element()]);
        assert!(ann.basis.unwrap().is_empty());

        let a = r.parse_literal("1 + x").unwrap();
        let ann = r.right_annihilator(&a, 1000).unwrap();
        let target = r.parse_literal("1 + x + x^2 + x^3").unwrap();
        assert!(ann.complete);
        assert!(ann.elements.contains(&target));
        assert_eq!(ann.elements.len(), 1 << ann.basis.as_ref().unwrap().len());

        let zero = r.zero_element();
        let all = r.right_annihilator(&zero, 1000).unwrap();
        assert_eq!(all.elements.len(), 256);
        let partial = r.right_annihilator(&zero, 10).unwrap();
        assert!(!partial.complete);
        assert_eq!(partial.elements.len(), 10);
    }

    #[test]
    fn literals_round_trip() {
        let r = f2q8();
        for idx in (0..256).step_by(7) {
            let e = r.decode(idx);
            assert_eq!(r.parse_literal(&r.render_element(&e)).unwrap(), e);
        }
        let f4 = GroupRing::new(make_gf_default(2, 2).unwrap(), Arc::new(make_cyclic(3).unwrap())).unwrap();
        for idx in 0..64 {
            assert_eq!(f4.parse_element(&f4.render(idx)).unwrap(), idx);
        }
        let z4 = GroupRing::new(make_zmod(4).unwrap(), Arc::new(make_quaternion8())).unwrap();
        assert_eq!(z4.render(z4.parse_element("3*x^2*y - 1").unwrap()), "3 + 3*x^2*y");
        assert!(matches!(z4.parse_literal("1 + z"), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn characteristic_follows_base() {
        for n in 2..7 {
            let r = GroupRing::new(make_zmod(n).unwrap(), Arc::new(make_cyclic(2).unwrap())).unwrap();
            assert_eq!(r.characteristic(), n);
        }
    }

    #[test]
    fn units_over_non_field_base() {
        let r = GroupRing::new(make_zmod(4).unwrap(), Arc::new(make_cyclic(2).unwrap())).unwrap();
        let brute: Vec<Elem> = (0..16).filter(|&a| (0..16).any(|b| r.mul(a, b) == r.one())).collect();
        let fast: Vec<Elem> = (0..16).filter(|&a| r.is_unit(a)).collect();
        assert_eq!(brute, fast);
    }

    #[test]
    fn prime_characteristic_base_agrees_with_brute_force() {
        let base = crate::rings::parse_ring("GF(2)(+)GF(2)").unwrap();
        let r = GroupRing::new(base, Arc::new(make_cyclic(3).unwrap())).unwrap();
        assert!(r.frame.is_some());
        for a in 0..r.size() {
            let ann: Vec<Elem> = (0..r.size()).filter(|&b| r.mul(a, b) == 0).collect();
            let gens = r.right_annihilator_generators(a).unwrap();
            assert!(gens.iter().all(|&g| r.mul(a, g) == 0));
            let mut span = std::collections::BTreeSet::from([0]);
            for &g in &gens {
                let old: Vec<Elem> = span.iter().copied().collect();
                span.extend(old.iter().map(|&s| r.add(s, g)));
            }
            assert_eq!(span.into_iter().collect::<Vec<_>>(), ann);
            let unit = (0..r.size()).any(|b| r.mul(a, b) == r.one());
            assert_eq!(r.is_unit(a), unit);
            let member = r.right_ideal_membership(a);
            for y in 0..r.size() {
                let brute = (0..r.size()).any(|x| r.mul(a, x) == y);
                assert_eq!(member(y), brute);
            }
        }
    }
}

