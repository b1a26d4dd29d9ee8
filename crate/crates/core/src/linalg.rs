//! Exact linear algebra over a small tabulated coefficient ring.
//!
//! Gaussian elimination needs a field; the meet-in-the-middle solver works
//! over any finite commutative ring by splitting the unknowns in two halves.

use crate::rings::{additive_order, is_prime, Elem, FiniteRing, Zmod};

/// Largest half-table the meet-in-the-middle solver will build.
pub const MITM_LIMIT: u64 = 1 << 22;

/// Operation tables of a small commutative ring, with inverses when it is a
/// field.
#[derive(Debug, Clone)]
pub struct Coefficients {
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    one: u32,
    inv: Option<Vec<u32>>,
}

impl Coefficients {
    pub fn from_ring<R: FiniteRing + ?Sized>(r: &R) -> Self {
        let q = r.size() as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = r.add(a as Elem, b as Elem) as u32;
                mul[a * q + b] = r.mul(a as Elem, b as Elem) as u32;
            }
        }
        let neg = (0..q).map(|a| r.neg(a as Elem) as u32).collect();
        let one = r.one() as u32;
        let mut inv = vec![0u32; q];
        let mut field = q >= 2;
        for a in 1..q {
            match (0..q).find(|&b| mul[a * q + b] == one) {
                Some(b) => inv[a] = b as u32,
                None => field = false,
            }
        }
        Coefficients {
            q,
            add,
            mul,
            neg,
            one,
            inv: field.then_some(inv),
        }
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn is_field(&self) -> bool {
        self.inv.is_some()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn inv(&self, a: u32) -> u32 {
        self.inv.as_ref().expect("inverse needs a field")[a as usize]
    }

    /// `y + c * x`, entrywise.
    fn axpy(&self, y: &mut [u32], c: u32, x: &[u32]) {
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = self.add(*yi, self.mul(c, xi));
        }
    }
}

/// Reduced row echelon form of `rows` in place; returns pivot columns.
fn rref(k: &Coefficients, rows: &mut [Vec<u32>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = k.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = k.mul(inv, *v);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = k.neg(row[c]);
                k.axpy(row, factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}` for an `m x n` matrix over a field.
pub fn kernel_basis(k: &Coefficients, matrix: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = matrix.first().map_or(0, |r| r.len());
    let mut rows = matrix.to_vec();
    let pivots = rref(k, &mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; n];
            v[f] = k.one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = k.neg(row[f]);
            }
            v
        })
        .collect()
}

pub fn rank(k: &Coefficients, matrix: &[Vec<u32>]) -> usize {
    let mut rows = matrix.to_vec();
    rref(k, &mut rows).len()
}

/// Row space of a set of vectors over a field, in echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(k: &Coefficients, vectors: &[Vec<u32>]) -> Self {
        let mut rows = vectors.to_vec();
        let pivots = rref(k, &mut rows);
        rows.truncate(pivots.len());
        Echelon { rows, pivots }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, k: &Coefficients, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if w[pc] != 0 {
                let factor = k.neg(w[pc]);
                k.axpy(&mut w, factor, row);
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// Coordinates of a small ring of prime characteristic `p` over the prime
/// field: its additive group is an `F_p`-vector space with the basis found
/// greedily in index order.
#[derive(Debug, Clone)]
pub struct PrimeFrame {
    fp: Coefficients,
    /// `multiples[j][c]` = `c * basis_j`.
    multiples: Vec<Vec<u32>>,
    coords: Vec<Vec<u32>>,
}

impl PrimeFrame {
    pub fn new<R: FiniteRing + ?Sized>(r: &R) -> Option<Self> {
        let p = additive_order(r, r.one());
        if !is_prime(p) {
            return None;
        }
        let fp = Coefficients::from_ring(&Zmod::new(p).ok()?);
        let q = r.size() as usize;
        let mut coords: Vec<Option<Vec<u32>>> = vec![None; q];
        coords[0] = Some(Vec::new());
        let mut members = vec![0 as Elem];
        let mut multiples = Vec::new();
        for e in 1..q as Elem {
            if coords[e as usize].is_some() {
                continue;
            }
            let j = multiples.len();
            let mut mult = vec![0 as Elem];
            for _ in 1..p {
                mult.push(r.add(*mult.last().expect("nonempty"), e));
            }
            for &s in &members.clone() {
                for (c, &m) in mult.iter().enumerate().skip(1) {
                    let t = r.add(s, m);
                    let mut v = coords[s as usize].clone().expect("member has coordinates");
                    v.resize(j, 0);
                    v.push(c as u32);
                    coords[t as usize] = Some(v);
                    members.push(t);
                }
            }
            multiples.push(mult.into_iter().map(|m| m as u32).collect());
        }
        let d = multiples.len();
        let coords = coords
            .into_iter()
            .map(|v| {
                let mut v = v.expect("greedy basis spans the additive group");
                v.resize(d, 0);
                v
            })
            .collect();
        Some(PrimeFrame { fp, multiples, coords })
    }

    pub fn prime_field(&self) -> &Coefficients {
        &self.fp
    }

    pub fn dimension(&self) -> usize {
        self.multiples.len()
    }

    /// Basis element `j` of the additive group.
    pub fn basis(&self, j: usize) -> u32 {
        self.multiples[j][1]
    }

    pub fn coords(&self, x: u32) -> &[u32] {
        &self.coords[x as usize]
    }

    /// `sum_j x_j * basis_j`, adding with the ring tables `k`.
    pub fn combine(&self, k: &Coefficients, x: &[u32]) -> u32 {
        x.iter()
            .zip(&self.multiples)
            .fold(0, |acc, (&c, mult)| k.add(acc, mult[c as usize]))
    }
}

/// Enumerates solutions of `M x = t` over any small commutative ring, in
/// ascending mixed-radix order of `x` (coordinate 0 least significant).
pub struct SplitSolver<'a> {
    k: &'a Coefficients,
    m: usize,
    n: usize,
    half: usize,
    /// `contrib[j][c]` = `c * column_j`.
    contrib: Vec<Vec<Vec<u32>>>,
    /// `(key of M_low x_low, x_low)` sorted.
    table: Vec<(u64, u64)>,
    low_count: u64,
}

impl<'a> SplitSolver<'a> {
    /// `columns[j]` is column `j` of `M` (length `m`). Returns `None` when
    /// the half table would exceed [`MITM_LIMIT`].
    pub fn new(k: &'a Coefficients, columns: &[Vec<u32>]) -> Option<Self> {
        let n = columns.len();
        let m = columns.first().map_or(0, |c| c.len());
        let q = k.size() as u64;
        let half = n / 2;
        let high = n - half;
        let low_count = q.checked_pow(half as u32)?;
        if low_count > MITM_LIMIT || q.checked_pow(high as u32)? > MITM_LIMIT {
            return None;
        }
        q.checked_pow(m as u32)?;
        let contrib: Vec<Vec<Vec<u32>>> = columns
            .iter()
            .map(|col| {
                (0..k.size() as u32)
                    .map(|c| col.iter().map(|&x| k.mul(c, x)).collect())
                    .collect()
            })
            .collect();
        let mut solver = SplitSolver {
            k,
            m,
            n,
            half,
            contrib,
            table: Vec::with_capacity(low_count as usize),
            low_count,
        };
        let mut table = Vec::with_capacity(low_count as usize);
        let mut acc = vec![0u32; m];
        for low in 0..low_count {
            solver.partial(low, 0, half, &mut acc);
            table.push((solver.key(&acc), low));
        }
        table.sort_unstable();
        solver.table = table;
        Some(solver)
    }

    fn partial(&self, idx: u64, from: usize, to: usize, acc: &mut [u32]) {
        acc.iter_mut().for_each(|v| *v = 0);
        let q = self.k.size() as u64;
        let mut rest = idx;
        for j in from..to {
            let c = (rest % q) as usize;
            rest /= q;
            if c != 0 {
                for (a, &x) in acc.iter_mut().zip(&self.contrib[j][c]) {
                    *a = self.k.add(*a, x);
                }
            }
        }
    }

    fn key(&self, v: &[u32]) -> u64 {
        let q = self.k.size() as u64;
        v.iter().rev().fold(0, |acc, &x| acc * q + x as u64)
    }

    /// Calls `visit(x)` for each solution (as a mixed-radix index) in
    /// ascending order until it returns `false`. Returns work done.
    pub fn for_each_solution(&self, target: &[u32], visit: &mut dyn FnMut(u64) -> bool) -> u64 {
        debug_assert_eq!(target.len(), self.m);
        let q = self.k.size() as u64;
        let high_count = q.pow((self.n - self.half) as u32);
        let mut acc = vec![0u32; self.m];
        let mut need = vec![0u32; self.m];
        let mut work = self.low_count;
        for high in 0..high_count {
            work += 1;
            self.partial(high, self.half, self.n, &mut acc);
            for ((nd, &t), &a) in need.iter_mut().zip(target).zip(&acc) {
                *nd = self.k.sub(t, a);
            }
            let key = self.key(&need);
            let start = self.table.partition_point(|&(k, _)| k < key);
            for &(k, low) in &self.table[start..] {
                if k != key {
                    break;
                }
                work += 1;
                if !visit(low + self.low_count * high) {
                    return work;
                }
            }
        }
        work
    }

    pub fn has_solution(&self, target: &[u32]) -> bool {
        let mut found = false;
        self.for_each_solution(target, &mut |_| {
            found = true;
            false
        });
        found
    }
}
