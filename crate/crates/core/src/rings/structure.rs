//! Structural queries on finite rings: units, nilpotents, Jacobson radical,
//! center, additive spans.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, FiniteRing, Side, SubsetIdeal};
use crate::error::{Error, Result};

/// `k * a` by double-and-add.
pub(crate) fn multiple<R: FiniteRing + ?Sized>(r: &R, a: Elem, mut k: u64) -> Elem {
    let mut acc = r.zero();
    let mut base = a;
    while k > 0 {
        if k & 1 == 1 {
            acc = r.add(acc, base);
        }
        base = r.add(base, base);
        k >>= 1;
    }
    acc
}

pub fn additive_order<R: FiniteRing + ?Sized>(r: &R, a: Elem) -> u64 {
    let mut k = 1;
    let mut acc = a;
    while acc != r.zero() {
        acc = r.add(acc, a);
        k += 1;
    }
    k
}

/// Extends the subgroup marked in `member`/`list` by the generator `g`.
fn close_under(r: &(impl FiniteRing + ?Sized), member: &mut [bool], list: &mut Vec<Elem>, g: Elem) {
    let snapshot = list.len();
    for i in 0..snapshot {
        let mut t = r.add(list[i], g);
        while !member[t as usize] {
            member[t as usize] = true;
            list.push(t);
            t = r.add(t, g);
        }
    }
}

pub(crate) fn greedy_additive_generators<R: FiniteRing + ?Sized>(r: &R) -> Vec<Elem> {
    let n = r.size() as usize;
    let mut member = vec![false; n];
    member[r.zero() as usize] = true;
    let mut list = vec![r.zero()];
    let mut gens = Vec::new();
    for a in 0..n as u64 {
        if list.len() == n {
            break;
        }
        if !member[a as usize] {
            gens.push(a);
            close_under(r, &mut member, &mut list, a);
        }
    }
    gens
}

/// Sorted additive subgroup generated by `gens`.
pub fn additive_span<R: FiniteRing + ?Sized>(r: &R, gens: &[Elem]) -> Vec<Elem> {
    let mut member = vec![false; r.size() as usize];
    member[r.zero() as usize] = true;
    let mut list = vec![r.zero()];
    for &g in gens {
        if !member[g as usize] {
            close_under(r, &mut member, &mut list, g);
        }
    }
    list.sort_unstable();
    list
}

pub fn additive_generators<R: FiniteRing + ?Sized>(r: &R) -> Vec<Elem> {
    r.additive_generators()
}

pub fn units<R: FiniteRing + ?Sized>(r: &R) -> Vec<Elem> {
    (0..r.size()).filter(|&a| r.is_unit(a)).collect()
}

fn squaring_rounds(size: u64) -> u32 {
    64 - size.saturating_sub(1).leading_zeros() + 1
}

/// `a^(2^m) = 0` with `2^m >= 2 * size`; in a finite ring every nilpotent
/// element has index at most `size`.
pub fn is_nilpotent<R: FiniteRing + ?Sized>(r: &R, a: Elem) -> bool {
    let mut x = a;
    for _ in 0..squaring_rounds(r.size()) {
        if x == r.zero() {
            return true;
        }
        x = r.mul(x, x);
    }
    x == r.zero()
}

pub fn nilpotents<R: FiniteRing + ?Sized>(r: &R) -> Vec<Elem> {
    (0..r.size()).filter(|&a| is_nilpotent(r, a)).collect()
}

/// `{a : 1 - x*a is a unit for every x}`.
pub fn jacobson_radical<R: FiniteRing + ?Sized>(r: &R) -> SubsetIdeal {
    let n = r.size();
    let unit: Vec<bool> = (0..n).map(|a| r.is_unit(a)).collect();
    let one = r.one();
    let carrier = (0..n)
        .filter(|&a| (0..n).all(|x| unit[r.sub(one, r.mul(x, a)) as usize]))
        .collect();
    SubsetIdeal::new(carrier, Side::TwoSided)
}

pub fn is_semisimple<R: FiniteRing + ?Sized>(r: &R) -> bool {
    let n = r.size();
    let unit: Vec<bool> = (0..n).map(|a| r.is_unit(a)).collect();
    let one = r.one();
    (1..n).all(|a| (0..n).any(|x| !unit[r.sub(one, r.mul(x, a)) as usize]))
}

pub fn is_division_ring<R: FiniteRing + ?Sized>(r: &R) -> bool {
    r.size() >= 2 && (0..r.size()).filter(|&a| a != r.zero()).all(|a| r.is_unit(a))
}

pub fn center<R: FiniteRing + ?Sized>(r: &R) -> Vec<Elem> {
    let gens = r.algebra_generators();
    (0..r.size())
        .filter(|&a| gens.iter().all(|&g| r.mul(a, g) == r.mul(g, a)))
        .collect()
}

/// Checks the ring axioms, the identity and the commutativity flag:
/// exhaustively when `size <= exhaustive_limit`, otherwise on `samples`
/// seeded random triples.
pub fn verify_ring_axioms<R: FiniteRing + ?Sized>(
    r: &R,
    exhaustive_limit: u64,
    samples: usize,
    seed: u64,
) -> Result<()> {
    let n = r.size();
    let check = |a: Elem, b: Elem, c: Elem| -> Result<()> {
        let fail = |what: &str| Err(Error::InvalidRing(format!("{what} fails at ({a}, {b}, {c})")));
        if r.add(r.add(a, b), c) != r.add(a, r.add(b, c)) {
            return fail("additive associativity");
        }
        if r.add(a, b) != r.add(b, a) {
            return fail("additive commutativity");
        }
        if r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)) {
            return fail("multiplicative associativity");
        }
        if r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)) {
            return fail("left distributivity");
        }
        if r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)) {
            return fail("right distributivity");
        }
        if r.is_commutative() && r.mul(a, b) != r.mul(b, a) {
            return fail("declared commutativity");
        }
        Ok(())
    };
    let unary = |a: Elem| -> Result<()> {
        if r.add(a, r.zero()) != a || r.add(a, r.neg(a)) != r.zero() {
            return Err(Error::InvalidRing(format!("additive identity/inverse fails at {a}")));
        }
        if r.mul(a, r.one()) != a || r.mul(r.one(), a) != a {
            return Err(Error::InvalidRing(format!("multiplicative identity fails at {a}")));
        }
        Ok(())
    };
    if n <= exhaustive_limit {
        for a in 0..n {
            unary(a)?;
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            unary(a)?;
            check(a, b, c)?;
        }
    }
    if additive_order(r, r.one()) != r.characteristic() {
        return Err(Error::InvalidRing("characteristic mismatch".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{make_gf_default, make_matrix_ring, make_zmod};

    #[test]
    fn units_examples() {
        assert_eq!(units(&*make_zmod(4).unwrap()), vec![1, 3]);
        assert_eq!(units(&*make_zmod(6).unwrap()), vec![1, 5]);
        assert_eq!(units(&*make_gf_default(2, 2).unwrap()).len(), 3);
    }

    #[test]
    fn nilpotent_examples() {
        assert_eq!(nilpotents(&*make_zmod(4).unwrap()), vec![0, 2]);
        assert_eq!(nilpotents(&*make_zmod(8).unwrap()), vec![0, 2, 4, 6]);
        assert_eq!(nilpotents(&*make_zmod(6).unwrap()), vec![0]);
        assert_eq!(nilpotents(&*make_gf_default(3, 2).unwrap()), vec![0]);
    }

    #[test]
    fn radical_examples() {
        assert_eq!(jacobson_radical(&*make_zmod(4).unwrap()).carrier, vec![0, 2]);
        assert_eq!(jacobson_radical(&*make_gf_default(2, 2).unwrap()).carrier, vec![0]);
        assert!(is_semisimple(&*make_gf_default(3, 1).unwrap()));
        assert!(!is_semisimple(&*make_zmod(4).unwrap()));
        assert!(is_semisimple(&*make_zmod(6).unwrap()));
    }

    #[test]
    fn division_examples() {
        assert!(is_division_ring(&*make_gf_default(2, 2).unwrap()));
        assert!(!is_division_ring(&*make_zmod(6).unwrap()));
        let m2 = make_matrix_ring(make_gf_default(2, 1).unwrap(), 2).unwrap();
        assert!(!is_division_ring(&*m2));
    }

    #[test]
    fn center_of_matrix_ring_is_scalars() {
        let m2 = make_matrix_ring(make_gf_default(2, 1).unwrap(), 2).unwrap();
        let z = center(&*m2);
        assert_eq!(z.len(), 2);
        assert!(z.contains(&m2.one()));
        let z4 = make_zmod(4).unwrap();
        assert_eq!(center(&*z4).len(), 4);
    }

    #[test]
    fn generators_span_everything() {
        for r in [
            make_zmod(12).unwrap(),
            make_gf_default(2, 3).unwrap(),
            make_matrix_ring(make_zmod(2).unwrap(), 2).unwrap(),
        ] {
            let gens = r.additive_generators();
            assert_eq!(additive_span(&*r, &gens).len() as u64, r.size());
        }
    }
}
