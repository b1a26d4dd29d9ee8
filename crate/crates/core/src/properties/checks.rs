use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Budget, Mode, Property, PropertyVerdict, Status, Witness, WitnessKind};
use crate::rings::{additive_span, is_nilpotent, Elem, FiniteRing, Side};

/// Largest carrier whose visiting order is shuffled in seeded mode.
const SHUFFLE_LIMIT: u64 = 1 << 22;

const DUO_NOTE: &str = "principal-ideal criterion (ring has identity)";
const TWO_PRIMAL_NOTE: &str =
    "nilpotent set is an ideal; in a finite ring nil ideals lie in the prime radical";
const COMMUTATIVE_NOTE: &str = "commutative ring";
const SEED_NOTE: &str = "structured seed witness; canonical scan ran out of budget";

/// Work counter with a cap.
struct Meter {
    work: u64,
    limit: u64,
}

impl Meter {
    fn new(limit: u64) -> Self {
        Meter { work: 0, limit }
    }

    /// Adds `n`; false once the cap is passed.
    fn spend(&mut self, n: u64) -> bool {
        self.work = self.work.saturating_add(n);
        self.work <= self.limit
    }
}

enum Step {
    Clean,
    Failed(Witness),
    OutOfBudget,
}

enum Outcome {
    Found(Witness),
    Exhausted,
    OutOfBudget,
}

/// Visits the nonzero elements: ascending, shuffled, or sampled forever.
fn scan<R: FiniteRing + ?Sized>(
    r: &R,
    mode: Mode,
    meter: &mut Meter,
    mut visit: impl FnMut(Elem, &mut Meter) -> Step,
) -> Outcome {
    let size = r.size();
    let mut handle = |a: Elem, meter: &mut Meter| -> Option<Outcome> {
        if !meter.spend(1) {
            return Some(Outcome::OutOfBudget);
        }
        match visit(a, meter) {
            Step::Clean => None,
            Step::Failed(w) => Some(Outcome::Found(w)),
            Step::OutOfBudget => Some(Outcome::OutOfBudget),
        }
    };
    match mode {
        Mode::Deterministic => {
            for a in 1..size {
                if let Some(o) = handle(a, meter) {
                    return o;
                }
            }
            Outcome::Exhausted
        }
        Mode::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if size <= SHUFFLE_LIMIT {
                let mut order: Vec<Elem> = (1..size).collect();
                order.shuffle(&mut rng);
                for a in order {
                    if let Some(o) = handle(a, meter) {
                        return o;
                    }
                }
                Outcome::Exhausted
            } else {
                loop {
                    let a = rng.gen_range(1..size);
                    if let Some(o) = handle(a, meter) {
                        return o;
                    }
                }
            }
        }
    }
}

fn verdict<R: FiniteRing + ?Sized>(
    r: &R,
    property: Property,
    outcome: Outcome,
    fallback: Option<Witness>,
    meter: &Meter,
    mode: Mode,
    note: Option<&str>,
) -> PropertyVerdict {
    let mut note = note.map(str::to_owned);
    let (status, witness) = match outcome {
        Outcome::Found(w) => (Status::Fails, Some(w)),
        Outcome::Exhausted => (Status::Holds, None),
        Outcome::OutOfBudget => match fallback {
            Some(w) => {
                note = Some(SEED_NOTE.into());
                (Status::Fails, Some(w))
            }
            None => (Status::Unknown, None),
        },
    };
    PropertyVerdict {
        ring: r.label(),
        property,
        status,
        certified: status != Status::Unknown,
        witness,
        work: meter.work,
        mode,
        note,
    }
}

fn commutative_holds<R: FiniteRing + ?Sized>(r: &R, property: Property, mode: Mode) -> PropertyVerdict {
    PropertyVerdict {
        ring: r.label(),
        property,
        status: Status::Holds,
        witness: None,
        certified: true,
        work: 0,
        mode,
        note: Some(COMMUTATIVE_NOTE.into()),
    }
}

/// Elements whose vanishing under an additive map certifies it on
/// `Ann_r(a)`: module generators when the ring provides them, otherwise
/// additive generators extracted from the enumerated annihilator. `None`
/// when the meter runs out.
fn annihilator_spanning<R: FiniteRing + ?Sized>(r: &R, a: Elem, meter: &mut Meter) -> Option<Vec<Elem>> {
    if a == r.zero() {
        let gens = r.module_generators();
        return meter.spend(gens.len() as u64).then_some(gens);
    }
    if let Some(gens) = r.right_annihilator_generators(a) {
        return meter.spend(gens.len() as u64).then_some(gens);
    }
    let mut all = Vec::new();
    let mut ok = true;
    r.for_each_right_annihilator(a, &mut |b| {
        all.push(b);
        ok = meter.spend(1);
        ok
    });
    ok.then(|| additive_generators_of(r, &all))
}

/// Greedy additive generators of the subgroup formed by `elems`.
fn additive_generators_of<R: FiniteRing + ?Sized>(r: &R, elems: &[Elem]) -> Vec<Elem> {
    let mut span: HashSet<Elem> = HashSet::from([r.zero()]);
    let mut gens = Vec::new();
    for &e in elems {
        if span.len() == elems.len() {
            break;
        }
        if span.contains(&e) {
            continue;
        }
        gens.push(e);
        let snapshot: Vec<Elem> = span.iter().copied().collect();
        for s in snapshot {
            let mut t = r.add(s, e);
            while span.insert(t) {
                t = r.add(t, e);
            }
        }
    }
    gens
}

/// First `b` in `Ann_r(a)` (ascending) with `pred(b)`.
fn first_annihilator<R: FiniteRing + ?Sized>(
    r: &R,
    a: Elem,
    meter: &mut Meter,
    mut pred: impl FnMut(Elem) -> bool,
) -> Option<Elem> {
    let mut found = None;
    r.for_each_right_annihilator(a, &mut |b| {
        meter.spend(1);
        if pred(b) {
            found = Some(b);
            false
        } else {
            true
        }
    });
    found
}

pub fn check_reduced<R: FiniteRing + ?Sized>(r: &R) -> PropertyVerdict {
    check_reduced_with(r, &Budget::default())
}

pub fn check_reduced_with<R: FiniteRing + ?Sized>(r: &R, budget: &Budget) -> PropertyVerdict {
    let mut meter = Meter::new(budget.max_pairs);
    let outcome = scan(r, budget.mode, &mut meter, |a, _| {
        if is_nilpotent(r, a) {
            Step::Failed(Witness::new(r, WitnessKind::Nilpotent, vec![a]))
        } else {
            Step::Clean
        }
    });
    verdict(r, Property::Reduced, outcome, None, &meter, budget.mode, None)
}

pub fn check_reversible<R: FiniteRing + ?Sized>(r: &R, budget: &Budget) -> PropertyVerdict {
    if r.is_commutative() {
        return commutative_holds(r, Property::Reversible, budget.mode);
    }
    let mut meter = Meter::new(budget.max_pairs);
    let seed = r
        .seed_pairs()
        .into_iter()
        .find(|&(a, b)| {
            meter.spend(1);
            r.mul(a, b) == 0 && r.mul(b, a) != 0
        })
        .map(|(a, b)| Witness::new(r, WitnessKind::Reversible, vec![a, b]));
    let outcome = scan(r, budget.mode, &mut meter, |a, meter| {
        let Some(gens) = annihilator_spanning(r, a, meter) else {
            return Step::OutOfBudget;
        };
        if gens.iter().all(|&b| r.mul(b, a) == 0) {
            return Step::Clean;
        }
        match first_annihilator(r, a, meter, |b| r.mul(b, a) != 0) {
            Some(b) => Step::Failed(Witness::new(r, WitnessKind::Reversible, vec![a, b])),
            None => unreachable!("annihilator generators disagree with enumeration"),
        }
    });
    verdict(r, Property::Reversible, outcome, seed, &meter, budget.mode, None)
}

pub fn check_symmetric<R: FiniteRing + ?Sized>(r: &R, budget: &Budget) -> PropertyVerdict {
    if r.is_commutative() {
        return commutative_holds(r, Property::Symmetric, budget.mode);
    }
    let mut meter = Meter::new(budget.max_triples);
    // A reversibility failure (a, b) gives the triple (1, a, b).
    let one = r.one();
    let seed = r
        .seed_pairs()
        .into_iter()
        .find(|&(a, b)| {
            meter.spend(1);
            r.mul(a, b) == 0 && r.mul(b, a) != 0
        })
        .map(|(a, b)| Witness::new(r, WitnessKind::Symmetric, vec![one, a, b]));
    let size = r.size();
    let outcome = scan(r, budget.mode, &mut meter, |a, meter| {
        for b in 1..size {
            if !meter.spend(1) {
                return Step::OutOfBudget;
            }
            let ab = r.mul(a, b);
            let Some(gens) = annihilator_spanning(r, ab, meter) else {
                return Step::OutOfBudget;
            };
            let ok = |c: Elem| r.mul(r.mul(a, c), b) == 0;
            if gens.iter().all(|&c| ok(c)) {
                continue;
            }
            let c = first_annihilator(r, ab, meter, |c| !ok(c)).expect("failing generator");
            return Step::Failed(Witness::new(r, WitnessKind::Symmetric, vec![a, b, c]));
        }
        Step::Clean
    });
    verdict(r, Property::Symmetric, outcome, seed, &meter, budget.mode, None)
}

pub fn check_si<R: FiniteRing + ?Sized>(r: &R, budget: &Budget) -> PropertyVerdict {
    if r.is_commutative() {
        return commutative_holds(r, Property::Si, budget.mode);
    }
    let mut meter = Meter::new(budget.max_pairs);
    let xs = r.module_generators();
    let size = r.size();
    let outcome = scan(r, budget.mode, &mut meter, |a, meter| {
        let Some(bs) = annihilator_spanning(r, a, meter) else {
            return Step::OutOfBudget;
        };
        let fails = |x: Elem, b: Elem| r.mul(r.mul(a, x), b) != 0;
        if !meter.spend((xs.len() * bs.len()) as u64) {
            return Step::OutOfBudget;
        }
        if !xs.iter().any(|&x| bs.iter().any(|&b| fails(x, b))) {
            return Step::Clean;
        }
        for x in 0..size {
            meter.spend(bs.len() as u64);
            if bs.iter().any(|&b| fails(x, b)) {
                let b = first_annihilator(r, a, meter, |b| fails(x, b)).expect("failing generator");
                return Step::Failed(Witness::new(r, WitnessKind::Si, vec![a, x, b]));
            }
        }
        unreachable!("module generators reported a failure that no element reproduces")
    });
    verdict(r, Property::Si, outcome, None, &meter, budget.mode, None)
}

fn check_duo_side<R: FiniteRing + ?Sized>(r: &R, side: Side, budget: &Budget) -> PropertyVerdict {
    let property = if side == Side::Left {
        Property::DuoLeft
    } else {
        Property::DuoRight
    };
    if r.is_commutative() {
        return commutative_holds(r, property, budget.mode);
    }
    let mut meter = Meter::new(budget.max_pairs);
    let xs = r.module_generators();
    let size = r.size();
    let outcome = scan(r, budget.mode, &mut meter, |a, meter| {
        let (member, kind) = match side {
            Side::Left => (r.left_ideal_membership(a), WitnessKind::LeftDuo),
            _ => (r.right_ideal_membership(a), WitnessKind::RightDuo),
        };
        let product = |x: Elem| match side {
            Side::Left => r.mul(a, x),
            _ => r.mul(x, a),
        };
        if !meter.spend(xs.len() as u64) {
            return Step::OutOfBudget;
        }
        if xs.iter().all(|&x| member(product(x))) {
            return Step::Clean;
        }
        for x in 0..size {
            meter.spend(1);
            if !member(product(x)) {
                return Step::Failed(Witness::new(r, kind, vec![a, x]));
            }
        }
        unreachable!("module generators reported a failure that no element reproduces")
    });
    verdict(r, property, outcome, None, &meter, budget.mode, Some(DUO_NOTE))
}

/// Right, left, or two-sided duo (`Side::TwoSided`).
pub fn check_duo<R: FiniteRing + ?Sized>(r: &R, side: Side, budget: &Budget) -> PropertyVerdict {
    match side {
        Side::Left | Side::Right => check_duo_side(r, side, budget),
        Side::TwoSided => {
            let right = check_duo_side(r, Side::Right, budget);
            let combined = if right.status == Status::Fails {
                right
            } else {
                let left = check_duo_side(r, Side::Left, budget);
                let status = right.status.and(left.status);
                PropertyVerdict {
                    status,
                    certified: status != Status::Unknown,
                    work: right.work + left.work,
                    witness: left.witness,
                    note: left.note,
                    ..right
                }
            };
            PropertyVerdict {
                property: Property::Duo,
                ..combined
            }
        }
    }
}

pub fn check_two_primal<R: FiniteRing + ?Sized>(r: &R) -> PropertyVerdict {
    check_two_primal_with(r, &Budget::default())
}

pub fn check_two_primal_with<R: FiniteRing + ?Sized>(r: &R, budget: &Budget) -> PropertyVerdict {
    let size = r.size();
    let mut meter = Meter::new(budget.max_pairs);
    let finish = |outcome, meter: &Meter| {
        verdict(r, Property::TwoPrimal, outcome, None, meter, budget.mode, Some(TWO_PRIMAL_NOTE))
    };
    if !meter.spend(size) {
        return finish(Outcome::OutOfBudget, &meter);
    }
    let flags: Vec<bool> = (0..size).map(|a| is_nilpotent(r, a)).collect();
    let nil: Vec<Elem> = (0..size).filter(|&a| flags[a as usize]).collect();
    let is_nil = |a: Elem| flags[a as usize];

    if additive_span(r, &nil).len() != nil.len() {
        for &a in &nil {
            for &b in &nil {
                meter.spend(1);
                if !is_nil(r.add(a, b)) {
                    let w = Witness::new(r, WitnessKind::NilpotentSum, vec![a, b]);
                    return finish(Outcome::Found(w), &meter);
                }
            }
        }
        unreachable!("span grew but every pairwise sum is nilpotent");
    }

    let xs = r.module_generators();
    for &a in &nil {
        if !meter.spend(2 * xs.len() as u64) {
            return finish(Outcome::OutOfBudget, &meter);
        }
        if xs.iter().all(|&x| is_nil(r.mul(x, a)) && is_nil(r.mul(a, x))) {
            continue;
        }
        for x in 0..size {
            meter.spend(1);
            let kind = if !is_nil(r.mul(x, a)) {
                WitnessKind::NilpotentLeftMultiple
            } else if !is_nil(r.mul(a, x)) {
                WitnessKind::NilpotentRightMultiple
            } else {
                continue;
            };
            return finish(Outcome::Found(Witness::new(r, kind, vec![a, x])), &meter);
        }
    }
    finish(Outcome::Exhausted, &meter)
}

pub fn check_property<R: FiniteRing + ?Sized>(r: &R, property: Property, budget: &Budget) -> PropertyVerdict {
    match property {
        Property::Reduced => check_reduced_with(r, budget),
        Property::Reversible => check_reversible(r, budget),
        Property::Symmetric => check_symmetric(r, budget),
        Property::Si => check_si(r, budget),
        Property::DuoLeft => check_duo(r, Side::Left, budget),
        Property::DuoRight => check_duo(r, Side::Right, budget),
        Property::Duo => check_duo(r, Side::TwoSided, budget),
        Property::TwoPrimal => check_two_primal_with(r, budget),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groupring::GroupRing;
    use crate::groups::{make_dihedral, make_quaternion8};
    use crate::rings::{direct_sum, make_gf_default, make_matrix_ring, make_zmod, Ring};

    fn f2q8() -> GroupRing {
        GroupRing::new(make_gf_default(2, 1).unwrap(), Arc::new(make_quaternion8())).unwrap()
    }

    fn m2f2() -> Ring {
        make_matrix_ring(make_gf_default(2, 1).unwrap(), 2).unwrap()
    }

    fn brute_reversible(r: &dyn FiniteRing) -> Option<(Elem, Elem)> {
        let n = r.size();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| r.mul(a, b) == 0 && r.mul(b, a) != 0)
    }

    fn brute_symmetric(r: &dyn FiniteRing) -> Option<(Elem, Elem, Elem)> {
        let n = r.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if r.mul(r.mul(a, b), c) == 0 && r.mul(r.mul(a, c), b) != 0 {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    fn brute_si(r: &dyn FiniteRing) -> Option<(Elem, Elem, Elem)> {
        let n = r.size();
        for a in 0..n {
            for x in 0..n {
                for b in 0..n {
                    if r.mul(a, b) == 0 && r.mul(r.mul(a, x), b) != 0 {
                        return Some((a, x, b));
                    }
                }
            }
        }
        None
    }

    fn brute_right_duo(r: &dyn FiniteRing) -> Option<(Elem, Elem)> {
        let n = r.size();
        for a in 0..n {
            let ideal: Vec<Elem> = (0..n).map(|t| r.mul(a, t)).collect();
            if let Some(x) = (0..n).find(|&x| !ideal.contains(&r.mul(x, a))) {
                return Some((a, x));
            }
        }
        None
    }

    #[test]
    fn matrix_ring_fails_everything_with_lex_first_witnesses() {
        let r = m2f2();
        let b = Budget::default();
        let rev = check_reversible(&*r, &b);
        assert_eq!(rev.status, Status::Fails);
        let (a0, b0) = brute_reversible(&*r).unwrap();
        assert_eq!(rev.witness.as_ref().unwrap().elements, vec![a0, b0]);

        let sym = check_symmetric(&*r, &b);
        let (a, bb, c) = brute_symmetric(&*r).unwrap();
        assert_eq!(sym.witness.as_ref().unwrap().elements, vec![a, bb, c]);

        let si = check_si(&*r, &b);
        let (a, x, bb) = brute_si(&*r).unwrap();
        assert_eq!(si.witness.as_ref().unwrap().elements, vec![a, x, bb]);

        let duo = check_duo(&*r, Side::Right, &b);
        let (a, x) = brute_right_duo(&*r).unwrap();
        assert_eq!(duo.witness.as_ref().unwrap().elements, vec![a, x]);

        for v in [rev, sym, si, duo, check_reduced(&*r), check_two_primal(&*r)] {
            assert_eq!(v.status, Status::Fails, "{}", v.summary());
            assert!(v.certified);
            assert!(v.witness.unwrap().replay(&*r));
        }
    }

    #[test]
    fn fields_hold_everything() {
        for r in [make_gf_default(2, 2).unwrap(), make_gf_default(3, 1).unwrap()] {
            for p in Property::ALL {
                let v = check_property(&*r, p, &Budget::default());
                assert_eq!(v.status, Status::Holds, "{}", v.summary());
                assert!(v.certified);
            }
        }
    }

    #[test]
    fn small_rings_agree_with_brute_force() {
        let sum = direct_sum(&[m2f2(), make_zmod(2).unwrap()]).unwrap();
        for r in [m2f2(), sum] {
            let b = Budget::default();
            assert_eq!(check_reversible(&*r, &b).status == Status::Holds, brute_reversible(&*r).is_none());
            assert_eq!(check_si(&*r, &b).status == Status::Holds, brute_si(&*r).is_none());
            assert_eq!(check_duo(&*r, Side::Right, &b).status == Status::Holds, brute_right_duo(&*r).is_none());
        }
    }

    #[test]
    fn f2q8_profile() {
        let r = f2q8();
        let b = Budget::default();
        let rev = check_reversible(&r, &b);
        assert_eq!(rev.status, Status::Holds);
        assert!(rev.certified);
        assert!(rev.work <= 1 << 16);
        let sym = check_symmetric(&r, &b);
        assert_eq!(sym.status, Status::Fails);
        assert_eq!(sym.witness.as_ref().unwrap().elements, vec![3, 17, 54]);
        assert_eq!(check_si(&r, &b).status, Status::Holds);
        assert_eq!(check_two_primal(&r).status, Status::Holds);
        assert_eq!(check_duo(&r, Side::Left, &b).status, Status::Holds);
        assert_eq!(check_duo(&r, Side::Right, &b).status, Status::Holds);
        let red = check_reduced(&r);
        assert_eq!(red.witness.as_ref().unwrap().rendered, vec!["1 + x".to_string()]);
    }

    #[test]
    fn z3q8_lex_first_reversible_witness() {
        let r = GroupRing::new(make_zmod(3).unwrap(), Arc::new(make_quaternion8())).unwrap();
        let v = check_reversible(&r, &Budget::default());
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.witness.as_ref().unwrap().elements, vec![85, 371]);
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let r = f2q8();
        let b = Budget::new(10, 10, Mode::Deterministic).unwrap();
        let v = check_reversible(&r, &b);
        assert_eq!(v.status, Status::Unknown);
        assert!(!v.certified);
    }

    #[test]
    fn seeded_mode_matches_status() {
        let r = m2f2();
        for seed in 0..5 {
            let b = Budget::default().with_mode(Mode::Seeded(seed));
            let v = check_symmetric(&*r, &b);
            assert_eq!(v.status, Status::Fails);
            assert!(v.witness.unwrap().replay(&*r));
        }
        let r = f2q8();
        let v = check_reversible(&r, &Budget::default().with_mode(Mode::Seeded(9)));
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn dihedral_seed_witness() {
        let r = GroupRing::new(make_gf_default(2, 1).unwrap(), Arc::new(make_dihedral(3).unwrap())).unwrap();
        let seeds = r.seed_pairs();
        assert!(seeds.iter().any(|&(a, b)| r.mul(a, b) == 0 && r.mul(b, a) != 0));
        let v = check_reversible(&r, &Budget::default());
        assert_eq!(v.status, Status::Fails);
        let b = Budget::new(3, 3, Mode::Deterministic).unwrap();
        let v = check_reversible(&r, &b);
        assert_eq!(v.status, Status::Fails);
        assert!(v.note.is_some());
        assert!(v.witness.unwrap().replay(&r));
    }
}
