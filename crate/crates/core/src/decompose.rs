//! Central idempotents, corner-ring factors, and the semisimple harnesses
//! tying the four properties to division-ring decompositions.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groupring::GroupRing;
use crate::groups::FiniteGroup;
use crate::properties::{check_property, Budget, Property, PropertyVerdict, Status};
use crate::rings::{
    additive_span, center, direct_sum, is_division_ring, is_semisimple, tabulate, CornerRing, Elem,
    FiniteRing, Ring, DEFAULT_RING_CAP,
};

/// Largest center the idempotent search enumerates.
pub const CENTER_CAP: u64 = 1 << 16;

const EXHAUSTIVE_BIJECTION: u64 = 1 << 16;
const EXHAUSTIVE_PAIRS: u64 = 1 << 16;
const HOMOMORPHISM_SAMPLES: usize = 10_000;
const SAMPLE_SEED: u64 = 0xdec0_0005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    DivisionRing,
    /// Simple but not a division ring.
    MatrixLike,
    Other,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionChecks {
    pub idempotent: bool,
    pub central: bool,
    pub orthogonal: bool,
    pub sum_to_one: bool,
    pub primitive: bool,
    pub size_product: bool,
    pub reassembly_bijective: bool,
    pub reassembly_homomorphism: bool,
}

impl DecompositionChecks {
    pub fn all(&self) -> bool {
        self.idempotent
            && self.central
            && self.orthogonal
            && self.sum_to_one
            && self.primitive
            && self.size_product
            && self.reassembly_bijective
            && self.reassembly_homomorphism
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub ring: String,
    /// Primitive central idempotents, ascending.
    pub idempotents: Vec<Elem>,
    pub idempotent_literals: Vec<String>,
    /// Corner rings `e R e`, one per idempotent.
    pub factors: Vec<Ring>,
    pub factor_kinds: Vec<FactorKind>,
    pub checks: DecompositionChecks,
}

impl Decomposition {
    pub fn factor_sizes(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.size()).collect()
    }

    pub fn all_division(&self) -> bool {
        self.factor_kinds.iter().all(|&k| k == FactorKind::DivisionRing)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring,
            "idempotents": self.idempotent_literals,
            "factor_sizes": self.factor_sizes(),
            "factor_kinds": self.factor_kinds,
            "checks": self.checks,
        })
    }
}

/// Center of `r`. For group rings, the span of the class sums.
pub fn center_elements(r: &dyn FiniteRing) -> Result<Vec<Elem>> {
    if let Some(gr) = r.as_group_ring() {
        let classes = gr.group().conjugacy_classes();
        let q = gr.base().size();
        let count = q.checked_pow(classes.len() as u32).filter(|&c| c <= CENTER_CAP).ok_or_else(|| {
            Error::CapExceeded {
                what: format!("center of {}", r.label()),
                needed: (q as u128).saturating_pow(classes.len() as u32),
                cap: CENTER_CAP as u128,
            }
        })?;
        let mut out: Vec<Elem> = (0..count)
            .map(|idx| {
                let mut coeffs = vec![0; gr.group().order()];
                let mut rest = idx;
                for class in &classes {
                    let c = rest % q;
                    rest /= q;
                    for &g in class {
                        coeffs[g] = c;
                    }
                }
                gr.encode(&gr.element(&coeffs).expect("valid coefficients"))
            })
            .collect();
        out.sort_unstable();
        return Ok(out);
    }
    if r.size() > DEFAULT_RING_CAP {
        return Err(Error::CapExceeded {
            what: format!("center scan of {}", r.label()),
            needed: r.size() as u128,
            cap: DEFAULT_RING_CAP as u128,
        });
    }
    let z = center(r);
    if z.len() as u64 > CENTER_CAP {
        return Err(Error::CapExceeded {
            what: format!("center of {}", r.label()),
            needed: z.len() as u128,
            cap: CENTER_CAP as u128,
        });
    }
    Ok(z)
}

fn central_idempotents(r: &dyn FiniteRing, z: &[Elem]) -> Vec<Elem> {
    z.iter().copied().filter(|&e| r.mul(e, e) == e).collect()
}

/// Simple: every nonzero element generates the whole ring as a two-sided
/// ideal.
fn is_simple(f: &dyn FiniteRing) -> bool {
    let gens = f.additive_generators();
    (1..f.size()).all(|a| {
        let products: Vec<Elem> = gens
            .iter()
            .flat_map(|&x| gens.iter().map(move |&y| (x, y)))
            .map(|(x, y)| f.mul(f.mul(x, a), y))
            .collect();
        additive_span(f, &products).len() as u64 == f.size()
    })
}

fn classify(f: &dyn FiniteRing) -> FactorKind {
    if is_division_ring(f) {
        FactorKind::DivisionRing
    } else if is_simple(f) {
        FactorKind::MatrixLike
    } else {
        FactorKind::Other
    }
}

pub fn central_idempotent_decomposition(r: &Ring) -> Result<Decomposition> {
    let z = center_elements(&**r)?;
    let idem = central_idempotents(&**r, &z);
    // e is primitive when no central idempotent lies strictly below it.
    let primitive: Vec<Elem> = idem
        .iter()
        .copied()
        .filter(|&e| e != 0 && idem.iter().all(|&f| f == 0 || f == e || r.mul(e, f) != f))
        .collect();
    let corners: Vec<CornerRing> = primitive
        .iter()
        .map(|&e| CornerRing::new(r.clone(), e))
        .collect::<Result<_>>()?;
    let factors: Vec<Ring> = corners.iter().map(|c| tabulate(Arc::new(c.clone()))).collect();
    let factor_kinds = factors.iter().map(|f| classify(&**f)).collect();
    let checks = run_checks(r, &primitive, &corners, &factors, &z);
    Ok(Decomposition {
        ring: r.label(),
        idempotent_literals: primitive.iter().map(|&e| r.render(e)).collect(),
        idempotents: primitive,
        factors,
        factor_kinds,
        checks,
    })
}

fn run_checks(r: &Ring, es: &[Elem], corners: &[CornerRing], factors: &[Ring], z: &[Elem]) -> DecompositionChecks {
    let gens = r.algebra_generators();
    let mut c = DecompositionChecks {
        idempotent: es.iter().all(|&e| r.mul(e, e) == e),
        central: es
            .iter()
            .all(|&e| gens.iter().all(|&g| r.mul(e, g) == r.mul(g, e)) && z.binary_search(&e).is_ok()),
        orthogonal: es
            .iter()
            .enumerate()
            .all(|(i, &e)| es.iter().enumerate().all(|(j, &f)| i == j || r.mul(e, f) == 0)),
        sum_to_one: es.iter().fold(0, |acc, &e| r.add(acc, e)) == r.one(),
        ..Default::default()
    };
    // Primitive inside each factor: its only central idempotents are 0, 1.
    c.primitive = factors
        .iter()
        .all(|f| central_idempotents(&**f, &center(&**f)) == vec![0, f.one()]);
    c.size_product = factors
        .iter()
        .try_fold(1u64, |acc, f| acc.checked_mul(f.size()))
        == Some(r.size());
    let project = |a: Elem| -> Vec<Elem> {
        corners
            .iter()
            .map(|cr| cr.project(r.mul(cr.idempotent(), a)).expect("e*a lies in the corner"))
            .collect()
    };
    if c.size_product && r.size() <= EXHAUSTIVE_BIJECTION {
        let mut seen = vec![false; r.size() as usize];
        c.reassembly_bijective = (0..r.size()).all(|a| {
            let code = project(a)
                .iter()
                .zip(factors)
                .rev()
                .fold(0u64, |acc, (&x, f)| acc * f.size() + x);
            !std::mem::replace(&mut seen[code as usize], true)
        });
    } else if c.size_product {
        // Injective on the additive group iff only 0 maps to 0; checked on
        // a sample of nonzero elements.
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        c.reassembly_bijective = (0..HOMOMORPHISM_SAMPLES)
            .all(|_| project(rng.gen_range(1..r.size())).iter().any(|&x| x != 0));
    }
    let hom = |a: Elem, b: Elem| {
        let (pa, pb) = (project(a), project(b));
        project(r.add(a, b)) == factors.iter().enumerate().map(|(i, f)| f.add(pa[i], pb[i])).collect::<Vec<_>>()
            && project(r.mul(a, b)) == factors.iter().enumerate().map(|(i, f)| f.mul(pa[i], pb[i])).collect::<Vec<_>>()
    };
    let n = r.size();
    c.reassembly_homomorphism = if n.saturating_mul(n) <= EXHAUSTIVE_PAIRS {
        (0..n).all(|a| (0..n).all(|b| hom(a, b)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ 1);
        (0..HOMOMORPHISM_SAMPLES).all(|_| hom(rng.gen_range(0..n), rng.gen_range(0..n)))
    };
    c
}

/// Outcome of the five-way equivalence for a semisimple group ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivalence {
    Confirmed,
    Violated,
    /// Some verdict is `Unknown`.
    Inconclusive,
    /// `R` is not semisimple or `|G|` is not a unit in `R`.
    HypothesisFailed,
}

#[derive(Debug, Clone)]
pub struct SemisimpleReport {
    pub ring: String,
    pub base_semisimple: bool,
    pub order_invertible: bool,
    pub group_ring_semisimple: bool,
    pub verdicts: Vec<PropertyVerdict>,
    pub decomposition: Decomposition,
    pub equivalence: Equivalence,
}

impl SemisimpleReport {
    pub fn hypothesis_holds(&self) -> bool {
        self.base_semisimple && self.order_invertible
    }

    pub fn status(&self, p: Property) -> Status {
        self.verdicts
            .iter()
            .find(|v| v.property == p)
            .map_or(Status::Unknown, |v| v.status)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring,
            "base_semisimple": self.base_semisimple,
            "order_invertible": self.order_invertible,
            "hypothesis": if self.hypothesis_holds() { "satisfied" } else { "hypothesis-failed" },
            "group_ring_semisimple": self.group_ring_semisimple,
            "verdicts": self.verdicts.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            "decomposition": self.decomposition.to_json(),
            "equivalence": self.equivalence,
        })
    }
}

fn order_is_unit(base: &dyn FiniteRing, order: usize) -> bool {
    let n = (0..order).fold(0, |acc, _| base.add(acc, base.one()));
    base.is_unit(n)
}

/// Computes the four verdicts and the decomposition of `base[group]` and,
/// when `base` is semisimple with `|G|` a unit, checks that the four share
/// one status which is `Holds` exactly when every factor is a division ring.
pub fn verify_semisimple_equivalences(
    base: Ring,
    group: Arc<FiniteGroup>,
    budget: &Budget,
) -> Result<SemisimpleReport> {
    let base_semisimple = is_semisimple(&*base);
    let order_invertible = order_is_unit(&*base, group.order());
    let gr: Ring = Arc::new(GroupRing::new(base, group)?);
    let verdicts: Vec<PropertyVerdict> = Property::SEMISIMPLE_FOUR
        .iter()
        .map(|&p| check_property(&*gr, p, budget))
        .collect();
    let decomposition = central_idempotent_decomposition(&gr)?;
    let group_ring_semisimple = is_semisimple(&*gr);
    let equivalence = if !(base_semisimple && order_invertible) {
        Equivalence::HypothesisFailed
    } else if verdicts.iter().any(|v| v.status == Status::Unknown) {
        Equivalence::Inconclusive
    } else {
        let first = verdicts[0].status;
        let shared = verdicts.iter().all(|v| v.status == first);
        if shared && (first == Status::Holds) == decomposition.all_division() {
            Equivalence::Confirmed
        } else {
            Equivalence::Violated
        }
    };
    Ok(SemisimpleReport {
        ring: gr.label(),
        base_semisimple,
        order_invertible,
        group_ring_semisimple,
        verdicts,
        decomposition,
        equivalence,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositionRow {
    pub property: Property,
    pub whole: Status,
    pub parts: Vec<Status>,
    pub certified: bool,
    pub consistent: bool,
}

/// A property of a composite ring compared with the conjunction over its
/// pieces.
#[derive(Debug, Clone, Serialize)]
pub struct CompositionReport {
    pub whole: String,
    pub parts: Vec<String>,
    pub rows: Vec<CompositionRow>,
}

impl CompositionReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.consistent && r.certified)
    }

    pub fn status(&self, p: Property) -> Status {
        self.rows
            .iter()
            .find(|r| r.property == p)
            .map_or(Status::Unknown, |r| r.whole)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

fn compose(whole: &Ring, parts: &[Ring], budget: &Budget) -> CompositionReport {
    let rows = Property::SEMISIMPLE_FOUR
        .iter()
        .map(|&p| {
            let w = check_property(&**whole, p, budget);
            let ps: Vec<PropertyVerdict> = parts.iter().map(|r| check_property(&**r, p, budget)).collect();
            let expected = ps.iter().fold(Status::Holds, |acc, v| acc.and(v.status));
            CompositionRow {
                property: p,
                whole: w.status,
                parts: ps.iter().map(|v| v.status).collect(),
                certified: w.certified && ps.iter().all(|v| v.certified),
                consistent: w.status == expected,
            }
        })
        .collect();
    CompositionReport {
        whole: whole.label(),
        parts: parts.iter().map(|r| r.label()).collect(),
        rows,
    }
}

/// Each of the four properties holds on the direct sum iff it holds on
/// every summand.
pub fn verify_direct_sum(parts: &[Ring], budget: &Budget) -> Result<CompositionReport> {
    let sum = direct_sum(parts)?;
    Ok(compose(&sum, parts, budget))
}

/// For semisimple `R = D_1 + ... + D_k`, compares each property of `RG`
/// with the conjunction over the `D_i G`.
pub fn verify_factorwise(base: Ring, group: Arc<FiniteGroup>, budget: &Budget) -> Result<CompositionReport> {
    if !is_semisimple(&*base) {
        return Err(Error::invalid(format!("{} is not semisimple", base.label())));
    }
    let d = central_idempotent_decomposition(&base)?;
    if !d.all_division() {
        return Err(Error::invalid(format!(
            "{} is not a direct sum of division rings",
            base.label()
        )));
    }
    let whole: Ring = Arc::new(GroupRing::new(base, group.clone())?);
    let parts = d
        .factors
        .iter()
        .map(|f| GroupRing::new(f.clone(), group.clone()).map(|g| Arc::new(g) as Ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(compose(&whole, &parts, budget))
}

/// For a commutative semisimple ring, whether every factor is a field.
/// `None` when the ring is not commutative semisimple.
pub fn commutative_semisimple_factors_are_fields(r: &Ring) -> Result<Option<bool>> {
    if !r.is_commutative() || !is_semisimple(&**r) {
        return Ok(None);
    }
    let d = central_idempotent_decomposition(r)?;
    Ok(Some(
        d.checks.all() && d.factors.iter().all(|f| f.is_commutative() && is_division_ring(&**f)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_cyclic, make_quaternion8};
    use crate::rings::{make_gf_default, make_zmod};

    fn gr(base: Ring, g: FiniteGroup) -> Ring {
        Arc::new(GroupRing::new(base, Arc::new(g)).unwrap())
    }

    #[test]
    fn field_is_its_own_factor() {
        let f = make_gf_default(2, 2).unwrap();
        let d = central_idempotent_decomposition(&f).unwrap();
        assert_eq!(d.idempotents, vec![f.one()]);
        assert_eq!(d.factor_sizes(), vec![4]);
        assert_eq!(d.factor_kinds, vec![FactorKind::DivisionRing]);
        assert!(d.checks.all());
    }

    #[test]
    fn coordinate_idempotents_of_a_sum() {
        let r = direct_sum(&[make_gf_default(2, 1).unwrap(), make_gf_default(3, 1).unwrap()]).unwrap();
        let d = central_idempotent_decomposition(&r).unwrap();
        let mut sizes = d.factor_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
        assert!(d.checks.all());
    }

    #[test]
    fn class_sum_center_matches_scan() {
        let r = gr(make_gf_default(3, 1).unwrap(), make_quaternion8());
        let fast = center_elements(&*r).unwrap();
        assert_eq!(fast.len(), 243);
        assert_eq!(fast, center(&*r));
    }

    #[test]
    fn gf3_q8_factors() {
        let r = gr(make_gf_default(3, 1).unwrap(), make_quaternion8());
        let d = central_idempotent_decomposition(&r).unwrap();
        let mut sizes = d.factor_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 3, 3, 3, 81]);
        assert!(d.checks.all(), "{:?}", d.checks);
        let big = d.factor_sizes().iter().position(|&s| s == 81).unwrap();
        assert_eq!(d.factor_kinds[big], FactorKind::MatrixLike);
        assert_eq!(d.idempotent_literals[big], "2 + x^2");
    }

    #[test]
    fn local_ring_is_one_factor() {
        let r = make_zmod(4).unwrap();
        let d = central_idempotent_decomposition(&r).unwrap();
        assert_eq!(d.factor_sizes(), vec![4]);
        assert_eq!(d.factor_kinds, vec![FactorKind::Other]);
    }

    #[test]
    fn maschke_failure_is_reported() {
        let rep = verify_semisimple_equivalences(
            make_gf_default(2, 1).unwrap(),
            Arc::new(make_quaternion8()),
            &Budget::default(),
        )
        .unwrap();
        assert!(!rep.order_invertible);
        assert_eq!(rep.equivalence, Equivalence::HypothesisFailed);
    }

    #[test]
    fn commutative_semisimple_rings_split_into_fields() {
        for r in [
            make_zmod(6).unwrap(),
            make_zmod(30).unwrap(),
            gr(make_gf_default(2, 1).unwrap(), make_cyclic(3).unwrap()),
        ] {
            assert_eq!(commutative_semisimple_factors_are_fields(&r).unwrap(), Some(true));
        }
        assert_eq!(commutative_semisimple_factors_are_fields(&make_zmod(4).unwrap()).unwrap(), None);
    }
}
