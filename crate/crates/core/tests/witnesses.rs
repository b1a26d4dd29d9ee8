use grprops::cli::build_ring;
use grprops::properties::check_property;
use grprops::{Budget, Property, Status};

const CORPUS: [(&str, Option<&str>); 14] = [
    ("Z/4", None),
    ("Z/12", None),
    ("M2(GF(2))", None),
    ("M2(GF(2))(+)GF(3)", None),
    ("GF(2)", Some("Q8")),
    ("GF(2)", Some("D3")),
    ("GF(2)", Some("D4")),
    ("GF(3)", Some("Q8")),
    ("Z/3", Some("Q8")),
    ("Z/4", Some("Q8")),
    ("Z/4", Some("C2")),
    ("GF(2^2)", Some("C3")),
    ("GF(2)(+)GF(2)", Some("D3")),
    ("GF(2)[Q8](+)Z/3", None),
];

#[test]
fn every_failure_carries_a_replayable_witness() {
    let budget = Budget::default();
    for (ring, group) in CORPUS {
        let r = build_ring(ring, group).unwrap();
        for p in Property::ALL {
            let v = check_property(&*r, p, &budget);
            match v.status {
                Status::Fails => {
                    let w = v.witness.as_ref().unwrap_or_else(|| panic!("{ring} {p}: no witness"));
                    assert!(w.replay(&*r), "{ring} {group:?} {p}: witness {:?} does not replay", w.rendered);
                }
                Status::Holds => assert!(v.witness.is_none()),
                Status::Unknown => panic!("{ring} {group:?} {p}: unknown"),
            }
        }
    }
}

#[test]
fn deterministic_mode_repeats_itself() {
    let budget = Budget::default();
    let r = build_ring("GF(2)", Some("D4")).unwrap();
    for p in Property::ALL {
        let a = check_property(&*r, p, &budget).to_json();
        let b = check_property(&*r, p, &budget).to_json();
        assert_eq!(a, b);
    }
}
