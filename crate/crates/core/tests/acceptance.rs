use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use grprops::cli::{reports_to_json, run_builtin_suite, SuiteOptions};
use grprops::decompose::{central_idempotent_decomposition, center_elements, verify_direct_sum, verify_semisimple_equivalences};
use grprops::groups::make_quaternion8;
use grprops::properties::{
    check_duo, check_property, check_reversible, check_si, check_symmetric, check_two_primal, implication_audit,
    mirror_duo_witness, EDGES,
};
use grprops::rings::{is_division_ring, is_nilpotent, is_semisimple, jacobson_radical, MatrixRing, Side, DEFAULT_RING_CAP};
use grprops::{parse_group, parse_ring, Budget, FiniteRing, GroupRing, Property, PropertyVerdict, Ring, Status};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn group_ring(base: &str, group: &str) -> GroupRing {
    GroupRing::new(parse_ring(base).unwrap(), Arc::new(parse_group(group).unwrap())).unwrap()
}

fn replays(r: &dyn FiniteRing, v: &PropertyVerdict) -> bool {
    v.witness.as_ref().is_some_and(|w| w.replay(r))
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("{what} took {took:?}, limit {limit:?}"))
}

fn gf2_q8() -> Outcome {
    let start = Instant::now();
    let r = group_ring("GF(2)", "Q8");
    let budget = Budget::default();
    let rev = check_reversible(&r, &budget);
    ensure(rev.status == Status::Holds && rev.certified, format!("reversible: {}", rev.summary()))?;
    ensure(rev.work <= 1 << 16, format!("reversible used {} pair evaluations", rev.work))?;
    let sym = check_symmetric(&r, &budget);
    ensure(sym.status == Status::Fails, format!("symmetric: {}", sym.summary()))?;
    ensure(replays(&r, &sym), "symmetric witness does not replay")?;
    ensure(sym.work <= 1 << 24, format!("symmetric used {} triple evaluations", sym.work))?;
    let si = check_si(&r, &budget);
    ensure(si.status == Status::Holds, format!("si: {}", si.summary()))?;
    let tp = check_two_primal(&r);
    ensure(tp.status == Status::Holds, format!("2primal: {}", tp.summary()))?;
    within(start, Duration::from_secs(10), "GF(2)Q8 checks")?;
    Ok(format!(
        "reversible certified, symmetric witness {:?}, {:?}",
        sym.witness.as_ref().map(|w| &w.rendered).unwrap(),
        start.elapsed()
    ))
}

fn quaternion_classification() -> Outcome {
    let mut times = Vec::new();
    for n in 2..=6 {
        let start = Instant::now();
        let r = group_ring(&format!("Z/{n}"), "Q8");
        let v = check_reversible(&r, &Budget::default());
        let expected = if n == 2 { Status::Holds } else { Status::Fails };
        ensure(v.status == expected, format!("Z/{n}Q8: {}", v.summary()))?;
        if n > 2 {
            ensure(replays(&r, &v), format!("Z/{n}Q8 witness does not replay"))?;
            within(start, Duration::from_secs(5), &format!("Z/{n}Q8"))?;
        }
        times.push(format!("n={n} {}ms", start.elapsed().as_millis()));
    }
    Ok(times.join(", "))
}

fn hamiltonian() -> Outcome {
    for g in ["D3", "D4"] {
        let r = group_ring("GF(2)", g);
        let v = check_reversible(&r, &Budget::default());
        ensure(v.status == Status::Fails && replays(&r, &v), format!("GF(2){g}: {}", v.summary()))?;
    }
    for (g, expected) in [("Q8", true), ("Q8xC3", true), ("D3", false), ("C6", false)] {
        let got = parse_group(g).unwrap().is_hamiltonian();
        ensure(got == expected, format!("is_hamiltonian({g}) = {got}"))?;
    }
    Ok("GF(2)D3, GF(2)D4 not reversible; Q8, Q8xC3 Hamiltonian".into())
}

const GROUP_RING_CORPUS: [(&str, &str); 9] = [
    ("GF(2)", "C3"),
    ("GF(2)", "Q8"),
    ("Z/4", "C2"),
    ("GF(2)", "D3"),
    ("GF(2)", "D4"),
    ("GF(3)", "Q8"),
    ("Z/3", "Q8"),
    ("Z/4", "Q8"),
    ("GF(2)(+)GF(2)", "Q8"),
];

fn duo_sides() -> Outcome {
    let budget = Budget::default();
    let mut compared = 0;
    for (base, g) in GROUP_RING_CORPUS {
        let r = group_ring(base, g);
        let right = check_duo(&r, Side::Right, &budget);
        let left = check_duo(&r, Side::Left, &budget);
        if !(right.certified && left.certified) {
            continue;
        }
        compared += 1;
        ensure(right.status == left.status, format!("{base}[{g}]: right {} left {}", right.status, left.status))?;
        for v in [&right, &left] {
            if let Some(w) = &v.witness {
                ensure(w.replay(&r), format!("{base}[{g}]: duo witness does not replay"))?;
                let m = mirror_duo_witness(&r, w).ok_or("no mirror")?;
                ensure(m.replay(&r), format!("{base}[{g}]: mirrored duo witness does not replay"))?;
            }
        }
    }
    ensure(compared > 0, "no certified instance")?;
    Ok(format!("{compared} instances, 0 mismatches"))
}

fn reversible_si() -> Outcome {
    let budget = Budget::default();
    let mut compared = 0;
    for (base, g) in GROUP_RING_CORPUS {
        let r = group_ring(base, g);
        let rev = check_reversible(&r, &budget);
        let si = check_si(&r, &budget);
        if !(rev.certified && si.certified) {
            continue;
        }
        compared += 1;
        ensure(rev.status == si.status, format!("{base}[{g}]: reversible {} si {}", rev.status, si.status))?;
    }
    ensure(compared > 0, "no certified instance")?;
    Ok(format!("{compared} instances, 0 mismatches"))
}

fn audit() -> Outcome {
    let mut exprs: Vec<String> = (2..=12).map(|n| format!("Z/{n}")).collect();
    exprs.extend(
        [
            "GF(2)",
            "GF(3)",
            "GF(2^2)",
            "M2(GF(2))",
            "GF(2)[C3]",
            "GF(2)[Q8]",
            "Z/4[C2]",
            "GF(2)(+)Z/3",
            "M2(GF(2))(+)GF(2)",
            "GF(2)[Q8](+)Z/3",
            "Z/4[C2](+)GF(3)",
            "GF(2)(+)Z/3(+)Z/4",
        ]
        .map(String::from),
    );
    let corpus: Vec<Ring> = exprs.iter().map(|e| parse_ring(e).unwrap()).collect();
    let report = implication_audit(&corpus, &Budget::default());
    ensure(
        report.violations.is_empty(),
        format!("{} violated edges: {}", report.violations.len(), report.render()),
    )?;
    ensure(report.edges_not_evaluated == 0, format!("{} edges not evaluated", report.edges_not_evaluated))?;
    Ok(format!(
        "{} rings, {} edges checked ({} per ring), 0 violations",
        corpus.len(),
        report.edges_checked,
        EDGES.len()
    ))
}

fn fields_and_matrices() -> Outcome {
    let budget = Budget::default();
    for f in ["Z/2", "Z/3", "Z/5", "Z/7", "Z/11", "GF(2)", "GF(3)", "GF(2^2)"] {
        let r = parse_ring(f).unwrap();
        for p in Property::ALL {
            let v = check_property(&*r, p, &budget);
            ensure(v.status == Status::Holds, format!("{f}: {}", v.summary()))?;
        }
    }
    let m = parse_ring("M2(GF(2))").unwrap();
    for p in [Property::DuoLeft, Property::DuoRight, Property::Reversible, Property::Symmetric, Property::Si] {
        let v = check_property(&*m, p, &budget);
        ensure(v.status == Status::Fails && replays(&*m, &v), format!("M2(GF(2)): {}", v.summary()))?;
    }
    let raw = MatrixRing::new(parse_ring("GF(2)").unwrap(), 2, DEFAULT_RING_CAP).unwrap();
    let ideal = raw.first_row_ideal();
    ensure(ideal.is_valid(&raw), "first-row subset is not a right ideal")?;
    ensure(!ideal.absorbs_left(&raw), "first-row subset absorbs left multiplication")?;
    Ok("fields hold all, M2(GF(2)) fails with witnesses, first row is a right ideal only".into())
}

fn semisimple() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let q8 = Arc::new(make_quaternion8());
    let rep = verify_semisimple_equivalences(parse_ring("GF(3)").unwrap(), q8, &budget).map_err(|e| e.to_string())?;
    ensure(rep.group_ring_semisimple, "GF(3)Q8 not semisimple")?;
    ensure(rep.hypothesis_holds(), "hypothesis not satisfied for GF(3)Q8")?;
    for p in Property::SEMISIMPLE_FOUR {
        ensure(rep.status(p) == Status::Fails, format!("GF(3)Q8 {p}: {}", rep.status(p)))?;
    }
    let d = &rep.decomposition;
    let mut sizes = d.factor_sizes();
    sizes.sort_unstable();
    ensure(sizes == [3, 3, 3, 3, 81], format!("GF(3)Q8 factor sizes {sizes:?}"))?;
    ensure(d.checks.all(), format!("decomposition checks {:?}", d.checks))?;
    let r = group_ring("GF(3)", "Q8");
    let brute: Vec<u64> = (0..r.size())
        .filter(|&a| {
            (0..8).all(|g| {
                let x = r.encode(&r.basis(g));
                r.mul(a, x) == r.mul(x, a)
            })
        })
        .collect();
    ensure(brute.len() == 243, format!("center has {} elements", brute.len()))?;
    ensure(center_elements(&r).map_err(|e| e.to_string())? == brute, "class-sum center differs from scan")?;
    let big = d.factors.iter().find(|f| f.size() == 81).ok_or("no 81-element factor")?;
    ensure(!is_division_ring(&**big), "81-element factor is a division ring")?;

    let c3 = Arc::new(parse_group("C3").unwrap());
    let rep = verify_semisimple_equivalences(parse_ring("GF(2)").unwrap(), c3, &budget).map_err(|e| e.to_string())?;
    for p in Property::SEMISIMPLE_FOUR {
        ensure(rep.status(p) == Status::Holds, format!("GF(2)C3 {p}: {}", rep.status(p)))?;
    }
    let mut sizes = rep.decomposition.factor_sizes();
    sizes.sort_unstable();
    ensure(sizes == [2, 4], format!("GF(2)C3 factor sizes {sizes:?}"))?;
    ensure(
        rep.decomposition.factors.iter().all(|f| f.is_commutative() && is_division_ring(&**f)),
        "GF(2)C3 factor is not a field",
    )?;
    let whole: Ring = Arc::new(group_ring("GF(2)", "C3"));
    ensure(central_idempotent_decomposition(&whole).is_ok(), "decomposition error")?;
    within(start, Duration::from_secs(120), "semisimple harness")?;
    Ok(format!("GF(3)Q8 {{3,3,3,3,81}}, GF(2)C3 {{2,4}}, {:?}", start.elapsed()))
}

fn direct_sum() -> Outcome {
    let parts = vec![parse_ring("GF(2)[Q8]").unwrap(), parse_ring("Z/3").unwrap()];
    let rep = verify_direct_sum(&parts, &Budget::default()).map_err(|e| e.to_string())?;
    let rev = rep.rows.iter().find(|r| r.property == Property::Reversible).unwrap();
    ensure(rev.whole == Status::Holds && rev.certified, "sum is not certified reversible")?;
    ensure(rep.status(Property::Symmetric) == Status::Fails, "sum is not symmetric-failing")?;
    ensure(rep.holds(), format!("composition mismatch: {}", rep.to_json()))?;
    Ok(format!("{} matches the conjunction of its parts", rep.whole))
}

fn radical() -> Outcome {
    let r = group_ring("GF(2)", "Q8");
    let j = jacobson_radical(&r);
    ensure(j.len() == 128, format!("radical has {} elements", j.len()))?;
    let augmentation_ideal: Vec<u64> = (0..r.size()).filter(|&a| r.augmentation(&r.decode(a)) == 0).collect();
    ensure(augmentation_ideal.iter().all(|&a| j.contains(a)), "radical is not the augmentation ideal")?;
    ensure(augmentation_ideal.iter().all(|&a| is_nilpotent(&r, a)), "radical element is not nilpotent")?;
    ensure(!is_semisimple(&r), "GF(2)Q8 reported semisimple")?;
    ensure(is_semisimple(&group_ring("GF(3)", "Q8")), "GF(3)Q8 reported not semisimple")?;
    Ok("|J(GF(2)Q8)| = 128, all nilpotent".into())
}

fn determinism() -> Outcome {
    let opts = |workers| SuiteOptions {
        only: None,
        workers,
        budget: Budget::default(),
    };
    let a = run_builtin_suite(&opts(1)).map_err(|e| e.to_string())?;
    let b = run_builtin_suite(&opts(1)).map_err(|e| e.to_string())?;
    let ja = serde_json::to_string(&reports_to_json(&a, false)).unwrap();
    let jb = serde_json::to_string(&reports_to_json(&b, false)).unwrap();
    ensure(ja == jb, "two deterministic runs differ")?;
    let c = run_builtin_suite(&opts(4)).map_err(|e| e.to_string())?;
    let statuses = |reports: &[grprops::cli::Report]| -> Vec<(String, bool, Vec<Status>)> {
        reports
            .iter()
            .map(|r| (r.id.clone(), r.pass, r.verdicts.iter().map(|v| v.status).collect()))
            .collect()
    };
    ensure(statuses(&a) == statuses(&c), "4-worker statuses differ")?;
    ensure(a.iter().all(|r| r.pass), "suite has failing scenarios")?;
    Ok(format!("{} scenarios, {} bytes identical", a.len(), ja.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("GF(2)Q8 reversible, not symmetric, SI, 2-primal", gf2_q8),
        ("Z/nQ8 reversible iff n = 2", quaternion_classification),
        ("non-Hamiltonian groups give non-reversible group rings", hamiltonian),
        ("left and right duo agree, witnesses mirror", duo_sides),
        ("reversible agrees with SI on group rings", reversible_si),
        ("implication audit", audit),
        ("fields and 2x2 matrices over GF(2)", fields_and_matrices),
        ("semisimple group rings", semisimple),
        ("direct sums compose", direct_sum),
        ("Jacobson radical", radical),
        ("deterministic suite", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
