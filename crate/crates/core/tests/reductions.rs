use subquad_core::harness::suite;
use subquad_core::reductions::{registered_pairs, verify_reduction, SizeContract};

#[test]
fn every_registered_reduction_is_sound() {
    let mut failed = Vec::new();
    for &(src, dst) in registered_pairs() {
        let instances = suite(src, 20240, 500, 50, 50).unwrap_or_else(|e| panic!("{src}: {e}"));
        let report = verify_reduction(src, dst, &instances, SizeContract::default()).unwrap();
        println!(
            "{src} -> {dst}: {}/{} yes={} decided={} blowup={:.2}",
            report.passed, report.instances, report.yes_instances, report.decided, report.max_blowup
        );
        if !report.ok() {
            for f in report.failures.iter().take(3) {
                println!("  #{}: {}", f.index, f.reason);
            }
            failed.push(format!("{src} -> {dst}"));
        }
    }
    assert!(failed.is_empty(), "failing reductions: {failed:?}");
}

#[test]
fn corrupted_reduction_is_caught() {
    use subquad_core::reductions::{reduce, verify_with};
    use subquad_core::zoo::{Instance, Problem, SetFamilyInstance};
    let (src, dst) = (Problem::SpernerFamily, Problem::MaximalElements);
    let instances = suite(src, 4, 100, 50, 50).unwrap();
    // Dropping the last set loses containments that involve it.
    let broken = |i: &Instance| {
        let mut rec = reduce(src, dst, i)?;
        if let Instance::SetFamily(f) = &rec.instance {
            let mut sets = f.sets.clone();
            sets.pop();
            rec.instance = Instance::SetFamily(SetFamilyInstance::new(f.ground_size, sets).unwrap());
        }
        Ok(rec)
    };
    let report = verify_with(src, dst, broken, &instances, SizeContract::default());
    assert!(!report.ok());
    assert!(report.to_string().ends_with("FAIL"));

    // A reducer that panics fails its instances without taking the run down.
    let panicky = |_: &Instance| -> Result<_, _> { panic!("boom") };
    let report = verify_with(src, dst, panicky, &instances[..3], SizeContract::default());
    assert_eq!(report.failures.len(), 3);
}

#[test]
fn empty_suite_passes() {
    use subquad_core::zoo::Problem;
    let report =
        verify_reduction(Problem::BigTwoDisjointSets, Problem::BigSpernerFamily, &[], SizeContract::default()).unwrap();
    assert!(report.ok());
    assert_eq!(report.instances, 0);
}
