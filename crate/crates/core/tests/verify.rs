use std::sync::Arc;

use raagpal::graph::fixtures;
use raagpal::verify;
use raagpal::TorelliBudget;

#[test]
fn relator_suites_hold() {
    for n in 2..=5 {
        let r = verify::relators(n, None);
        assert!(r.holds() && r.checked > 0, "n={n}");
    }
    let p = fixtures::path();
    assert!(verify::relators(3, Some(&p)).holds());
}

#[test]
fn suites_hold_on_fixtures() {
    for (name, g) in fixtures::all() {
        let g = Arc::new(g);
        let reports = [
            verify::blocks(&g, 40, 1),
            verify::exactseq(&g, 40, 1).unwrap(),
            verify::adjdom(&g).unwrap(),
            verify::splittings(&g, 40, 1).unwrap(),
            verify::torelli(&g, TorelliBudget::default()).unwrap(),
        ];
        for r in reports {
            assert!(r.holds(), "{name} {}: {:?}", r.suite, r.witnesses);
            assert_eq!(r.checked, r.passed);
        }
    }
}

#[test]
fn adjdom_reports_witness() {
    let g = Arc::new(fixtures::path());
    let r = verify::adjdom(&g).unwrap();
    assert_eq!(r.details["hasAdjacentDomination"], true);
    assert_eq!(r.details["transvection"], "tau(a,b)");
    let e = Arc::new(fixtures::edgeless());
    assert_eq!(
        verify::adjdom(&e).unwrap().details["hasAdjacentDomination"],
        false
    );
}

#[test]
fn torelli_search_on_edgeless() {
    let e = Arc::new(fixtures::edgeless());
    let r = verify::torelli(&e, TorelliBudget::default()).unwrap();
    assert_eq!(r.details["nontrivialLifts"], 18);
    assert!(r.details["maxSearchDepth"].as_u64().unwrap() <= 4);
}
