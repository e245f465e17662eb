//! Acceptance suite: every criterion runs over a freshly generated
//! max-order-8 catalog and prints one pass/fail line.

use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::Instant;

use xmodkit_core::catalog::{generate_catalog, Catalog};
use xmodkit_core::verify::{
    criterion_1_constructor_axioms, criterion_10_worked_instances, run_equivalence_suites,
    run_lifting_suites, EquivalenceSuites, LiftingSuites, SuiteResult,
};

/// The suites parallelize internally, so the criteria run one at a time to
/// keep each criterion's wall-clock measurement meaningful.
fn serialize() -> MutexGuard<'static, ()> {
    static LOCK: Mutex<()> = Mutex::new(());
    LOCK.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let t = Instant::now();
        let c = generate_catalog(8).expect("catalog generation");
        println!(
            "[acceptance] catalog: {} groups, {} crossed modules, {} liftings in {:.1?}",
            c.groups.len(),
            c.xmods.len(),
            c.liftings.len(),
            t.elapsed()
        );
        c
    })
}

fn equivalence_suites() -> &'static EquivalenceSuites {
    static SUITES: OnceLock<EquivalenceSuites> = OnceLock::new();
    SUITES.get_or_init(|| run_equivalence_suites(catalog()))
}

fn lifting_suites() -> &'static LiftingSuites {
    static SUITES: OnceLock<LiftingSuites> = OnceLock::new();
    SUITES.get_or_init(|| run_lifting_suites(catalog()))
}

fn report(criterion: &str, suite: &SuiteResult) {
    let verdict = if suite.passed() { "PASS" } else { "FAIL" };
    println!("[acceptance] criterion {criterion}: {verdict} -- {}", suite.render());
    assert!(suite.passed(), "criterion {criterion} failed:\n{}", suite.render());
}

#[test]
fn criterion_01_constructor_axiom_suite() {
    let _guard = serialize();
    let t = Instant::now();
    let suite = criterion_1_constructor_axioms(catalog());
    let elapsed = t.elapsed();
    report("1", &suite);
    assert!(
        elapsed.as_secs() < 60,
        "criterion 1 took {elapsed:.1?}, expected under 60 s"
    );
}

#[test]
fn criterion_02_equivalence_roundtrip() {
    let _guard = serialize();
    report("2", &equivalence_suites().roundtrip);
}

#[test]
fn criterion_03_transitivity_correspondence() {
    let _guard = serialize();
    report("3", &equivalence_suites().transitivity);
}

#[test]
fn criterion_04_lifting_existence() {
    let _guard = serialize();
    report("4", &lifting_suites().existence);
}

#[test]
fn criterion_05_dual_lifting_characterization() {
    let _guard = serialize();
    let suite = &lifting_suites().dual_characterization;
    report("5", suite);
    // per-lifting agreement plus the 1000 fuzzed rejections
    assert!(
        suite.instances >= catalog().liftings.len() + 1000,
        "expected at least {} dual-check instances, got {}",
        catalog().liftings.len() + 1000,
        suite.instances
    );
}

#[test]
fn criterion_06_kernel_classification() {
    let _guard = serialize();
    report("6", &lifting_suites().classification);
}

#[test]
fn criterion_07_universal_lifting() {
    let _guard = serialize();
    report("7", &lifting_suites().universal);
}

#[test]
fn criterion_08_theta_psi_strict_identities() {
    let _guard = serialize();
    report("8", &lifting_suites().theta_psi);
}

#[test]
fn criterion_09_covering_correspondence() {
    let _guard = serialize();
    report("9", &lifting_suites().coverings);
}

#[test]
fn criterion_10_pinned_worked_instances() {
    let _guard = serialize();
    report("10", &criterion_10_worked_instances());
}
