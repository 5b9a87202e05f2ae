//! Sweeps checking the double query against the ideal phase oracle, plus
//! mutation tests confirming the checker detects broken builds.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use qgrover_core::oracle::build_double_query;
use qgrover_core::verify::{double_query_deviation, oracle_equivalence_check};
use qgrover_core::{Circuit, Database, QubitLayout};

/// Every database with n <= 2 address bits and 1-bit records, every target.
#[test]
fn exhaustive_small_sweep() {
    for n in 1usize..=2 {
        let record_count = 1usize << n;
        for bits in 0..1u64 << record_count {
            let records: Vec<u64> = (0..record_count).map(|k| bits >> k & 1).collect();
            let db = Database::new(n, 1, records).unwrap();
            let layout = QubitLayout::for_database(&db);
            for s in 0..2u64 {
                let err = oracle_equivalence_check(&db, s, &layout).unwrap();
                assert!(err <= 1e-9, "n={n} bits={bits:b} s={s}: {err}");
            }
        }
    }
}

#[test]
fn randomized_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..40 {
        let n = 1 + (rng.next_u64() % 3) as usize;
        let m = 1 + (rng.next_u64() % 2) as usize;
        let records: Vec<u64> = (0..1u64 << n).map(|_| rng.next_u64() % (1 << m)).collect();
        let db = Database::new(n, m, records).unwrap();
        let layout = QubitLayout::for_database(&db);
        let s = rng.next_u64() % (1 << m);
        let err = oracle_equivalence_check(&db, s, &layout).unwrap();
        assert!(err <= 1e-9, "trial {trial}: {err}");
    }
}

/// Dropping any single gate from the double query must be detected, except
/// where the gate genuinely does nothing on the reachable subspace.
#[test]
fn single_gate_drop_mutations_are_detected() {
    let db = Database::new(2, 2, vec![3, 0, 1, 2]).unwrap();
    let layout = QubitLayout::for_database(&db);
    let s = 1u64;
    let good = build_double_query(&db, s, &layout).unwrap().double_query;
    let mut detected = 0;
    for drop_index in 0..good.len() {
        let mut bad = Circuit::new(layout.qubit_count());
        for (i, gate) in good.gates().iter().enumerate() {
            if i != drop_index {
                bad.push(gate.clone()).unwrap();
            }
        }
        let err = double_query_deviation(&bad, &db, s, &layout).unwrap();
        if err >= 0.1 {
            detected += 1;
        }
    }
    // Five drops are no-ops on the reachable subspace for s = 01 and thus
    // undetectable by construction: the four comparator CNOTs controlled by
    // the s-wire holding 0, and the second query's kickback MCX (disabled by
    // c = 0). Everything else must be load-bearing.
    assert_eq!(
        detected,
        good.len() - 5,
        "only {detected} of {} drops detected",
        good.len()
    );
    // the canonical corruption from the acceptance checks: one comparator
    // CNOT removed
    let mut bad = Circuit::new(layout.qubit_count());
    for (i, gate) in good.gates().iter().enumerate() {
        if i != good.len() - 1 {
            bad.push(gate.clone()).unwrap();
        }
    }
    let err = double_query_deviation(&bad, &db, s, &layout).unwrap();
    assert!(err >= 0.5, "comparator corruption only reached {err}");
}
