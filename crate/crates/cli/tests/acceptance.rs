//! Acceptance suite. Each test covers one acceptance criterion, prints one
//! PASS line with the measured values (visible with `--nocapture`), and
//! fails loudly otherwise. Run with:
//!
//!     cargo test -p qgrover-cli --test acceptance -- --nocapture --test-threads=1

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use qgrover_core::circuit::{gate_stats, to_unitary, unitarity_check};
use qgrover_core::grover::{build_initial_state, run_search};
use qgrover_core::oracle::build_double_query;
use qgrover_core::qasm::{export_qasm, import_qasm};
use qgrover_core::qmem::{build_load_circuit, load_twice_max_deviation};
use qgrover_core::verify::{
    double_query_deviation, ideal_success_probability, multiplicity, oracle_equivalence_check,
};
use qgrover_core::{
    Circuit, Database, Iterations, QubitLayout, RegisterSlice, SearchOptions,
};

fn random_database(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Database {
    let records: Vec<u64> = (0..1u64 << n).map(|_| rng.next_u64() % (1 << m)).collect();
    Database::new(n, m, records).unwrap()
}

/// A shared pool of test databases: structured plus seeded-random cases.
fn test_databases() -> Vec<Database> {
    let mut dbs = vec![
        Database::new(2, 2, vec![3, 0, 1, 2]).unwrap(),
        Database::new(1, 1, vec![0, 1]).unwrap(),
        Database::new(2, 2, vec![1, 1, 1, 1]).unwrap(),
        Database::new(3, 3, vec![5, 1, 7, 2, 0, 6, 3, 4]).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in 1usize..=4 {
        for m in 1usize..=2 {
            for _ in 0..3 {
                dbs.push(random_database(&mut rng, n, m));
            }
        }
    }
    dbs
}

#[test]
fn criterion_01_exact_n4_search() {
    let db = Database::new(2, 2, vec![3, 0, 1, 2]).unwrap();
    let started = Instant::now();
    let report = run_search(
        &db,
        1, // "01"
        &SearchOptions {
            shots: 10_000,
            seed: 0,
            ..SearchOptions::default()
        },
    )
    .unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    assert_eq!(report.iterations, 1);
    assert_eq!(report.query_count, 2);
    assert!((report.success_probabilities[0] - 1.0).abs() <= 1e-9);
    assert_eq!(report.histogram.get(&2), Some(&10_000));
    assert_eq!(report.reported_address, 2);
    assert!(elapsed < 0.1, "took {elapsed:.4} s");
    println!(
        "PASS criterion 1: exact N=4 search (p={:.12}, queries={}, {:.1} ms)",
        report.success_probabilities[0],
        report.query_count,
        elapsed * 1e3
    );
}

#[test]
fn criterion_02_n8_unique_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    let mut last = 0.0;
    while checked < 5 {
        let db = random_database(&mut rng, 3, 3);
        let s = rng.next_u64() % 8;
        if multiplicity(&db, s) != 1 {
            continue;
        }
        let report = run_search(&db, s, &SearchOptions::default()).unwrap();
        assert_eq!(report.iterations, 2);
        last = report.success_probabilities[1];
        assert!((last - 0.945313).abs() <= 1e-6, "p = {last}");
        checked += 1;
    }
    println!("PASS criterion 2: N=8 search reaches p={last:.6} at r=2 (5 databases)");
}

#[test]
fn criterion_03_grover_curve_equivalence() {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for db in test_databases() {
        for s in 0..(1u64 << db.m()).min(4) {
            let solutions = multiplicity(&db, s);
            if solutions == 0 {
                continue;
            }
            for r in 0..=3u64 {
                let report = run_search(
                    &db,
                    s,
                    &SearchOptions {
                        iterations: Iterations::Explicit(r),
                        shots: 0,
                        ..SearchOptions::default()
                    },
                )
                .unwrap();
                for (i, &p) in report.success_probabilities.iter().enumerate() {
                    let ideal =
                        ideal_success_probability(db.record_count(), solutions, i as u64 + 1);
                    worst = worst.max((p - ideal).abs());
                }
                cases += 1;
            }
        }
    }
    assert!(worst <= 1e-9, "worst deviation {worst}");
    println!("PASS criterion 3: curve equivalence over {cases} runs (worst {worst:.2e})");
}

#[test]
fn criterion_04_oracle_equivalence_and_mutation() {
    // exhaustive: all databases with n <= 2, m = 1
    let mut worst = 0.0f64;
    for n in 1usize..=2 {
        let record_count = 1usize << n;
        for bits in 0..1u64 << record_count {
            let records: Vec<u64> = (0..record_count).map(|k| bits >> k & 1).collect();
            let db = Database::new(n, 1, records).unwrap();
            let layout = QubitLayout::for_database(&db);
            for s in 0..2u64 {
                worst = worst.max(oracle_equivalence_check(&db, s, &layout).unwrap());
            }
        }
    }
    // randomized: 30 databases with n <= 3, m <= 2
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let n = 1 + (rng.next_u64() % 3) as usize;
        let m = 1 + (rng.next_u64() % 2) as usize;
        let db = random_database(&mut rng, n, m);
        let layout = QubitLayout::for_database(&db);
        let s = rng.next_u64() % (1 << m);
        worst = worst.max(oracle_equivalence_check(&db, s, &layout).unwrap());
    }
    assert!(worst <= 1e-9, "worst deviation {worst}");

    // mutation: removing one load-bearing gate must be detected
    let db = Database::new(2, 2, vec![3, 0, 1, 2]).unwrap();
    let layout = QubitLayout::for_database(&db);
    let good = build_double_query(&db, 1, &layout).unwrap().double_query;
    let mut bad = Circuit::new(layout.qubit_count());
    for gate in &good.gates()[..good.len() - 1] {
        bad.push(gate.clone()).unwrap();
    }
    let detected = double_query_deviation(&bad, &db, 1, &layout).unwrap();
    assert!(detected >= 0.1, "mutation only reached {detected}");
    println!(
        "PASS criterion 4: oracle equivalence (worst {worst:.2e}), mutation detected at {detected:.3}"
    );
}

#[test]
fn criterion_05_restore_invariant() {
    let mut worst_data = 0.0f64;
    for db in test_databases() {
        let layout = QubitLayout::for_database(&db);
        for s in 0..(1u64 << db.m()).min(3) {
            let block = build_double_query(&db, s, &layout).unwrap();
            let diffusion = qgrover_core::grover::build_diffusion(&layout);
            let mut state = build_initial_state(&db, s, &layout).unwrap();
            let c_reg = RegisterSlice::new(layout.c_flag(), 1);
            for _ in 0..3 {
                state.apply_circuit(&block.double_query).unwrap();
                let data_zero = state.marginal_probability(layout.data(), 0).unwrap();
                worst_data = worst_data.max((data_zero - 1.0).abs());
                assert!((data_zero - 1.0).abs() <= 1e-10);
                // c toggles twice per double query, so its marginal is exactly |0>
                let c_zero = state.marginal_probability(c_reg, 0).unwrap();
                assert!((c_zero - 1.0).abs() <= 1e-12);
                state.apply_circuit(&diffusion).unwrap();
            }
        }
    }
    println!("PASS criterion 5: data/c restored after every double query (worst {worst_data:.2e})");
}

#[test]
fn criterion_06_load_involution_and_unitarity() {
    let mut worst_involution = 0.0f64;
    let mut worst_unitarity = 0.0f64;
    for db in test_databases() {
        let layout = QubitLayout::for_database(&db);
        worst_involution = worst_involution.max(load_twice_max_deviation(&db, &layout).unwrap());
        if db.n() + db.m() <= 12 {
            let trimmed = build_load_circuit(&db, &layout)
                .unwrap()
                .with_qubit_count(db.n() + db.m())
                .unwrap();
            worst_unitarity = worst_unitarity.max(unitarity_check(&trimmed).unwrap());
        }
        if layout.qubit_count() <= 12 {
            let oracle = build_double_query(&db, 0, &layout).unwrap().single_query;
            worst_unitarity = worst_unitarity.max(unitarity_check(&oracle).unwrap());
            let diffusion = qgrover_core::grover::build_diffusion(&layout);
            worst_unitarity = worst_unitarity.max(unitarity_check(&diffusion).unwrap());
        }
    }
    assert!(worst_involution <= 1e-9);
    assert!(worst_unitarity <= 1e-9);
    println!(
        "PASS criterion 6: load involution {worst_involution:.2e}, unitarity {worst_unitarity:.2e}"
    );
}

#[test]
fn criterion_07_query_doubling() {
    let mut checked = 0;
    for db in test_databases() {
        for s in 0..(1u64 << db.m()).min(3) {
            let report = run_search(
                &db,
                s,
                &SearchOptions {
                    shots: 16,
                    ..SearchOptions::default()
                },
            )
            .unwrap();
            assert_eq!(report.query_count, 2 * report.iterations);
            checked += 1;
        }
    }
    println!("PASS criterion 7: query_count = 2r in all {checked} auto-schedule reports");
}

#[test]
fn criterion_08_memory_arity_claim() {
    for db in test_databases() {
        let layout = QubitLayout::for_database(&db);
        let stats = gate_stats(&build_load_circuit(&db, &layout).unwrap());
        let max_pop = db
            .records()
            .iter()
            .map(|d| d.count_ones() as usize)
            .max()
            .unwrap();
        if max_pop > 0 {
            assert_eq!(stats.max_arity, db.n() + max_pop);
        }
        assert!(stats.max_arity <= db.n() + db.m());
    }
    println!("PASS criterion 8: memory arity = n + max popcount <= n + m on all test databases");
}

#[test]
fn criterion_09_qasm_round_trip() {
    let mut worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 1usize..=2 {
        for m in 1usize..=2 {
            let db = random_database(&mut rng, n, m);
            let layout = QubitLayout::for_database(&db);
            let s = rng.next_u64() % (1 << m);
            // full search circuit: init + double query + diffusion
            let mut circuit =
                qgrover_core::grover::build_initial_circuit(s, &layout).unwrap();
            circuit
                .extend(&build_double_query(&db, s, &layout).unwrap().double_query)
                .unwrap();
            circuit
                .extend(&qgrover_core::grover::build_diffusion(&layout))
                .unwrap();
            let imported = import_qasm(&export_qasm(&circuit)).unwrap();
            let diff = to_unitary(&circuit)
                .unwrap()
                .max_abs_diff(&to_unitary(&imported).unwrap());
            worst = worst.max(diff);
        }
    }
    assert!(worst <= 1e-9, "worst unitary difference {worst}");
    println!("PASS criterion 9: QASM round trip (worst unitary difference {worst:.2e})");
}

#[test]
fn criterion_10_fold_equivalence() {
    let mut worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..4 {
        let db = random_database(&mut rng, 3, 2);
        let s = rng.next_u64() % 4;
        let reference = run_search(&db, s, &SearchOptions::default()).unwrap();
        let folded = run_search(
            &db,
            s,
            &SearchOptions {
                fold: true,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(
            folded.gate_stats.qubit_count + db.m() + 1,
            reference.gate_stats.qubit_count
        );
        assert_eq!(
            reference.success_probabilities.len(),
            folded.success_probabilities.len()
        );
        for (a, b) in reference
            .success_probabilities
            .iter()
            .zip(&folded.success_probabilities)
        {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst <= 1e-10, "worst probability difference {worst}");
    println!(
        "PASS criterion 10: folded runs match reference within {worst:.2e} on m+1 fewer qubits"
    );
}

#[test]
fn criterion_11_performance_envelope() {
    // n=6, m=4: 17 qubits, must finish in < 5 s
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let db = random_database(&mut rng, 6, 4);
    let s = db.record(17); // guaranteed present
    let started = Instant::now();
    let report = run_search(
        &db,
        s,
        &SearchOptions {
            shots: 1024,
            ..SearchOptions::default()
        },
    )
    .unwrap();
    let mid_elapsed = started.elapsed().as_secs_f64();
    assert!(mid_elapsed < 5.0, "n=6 m=4 took {mid_elapsed:.2} s");
    assert!(report.found);

    // n=8, m=4: 19 qubits, r=12, must finish in < 60 s
    let db = random_database(&mut rng, 8, 4);
    // force a unique solution so the schedule gives r = 12
    let target = db.record(200);
    let records: Vec<u64> = db
        .records()
        .iter()
        .enumerate()
        .map(|(i, &d)| if d == target && i != 200 { (d + 1) % 16 } else { d })
        .collect();
    let db = Database::new(8, 4, records).unwrap();
    let started = Instant::now();
    let report = run_search(&db, target, &SearchOptions::default()).unwrap();
    let big_elapsed = started.elapsed().as_secs_f64();
    assert_eq!(report.iterations, 12);
    assert!(report.found);
    assert_eq!(report.reported_address, 200);
    assert!(big_elapsed < 60.0, "n=8 m=4 took {big_elapsed:.2} s");
    println!(
        "PASS criterion 11: n=6 m=4 in {mid_elapsed:.2} s, n=8 m=4 (r=12) in {big_elapsed:.2} s"
    );
}
