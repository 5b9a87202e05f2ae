//! The `verify` subcommand: runs the independent checks against a database
//! (or the built-in sweep) and fails with exit code 2 on any violation.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use qgrover_core::circuit::unitarity_check;
use qgrover_core::grover::{build_diffusion, build_initial_state};
use qgrover_core::oracle::build_double_query;
use qgrover_core::qmem::load_twice_max_deviation;
use qgrover_core::verify::{
    double_query_deviation, ideal_success_probability, multiplicity, oracle_equivalence_check,
};
use qgrover_core::{Circuit, Database, QubitLayout, RegisterSlice};

use crate::{load_database, parse_target, CliError, VerifyArgs};

const THRESHOLD: f64 = 1e-9;
const RESTORE_THRESHOLD: f64 = 1e-10;

struct Check {
    name: &'static str,
    value: f64,
    limit: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.value <= self.limit
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    match args.sweep.as_deref() {
        Some("small") => sweep_small(),
        Some(other) => Err(CliError::Usage(format!(
            "--sweep: unknown sweep `{other}` (only small)"
        ))),
        None => {
            let db = load_database(args.db.as_ref().expect("clap enforces --db"))?;
            let target = args.target.as_ref().expect("clap enforces --target");
            let s = parse_target(&db, target)?;
            verify_database(&db, s, args.corrupt)
        }
    }
}

fn verify_database(db: &Database, s: u64, corrupt: bool) -> Result<(), CliError> {
    let layout = QubitLayout::for_database(db);
    let mut checks = Vec::new();

    checks.push(Check {
        name: "load involution",
        value: load_twice_max_deviation(db, &layout)?,
        limit: THRESHOLD,
    });

    if db.n() + db.m() <= 12 {
        let trimmed = qgrover_core::qmem::build_load_circuit(db, &layout)?
            .with_qubit_count(db.n() + db.m())?;
        checks.push(Check {
            name: "load unitarity",
            value: unitarity_check(&trimmed)?,
            limit: THRESHOLD,
        });
    }
    if layout.qubit_count() <= 12 {
        checks.push(Check {
            name: "oracle unitarity",
            value: unitarity_check(&double_query(db, s, &layout, corrupt)?)?,
            limit: THRESHOLD,
        });
        checks.push(Check {
            name: "diffusion unitarity",
            value: unitarity_check(&build_diffusion(&layout))?,
            limit: THRESHOLD,
        });
    }

    checks.push(Check {
        name: "oracle equivalence",
        value: if corrupt {
            double_query_deviation(&double_query(db, s, &layout, true)?, db, s, &layout)?
        } else {
            oracle_equivalence_check(db, s, &layout)?
        },
        limit: THRESHOLD,
    });

    // restore invariant and the closed-form curve over a short run
    let oracle = double_query(db, s, &layout, corrupt)?;
    let diffusion = build_diffusion(&layout);
    let mut state = build_initial_state(db, s, &layout)?;
    let solutions = multiplicity(db, s);
    let mut worst_restore = 0.0f64;
    let mut worst_curve = 0.0f64;
    let c_reg = RegisterSlice::new(layout.c_flag(), 1);
    for r in 1..=3u64 {
        state.apply_circuit(&oracle)?;
        let data_zero = state.marginal_probability(layout.data(), 0)?;
        let c_zero = state.marginal_probability(c_reg, 0)?;
        worst_restore = worst_restore
            .max((data_zero - 1.0).abs())
            .max((c_zero - 1.0).abs());
        state.apply_circuit(&diffusion)?;
        if solutions > 0 {
            let p = qgrover_core::grover::success_probability(&state, db, s, layout.address())?;
            let ideal = ideal_success_probability(db.record_count(), solutions, r);
            worst_curve = worst_curve.max((p - ideal).abs());
        }
    }
    checks.push(Check {
        name: "data/c restore",
        value: worst_restore,
        limit: RESTORE_THRESHOLD,
    });
    checks.push(Check {
        name: "closed-form curve",
        value: worst_curve,
        limit: THRESHOLD,
    });

    report(&checks)
}

fn double_query(
    db: &Database,
    s: u64,
    layout: &QubitLayout,
    corrupt: bool,
) -> Result<Circuit, CliError> {
    let good = build_double_query(db, s, layout)?.double_query;
    if !corrupt {
        return Ok(good);
    }
    // drop the final uncompute CNOT of the second comparator
    let mut bad = Circuit::new(layout.qubit_count());
    for gate in &good.gates()[..good.len() - 1] {
        bad.push(gate.clone())?;
    }
    Ok(bad)
}

fn sweep_small() -> Result<(), CliError> {
    let mut checks = Vec::new();
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    // exhaustive: every database with n <= 2, m = 1, every target
    for n in 1usize..=2 {
        let record_count = 1usize << n;
        for bits in 0..1u64 << record_count {
            let records: Vec<u64> = (0..record_count).map(|k| bits >> k & 1).collect();
            let db = Database::new(n, 1, records).map_err(CliError::from)?;
            let layout = QubitLayout::for_database(&db);
            for s in 0..2u64 {
                worst = worst.max(oracle_equivalence_check(&db, s, &layout)?);
                cases += 1;
            }
        }
    }
    checks.push(Check {
        name: "exhaustive n<=2 m=1 oracle equivalence",
        value: worst,
        limit: THRESHOLD,
    });

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_random = 0.0f64;
    let mut worst_involution = 0.0f64;
    for _ in 0..30 {
        let n = 1 + (rng.next_u64() % 3) as usize;
        let m = 1 + (rng.next_u64() % 2) as usize;
        let records: Vec<u64> = (0..1u64 << n).map(|_| rng.next_u64() % (1 << m)).collect();
        let db = Database::new(n, m, records).map_err(CliError::from)?;
        let layout = QubitLayout::for_database(&db);
        let s = rng.next_u64() % (1 << m);
        worst_random = worst_random.max(oracle_equivalence_check(&db, s, &layout)?);
        worst_involution = worst_involution.max(load_twice_max_deviation(&db, &layout)?);
        cases += 1;
    }
    checks.push(Check {
        name: "random n<=3 m<=2 oracle equivalence",
        value: worst_random,
        limit: THRESHOLD,
    });
    checks.push(Check {
        name: "random load involution",
        value: worst_involution,
        limit: THRESHOLD,
    });

    println!("sweep small: {cases} cases");
    report(&checks)
}

fn report(checks: &[Check]) -> Result<(), CliError> {
    let mut failed: Option<&Check> = None;
    for check in checks {
        println!(
            "{} {}: {:.3e} (limit {:.0e})",
            if check.passed() { "PASS" } else { "FAIL" },
            check.name,
            check.value,
            check.limit
        );
        if !check.passed() {
            match failed {
                Some(worse) if worse.value / worse.limit >= check.value / check.limit => {}
                _ => failed = Some(check),
            }
        }
    }
    match failed {
        None => Ok(()),
        Some(check) => Err(CliError::Invariant(format!(
            "verification failed, worst offender `{}`: {:.3e} exceeds {:.0e}",
            check.name, check.value, check.limit
        ))),
    }
}
