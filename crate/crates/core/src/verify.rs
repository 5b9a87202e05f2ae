//! Independent brute-force and closed-form checks used to validate the built
//! circuits: solution counting, the ideal phase oracle, subspace equivalence
//! of the double query, and the closed-form success probability.

use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::oracle::build_double_query;
use crate::qmem::{Database, QubitLayout};
use crate::statevec::StateVector;
use crate::Complex;

/// Number of records equal to s (zero records count too).
pub fn multiplicity(db: &Database, s: u64) -> u64 {
    db.records().iter().filter(|&&d| d == s).count() as u64
}

/// Diagonal of the ideal phase oracle: entry x is (-1)^[d_x = s].
pub fn ideal_phase_oracle_diagonal(db: &Database, s: u64) -> Result<Vec<f64>> {
    if db.n() > crate::circuit::MATRIX_QUBIT_CAP {
        return Err(Error::MatrixCapExceeded {
            qubit_count: db.n(),
            cap: crate::circuit::MATRIX_QUBIT_CAP,
        });
    }
    Ok(db
        .records()
        .iter()
        .map(|&d| if d == s { -1.0 } else { 1.0 })
        .collect())
}

/// Checks the built double query against the ideal phase oracle on the
/// initialized subspace: for each address basis state (with data zeroed, the
/// target string set, the kickback qubit in the minus state, c = 0, and the
/// one wire set) the double query must act as the diagonal phase times the
/// identity on all ancillas. Returns the worst amplitude deviation.
///
/// Full-matrix equivalence over all 2^Q inputs is false in general (the
/// contract only holds on this subspace), so it is deliberately not checked.
pub fn oracle_equivalence_check(db: &Database, s: u64, layout: &QubitLayout) -> Result<f64> {
    let block = build_double_query(db, s, layout)?;
    double_query_deviation(&block.double_query, db, s, layout)
}

/// Same subspace comparison for an arbitrary candidate double-query circuit;
/// used by mutation tests to confirm the checker detects broken builds.
pub fn double_query_deviation(
    circuit: &Circuit,
    db: &Database,
    s: u64,
    layout: &QubitLayout,
) -> Result<f64> {
    if !layout.matches(db) {
        return Err(Error::LayoutMismatch);
    }
    let diagonal = {
        // same construction as the ideal oracle, without the matrix cap
        let records = db.records();
        move |x: u64| if records[x as usize] == s { -1.0 } else { 1.0 }
    };
    let q = layout.qubit_count();
    let dim = 1usize << q;
    let r = core::f64::consts::FRAC_1_SQRT_2;
    let mut worst = 0.0f64;
    for x in 0..db.record_count() {
        let base = x
            | (s << layout.target_s().offset)
            | (1u64 << layout.one_wire());
        let mut amps = vec![Complex::ZERO; dim];
        amps[base as usize] = Complex::new(r, 0.0);
        amps[(base | 1u64 << layout.kickback()) as usize] = Complex::new(-r, 0.0);
        let mut state = StateVector::from_amplitudes(q, amps.clone())?;
        state.apply_circuit(circuit)?;
        let phase = diagonal(x);
        for (out, initial) in state.amplitudes().iter().zip(amps.iter()) {
            worst = worst.max((out - initial * phase).norm());
        }
    }
    Ok(worst)
}

/// Closed-form Grover success probability sin^2((2r+1) asin(sqrt(M/N)));
/// zero when there are no solutions.
pub fn ideal_success_probability(space_size: u64, solution_count: u64, iterations: u64) -> f64 {
    if solution_count == 0 {
        return 0.0;
    }
    let theta = libm::asin(libm::sqrt(solution_count as f64 / space_size as f64));
    let amplitude = libm::sin((2 * iterations + 1) as f64 * theta);
    amplitude * amplitude
}
