//! Search driver: register initialization, the diffusion operator, iteration
//! scheduling, the full search loop, and run reports.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::circuit::{gate_stats, specialize_circuit, Circuit, Gate, GateStats, Polarity};
use crate::error::{Error, Result};
use crate::oracle::build_double_query;
use crate::qmem::{Database, QubitLayout};
use crate::statevec::{RegisterSlice, StateVector};
use crate::verify::multiplicity;

/// Iteration schedule: the standard floor(pi / 4 theta) count, or a fixed
/// count for experiments where the multiplicity is treated as unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iterations {
    Auto,
    Explicit(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub iterations: Iterations,
    pub shots: u64,
    pub seed: u64,
    /// Fold the target string and the constant-one wire out of the simulated
    /// circuits; they never leave the computational basis.
    pub fold: bool,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            iterations: Iterations::Auto,
            shots: 1024,
            seed: 0,
            fold: false,
        }
    }
}

/// Everything a search run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub n: usize,
    pub m: usize,
    pub s: u64,
    /// Number of records equal to s.
    pub multiplicity: u64,
    /// Grover iterations performed.
    pub iterations: u64,
    /// Memory queries issued; always 2 per iteration.
    pub query_count: u64,
    /// Probability of measuring a solution address after each iteration,
    /// computed from the statevector.
    pub success_probabilities: Vec<f64>,
    /// Sampled address histogram.
    pub histogram: BTreeMap<u64, u64>,
    /// Whether the most frequent sampled address holds the target record.
    pub found: bool,
    /// Most frequent sampled address (ties broken by smallest address).
    pub reported_address: u64,
    /// Statistics of the complete executed circuit.
    pub gate_stats: GateStats,
    /// Filled in by callers that can take timestamps; 0 here.
    pub wall_time_ms: f64,
}

/// Circuit preparing the initial registers from |0...0>: uniform address
/// superposition, zeroed data, the target string, the kickback qubit in
/// (|0> - |1>)/sqrt(2), c = 0, and the constant-one wire.
pub fn build_initial_circuit(s: u64, layout: &QubitLayout) -> Result<Circuit> {
    if layout.m() < 64 && s >= 1u64 << layout.m() {
        return Err(Error::ValueOutOfRange {
            value: s,
            width: layout.m(),
        });
    }
    let mut circuit = Circuit::new(layout.qubit_count());
    for q in layout.address().qubits() {
        circuit.push(Gate::h(q))?;
    }
    for (i, q) in layout.target_s().qubits().enumerate() {
        if s & (1 << i) != 0 {
            circuit.push(Gate::x(q))?;
        }
    }
    circuit.push(Gate::x(layout.kickback()))?;
    circuit.push(Gate::h(layout.kickback()))?;
    circuit.push(Gate::x(layout.one_wire()))?;
    Ok(circuit)
}

/// The fully initialized state.
pub fn build_initial_state(db: &Database, s: u64, layout: &QubitLayout) -> Result<StateVector> {
    if !layout.matches(db) {
        return Err(Error::LayoutMismatch);
    }
    let mut state = StateVector::new_basis_state(layout.qubit_count(), 0)?;
    state.apply_circuit(&build_initial_circuit(s, layout)?)?;
    Ok(state)
}

/// Diffusion operator 2|psi><psi| - I on the address register (up to global
/// phase): H X on every address qubit, a multi-controlled Z realized as an
/// H-conjugated MCX on address qubit 0, then X H again.
pub fn build_diffusion(layout: &QubitLayout) -> Circuit {
    let mut circuit = Circuit::new(layout.qubit_count());
    let address = layout.address();
    for q in address.qubits() {
        circuit.push(Gate::h(q)).unwrap();
    }
    for q in address.qubits() {
        circuit.push(Gate::x(q)).unwrap();
    }
    circuit.push(Gate::h(address.offset)).unwrap();
    let controls: Vec<(usize, Polarity)> = address
        .qubits()
        .skip(1)
        .map(|q| (q, Polarity::Positive))
        .collect();
    if controls.is_empty() {
        circuit.push(Gate::x(address.offset)).unwrap();
    } else {
        circuit
            .push(Gate::mcx(controls, alloc::vec![address.offset]).unwrap())
            .unwrap();
    }
    circuit.push(Gate::h(address.offset)).unwrap();
    for q in address.qubits() {
        circuit.push(Gate::x(q)).unwrap();
    }
    for q in address.qubits() {
        circuit.push(Gate::h(q)).unwrap();
    }
    circuit
}

/// Standard Grover schedule r = floor(pi / (4 asin(sqrt(M/N)))).
pub fn iteration_count(space_size: u64, solution_count: u64) -> Result<u64> {
    if solution_count == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let theta = libm::asin(libm::sqrt(solution_count as f64 / space_size as f64));
    Ok(libm::floor(core::f64::consts::PI / (4.0 * theta)) as u64)
}

/// Probability of measuring a solution address:
/// the sum of address marginals over {x : d_x = s}.
pub fn success_probability(
    state: &StateVector,
    db: &Database,
    s: u64,
    address: RegisterSlice,
) -> Result<f64> {
    let mut total = 0.0;
    for x in 0..db.record_count() {
        if db.record(x) == s {
            total += state.marginal_probability(address, x)?;
        }
    }
    Ok(total)
}

/// Runs the full search: initialize, r iterations of {double query,
/// diffusion} with exact per-iteration success probabilities, then sample
/// the address register.
pub fn run_search(db: &Database, s: u64, options: &SearchOptions) -> Result<RunReport> {
    let layout = QubitLayout::for_database(db);
    let solution_count = multiplicity(db, s);
    let r = match options.iterations {
        Iterations::Explicit(r) => r,
        // With no solutions the oracle is the identity; schedule as if one
        // solution existed and report found = false.
        Iterations::Auto => iteration_count(db.record_count(), solution_count.max(1))?,
    };

    let mut init = build_initial_circuit(s, &layout)?;
    let mut double_query = build_double_query(db, s, &layout)?.double_query;
    let mut diffusion = build_diffusion(&layout);

    if options.fold {
        let mut at_entry = BTreeMap::new();
        let mut at_steady = BTreeMap::new();
        for (i, q) in layout.target_s().qubits().enumerate() {
            at_entry.insert(q, false);
            at_steady.insert(q, s & (1 << i) != 0);
        }
        at_entry.insert(layout.one_wire(), false);
        at_steady.insert(layout.one_wire(), true);
        init = specialize_circuit(&init, &at_entry)?;
        double_query = specialize_circuit(&double_query, &at_steady)?;
        diffusion = specialize_circuit(&diffusion, &at_steady)?;
    }

    let qubit_count = init.qubit_count();
    let address = layout.address();

    let mut full_circuit = Circuit::new(qubit_count);
    full_circuit.extend(&init)?;

    let mut state = StateVector::new_basis_state(qubit_count, 0)?;
    state.apply_circuit(&init)?;

    let mut success_probabilities = Vec::with_capacity(r as usize);
    let mut query_count = 0u64;
    for _ in 0..r {
        state.apply_circuit(&double_query)?;
        query_count += 2;
        state.apply_circuit(&diffusion)?;
        success_probabilities.push(success_probability(&state, db, s, address)?);
        full_circuit.extend(&double_query)?;
        full_circuit.extend(&diffusion)?;
    }

    let histogram = state.sample_register(address, options.shots, options.seed)?;
    let reported_address = histogram
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&v, _)| v)
        .unwrap_or(0);
    let found = options.shots > 0 && db.record(reported_address) == s;

    Ok(RunReport {
        n: db.n(),
        m: db.m(),
        s,
        multiplicity: solution_count,
        iterations: r,
        query_count,
        success_probabilities,
        histogram,
        found,
        reported_address,
        gate_stats: gate_stats(&full_circuit),
        wall_time_ms: 0.0,
    })
}
