//! The oracle block: an enable-toggle CNOT, the memory circuit, and the
//! equality comparator, with the double-query restore protocol.
//!
//! One query toggles the enable flag c, loads the addressed record into the
//! data register, and compares it against the target string. With the
//! kickback qubit held in (|0> - |1>)/sqrt(2), the comparator flips the phase
//! of exactly the branches where the data equals the target and c = 1. The
//! second query toggles c back to 0 (disabling the comparator) and unloads
//! the data register, so a query pair acts as a pure phase oracle on the
//! address register and restores every ancilla.

use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};
use crate::qmem::{build_load_circuit, Database, QubitLayout};

/// A single oracle query and the doubled form used by the Grover loop.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleBlock {
    pub single_query: Circuit,
    pub double_query: Circuit,
}

/// Builds the comparator: XOR the target string into the data register, flip
/// the kickback qubit when the result is all zeros and c = 1, then uncompute
/// the XOR. Net effect on basis states is a phase of -1 exactly when
/// data == s and c == 1 (given the kickback qubit in the |-> state); the data
/// and target registers come back bitwise unchanged.
pub fn build_comparator(layout: &QubitLayout) -> Circuit {
    let mut circuit = Circuit::new(layout.qubit_count());
    let data = layout.data();
    let target_s = layout.target_s();
    let xor_in: Vec<Gate> = (0..layout.m())
        .map(|i| {
            Gate::cx(
                target_s.offset + i,
                Polarity::Positive,
                data.offset + i,
            )
            .unwrap()
        })
        .collect();
    for gate in &xor_in {
        circuit.push(gate.clone()).unwrap();
    }
    let mut controls: Vec<(usize, Polarity)> = data
        .qubits()
        .map(|q| (q, Polarity::Negative))
        .collect();
    controls.push((layout.c_flag(), Polarity::Positive));
    circuit
        .push(Gate::mcx(controls, vec![layout.kickback()]).unwrap())
        .unwrap();
    for gate in xor_in.iter().rev() {
        circuit.push(gate.clone()).unwrap();
    }
    circuit
}

/// One oracle query: toggle c from the constant-one wire, LOAD, compare.
pub fn build_oracle_query(db: &Database, s: u64, layout: &QubitLayout) -> Result<Circuit> {
    if !layout.matches(db) {
        return Err(Error::LayoutMismatch);
    }
    if db.m() < 64 && s >= 1u64 << db.m() {
        return Err(Error::ValueOutOfRange {
            value: s,
            width: db.m(),
        });
    }
    let mut circuit = Circuit::new(layout.qubit_count());
    circuit.mark("query");
    circuit.push(Gate::cx(layout.one_wire(), Polarity::Positive, layout.c_flag()).unwrap())?;
    circuit.extend(&build_load_circuit(db, layout)?)?;
    circuit.extend(&build_comparator(layout))?;
    Ok(circuit)
}

/// Two consecutive queries: the pair acts on the initialized subspace as the
/// ideal phase oracle on the address register and the identity on every
/// ancilla. The comparator is structurally identical in both halves; the
/// second one computes the constant function because c has toggled back to 0.
pub fn build_double_query(db: &Database, s: u64, layout: &QubitLayout) -> Result<OracleBlock> {
    let single_query = build_oracle_query(db, s, layout)?;
    let mut double_query = single_query.clone();
    double_query.extend(&single_query)?;
    Ok(OracleBlock {
        single_query,
        double_query,
    })
}
