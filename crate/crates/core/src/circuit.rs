//! Immutable gate IR: the gate set {H, X, mixed-polarity multi-target MCX},
//! ordered circuits with markers, dense unitary extraction, gate statistics,
//! and classical constant folding of fixed wires.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::statevec::StateVector;
use crate::Complex;

/// Control polarity: positive fires on |1>, negative on |0>
/// (black and white dots in the usual circuit notation).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A gate from the supported set. Multi-controlled X with empty controls is a
/// simultaneous X on all targets; controls and targets are pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    Hadamard { target: usize },
    PauliX { target: usize },
    MultiControlledX {
        controls: Vec<(usize, Polarity)>,
        targets: Vec<usize>,
    },
}

impl Gate {
    pub fn h(target: usize) -> Gate {
        Gate::Hadamard { target }
    }

    pub fn x(target: usize) -> Gate {
        Gate::PauliX { target }
    }

    /// Builds a multi-controlled X, rejecting duplicate or overlapping qubits
    /// and empty target lists.
    pub fn mcx(controls: Vec<(usize, Polarity)>, targets: Vec<usize>) -> Result<Gate> {
        if targets.is_empty() {
            return Err(Error::EmptyTargets);
        }
        let mut seen: Vec<usize> = Vec::with_capacity(controls.len() + targets.len());
        for q in controls.iter().map(|(q, _)| *q).chain(targets.iter().copied()) {
            if seen.contains(&q) {
                return Err(Error::OverlappingControlTarget { qubit: q });
            }
            seen.push(q);
        }
        Ok(Gate::MultiControlledX { controls, targets })
    }

    /// X on `target` conditioned on a single control.
    pub fn cx(control: usize, polarity: Polarity, target: usize) -> Result<Gate> {
        Gate::mcx(vec![(control, polarity)], vec![target])
    }

    /// All qubits the gate acts on, controls included.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        let (controls, targets): (&[(usize, Polarity)], &[usize]) = match self {
            Gate::Hadamard { target } | Gate::PauliX { target } => (&[], core::slice::from_ref(target)),
            Gate::MultiControlledX { controls, targets } => (controls, targets),
        };
        controls.iter().map(|(q, _)| *q).chain(targets.iter().copied())
    }

    /// Number of wires the gate touches (controls + targets).
    pub fn arity(&self) -> usize {
        self.qubits().count()
    }
}

/// A labeled position in a circuit's gate list (used for query boundaries).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marker {
    pub position: usize,
    pub label: String,
}

/// An ordered gate sequence on a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubit_count: usize,
    gates: Vec<Gate>,
    markers: Vec<Marker>,
}

impl Circuit {
    pub fn new(qubit_count: usize) -> Circuit {
        Circuit {
            qubit_count,
            gates: Vec::new(),
            markers: Vec::new(),
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn markers(&self) -> &[Marker] {
        &self.markers
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate, checking qubit bounds.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.qubit_count {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    qubit_count: self.qubit_count,
                });
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Places a marker before the next gate to be pushed.
    pub fn mark(&mut self, label: &str) {
        self.markers.push(Marker {
            position: self.gates.len(),
            label: label.to_string(),
        });
    }

    /// Appends another circuit's gates and markers.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.qubit_count != self.qubit_count {
            return Err(Error::DimensionMismatch {
                expected: self.qubit_count,
                actual: other.qubit_count,
            });
        }
        let shift = self.gates.len();
        self.gates.extend(other.gates.iter().cloned());
        self.markers.extend(other.markers.iter().map(|m| Marker {
            position: m.position + shift,
            label: m.label.clone(),
        }));
        Ok(())
    }

    /// Rehouses the same gate list on a different qubit count. Used to run
    /// subcircuits that only touch a low prefix of the wires (e.g. a memory
    /// circuit on address + data only) through the dense-matrix checks.
    pub fn with_qubit_count(&self, qubit_count: usize) -> Result<Circuit> {
        let mut out = Circuit::new(qubit_count);
        for gate in &self.gates {
            out.push(gate.clone())?;
        }
        out.markers = self.markers.clone();
        Ok(out)
    }
}

/// Cap for dense unitary extraction; 2^12 is the largest comfortable
/// dense-matrix dimension at desk scale.
pub const MATRIX_QUBIT_CAP: usize = 12;

/// Dense column-major complex matrix produced by [`to_unitary`].
#[derive(Debug, Clone)]
pub struct Unitary {
    dim: usize,
    data: Vec<Complex>,
}

impl Unitary {
    pub fn identity(dim: usize) -> Unitary {
        let mut data = vec![Complex::ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex::ONE;
        }
        Unitary { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.data[col * self.dim + row]
    }

    pub fn column(&self, col: usize) -> &[Complex] {
        &self.data[col * self.dim..(col + 1) * self.dim]
    }

    /// Max entrywise deviation `‖U†U − I‖∞`.
    ///
    /// Inner products skip entries that are exactly zero, so the check costs
    /// O(dim^2 · nnz) instead of O(dim^3); for permutation-like circuits
    /// (one nonzero per column) this is quadratic. The computed value is
    /// identical to the dense triple loop.
    pub fn unitarity_deviation(&self) -> f64 {
        let sparse: Vec<Vec<(usize, Complex)>> = (0..self.dim)
            .map(|j| {
                self.column(j)
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
                    .map(|(k, &a)| (k, a))
                    .collect()
            })
            .collect();
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            let col_i = self.column(i);
            for (j, col_j) in sparse.iter().enumerate() {
                let mut dot = Complex::ZERO;
                for &(k, a) in col_j {
                    dot += col_i[k].conj() * a;
                }
                let expected = if i == j { Complex::ONE } else { Complex::ZERO };
                worst = worst.max((dot - expected).norm());
            }
        }
        worst
    }

    /// Max entrywise deviation from another matrix.
    pub fn max_abs_diff(&self, other: &Unitary) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Extracts the dense unitary of a circuit by pushing each basis state
/// through the gate kernels; column j is the image of |j>.
pub fn to_unitary(circuit: &Circuit) -> Result<Unitary> {
    let q = circuit.qubit_count();
    if q > MATRIX_QUBIT_CAP {
        return Err(Error::MatrixCapExceeded {
            qubit_count: q,
            cap: MATRIX_QUBIT_CAP,
        });
    }
    let dim = 1usize << q;
    let mut data = vec![Complex::ZERO; dim * dim];
    for col in 0..dim {
        let mut state = StateVector::new_basis_state(q, col as u64)?;
        state.apply_circuit(circuit)?;
        data[col * dim..(col + 1) * dim].copy_from_slice(state.amplitudes());
    }
    Ok(Unitary { dim, data })
}

/// Returns `‖U†U − I‖∞` for the circuit's unitary.
pub fn unitarity_check(circuit: &Circuit) -> Result<f64> {
    Ok(to_unitary(circuit)?.unitarity_deviation())
}

/// Gate counts and the maximum arity over the circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateStats {
    pub hadamard: usize,
    pub pauli_x: usize,
    pub mcx: usize,
    pub max_arity: usize,
    pub qubit_count: usize,
}

impl GateStats {
    pub fn total(&self) -> usize {
        self.hadamard + self.pauli_x + self.mcx
    }
}

pub fn gate_stats(circuit: &Circuit) -> GateStats {
    let mut stats = GateStats {
        qubit_count: circuit.qubit_count(),
        ..GateStats::default()
    };
    for gate in circuit.gates() {
        match gate {
            Gate::Hadamard { .. } => stats.hadamard += 1,
            Gate::PauliX { .. } => stats.pauli_x += 1,
            Gate::MultiControlledX { .. } => stats.mcx += 1,
        }
        stats.max_arity = stats.max_arity.max(gate.arity());
    }
    stats
}

/// Folds wires that stay in the computational basis out of a circuit.
///
/// `fixed` maps qubits to their classical values at circuit entry. Controls on
/// fixed qubits are evaluated at compile time: the gate is dropped if any is
/// unsatisfied, the control is removed if satisfied. X targets on fixed qubits
/// (with all controls fixed and satisfied) update the tracked classical bits.
/// The result acts on the remaining qubits, renumbered compactly in order.
pub fn specialize_circuit(circuit: &Circuit, fixed: &BTreeMap<usize, bool>) -> Result<Circuit> {
    for &q in fixed.keys() {
        if q >= circuit.qubit_count() {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                qubit_count: circuit.qubit_count(),
            });
        }
    }
    // old qubit -> new qubit for the surviving wires
    let remap: BTreeMap<usize, usize> = (0..circuit.qubit_count())
        .filter(|q| !fixed.contains_key(q))
        .enumerate()
        .map(|(new, old)| (old, new))
        .collect();

    let mut bits = fixed.clone();
    let mut out = Circuit::new(remap.len());
    let mut marker_idx = 0;

    for (pos, gate) in circuit.gates().iter().enumerate() {
        while marker_idx < circuit.markers().len() && circuit.markers()[marker_idx].position == pos {
            out.mark(&circuit.markers()[marker_idx].label);
            marker_idx += 1;
        }
        match gate {
            Gate::Hadamard { target } => {
                if bits.contains_key(target) {
                    return Err(Error::NotClassicallyFoldable { qubit: *target });
                }
                out.push(Gate::h(remap[target]))?;
            }
            Gate::PauliX { target } => {
                if let Some(bit) = bits.get_mut(target) {
                    *bit = !*bit;
                } else {
                    out.push(Gate::x(remap[target]))?;
                }
            }
            Gate::MultiControlledX { controls, targets } => {
                let mut satisfied = true;
                let mut live_controls = Vec::new();
                for &(q, pol) in controls {
                    match bits.get(&q) {
                        Some(&bit) => {
                            if bit != (pol == Polarity::Positive) {
                                satisfied = false;
                            }
                        }
                        None => live_controls.push((remap[&q], pol)),
                    }
                }
                if !satisfied {
                    continue;
                }
                let mut live_targets = Vec::new();
                for &t in targets {
                    if bits.contains_key(&t) {
                        // A fixed target driven by a quantum control cannot
                        // stay classical.
                        if !live_controls.is_empty() {
                            return Err(Error::NotClassicallyFoldable { qubit: t });
                        }
                        let bit = bits.get_mut(&t).unwrap();
                        *bit = !*bit;
                    } else {
                        live_targets.push(remap[&t]);
                    }
                }
                if live_controls.is_empty() {
                    for t in live_targets {
                        out.push(Gate::x(t))?;
                    }
                } else if !live_targets.is_empty() {
                    out.push(Gate::mcx(live_controls, live_targets)?)?;
                }
            }
        }
    }
    while marker_idx < circuit.markers().len() {
        out.mark(&circuit.markers()[marker_idx].label);
        marker_idx += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn mcx_rejects_overlap_and_empty_targets() {
        assert_eq!(
            Gate::mcx(vec![(0, Polarity::Positive)], vec![0]),
            Err(Error::OverlappingControlTarget { qubit: 0 })
        );
        assert_eq!(Gate::mcx(vec![], vec![]), Err(Error::EmptyTargets));
        assert_eq!(
            Gate::mcx(vec![], vec![1, 1]),
            Err(Error::OverlappingControlTarget { qubit: 1 })
        );
    }

    #[test]
    fn push_checks_bounds() {
        let mut c = Circuit::new(2);
        assert_eq!(
            c.push(Gate::h(2)),
            Err(Error::QubitOutOfRange { qubit: 2, qubit_count: 2 })
        );
    }

    #[test]
    fn hadamard_unitary() {
        let mut c = Circuit::new(1);
        c.push(Gate::h(0)).unwrap();
        let u = to_unitary(&c).unwrap();
        let s = FRAC_1_SQRT_2;
        assert!((u.get(0, 0).re - s).abs() < 1e-15);
        assert!((u.get(1, 0).re - s).abs() < 1e-15);
        assert!((u.get(0, 1).re - s).abs() < 1e-15);
        assert!((u.get(1, 1).re + s).abs() < 1e-15);
        assert!(unitarity_check(&c).unwrap() <= 1e-15);
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(2);
        let u = to_unitary(&c).unwrap();
        assert_eq!(u.max_abs_diff(&Unitary::identity(4)), 0.0);
        assert_eq!(unitarity_check(&c).unwrap(), 0.0);
    }

    #[test]
    fn x_unitary() {
        let mut c = Circuit::new(1);
        c.push(Gate::x(0)).unwrap();
        let u = to_unitary(&c).unwrap();
        assert_eq!(u.get(0, 0), Complex::ZERO);
        assert_eq!(u.get(1, 0), Complex::ONE);
        assert_eq!(u.get(0, 1), Complex::ONE);
        assert_eq!(u.get(1, 1), Complex::ZERO);
    }

    #[test]
    fn matrix_cap() {
        let c = Circuit::new(13);
        assert!(matches!(to_unitary(&c), Err(Error::MatrixCapExceeded { .. })));
    }

    #[test]
    fn stats_empty() {
        let stats = gate_stats(&Circuit::new(3));
        assert_eq!(stats.total(), 0);
        assert_eq!(stats.max_arity, 0);
    }

    #[test]
    fn specialize_always_on_control_becomes_x() {
        // CNOT with its control wire pinned to 1 collapses to X on the target.
        let mut c = Circuit::new(2);
        c.push(Gate::cx(1, Polarity::Positive, 0).unwrap()).unwrap();
        let fixed = BTreeMap::from([(1usize, true)]);
        let folded = specialize_circuit(&c, &fixed).unwrap();
        assert_eq!(folded.qubit_count(), 1);
        assert_eq!(folded.gates(), &[Gate::x(0)]);
    }

    #[test]
    fn specialize_drops_unsatisfied_gate() {
        let mut c = Circuit::new(2);
        c.push(Gate::cx(1, Polarity::Positive, 0).unwrap()).unwrap();
        let fixed = BTreeMap::from([(1usize, false)]);
        let folded = specialize_circuit(&c, &fixed).unwrap();
        assert!(folded.is_empty());
    }

    #[test]
    fn specialize_tracks_classical_flips() {
        // X on a fixed wire flips the tracked bit, so a later control sees it.
        let mut c = Circuit::new(2);
        c.push(Gate::x(1)).unwrap();
        c.push(Gate::cx(1, Polarity::Positive, 0).unwrap()).unwrap();
        let fixed = BTreeMap::from([(1usize, false)]);
        let folded = specialize_circuit(&c, &fixed).unwrap();
        assert_eq!(folded.gates(), &[Gate::x(0)]);
    }

    #[test]
    fn specialize_rejects_hadamard_on_fixed_wire() {
        let mut c = Circuit::new(1);
        c.push(Gate::h(0)).unwrap();
        let fixed = BTreeMap::from([(0usize, false)]);
        assert_eq!(
            specialize_circuit(&c, &fixed),
            Err(Error::NotClassicallyFoldable { qubit: 0 })
        );
    }
}
