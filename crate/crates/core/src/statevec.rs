//! Dense statevector representation and gate application kernels.
//!
//! Basis index bit i is qubit i (little-endian), so register slices are
//! contiguous bit fields and the kernels are pure bit arithmetic. X and
//! multi-controlled X are exact amplitude permutations; only Hadamard mixes
//! values, so norm drift is checked after Hadamard applications and treated
//! as a kernel bug, never silently renormalized.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};
use crate::Complex;

/// Default qubit cap: 2^26 complex doubles is 1 GiB.
pub const DEFAULT_QUBIT_CAP: usize = 26;

/// Norm drift beyond this is an invariant violation for this gate set
/// (permutations and Hadamards).
pub const NORM_TOLERANCE: f64 = 1e-10;

/// A contiguous run of qubits; qubit `offset + i` holds bit i of the
/// register's value (bit 0 least significant).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterSlice {
    pub offset: usize,
    pub width: usize,
}

impl RegisterSlice {
    pub fn new(offset: usize, width: usize) -> RegisterSlice {
        RegisterSlice { offset, width }
    }

    pub fn mask(&self) -> u64 {
        if self.width == 0 {
            0
        } else {
            ((1u64 << self.width) - 1) << self.offset
        }
    }

    /// Value of this register's bits within a global basis index.
    pub fn extract(&self, index: u64) -> u64 {
        (index >> self.offset) & ((1u64 << self.width) - 1)
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        self.offset..self.offset + self.width
    }
}

/// 2^Q complex amplitudes with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubit_count: usize,
    amps: Vec<Complex>,
}

impl StateVector {
    /// Computational basis state |index> on `qubit_count` qubits.
    pub fn new_basis_state(qubit_count: usize, index: u64) -> Result<StateVector> {
        Self::new_basis_state_with_cap(qubit_count, index, DEFAULT_QUBIT_CAP)
    }

    pub fn new_basis_state_with_cap(
        qubit_count: usize,
        index: u64,
        cap: usize,
    ) -> Result<StateVector> {
        if qubit_count > cap {
            return Err(Error::QubitCapExceeded {
                requested: qubit_count,
                cap,
            });
        }
        let dim = 1u64 << qubit_count;
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                index,
                dimension: dim,
            });
        }
        let mut amps = vec![Complex::ZERO; dim as usize];
        amps[index as usize] = Complex::ONE;
        Ok(StateVector {
            qubit_count,
            amps,
        })
    }

    /// Takes ownership of raw amplitudes; the caller is responsible for the
    /// norm (it is still checked).
    pub fn from_amplitudes(qubit_count: usize, amps: Vec<Complex>) -> Result<StateVector> {
        if amps.len() != 1usize << qubit_count {
            return Err(Error::DimensionMismatch {
                expected: 1usize << qubit_count,
                actual: amps.len(),
            });
        }
        let state = StateVector { qubit_count, amps };
        state.check_norm()?;
        Ok(state)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amps
    }

    /// Squared norm via a fixed-shape pairwise summation tree.
    pub fn norm_sqr(&self) -> f64 {
        pairwise_sum(&self.amps, |a| a.norm_sqr())
    }

    fn check_norm(&self) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        let drift = norm_sqr - 1.0;
        if !(-NORM_TOLERANCE..=NORM_TOLERANCE).contains(&drift) {
            return Err(Error::NormDrift { norm_sqr });
        }
        Ok(())
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.qubit_count {
            return Err(Error::QubitOutOfRange {
                qubit,
                qubit_count: self.qubit_count,
            });
        }
        Ok(())
    }

    /// Applies one gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            self.check_qubit(q)?;
        }
        match gate {
            Gate::Hadamard { target } => {
                self.apply_hadamard(*target);
                // The only gate that mixes amplitude values.
                self.check_norm()?;
            }
            Gate::PauliX { target } => self.apply_mcx(0, 0, 1u64 << target),
            Gate::MultiControlledX { controls, targets } => {
                let mut control_mask = 0u64;
                let mut control_value = 0u64;
                for &(q, pol) in controls {
                    control_mask |= 1u64 << q;
                    if pol == Polarity::Positive {
                        control_value |= 1u64 << q;
                    }
                }
                let mut target_mask = 0u64;
                for &t in targets {
                    target_mask |= 1u64 << t;
                }
                self.apply_mcx(control_mask, control_value, target_mask);
            }
        }
        Ok(())
    }

    fn apply_hadamard(&mut self, target: usize) {
        let bit = 1usize << target;
        let s = core::f64::consts::FRAC_1_SQRT_2;
        for base in 0..self.amps.len() {
            if base & bit == 0 {
                let a = self.amps[base];
                let b = self.amps[base | bit];
                self.amps[base] = (a + b) * s;
                self.amps[base | bit] = (a - b) * s;
            }
        }
    }

    /// Swaps amplitude pairs i <-> i^target_mask for indices whose control
    /// bits match. Only the matching subcube is visited, so amplitudes not
    /// selected by the controls are untouched bitwise.
    fn apply_mcx(&mut self, control_mask: u64, control_value: u64, target_mask: u64) {
        let dim = self.amps.len() as u64;
        let anchor = target_mask & target_mask.wrapping_neg(); // lowest target bit
        let free = (dim - 1) & !control_mask & !anchor;
        let mut sub = 0u64;
        loop {
            let i = (sub | control_value) as usize;
            let j = (i as u64 ^ target_mask) as usize;
            self.amps.swap(i, j);
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                break;
            }
        }
    }

    /// Applies the circuit's gates in order.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.qubit_count() != self.qubit_count {
            return Err(Error::DimensionMismatch {
                expected: self.qubit_count,
                actual: circuit.qubit_count(),
            });
        }
        for gate in circuit.gates() {
            self.apply_gate(gate)?;
        }
        Ok(())
    }

    /// Probability that measuring `reg` yields `value`: the sum of |a|^2 over
    /// basis states whose reg bits equal value, accumulated pairwise.
    pub fn marginal_probability(&self, reg: RegisterSlice, value: u64) -> Result<f64> {
        if reg.width > 0 && value >= 1u64 << reg.width {
            return Err(Error::ValueOutOfRange {
                value,
                width: reg.width,
            });
        }
        if reg.offset + reg.width > self.qubit_count {
            return Err(Error::QubitOutOfRange {
                qubit: reg.offset + reg.width - 1,
                qubit_count: self.qubit_count,
            });
        }
        if value != 0 && reg.width == 0 {
            return Err(Error::ValueOutOfRange { value, width: 0 });
        }
        let base = value << reg.offset;
        let free_bits: Vec<usize> = (0..self.qubit_count)
            .filter(|q| reg.mask() & (1u64 << q) == 0)
            .collect();
        Ok(subcube_sum(&self.amps, base, &free_bits))
    }

    /// Full marginal distribution of `reg` (2^width entries).
    pub fn marginal_distribution(&self, reg: RegisterSlice) -> Result<Vec<f64>> {
        (0..1u64 << reg.width)
            .map(|v| self.marginal_probability(reg, v))
            .collect()
    }

    /// Draws `shots` values of `reg` from its marginal distribution.
    /// Deterministic for a fixed (state, reg, shots, seed).
    pub fn sample_register(
        &self,
        reg: RegisterSlice,
        shots: u64,
        seed: u64,
    ) -> Result<BTreeMap<u64, u64>> {
        let dist = self.marginal_distribution(reg)?;
        let mut cdf = Vec::with_capacity(dist.len());
        let mut acc = 0.0f64;
        for p in &dist {
            acc += p;
            cdf.push(acc);
        }
        let mut histogram = BTreeMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..shots {
            // 53 random mantissa bits -> uniform in [0, 1)
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            let scaled = u * acc;
            let value = cdf.partition_point(|&c| c <= scaled) as u64;
            let value = value.min(dist.len() as u64 - 1);
            *histogram.entry(value).or_insert(0) += 1;
        }
        Ok(histogram)
    }
}

/// Pairwise (fixed-shape tree) reduction of `f` over the amplitudes.
fn pairwise_sum(amps: &[Complex], f: fn(&Complex) -> f64) -> f64 {
    if amps.len() <= 32 {
        let mut acc = 0.0;
        for a in amps {
            acc += f(a);
        }
        acc
    } else {
        let mid = amps.len() / 2;
        pairwise_sum(&amps[..mid], f) + pairwise_sum(&amps[mid..], f)
    }
}

/// Pairwise sum of |amps[base | spread(k)]|^2 over all settings k of the free
/// bits; the tree shape depends only on the free-bit count.
fn subcube_sum(amps: &[Complex], base: u64, free_bits: &[usize]) -> f64 {
    fn go(amps: &[Complex], base: u64, free_bits: &[usize], lo: u64, count: u64) -> f64 {
        if count <= 32 {
            let mut acc = 0.0;
            for k in lo..lo + count {
                let mut idx = base;
                for (pos, &q) in free_bits.iter().enumerate() {
                    if k & (1u64 << pos) != 0 {
                        idx |= 1u64 << q;
                    }
                }
                acc += amps[idx as usize].norm_sqr();
            }
            acc
        } else {
            let half = count / 2;
            go(amps, base, free_bits, lo, half) + go(amps, base, free_bits, lo + half, count - half)
        }
    }
    go(amps, base, free_bits, 0, 1u64 << free_bits.len())
}
