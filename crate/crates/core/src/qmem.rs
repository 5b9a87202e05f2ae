//! Classical database model, the text file format, and compilation of the
//! database into the memory (`LOAD`) circuit.
//!
//! One database record becomes one mixed-polarity multi-controlled X: the
//! controls select the record's address (negative polarity for 0 bits), the
//! targets flip exactly the data qubits where the record has a 1 bit. The
//! binary-to-unary address converter is therefore folded into the control
//! polarities rather than materialized with ancilla wires. All-zero records
//! contribute no gate, so LOAD realizes |x>|d> -> |x>|d xor d_x>.

use alloc::vec::Vec;

use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};
use crate::statevec::{RegisterSlice, StateVector};
use crate::Complex;

/// 2^n records of m bits each, in address order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Database {
    n: usize,
    m: usize,
    records: Vec<u64>,
}

impl Database {
    pub fn new(n: usize, m: usize, records: Vec<u64>) -> Result<Database> {
        if records.len() != 1usize << n {
            return Err(Error::WrongRecordCount {
                expected: 1usize << n,
                actual: records.len(),
            });
        }
        for &d in &records {
            if m < 64 && d >= 1u64 << m {
                return Err(Error::ValueOutOfRange { value: d, width: m });
            }
        }
        Ok(Database { n, m, records })
    }

    /// Address bits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Record bits.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Search space size N = 2^n.
    pub fn record_count(&self) -> u64 {
        1u64 << self.n
    }

    pub fn records(&self) -> &[u64] {
        &self.records
    }

    pub fn record(&self, address: u64) -> u64 {
        self.records[address as usize]
    }
}

/// Parses the database text format:
/// line 1 is `n m`, then exactly 2^n lines of m characters from {0,1} with
/// the most significant bit leftmost. Blank lines and lines starting with
/// `#` are ignored anywhere.
pub fn parse_database(text: &str) -> Result<Database> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::BadHeader { line: 1 })?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(Error::BadHeader { line: header_line })?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(Error::BadHeader { line: header_line })?;
    if parts.next().is_some() || n == 0 || m == 0 || m > 63 || n > 32 {
        return Err(Error::BadHeader { line: header_line });
    }

    let mut records = Vec::with_capacity(1usize << n);
    for (line_no, line) in lines {
        let mut value = 0u64;
        let mut width = 0usize;
        for ch in line.chars() {
            match ch {
                '0' => value <<= 1,
                '1' => value = (value << 1) | 1,
                _ => return Err(Error::BadBitChar { line: line_no, ch }),
            }
            width += 1;
        }
        if width != m {
            return Err(Error::RecordWidthMismatch {
                expected: m,
                actual: width,
            });
        }
        records.push(value);
    }
    Database::new(n, m, records)
}

/// Parses an MSB-left bit string (the same convention as database lines)
/// into a record value of the given width.
pub fn parse_bits(text: &str, width: usize) -> Result<u64> {
    let mut value = 0u64;
    let mut seen = 0usize;
    for ch in text.chars() {
        match ch {
            '0' => value <<= 1,
            '1' => value = (value << 1) | 1,
            _ => return Err(Error::BadBitChar { line: 0, ch }),
        }
        seen += 1;
    }
    if seen != width {
        return Err(Error::RecordWidthMismatch {
            expected: width,
            actual: seen,
        });
    }
    Ok(value)
}

/// Fixed assignment of the six registers to global qubit indices:
/// address, data, target string, kickback qubit, oracle-enable flag c, and a
/// constant-one wire. Total Q = n + 2m + 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitLayout {
    n: usize,
    m: usize,
}

impl QubitLayout {
    pub fn new(n: usize, m: usize) -> QubitLayout {
        QubitLayout { n, m }
    }

    pub fn for_database(db: &Database) -> QubitLayout {
        QubitLayout::new(db.n(), db.m())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn address(&self) -> RegisterSlice {
        RegisterSlice::new(0, self.n)
    }

    pub fn data(&self) -> RegisterSlice {
        RegisterSlice::new(self.n, self.m)
    }

    pub fn target_s(&self) -> RegisterSlice {
        RegisterSlice::new(self.n + self.m, self.m)
    }

    pub fn kickback(&self) -> usize {
        self.n + 2 * self.m
    }

    pub fn c_flag(&self) -> usize {
        self.n + 2 * self.m + 1
    }

    pub fn one_wire(&self) -> usize {
        self.n + 2 * self.m + 2
    }

    pub fn qubit_count(&self) -> usize {
        self.n + 2 * self.m + 3
    }

    pub fn matches(&self, db: &Database) -> bool {
        self.n == db.n() && self.m == db.m()
    }
}

/// Compiles the database into the memory circuit: one multi-controlled X per
/// nonzero record, controls on the address register with polarity given by
/// the address bits, targets on the data qubits where the record has 1s.
pub fn build_load_circuit(db: &Database, layout: &QubitLayout) -> Result<Circuit> {
    if !layout.matches(db) {
        return Err(Error::LayoutMismatch);
    }
    let mut circuit = Circuit::new(layout.qubit_count());
    let address = layout.address();
    let data = layout.data();
    for (k, &record) in db.records().iter().enumerate() {
        if record == 0 {
            continue;
        }
        let controls = (0..db.n())
            .map(|i| {
                let pol = if k as u64 & (1 << i) != 0 {
                    Polarity::Positive
                } else {
                    Polarity::Negative
                };
                (address.offset + i, pol)
            })
            .collect();
        let targets = (0..db.m())
            .filter(|i| record & (1 << i) != 0)
            .map(|i| data.offset + i)
            .collect();
        circuit.push(Gate::mcx(controls, targets)?)?;
    }
    Ok(circuit)
}

/// Measures how far LOAD∘LOAD is from the identity. For n + m ≤ 10 the check
/// is a dense matrix product on the address + data wires; above that it
/// pushes seeded random states through the doubled circuit.
pub fn load_twice_max_deviation(db: &Database, layout: &QubitLayout) -> Result<f64> {
    let load = build_load_circuit(db, layout)?;
    // LOAD only touches the low n + m wires.
    let trimmed = load.with_qubit_count(db.n() + db.m())?;
    let mut doubled = trimmed.clone();
    doubled.extend(&trimmed)?;

    if db.n() + db.m() <= 10 {
        let u = crate::circuit::to_unitary(&doubled)?;
        Ok(u.max_abs_diff(&crate::circuit::Unitary::identity(u.dim())))
    } else {
        use rand_chacha::ChaCha8Rng;
        use rand_core::{RngCore, SeedableRng};
        let q = db.n() + db.m();
        let dim = 1usize << q;
        let mut rng = ChaCha8Rng::seed_from_u64(0x10ad);
        let mut worst = 0.0f64;
        for _ in 0..4 {
            let mut amps: Vec<Complex> = (0..dim)
                .map(|_| {
                    let re = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                    let im = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                    Complex::new(re, im)
                })
                .collect();
            let norm = libm::sqrt(amps.iter().map(|a| a.norm_sqr()).sum::<f64>());
            for a in &mut amps {
                *a /= norm;
            }
            let mut state = StateVector::from_amplitudes(q, amps.clone())?;
            state.apply_circuit(&doubled)?;
            for (out, orig) in state.amplitudes().iter().zip(amps.iter()) {
                worst = worst.max((out - orig).norm());
            }
        }
        Ok(worst)
    }
}
