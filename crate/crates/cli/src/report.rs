//! JSON serialization of run reports. Field names mirror the in-memory
//! report in snake case; output is deterministic apart from `wall_time_ms`.

use std::collections::BTreeMap;

use qgrover_core::circuit::GateStats;
use qgrover_core::RunReport;
use serde::Serialize;

#[derive(Serialize)]
pub struct JsonGateStats {
    pub hadamard: usize,
    pub pauli_x: usize,
    pub mcx: usize,
    pub total: usize,
    pub max_arity: usize,
    pub qubit_count: usize,
}

impl From<GateStats> for JsonGateStats {
    fn from(stats: GateStats) -> JsonGateStats {
        JsonGateStats {
            hadamard: stats.hadamard,
            pauli_x: stats.pauli_x,
            mcx: stats.mcx,
            total: stats.total(),
            max_arity: stats.max_arity,
            qubit_count: stats.qubit_count,
        }
    }
}

#[derive(Serialize)]
pub struct JsonReport {
    pub n: usize,
    pub m: usize,
    /// Target string, MSB-left, as given on the command line.
    pub s: String,
    pub multiplicity: u64,
    pub iterations: u64,
    pub query_count: u64,
    pub success_probabilities: Vec<f64>,
    pub histogram: BTreeMap<u64, u64>,
    pub found: bool,
    pub reported_address: u64,
    pub gate_stats: JsonGateStats,
    pub wall_time_ms: f64,
}

impl JsonReport {
    pub fn new(report: &RunReport, target_text: &str, wall_time_ms: f64) -> JsonReport {
        JsonReport {
            n: report.n,
            m: report.m,
            s: target_text.to_string(),
            multiplicity: report.multiplicity,
            iterations: report.iterations,
            query_count: report.query_count,
            success_probabilities: report.success_probabilities.clone(),
            histogram: report.histogram.iter().map(|(&k, &v)| (k, v)).collect(),
            found: report.found,
            reported_address: report.reported_address,
            gate_stats: report.gate_stats.into(),
            wall_time_ms,
        }
    }
}
