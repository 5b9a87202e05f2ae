//! OpenQASM 3 export and import for the supported gate subset.
//!
//! The emitted text is exactly `OPENQASM 3.0;`, a single `qubit[Q] q;`
//! declaration, then one gate per line. Multi-controlled X is written as `x`
//! with one `ctrl @` / `negctrl @` modifier per control, one line per target;
//! the importer merges consecutive lines with identical controls back into
//! one multi-target gate, which is how they were emitted.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};

/// Renders a circuit as QASM 3 text. Output is deterministic.
pub fn export_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\n");
    out.push_str(&format!("qubit[{}] q;\n", circuit.qubit_count()));
    for gate in circuit.gates() {
        match gate {
            Gate::Hadamard { target } => out.push_str(&format!("h q[{target}];\n")),
            Gate::PauliX { target } => out.push_str(&format!("x q[{target}];\n")),
            Gate::MultiControlledX { controls, targets } => {
                for &target in targets {
                    for &(_, pol) in controls {
                        out.push_str(match pol {
                            Polarity::Positive => "ctrl @ ",
                            Polarity::Negative => "negctrl @ ",
                        });
                    }
                    out.push('x');
                    out.push(' ');
                    for &(q, _) in controls {
                        out.push_str(&format!("q[{q}], "));
                    }
                    out.push_str(&format!("q[{target}];\n"));
                }
            }
        }
    }
    out
}

fn parse_operand(token: &str, line: usize) -> Result<usize> {
    let inner = token
        .strip_prefix("q[")
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::ParseError {
            line,
            message: format!("expected operand `q[i]`, got `{token}`"),
        })?;
    inner.parse().map_err(|_| Error::ParseError {
        line,
        message: format!("bad qubit index `{inner}`"),
    })
}

/// Parses text produced by [`export_qasm`] (or hand-written text within the
/// same subset) back into a circuit.
pub fn import_qasm(text: &str) -> Result<Circuit> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with("//"));

    let (line, header) = lines.next().ok_or(Error::ParseError {
        line: 1,
        message: "empty input".to_string(),
    })?;
    if header != "OPENQASM 3.0;" {
        return Err(Error::ParseError {
            line,
            message: "expected `OPENQASM 3.0;`".to_string(),
        });
    }
    let (line, decl) = lines.next().ok_or(Error::ParseError {
        line: 1,
        message: "missing qubit declaration".to_string(),
    })?;
    let qubit_count: usize = decl
        .strip_prefix("qubit[")
        .and_then(|t| t.strip_suffix("] q;"))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::ParseError {
            line,
            message: "expected `qubit[Q] q;`".to_string(),
        })?;

    let mut circuit = Circuit::new(qubit_count);
    // pending mergeable MCX line: controls + accumulated targets
    type PendingMcx = (Vec<(usize, Polarity)>, Vec<usize>);
    let mut pending: Option<PendingMcx> = None;

    for (line, text) in lines {
        let body = text.strip_suffix(';').ok_or_else(|| Error::ParseError {
            line,
            message: "missing `;`".to_string(),
        })?;

        let mut polarities = Vec::new();
        let mut rest = body.trim();
        loop {
            if let Some(r) = rest.strip_prefix("ctrl @") {
                polarities.push(Polarity::Positive);
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix("negctrl @") {
                polarities.push(Polarity::Negative);
                rest = r.trim_start();
            } else {
                break;
            }
        }

        let (name, operands) = rest.split_once(char::is_whitespace).ok_or_else(|| {
            Error::ParseError {
                line,
                message: format!("malformed statement `{body}`"),
            }
        })?;
        let operands: Vec<usize> = operands
            .split(',')
            .map(|t| parse_operand(t.trim(), line))
            .collect::<Result<_>>()?;

        let gate = match name {
            "h" if polarities.is_empty() && operands.len() == 1 => Gate::h(operands[0]),
            "x" => {
                if operands.len() != polarities.len() + 1 {
                    return Err(Error::ParseError {
                        line,
                        message: "operand count does not match modifiers".to_string(),
                    });
                }
                let target = *operands.last().unwrap();
                let controls: Vec<(usize, Polarity)> = operands[..operands.len() - 1]
                    .iter()
                    .copied()
                    .zip(polarities.iter().copied())
                    .collect();
                if controls.is_empty() {
                    Gate::x(target)
                } else {
                    // merge with the previous line when it carried the same
                    // controls and this target is fresh
                    if let Some((prev_controls, prev_targets)) = &mut pending {
                        if *prev_controls == controls && !prev_targets.contains(&target) {
                            prev_targets.push(target);
                            continue;
                        }
                        let (c, t) = pending.take().unwrap();
                        circuit.push(Gate::mcx(c, t)?)?;
                    }
                    pending = Some((controls, alloc::vec![target]));
                    continue;
                }
            }
            "h" => {
                return Err(Error::UnsupportedGate {
                    line,
                    gate: "modified h".to_string(),
                })
            }
            other => {
                return Err(Error::UnsupportedGate {
                    line,
                    gate: other.to_string(),
                })
            }
        };
        if let Some((c, t)) = pending.take() {
            circuit.push(Gate::mcx(c, t)?)?;
        }
        circuit.push(gate)?;
    }
    if let Some((c, t)) = pending.take() {
        circuit.push(Gate::mcx(c, t)?)?;
    }
    Ok(circuit)
}
