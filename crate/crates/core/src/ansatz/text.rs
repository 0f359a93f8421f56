//! Line-oriented circuit text format.
//!
//! ```text
//! # family=ALT
//! qubits=2 params=4
//! RY 0 p0
//! RY 1 p1
//! CZ 0,1
//! RY 0 p2
//! RY 1 p3
//! ```
//!
//! Lines starting with `#` are comments; `# family=<TAG>` sets the family
//! tag. Dense blocks carry a matrix and cannot be written in this format.

use std::fmt::Write as _;

use super::{AnsatzCircuit, Axis, Family, GateOp};
use crate::{Error, Result};

pub fn circuit_to_text(circuit: &AnsatzCircuit) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "# family={}", circuit.family().tag());
    let _ = writeln!(
        out,
        "qubits={} params={}",
        circuit.n_qubits(),
        circuit.n_params()
    );
    for op in circuit.ops() {
        let _ = match op {
            GateOp::Rotation { axis, qubit, param } => {
                let kind = match axis {
                    Axis::X => "RX",
                    Axis::Y => "RY",
                    Axis::Z => "RZ",
                };
                writeln!(out, "{kind} {qubit} p{param}")
            }
            GateOp::Cz(a, b) => writeln!(out, "CZ {a},{b}"),
            GateOp::Cnot { control, target } => writeln!(out, "CNOT {control},{target}"),
            GateOp::Dense { .. } => {
                return Err(Error::Unsupported(
                    "dense blocks cannot be serialised to circuit text".into(),
                ))
            }
        };
    }
    Ok(out)
}

pub fn circuit_from_text(text: &str) -> Result<AnsatzCircuit> {
    let mut family = None;
    let mut header: Option<(usize, usize)> = None;
    let mut ops = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let perr = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(tag) = comment.trim().strip_prefix("family=") {
                family = Some(
                    Family::from_tag(tag.trim())
                        .ok_or_else(|| perr(format!("unknown family tag `{tag}`")))?,
                );
            }
            continue;
        }
        if header.is_none() {
            header = Some(parse_header(line).map_err(perr)?);
            continue;
        }
        ops.push(parse_op(line).map_err(perr)?);
    }
    let (n_qubits, n_params) = header.ok_or(Error::Parse {
        line: 0,
        message: "missing `qubits=<n> params=<m>` header".into(),
    })?;
    let circuit = AnsatzCircuit::new(n_qubits, ops, family.unwrap_or(Family::Alt))?;
    if circuit.n_params() != n_params {
        return Err(Error::invalid(format!(
            "header declares {n_params} parameters, ops use {}",
            circuit.n_params()
        )));
    }
    Ok(circuit)
}

fn parse_header(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut qubits = None;
    let mut params = None;
    for tok in line.split_whitespace() {
        if let Some(v) = tok.strip_prefix("qubits=") {
            qubits = Some(v.parse().map_err(|_| format!("bad qubit count `{v}`"))?);
        } else if let Some(v) = tok.strip_prefix("params=") {
            params = Some(v.parse().map_err(|_| format!("bad parameter count `{v}`"))?);
        } else {
            return Err(format!("unexpected header token `{tok}`"));
        }
    }
    match (qubits, params) {
        (Some(q), Some(p)) => Ok((q, p)),
        _ => Err("header must be `qubits=<n> params=<m>`".into()),
    }
}

fn parse_op(line: &str) -> std::result::Result<GateOp, String> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let qubits = |s: &str| -> std::result::Result<Vec<usize>, String> {
        s.split(',')
            .map(|q| q.parse().map_err(|_| format!("bad qubit index `{q}`")))
            .collect()
    };
    let param = |s: &str| -> std::result::Result<usize, String> {
        s.strip_prefix('p')
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| format!("bad parameter slot `{s}`"))
    };
    match toks.as_slice() {
        [kind @ ("RX" | "RY" | "RZ"), q, p] => {
            let axis = match *kind {
                "RX" => Axis::X,
                "RY" => Axis::Y,
                _ => Axis::Z,
            };
            let q = qubits(q)?;
            if q.len() != 1 {
                return Err(format!("{kind} takes one qubit"));
            }
            Ok(GateOp::Rotation {
                axis,
                qubit: q[0],
                param: param(p)?,
            })
        }
        [kind @ ("CZ" | "CNOT"), q] => match qubits(q)?.as_slice() {
            [a, b] if *kind == "CZ" => Ok(GateOp::Cz(*a, *b)),
            [a, b] => Ok(GateOp::Cnot {
                control: *a,
                target: *b,
            }),
            _ => Err(format!("{kind} takes two qubits")),
        },
        _ => Err(format!("cannot parse op `{line}`")),
    }
}
