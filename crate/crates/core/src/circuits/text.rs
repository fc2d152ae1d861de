//! Line-oriented circuit text: a `# label` line, a `qubits N` line, then one
//! gate per line as `KIND [angle] qubit [qubit]` with angles in radians.
//!
//! Angles are written with 12 significant digits, so writing a parsed circuit
//! reproduces the text exactly.

use super::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn fmt_angle<T: Real>(a: T) -> String {
    format!("{:.11e}", a.to_f64().unwrap_or(f64::NAN))
}

pub fn write_circuit<T: Real>(c: &Circuit<T>) -> String {
    let mut out = format!("# {}\nqubits {}\n", c.label(), c.num_qubits());
    for g in c.gates() {
        let line = match *g {
            Gate::Rx(a, q) | Gate::Ry(a, q) | Gate::Rz(a, q) => {
                format!("{} {} {q}", g.name(), fmt_angle(a))
            }
            Gate::Rzz(a, p, q) => format!("RZZ {} {p} {q}", fmt_angle(a)),
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) => format!("{} {q}", g.name()),
            Gate::Barrier => "BARRIER".to_string(),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_circuit<T: Real>(text: &str) -> Result<Circuit<T>> {
    let mut label = String::new();
    let mut circuit: Option<Circuit<T>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |reason: String| Error::Parse {
            line: line_no,
            reason,
        };
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if circuit.is_none() && label.is_empty() {
                label = rest.trim().to_string();
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "qubits" {
            if circuit.is_some() {
                return Err(err("duplicate `qubits` line".into()));
            }
            let n = fields
                .get(1)
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|_| fields.len() == 2)
                .ok_or_else(|| err(format!("expected `qubits N`, got `{line}`")))?;
            circuit = Some(Circuit::new(n, label.clone()).map_err(|e| err(e.to_string()))?);
            continue;
        }
        let c = circuit
            .as_mut()
            .ok_or_else(|| err("gate before `qubits` line".into()))?;
        let angle = |i: usize| -> Result<T> {
            let s = fields
                .get(i)
                .ok_or_else(|| err(format!("missing angle in `{line}`")))?;
            let v: f64 = s.parse().map_err(|_| err(format!("bad angle `{s}`")))?;
            T::from_f64(v).ok_or_else(|| err(format!("angle `{s}` not representable")))
        };
        let qubit = |i: usize| -> Result<usize> {
            let s = fields
                .get(i)
                .ok_or_else(|| err(format!("missing qubit in `{line}`")))?;
            s.parse().map_err(|_| err(format!("bad qubit index `{s}`")))
        };
        let (gate, arity) = match fields[0] {
            "RX" => (Gate::Rx(angle(1)?, qubit(2)?), 3),
            "RY" => (Gate::Ry(angle(1)?, qubit(2)?), 3),
            "RZ" => (Gate::Rz(angle(1)?, qubit(2)?), 3),
            "RZZ" => (Gate::Rzz(angle(1)?, qubit(2)?, qubit(3)?), 4),
            "H" => (Gate::H(qubit(1)?), 2),
            "S" => (Gate::S(qubit(1)?), 2),
            "SDG" => (Gate::Sdg(qubit(1)?), 2),
            "BARRIER" => (Gate::Barrier, 1),
            other => return Err(err(format!("unknown gate `{other}`"))),
        };
        if fields.len() != arity {
            return Err(err(format!(
                "`{}` takes {} fields, got {}",
                fields[0],
                arity,
                fields.len()
            )));
        }
        c.push(gate).map_err(|e| err(e.to_string()))?;
    }
    circuit.ok_or(Error::Parse {
        line: text.lines().count(),
        reason: "missing `qubits` line".into(),
    })
}
