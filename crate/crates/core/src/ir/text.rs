//! Line-oriented circuit text format.
//!
//! ```text
//! .qubits 9
//! .reg addr address 0 3
//! .reg out output 4 4
//! .reg anc ancilla 5 8
//! mpmct ++-+ 0 1 2 3 -> 4
//! ```

use std::fmt::Write as _;

use super::{Circuit, Gate, IrError, Qubit, Register, RegisterRole};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

pub fn write_circuit(c: &Circuit) -> String {
    let mut s = String::new();
    let _ = writeln!(s, ".qubits {}", c.num_qubits());
    for r in c.registers() {
        let _ = writeln!(s, ".reg {} {} {} {}", r.name, r.role, r.start, r.start + r.len - 1);
    }
    for g in c.gates() {
        let _ = writeln!(s, "{g}");
    }
    s
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut num_qubits: Option<(u32, usize)> = None;
    let mut registers = Vec::new();
    let mut gates = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |reason: String| ParseError { line, reason };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let head = toks.next().expect("non-empty line");
        let rest: Vec<&str> = toks.collect();

        if head == ".qubits" {
            if num_qubits.is_some() {
                return Err(err("duplicate .qubits header".into()));
            }
            let [n] = rest[..] else {
                return Err(err(".qubits takes one argument".into()));
            };
            let n = n.parse::<u32>().map_err(|_| err(format!("bad qubit count '{n}'")))?;
            num_qubits = Some((n, line));
            continue;
        }
        let Some((nq, _)) = num_qubits else {
            return Err(err("missing .qubits header".into()));
        };

        if head == ".reg" {
            let [name, role, first, last] = rest[..] else {
                return Err(err(".reg expects: name role first last".into()));
            };
            let role: RegisterRole = role.parse().map_err(|e: IrError| err(e.to_string()))?;
            let first = parse_index(first, nq).map_err(&err)?;
            let last = parse_index(last, nq).map_err(&err)?;
            if last < first {
                return Err(err(format!("register '{name}' ends before it starts")));
            }
            registers.push(Register { name: name.to_string(), role, start: first, len: last - first + 1 });
            continue;
        }

        let g = parse_gate(head, &rest, nq).map_err(&err)?;
        gates.push(g);
    }

    let Some((nq, header_line)) = num_qubits else {
        return Err(ParseError { line: 0, reason: "missing .qubits header".into() });
    };
    Circuit::new(nq, registers, gates).map_err(|e| ParseError { line: header_line, reason: e.to_string() })
}

fn parse_index(tok: &str, nq: u32) -> Result<u32, String> {
    let v: u32 = tok.parse().map_err(|_| format!("bad qubit index '{tok}'"))?;
    if v >= nq {
        return Err(format!("index {v} out of range for {nq} qubits"));
    }
    Ok(v)
}

fn parse_gate(head: &str, args: &[&str], nq: u32) -> Result<Gate, String> {
    let q = |i: usize| -> Result<Qubit, String> { parse_index(args[i], nq).map(Qubit) };
    let arity = |n: usize| -> Result<(), String> {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!("'{head}' takes {n} operand(s), got {}", args.len()))
        }
    };
    let g = match head {
        "x" | "h" | "s" | "sdg" | "t" | "tdg" => {
            arity(1)?;
            let a = q(0)?;
            match head {
                "x" => Gate::X(a),
                "h" => Gate::H(a),
                "s" => Gate::S(a),
                "sdg" => Gate::Sdg(a),
                "t" => Gate::T(a),
                _ => Gate::Tdg(a),
            }
        }
        "cnot" => {
            arity(2)?;
            Gate::Cnot { control: q(0)?, target: q(1)? }
        }
        "swap" => {
            arity(2)?;
            Gate::Swap(q(0)?, q(1)?)
        }
        "tof" => {
            arity(3)?;
            Gate::Toffoli { controls: [q(0)?, q(1)?], target: q(2)? }
        }
        "mpmct" => {
            let Some((pol, ops)) = args.split_first() else {
                return Err("mpmct needs a polarity string".into());
            };
            let polarity = pol
                .chars()
                .map(|ch| match ch {
                    '+' => Ok(true),
                    '-' => Ok(false),
                    _ => Err(format!("bad polarity character '{ch}'")),
                })
                .collect::<Result<Vec<bool>, String>>()?;
            let arrow = ops.iter().position(|&t| t == "->").ok_or("mpmct needs '-> target'")?;
            if arrow + 2 != ops.len() {
                return Err("mpmct takes exactly one target after '->'".into());
            }
            let controls = ops[..arrow]
                .iter()
                .map(|t| parse_index(t, nq).map(Qubit))
                .collect::<Result<Vec<_>, _>>()?;
            if controls.len() != polarity.len() {
                return Err(format!(
                    "polarity length mismatch: {} symbols for {} controls",
                    polarity.len(),
                    controls.len()
                ));
            }
            let target = Qubit(parse_index(ops[arrow + 1], nq)?);
            Gate::Mpmct { controls, polarity, target }
        }
        other => return Err(format!("unknown gate '{other}'")),
    };
    g.validate().map_err(|e| e.to_string())?;
    Ok(g)
}
