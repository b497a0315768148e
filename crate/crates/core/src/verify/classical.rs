use super::VerifyError;
use crate::ir::{Circuit, Gate};

/// Bit `i` of the string is qubit `i`.
pub fn parse_bits(s: &str) -> Result<Vec<bool>, VerifyError> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(VerifyError::BadBit(other)),
        })
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Runs a circuit of X, CNOT, SWAP, Toffoli and MPMCT gates on a basis state.
pub fn simulate_classical(circuit: &Circuit, input: &[bool]) -> Result<Vec<bool>, VerifyError> {
    let want = circuit.num_qubits() as usize;
    if input.len() != want {
        return Err(VerifyError::InputLength { got: input.len(), want });
    }
    let mut bits = input.to_vec();
    for g in circuit.gates() {
        apply(&mut bits, g)?;
    }
    Ok(bits)
}

pub(crate) fn apply(bits: &mut [bool], g: &Gate) -> Result<(), VerifyError> {
    match g {
        Gate::X(q) => bits[q.index()] ^= true,
        Gate::Cnot { control, target } => bits[target.index()] ^= bits[control.index()],
        Gate::Swap(a, b) => bits.swap(a.index(), b.index()),
        Gate::Toffoli { controls: [a, b], target } => bits[target.index()] ^= bits[a.index()] & bits[b.index()],
        Gate::Mpmct { controls, polarity, target } => {
            if controls.iter().zip(polarity).all(|(c, &p)| bits[c.index()] == p) {
                bits[target.index()] ^= true;
            }
        }
        other => return Err(VerifyError::NonClassical(other.kind().mnemonic())),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{CircuitBuilder, Qubit, RegisterRole};

    #[test]
    fn mixed_polarity_fires() {
        let mut b = CircuitBuilder::new();
        b.register("w", RegisterRole::Ancilla, 3);
        b.push(Gate::Mpmct { controls: vec![Qubit(0), Qubit(1)], polarity: vec![true, false], target: Qubit(2) });
        let c = b.finish().unwrap();
        let out = simulate_classical(&c, &parse_bits("100").unwrap()).unwrap();
        assert_eq!(format_bits(&out), "101");
        let out = simulate_classical(&c, &parse_bits("010").unwrap()).unwrap();
        assert_eq!(format_bits(&out), "010");
    }
}
