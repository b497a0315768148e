use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::VerifyError;
use crate::ir::{Circuit, Gate};

pub const MAX_STATE_QUBITS: u32 = 20;

/// Dense state over `m` qubits. Bit `i` of an amplitude index is qubit `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    m: u32,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(m: u32, index: usize) -> Result<StateVector, VerifyError> {
        check_size(m)?;
        if index >> m != 0 {
            return Err(VerifyError::Invalid(format!("basis index {index} needs more than {m} qubits")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << m];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { m, amps })
    }

    pub fn from_bits(bits: &[bool]) -> Result<StateVector, VerifyError> {
        StateVector::basis(bits.len() as u32, bits_to_index(bits))
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<StateVector, VerifyError> {
        if !amps.len().is_power_of_two() {
            return Err(VerifyError::Invalid(format!("{} amplitudes is not a power of two", amps.len())));
        }
        let m = amps.len().trailing_zeros();
        check_size(m)?;
        let s = StateVector { m, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(VerifyError::Norm(norm));
        }
        Ok(s)
    }

    /// Equal-weight superposition of the given basis indices.
    pub fn uniform(m: u32, indices: &[usize]) -> Result<StateVector, VerifyError> {
        check_size(m)?;
        if indices.is_empty() {
            return Err(VerifyError::Invalid("empty superposition".into()));
        }
        let a = 1.0 / (indices.len() as f64).sqrt();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << m];
        for &i in indices {
            if i >> m != 0 {
                return Err(VerifyError::Invalid(format!("basis index {i} needs more than {m} qubits")));
            }
            amps[i] += a;
        }
        StateVector::from_amplitudes(amps)
    }

    pub fn num_qubits(&self) -> u32 {
        self.m
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest entrywise distance to another state of the same size.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn apply(&mut self, g: &Gate) {
        let a = &mut self.amps;
        match g {
            Gate::X(q) => {
                let t = 1 << q.index();
                permute(a, 0, t);
            }
            Gate::Cnot { control, target } => permute(a, 1 << control.index(), 1 << target.index()),
            Gate::Toffoli { controls: [c1, c2], target } => {
                permute(a, 1 << c1.index() | 1 << c2.index(), 1 << target.index())
            }
            Gate::Mpmct { controls, polarity, target } => {
                let t = 1 << target.index();
                let (mut mask, mut want) = (0, 0);
                for (c, &p) in controls.iter().zip(polarity) {
                    mask |= 1 << c.index();
                    if p {
                        want |= 1 << c.index();
                    }
                }
                for i in 0..a.len() {
                    if i & t == 0 && i & mask == want {
                        a.swap(i, i | t);
                    }
                }
            }
            Gate::Swap(x, y) => {
                let (bx, by) = (1 << x.index(), 1 << y.index());
                for i in 0..a.len() {
                    if i & bx != 0 && i & by == 0 {
                        a.swap(i, i ^ bx ^ by);
                    }
                }
            }
            Gate::H(q) => {
                let t = 1 << q.index();
                for i in 0..a.len() {
                    if i & t == 0 {
                        let (u, v) = (a[i], a[i | t]);
                        a[i] = (u + v) * FRAC_1_SQRT_2;
                        a[i | t] = (u - v) * FRAC_1_SQRT_2;
                    }
                }
            }
            Gate::S(q) => phase(a, q.index(), Complex64::i()),
            Gate::Sdg(q) => phase(a, q.index(), -Complex64::i()),
            Gate::T(q) => phase(a, q.index(), Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)),
            Gate::Tdg(q) => phase(a, q.index(), Complex64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)),
        }
    }
}

fn check_size(m: u32) -> Result<(), VerifyError> {
    if m > MAX_STATE_QUBITS {
        Err(VerifyError::TooLarge(m))
    } else {
        Ok(())
    }
}

pub(crate) fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().enumerate().fold(0, |acc, (i, &b)| acc | (b as usize) << i)
}

/// Flip bit `t` wherever every bit of `controls` is set.
fn permute(a: &mut [Complex64], controls: usize, t: usize) {
    for i in 0..a.len() {
        if i & t == 0 && i & controls == controls {
            a.swap(i, i | t);
        }
    }
}

fn phase(a: &mut [Complex64], q: usize, w: Complex64) {
    let t = 1 << q;
    for (i, x) in a.iter_mut().enumerate() {
        if i & t != 0 {
            *x *= w;
        }
    }
}

pub fn simulate_state(circuit: &Circuit, initial: &StateVector) -> Result<StateVector, VerifyError> {
    check_size(circuit.num_qubits())?;
    if initial.m != circuit.num_qubits() {
        return Err(VerifyError::InputLength { got: initial.m as usize, want: circuit.num_qubits() as usize });
    }
    let mut s = initial.clone();
    for g in circuit.gates() {
        s.apply(g);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::Qubit;

    #[test]
    fn hadamard_then_t() {
        let mut s = StateVector::basis(1, 0).unwrap();
        s.apply(&Gate::H(Qubit(0)));
        assert!((s.amps[0].re - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((s.amps[1].re - FRAC_1_SQRT_2).abs() < 1e-12);
        s.apply(&Gate::T(Qubit(0)));
        s.apply(&Gate::T(Qubit(0)));
        assert!((s.amps[1] - Complex64::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-12);
    }

    #[test]
    fn cap() {
        assert!(StateVector::basis(21, 0).unwrap_err().to_string().contains("state too large"));
    }
}
