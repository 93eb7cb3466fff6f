//! Gate set and gate matrices.
//!
//! Conventions used throughout the crate:
//! - `RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2})`, `RY(θ) = exp(-iθY/2)`.
//! - Qubit 0 is the least-significant bit of a basis-state index.
//! - The 4x4 matrix of a two-qubit gate on `(q1, q2)` is indexed by
//!   `2 * bit(q1) + bit(q2)`, i.e. `q1` is the left factor of the Kronecker product.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Matrix2 = [[Complex64; 2]; 2];
pub type Matrix4 = [[Complex64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum GateOp {
    Hadamard {
        qubit: usize,
    },
    RotZ {
        qubit: usize,
        angle: f64,
    },
    RotY {
        qubit: usize,
        angle: f64,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    /// `N(α, β, γ) = exp[i(α X⊗X + β Y⊗Y + γ Z⊗Z)]` on `(q1, q2)`.
    TwoQubitN {
        q1: usize,
        q2: usize,
        alpha: f64,
        beta: f64,
        gamma: f64,
    },
}

impl GateOp {
    pub fn h(qubit: usize) -> Self {
        GateOp::Hadamard { qubit }
    }

    pub fn rz(qubit: usize, angle: f64) -> Self {
        GateOp::RotZ { qubit, angle }
    }

    pub fn ry(qubit: usize, angle: f64) -> Self {
        GateOp::RotY { qubit, angle }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        GateOp::Cnot { control, target }
    }

    pub fn n(q1: usize, q2: usize, angles: (f64, f64, f64)) -> Self {
        GateOp::TwoQubitN {
            q1,
            q2,
            alpha: angles.0,
            beta: angles.1,
            gamma: angles.2,
        }
    }

    /// Qubits touched by the gate, in operand order.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            GateOp::Hadamard { qubit } | GateOp::RotZ { qubit, .. } | GateOp::RotY { qubit, .. } => {
                vec![qubit]
            }
            GateOp::Cnot { control, target } => vec![control, target],
            GateOp::TwoQubitN { q1, q2, .. } => vec![q1, q2],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, GateOp::Cnot { .. } | GateOp::TwoQubitN { .. })
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::DuplicateQubit(qs[0]));
        }
        match *self {
            GateOp::RotZ { angle, .. } | GateOp::RotY { angle, .. } if !angle.is_finite() => {
                Err(Error::NonFinite(format!("rotation angle {angle}")))
            }
            GateOp::TwoQubitN {
                alpha, beta, gamma, ..
            } => check_angles(alpha, beta, gamma),
            _ => Ok(()),
        }
    }

    pub fn inverse(&self) -> Self {
        match *self {
            GateOp::RotZ { qubit, angle } => GateOp::RotZ {
                qubit,
                angle: -angle,
            },
            GateOp::RotY { qubit, angle } => GateOp::RotY {
                qubit,
                angle: -angle,
            },
            GateOp::TwoQubitN {
                q1,
                q2,
                alpha,
                beta,
                gamma,
            } => GateOp::TwoQubitN {
                q1,
                q2,
                alpha: -alpha,
                beta: -beta,
                gamma: -gamma,
            },
            g => g,
        }
    }

    /// Rewrites the gate in the native set {H, RZ, RY, CNOT}.
    pub fn to_native(&self) -> Vec<GateOp> {
        match *self {
            GateOp::TwoQubitN {
                q1,
                q2,
                alpha,
                beta,
                gamma,
            } => n_decomposition_on(q1, q2, alpha, beta, gamma),
            g => vec![g],
        }
    }

    /// Unitary of a single-qubit gate, `None` for two-qubit gates.
    pub fn matrix2(&self) -> Option<Matrix2> {
        match *self {
            GateOp::Hadamard { .. } => Some(hadamard()),
            GateOp::RotZ { angle, .. } => Some(rot_z(angle)),
            GateOp::RotY { angle, .. } => Some(rot_y(angle)),
            _ => None,
        }
    }

    /// Unitary of a two-qubit gate in `(first operand, second operand)` order.
    pub fn matrix4(&self) -> Option<Matrix4> {
        match *self {
            GateOp::Cnot { .. } => {
                let mut m = [[ZERO; 4]; 4];
                m[0][0] = ONE;
                m[1][1] = ONE;
                m[2][3] = ONE;
                m[3][2] = ONE;
                Some(m)
            }
            GateOp::TwoQubitN {
                alpha, beta, gamma, ..
            } => Some(n_unitary(alpha, beta, gamma)),
            _ => None,
        }
    }
}

fn check_angles(alpha: f64, beta: f64, gamma: f64) -> Result<()> {
    if alpha.is_finite() && beta.is_finite() && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!(
            "N angles ({alpha}, {beta}, {gamma})"
        )))
    }
}

pub fn hadamard() -> Matrix2 {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[s, s], [s, -s]]
}

pub fn rot_z(theta: f64) -> Matrix2 {
    [
        [Complex64::from_polar(1.0, -theta / 2.0), ZERO],
        [ZERO, Complex64::from_polar(1.0, theta / 2.0)],
    ]
}

pub fn rot_y(theta: f64) -> Matrix2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

// XX, YY and ZZ commute and each leaves span{|00>,|11>} and span{|01>,|10>}
// invariant, so the exponential is a pair of 2x2 rotations.
fn n_unitary(alpha: f64, beta: f64, gamma: f64) -> Matrix4 {
    let even = Complex64::from_polar(1.0, gamma);
    let odd = Complex64::from_polar(1.0, -gamma);
    let i = Complex64::i();
    let (s_minus, c_minus) = (alpha - beta).sin_cos();
    let (s_plus, c_plus) = (alpha + beta).sin_cos();
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = even * c_minus;
    m[3][3] = even * c_minus;
    m[0][3] = i * even * s_minus;
    m[3][0] = i * even * s_minus;
    m[1][1] = odd * c_plus;
    m[2][2] = odd * c_plus;
    m[1][2] = i * odd * s_plus;
    m[2][1] = i * odd * s_plus;
    m
}

/// Exact matrix of `exp[i(α X⊗X + β Y⊗Y + γ Z⊗Z)]`.
pub fn n_matrix(alpha: f64, beta: f64, gamma: f64) -> Result<Matrix4> {
    check_angles(alpha, beta, gamma)?;
    Ok(n_unitary(alpha, beta, gamma))
}

fn n_decomposition_on(a: usize, b: usize, alpha: f64, beta: f64, gamma: f64) -> Vec<GateOp> {
    vec![
        GateOp::rz(b, -FRAC_PI_2),
        GateOp::cnot(b, a),
        GateOp::rz(a, FRAC_PI_2 - 2.0 * gamma),
        GateOp::ry(b, 2.0 * alpha - FRAC_PI_2),
        GateOp::cnot(a, b),
        GateOp::ry(b, FRAC_PI_2 - 2.0 * beta),
        GateOp::cnot(b, a),
        GateOp::rz(a, FRAC_PI_2),
    ]
}

/// Three-CNOT circuit on qubits `(0, 1)` equal to `n_matrix(α, β, γ)` up to a global phase.
pub fn n_decomposition(alpha: f64, beta: f64, gamma: f64) -> Result<super::Circuit> {
    check_angles(alpha, beta, gamma)?;
    super::Circuit::new(2, n_decomposition_on(0, 1, alpha, beta, gamma))
}

/// `1 - |tr(U†V)| / 4`; zero iff `U` and `V` agree up to a global phase.
pub fn phase_distance(u: &Matrix4, v: &Matrix4) -> f64 {
    let mut tr = ZERO;
    for r in 0..4 {
        for c in 0..4 {
            tr += u[r][c].conj() * v[r][c];
        }
    }
    1.0 - tr.norm() / 4.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unitarity_error2(m: &Matrix2) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let v: Complex64 = (0..2).map(|k| m[k][r].conj() * m[k][c]).sum();
                let want = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((v - want).norm());
            }
        }
        worst
    }

    fn unitarity_error4(m: &Matrix4) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                let v: Complex64 = (0..4).map(|k| m[k][r].conj() * m[k][c]).sum();
                let want = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((v - want).norm());
            }
        }
        worst
    }

    #[test]
    fn single_qubit_gates_are_unitary() {
        for k in 0..50 {
            let theta = -7.0 + 0.29 * k as f64;
            assert!(unitarity_error2(&rot_z(theta)) <= 1e-12);
            assert!(unitarity_error2(&rot_y(theta)) <= 1e-12);
        }
        assert!(unitarity_error2(&hadamard()) <= 1e-12);
    }

    #[test]
    fn two_qubit_gates_are_unitary() {
        let cx = GateOp::cnot(0, 1).matrix4().unwrap();
        assert!(unitarity_error4(&cx) <= 1e-12);
        for k in 0..50 {
            let t = k as f64 * 0.37;
            let m = n_matrix(t, -1.3 * t, 0.5 + t).unwrap();
            assert!(unitarity_error4(&m) <= 1e-12);
        }
    }

    #[test]
    fn n_of_zero_is_identity() {
        let m = n_matrix(0.0, 0.0, 0.0).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { ONE } else { ZERO };
                assert!((m[r][c] - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn n_pure_zz_is_diagonal() {
        let g = 0.731;
        let m = n_matrix(0.0, 0.0, g).unwrap();
        let want = [g, -g, -g, g];
        for r in 0..4 {
            for c in 0..4 {
                let w = if r == c {
                    Complex64::from_polar(1.0, want[r])
                } else {
                    ZERO
                };
                assert!((m[r][c] - w).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn n_rejects_non_finite() {
        assert!(n_matrix(f64::NAN, 0.0, 0.0).is_err());
        assert!(n_decomposition(0.0, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn inverse_negates_angles() {
        let g = GateOp::n(0, 1, (0.1, 0.2, 0.3));
        assert_eq!(g.inverse(), GateOp::n(0, 1, (-0.1, -0.2, -0.3)));
        assert_eq!(GateOp::rz(2, PI).inverse(), GateOp::rz(2, -PI));
        assert_eq!(GateOp::h(1).inverse(), GateOp::h(1));
    }

    #[test]
    fn validate_catches_bad_operands() {
        assert!(matches!(
            GateOp::h(3).validate(3),
            Err(Error::QubitOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            GateOp::cnot(1, 1).validate(3),
            Err(Error::DuplicateQubit(1))
        ));
        assert!(GateOp::rz(0, f64::NAN).validate(1).is_err());
        assert!(GateOp::n(0, 1, (0.0, f64::NAN, 0.0)).validate(2).is_err());
    }

    #[test]
    fn decomposition_uses_three_cnots() {
        let c = n_decomposition(0.4, -0.2, 1.1).unwrap();
        let cx = c
            .ops()
            .iter()
            .filter(|g| matches!(g, GateOp::Cnot { .. }))
            .count();
        assert_eq!(cx, 3);
    }
}
