use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::ket::{qubit_mask, Ket};
use super::plane::PlaneId;
use super::OperatorMatrix;
use crate::{Error, Result};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> OperatorMatrix {
        let entries = match self {
            Pauli::I => [ONE, ZERO, ZERO, ONE],
            Pauli::X => [ZERO, ONE, ONE, ZERO],
            Pauli::Y => [ZERO, -I, I, ZERO],
            Pauli::Z => [ONE, ZERO, ZERO, -ONE],
        };
        OperatorMatrix::from_row_slice(2, 2, &entries)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PhiPlus,
        BellState::PhiMinus,
        BellState::PsiPlus,
        BellState::PsiMinus,
    ];

    pub fn ket(self) -> Ket {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let amps = match self {
            BellState::PhiPlus => [h, ZERO, ZERO, h],
            BellState::PhiMinus => [h, ZERO, ZERO, -h],
            BellState::PsiPlus => [ZERO, h, h, ZERO],
            BellState::PsiMinus => [ZERO, h, -h, ZERO],
        };
        Ket::new(2, amps.to_vec()).expect("two-qubit state within capacity")
    }
}

pub fn bell_state(which: BellState) -> Ket {
    which.ket()
}

/// `T_φ = exp(−i φ σ/2)` about the axis normal to a covariance plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseRotation {
    pub plane: PlaneId,
    pub angle: f64,
}

impl PhaseRotation {
    pub fn new(plane: PlaneId, angle: f64) -> Self {
        PhaseRotation { plane, angle }
    }

    /// `cos(φ/2)·I − i·sin(φ/2)·σ`.
    pub fn matrix(&self) -> OperatorMatrix {
        let (s, c) = (self.angle / 2.0).sin_cos();
        let sigma = self.plane.flip_pauli().matrix();
        OperatorMatrix::identity(2, 2).map(|x| x * c) - sigma.map(|x| x * I * s)
    }

    /// `T_φ^{⊗n}` as a dense 2ⁿ×2ⁿ matrix.
    pub fn tensor_power(&self, n: usize) -> OperatorMatrix {
        let single = self.matrix();
        (1..n).fold(single.clone(), |acc, _| acc.kronecker(&single))
    }
}

/// Applies `T_φ` to each listed qubit.
pub fn phase_rotate(rot: &PhaseRotation, state: &Ket, qubits: &[usize]) -> Result<Ket> {
    if qubits.is_empty() {
        return Err(Error::EmptySelection);
    }
    super::ket::check_qubits(state.num_qubits(), qubits)?;
    let m = rot.matrix();
    qubits
        .iter()
        .try_fold(state.clone(), |acc, &q| acc.apply(&m, &[q]))
}

/// Applies the same single-qubit operator to each listed qubit.
pub fn apply_each(op: &OperatorMatrix, state: &Ket, qubits: &[usize]) -> Result<Ket> {
    qubits
        .iter()
        .try_fold(state.clone(), |acc, &q| acc.apply(op, &[q]))
}

/// Permutation matrix exchanging qubits `i` and `j` of an `n`-qubit register.
pub fn transposition(n: usize, i: usize, j: usize) -> Result<OperatorMatrix> {
    super::ket::check_qubits(n, &[i])?;
    super::ket::check_qubits(n, &[j])?;
    let dim = 1usize << n;
    let (mi, mj) = (qubit_mask(n, i), qubit_mask(n, j));
    let mut m = OperatorMatrix::zeros(dim, dim);
    for x in 0..dim {
        let bi = x & mi != 0;
        let bj = x & mj != 0;
        let y = if bi == bj { x } else { x ^ mi ^ mj };
        m[(y, x)] = ONE;
    }
    Ok(m)
}

/// Largest entry of `U†U − I`.
pub fn unitarity_defect(u: &OperatorMatrix) -> f64 {
    let d = u.nrows();
    super::density::max_abs(&(u.adjoint() * u - OperatorMatrix::identity(d, d)))
}
