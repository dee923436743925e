//! Dense complex linear algebra for multi-qubit pure states and density
//! operators.
//!
//! All values are immutable after construction and every operation returns a
//! new value, so states can be shared freely across threads.

mod density;
mod gates;
mod ket;
mod plane;

use nalgebra::DMatrix;

pub use density::{hermitian_eigenvalues, max_abs, partial_trace_ket, DensityOp};
pub use gates::{
    apply_each, bell_state, phase_rotate, transposition, unitarity_defect, BellState, Pauli,
    PhaseRotation,
};
pub use ket::Ket;
pub(crate) use ket::check_capacity;
pub use plane::{equatorial_state, PlaneId, QubitBasis};

use crate::Result;

/// Dense complex square matrix acting on a ket space.
pub type OperatorMatrix = DMatrix<crate::C64>;

/// `a ⊗ b`.
pub fn tensor(a: &Ket, b: &Ket) -> Result<Ket> {
    a.tensor(b)
}

/// Applies `op` to `targets` of `state`.
pub fn apply(op: &OperatorMatrix, targets: &[usize], state: &Ket) -> Result<Ket> {
    state.apply(op, targets)
}

/// Reduced density operator of a pure state on the qubits in `keep`.
pub fn partial_trace(state: &Ket, keep: &[usize]) -> Result<DensityOp> {
    partial_trace_ket(state, keep)
}

/// `⟨target|ρ|target⟩`.
pub fn fidelity(rho: &DensityOp, target: &Ket) -> Result<f64> {
    rho.fidelity(target)
}
