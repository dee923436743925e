//! Tolerances and capacity limits shared by the dense modules.

use std::sync::OnceLock;

/// Entrywise equality for amplitudes, matrices and probabilities.
pub const EQ_TOL: f64 = 1e-12;
/// Eigenvalue positivity and fidelity-level agreement.
pub const SPECTRAL_TOL: f64 = 1e-10;
/// Post-selection probabilities below this count as a vanished projection.
pub const VANISHING_PROB: f64 = 1e-14;

/// Default cap on the number of qubits in a [`Ket`](crate::statekit::Ket).
pub const DEFAULT_MAX_QUBITS: usize = 24;
/// Cap on the number of qubits for explicitly materialized 2ⁿ×2ⁿ operators.
pub const MAX_OPERATOR_QUBITS: usize = 12;

/// Environment variable that overrides [`DEFAULT_MAX_QUBITS`].
pub const MAX_QUBITS_ENV: &str = "PCCLONE_MAX_QUBITS";

/// Qubit capacity for state vectors. Read once from `PCCLONE_MAX_QUBITS`,
/// falling back to [`DEFAULT_MAX_QUBITS`] when unset or unparsable.
pub fn max_qubits() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_QUBITS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n >= 1 && n < usize::BITS as usize)
            .unwrap_or(DEFAULT_MAX_QUBITS)
    })
}

/// Qubit capacity for dense operators: never more than the state capacity.
pub fn max_operator_qubits() -> usize {
    MAX_OPERATOR_QUBITS.min(max_qubits())
}
