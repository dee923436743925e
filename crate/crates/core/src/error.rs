use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{requested} qubits exceed the capacity of {max} qubits")]
    Capacity { requested: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("qubit index {index} out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),
    #[error("qubit selection is empty")]
    EmptySelection,
    #[error("projection vanished (success probability {0:e})")]
    VanishingProjection(f64),
    #[error("target state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("excitation number {k} out of range for {n} qubits")]
    ExcitationOutOfRange { n: usize, k: usize },
    #[error("invalid angular momentum: {0}")]
    InvalidAngularMomentum(String),
    #[error("coefficient index {k} out of range 0..={max}")]
    CoefficientIndex { k: usize, max: usize },
    #[error("sum of square roots with incommensurable radicands")]
    Incommensurable,
    #[error("{0}")]
    Domain(String),
    #[error("photon cutoff {cutoff} is below the minimum of {min}")]
    CutoffTooSmall { cutoff: usize, min: usize },
    #[error("state spans several photon-number sectors ({0:e} of the weight lies outside the dominant one)")]
    MixedPhotonNumber(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
