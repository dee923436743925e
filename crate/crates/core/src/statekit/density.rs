use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use num_traits::Zero;

use super::ket::{check_qubits, complement, scatter_offsets, Ket};
use super::OperatorMatrix;
use crate::tol::{self, EQ_TOL};
use crate::{Error, Result};

/// Density operator on `num_qubits` qubits, same index convention as [`Ket`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOp {
    num_qubits: usize,
    matrix: OperatorMatrix,
}

impl DensityOp {
    pub fn new(matrix: OperatorMatrix) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() || dim == 0 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: dim.next_power_of_two().max(1),
                found: matrix.ncols(),
            });
        }
        let num_qubits = dim.trailing_zeros() as usize;
        if num_qubits > tol::max_operator_qubits() {
            return Err(Error::Capacity {
                requested: num_qubits,
                max: tol::max_operator_qubits(),
            });
        }
        Ok(DensityOp { num_qubits, matrix })
    }

    /// `|ψ⟩⟨ψ|`; the trace equals the ket's squared norm.
    pub fn from_ket(ket: &Ket) -> Result<Self> {
        let v = nalgebra::DVector::from_column_slice(ket.amplitudes());
        DensityOp::new(&v * v.adjoint())
    }

    /// Maximally mixed state `I/2ⁿ`.
    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        DensityOp::new(OperatorMatrix::identity(dim, dim).map(|x| x / dim as f64))
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> OperatorMatrix {
        self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= EQ_TOL
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Reduced operator on `keep`, in the listed order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityOp> {
        let n = self.num_qubits;
        if keep.is_empty() {
            return Err(Error::EmptySelection);
        }
        check_qubits(n, keep)?;
        let kept = scatter_offsets(n, keep);
        let rest = scatter_offsets(n, &complement(n, keep));
        let d = kept.len();
        let reduced = DMatrix::from_fn(d, d, |a, b| {
            rest.iter()
                .map(|&r| self.matrix[(kept[a] | r, kept[b] | r)])
                .sum::<C64>()
        });
        DensityOp::new(reduced)
    }

    /// `⟨target|ρ|target⟩` for a normalized target.
    pub fn fidelity(&self, target: &Ket) -> Result<f64> {
        if target.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                found: target.dim(),
            });
        }
        if (target.norm_sq() - 1.0).abs() > tol::SPECTRAL_TOL {
            return Err(Error::NotNormalized(target.norm_sq()));
        }
        let t = target.amplitudes();
        let mut acc = C64::zero();
        for (i, ti) in t.iter().enumerate() {
            let row: C64 = t
                .iter()
                .enumerate()
                .map(|(j, tj)| self.matrix[(i, j)] * tj)
                .sum();
            acc += ti.conj() * row;
        }
        debug_assert!(acc.im.abs() <= 1e-9, "fidelity imaginary residue {}", acc.im);
        Ok(acc.re)
    }

    /// Trace distance `½‖ρ − σ‖₁`.
    pub fn trace_distance(&self, other: &DensityOp) -> Result<f64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                found: other.matrix.nrows(),
            });
        }
        let diff = &self.matrix - &other.matrix;
        Ok(0.5 * hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum::<f64>())
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, unitary: &OperatorMatrix) -> Result<DensityOp> {
        if unitary.nrows() != self.matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                found: unitary.nrows(),
            });
        }
        DensityOp::new(unitary * &self.matrix * unitary.adjoint())
    }
}

/// Eigenvalues of `(A + A†)/2`, ascending.
pub fn hermitian_eigenvalues(a: &OperatorMatrix) -> Vec<f64> {
    let h = (a + a.adjoint()).map(|x| x * 0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Largest entry magnitude.
pub fn max_abs(a: &OperatorMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Reduced density operator of a pure state on `keep`, without forming the
/// full outer product.
pub fn partial_trace_ket(ket: &Ket, keep: &[usize]) -> Result<DensityOp> {
    let n = ket.num_qubits();
    if keep.is_empty() {
        return Err(Error::EmptySelection);
    }
    check_qubits(n, keep)?;
    let kept = scatter_offsets(n, keep);
    let rest = scatter_offsets(n, &complement(n, keep));
    let psi = ket.amplitudes();
    let d = kept.len();
    let reduced = DMatrix::from_fn(d, d, |a, b| {
        rest.iter()
            .map(|&r| psi[kept[a] | r] * psi[kept[b] | r].conj())
            .sum::<C64>()
    });
    DensityOp::new(reduced)
}
