use num_complex::Complex64 as C64;
use num_traits::{One, Zero};

use crate::statekit::OperatorMatrix;
use crate::tol::{self, EQ_TOL, VANISHING_PROB};
use crate::{Error, Result};

/// Dense pure state of `num_qubits` qubits.
///
/// Qubit 0 is the most significant bit of the basis-state index, so
/// `|q0 q1 … q(n-1)⟩` has index `q0·2^(n-1) + … + q(n-1)`. Kets are not
/// required to be normalized: a projected state keeps its squared norm, which
/// is the post-selection probability of the projection that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    num_qubits: usize,
    amplitudes: Vec<C64>,
    norm_sq: f64,
}

fn squared_norm(amplitudes: &[C64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

pub(crate) fn check_capacity(num_qubits: usize) -> Result<()> {
    let max = tol::max_qubits();
    if num_qubits > max {
        return Err(Error::Capacity {
            requested: num_qubits,
            max,
        });
    }
    Ok(())
}

/// Bit mask of `qubit` in an `n`-qubit index.
#[inline]
pub(crate) fn qubit_mask(n: usize, qubit: usize) -> usize {
    1 << (n - 1 - qubit)
}

/// Validates a list of distinct, in-range qubit indices.
pub(crate) fn check_qubits(n: usize, qubits: &[usize]) -> Result<()> {
    let mut seen = 0usize;
    for &q in qubits {
        if q >= n {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: n,
            });
        }
        if seen & (1 << q) != 0 {
            return Err(Error::DuplicateQubit(q));
        }
        seen |= 1 << q;
    }
    Ok(())
}

/// For each value `j` of the listed qubits (first listed qubit is the most
/// significant bit of `j`), the corresponding bit pattern in the full index.
pub(crate) fn scatter_offsets(n: usize, qubits: &[usize]) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|j| {
            qubits
                .iter()
                .enumerate()
                .filter(|&(pos, _)| j & (1 << (k - 1 - pos)) != 0)
                .fold(0, |acc, (_, &q)| acc | qubit_mask(n, q))
        })
        .collect()
}

/// The qubits of an `n`-qubit register that are not in `qubits`, ascending.
pub(crate) fn complement(n: usize, qubits: &[usize]) -> Vec<usize> {
    (0..n).filter(|q| !qubits.contains(q)).collect()
}

impl Ket {
    pub fn new(num_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        check_capacity(num_qubits)?;
        let dim = 1usize << num_qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        let norm_sq = squared_norm(&amplitudes);
        Ok(Ket {
            num_qubits,
            amplitudes,
            norm_sq,
        })
    }

    /// Builds a ket from an amplitude vector whose length must be a power of two.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: len.next_power_of_two().max(1),
                found: len,
            });
        }
        Ket::new(len.trailing_zeros() as usize, amplitudes)
    }

    /// The all-zero (null) vector.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        check_capacity(num_qubits)?;
        Ok(Ket {
            num_qubits,
            amplitudes: vec![C64::zero(); 1 << num_qubits],
            norm_sq: 0.0,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let mut ket = Ket::zero(num_qubits)?;
        if index >= ket.dim() {
            return Err(Error::DimensionMismatch {
                expected: ket.dim(),
                found: index + 1,
            });
        }
        ket.amplitudes[index] = C64::one();
        ket.norm_sq = 1.0;
        Ok(ket)
    }

    /// Single-qubit state `a|0⟩ + b|1⟩`, kept as given (not normalized).
    pub fn qubit(a: C64, b: C64) -> Self {
        Ket {
            num_qubits: 1,
            amplitudes: vec![a, b],
            norm_sq: a.norm_sqr() + b.norm_sqr(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    /// Cached squared norm.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq - 1.0).abs() <= EQ_TOL
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Returns the renormalized state together with the squared norm it had
    /// before renormalization.
    pub fn normalized(&self) -> Result<(Ket, f64)> {
        let p = self.norm_sq;
        if p < VANISHING_PROB {
            return Err(Error::VanishingProjection(p));
        }
        Ok((self.scaled(C64::new(1.0 / p.sqrt(), 0.0)), p))
    }

    pub fn scaled(&self, factor: C64) -> Ket {
        let amplitudes: Vec<C64> = self.amplitudes.iter().map(|a| a * factor).collect();
        Ket {
            num_qubits: self.num_qubits,
            norm_sq: squared_norm(&amplitudes),
            amplitudes,
        }
    }

    /// `self + other`, amplitude-wise.
    pub fn add(&self, other: &Ket) -> Result<Ket> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let amplitudes = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a + b)
            .collect();
        Ket::new(self.num_qubits, amplitudes)
    }

    /// Kronecker product `self ⊗ other`; `self` occupies the leading qubits.
    pub fn tensor(&self, other: &Ket) -> Result<Ket> {
        let n = self.num_qubits + other.num_qubits;
        check_capacity(n)?;
        let mut amplitudes = Vec::with_capacity(1 << n);
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        Ok(Ket {
            num_qubits: n,
            amplitudes,
            norm_sq: self.norm_sq * other.norm_sq,
        })
    }

    /// Reorders qubits: qubit `q` of the result is qubit `order[q]` of `self`.
    pub fn permute_qubits(&self, order: &[usize]) -> Result<Ket> {
        let n = self.num_qubits;
        if order.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: order.len(),
            });
        }
        check_qubits(n, order)?;
        let mut amplitudes = vec![C64::zero(); self.dim()];
        for (old, &amp) in self.amplitudes.iter().enumerate() {
            let new = order.iter().enumerate().fold(0, |acc, (q, &src)| {
                if old & qubit_mask(n, src) != 0 {
                    acc | qubit_mask(n, q)
                } else {
                    acc
                }
            });
            amplitudes[new] = amp;
        }
        Ok(Ket {
            num_qubits: n,
            amplitudes,
            norm_sq: self.norm_sq,
        })
    }

    /// Applies `op` to the listed qubits (first listed qubit is the most
    /// significant bit of the operator's index) and the identity elsewhere.
    pub fn apply(&self, op: &OperatorMatrix, targets: &[usize]) -> Result<Ket> {
        let n = self.num_qubits;
        if targets.is_empty() {
            return Err(Error::EmptySelection);
        }
        check_qubits(n, targets)?;
        let sub = 1usize << targets.len();
        if op.nrows() != sub || op.ncols() != sub {
            return Err(Error::DimensionMismatch {
                expected: sub,
                found: op.nrows(),
            });
        }
        let inner = scatter_offsets(n, targets);
        let outer = scatter_offsets(n, &complement(n, targets));
        let mut amplitudes = vec![C64::zero(); self.dim()];
        let mut gathered = vec![C64::zero(); sub];
        for &base in &outer {
            for (g, &off) in gathered.iter_mut().zip(&inner) {
                *g = self.amplitudes[base | off];
            }
            for (row, &off) in inner.iter().enumerate() {
                amplitudes[base | off] = (0..sub).map(|col| op[(row, col)] * gathered[col]).sum();
            }
        }
        Ket::new(n, amplitudes)
    }

    /// Equality up to a global phase: `|⟨a|b⟩|² ≥ (1 − tol)·‖a‖²‖b‖²`.
    pub fn equal_up_to_phase(&self, other: &Ket, tol: f64) -> bool {
        match self.inner(other) {
            Ok(ov) => ov.norm_sqr() >= (1.0 - tol) * self.norm_sq * other.norm_sq,
            Err(_) => false,
        }
    }

    /// Trace distance `√(1 − |⟨a|b⟩|²)` between normalized pure states,
    /// evaluated as the norm of the part of `other` orthogonal to `self` so
    /// that it stays accurate near zero.
    pub fn pure_trace_distance(&self, other: &Ket) -> Result<f64> {
        if self.amplitudes == other.amplitudes {
            return Ok(0.0);
        }
        let ov = self.inner(other)?;
        let residual: f64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (b - ov * a).norm_sqr())
            .sum();
        Ok(residual.sqrt())
    }
}
