use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::gates::{BellState, Pauli};
use super::ket::Ket;
use crate::{Error, Result};

/// Equatorial plane of the Bloch sphere over which a cloner is covariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaneId {
    XZ,
    YZ,
    XY,
}

impl PlaneId {
    pub const ALL: [PlaneId; 3] = [PlaneId::XZ, PlaneId::YZ, PlaneId::XY];

    /// Pauli normal to the plane. It generates the phase rotations and flips
    /// every state of the plane onto its antipode.
    pub fn flip_pauli(self) -> Pauli {
        match self {
            PlaneId::XZ => Pauli::Y,
            PlaneId::YZ => Pauli::X,
            PlaneId::XY => Pauli::Z,
        }
    }

    /// Ancilla pair for the direct symmetrization construction. This is
    /// `(I ⊗ σ)|Ψ⁻⟩` up to a phase, with `σ` the plane's flip Pauli.
    pub fn ancilla_bell(self) -> BellState {
        match self {
            PlaneId::XZ => BellState::PhiPlus,
            PlaneId::YZ => BellState::PhiMinus,
            PlaneId::XY => BellState::PsiPlus,
        }
    }

    /// Canonical pole pair `(|ψ⟩, |ψ⊥⟩)` whose balanced superpositions span
    /// the plane's equator.
    pub fn basis(self) -> QubitBasis {
        let h = FRAC_1_SQRT_2;
        let (zero, one) = match self {
            PlaneId::XY => ([C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]),
            // |R⟩ = (|0⟩ − i|1⟩)/√2, |L⟩ = (|0⟩ + i|1⟩)/√2
            PlaneId::XZ => ([C64::new(h, 0.0), C64::new(0.0, -h)], [C64::new(h, 0.0), C64::new(0.0, h)]),
            PlaneId::YZ => ([C64::new(h, 0.0), C64::new(h, 0.0)], [C64::new(h, 0.0), C64::new(-h, 0.0)]),
        };
        QubitBasis { zero, one }
    }

    /// Sign `s` such that `T_φ` maps `equatorial_state(θ)` to
    /// `equatorial_state(θ + s·φ)` up to a global phase. It is −1 for XZ
    /// because `|R⟩` is the −1 eigenvector of `σ_Y`.
    pub fn rotation_orientation(self) -> f64 {
        match self {
            PlaneId::XZ => -1.0,
            PlaneId::YZ | PlaneId::XY => 1.0,
        }
    }
}

impl fmt::Display for PlaneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlaneId::XZ => "xz",
            PlaneId::YZ => "yz",
            PlaneId::XY => "xy",
        })
    }
}

impl FromStr for PlaneId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xz" | "x-z" => Ok(PlaneId::XZ),
            "yz" | "y-z" => Ok(PlaneId::YZ),
            "xy" | "x-y" => Ok(PlaneId::XY),
            other => Err(Error::Domain(format!("unknown plane {other:?} (expected xz, yz or xy)"))),
        }
    }
}

/// Orthonormal single-qubit basis `{|b0⟩, |b1⟩}` given in computational
/// amplitudes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitBasis {
    pub zero: [C64; 2],
    pub one: [C64; 2],
}

impl QubitBasis {
    pub fn computational() -> Self {
        PlaneId::XY.basis()
    }

    /// `{|φ⟩, |φ⊥⟩}` for the equatorial state of `plane` at `phase`.
    pub fn equatorial(plane: PlaneId, phase: f64) -> Self {
        let phi = equatorial_state(plane, phase);
        let perp = equatorial_state(plane, phase + PI);
        let a = phi.amplitudes();
        let b = perp.amplitudes();
        QubitBasis {
            zero: [a[0], a[1]],
            one: [b[0], b[1]],
        }
    }

    /// Basis built from an arbitrary normalized qubit state and its
    /// orthogonal complement `(−b*, a*)`.
    pub fn from_state(state: &Ket) -> Result<Self> {
        if state.num_qubits() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: state.dim(),
            });
        }
        let (s, _) = state.normalized()?;
        let a = s.amplitudes();
        Ok(QubitBasis {
            zero: [a[0], a[1]],
            one: [-a[1].conj(), a[0].conj()],
        })
    }

    pub fn state(&self, excited: bool) -> Ket {
        let v = if excited { self.one } else { self.zero };
        Ket::qubit(v[0], v[1])
    }
}

/// `(|ψ⟩ + e^{iφ}|ψ⊥⟩)/√2` in the plane's canonical basis.
pub fn equatorial_state(plane: PlaneId, phase: f64) -> Ket {
    let QubitBasis { zero, one } = plane.basis();
    let e = C64::from_polar(1.0, phase);
    let h = FRAC_1_SQRT_2;
    Ket::qubit((zero[0] + e * one[0]) * h, (zero[1] + e * one[1]) * h)
}
