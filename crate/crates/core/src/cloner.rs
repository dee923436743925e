//! Cloning pipelines built from symmetrizing projections.
//!
//! Register layout for a run with `M = 2P − 1` outputs: qubit 0 is the input
//! `S`, qubits `1..P` are the ancillas `A₁..A_{P−1}` and qubits `P..2P−1` are
//! their partners `B₁..B_{P−1}`, so pair `(Aᵢ, Bᵢ)` sits at `(i, P − 1 + i)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angular::{fidelity_formula, CloneCount, FidelityKind};
use crate::statekit::{
    apply_each, check_capacity, equatorial_state, phase_rotate, BellState, Ket, PhaseRotation,
    PlaneId, QubitBasis,
};
use crate::symmetry::{dicke_state, project_and_postselect, single_qubit_marginals, DickeLabel};
use crate::{Error, Result};

/// Number of probe phases and rotation angles in the default grids.
pub const DEFAULT_PROBES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// Universal cloner, covariant flip of the anticlones, symmetrization.
    A,
    /// Direct symmetrization of the input with Bell-pair ancillas.
    B,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::A => "A",
            Scheme::B => "B",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Scheme::A),
            "b" | "B" => Ok(Scheme::B),
            _ => Err(Error::Domain(format!("unknown scheme {s:?}, expected a or b"))),
        }
    }
}

/// Post-selected output of the 1→P universal cloner.
#[derive(Clone, Debug, PartialEq)]
pub struct UqcmOutput {
    /// Renormalized state on `2P − 1` qubits.
    pub state: Ket,
    pub clone_qubits: Vec<usize>,
    pub anticlone_qubits: Vec<usize>,
    /// Probability of the symmetrizing post-selection.
    pub success_prob: f64,
}

/// Result of a phase-covariant cloning run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloneReport {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "P")]
    pub p: usize,
    pub scheme: Scheme,
    pub plane: PlaneId,
    pub input_phase: f64,
    pub per_clone_fidelity: Vec<f64>,
    /// Probability of the final symmetrization acting on a normalized state.
    pub success_prob: f64,
    pub optimal_fidelity: f64,
    /// Probability of the universal-cloner stage (scheme A only).
    #[serde(default)]
    pub uqcm_success_prob: Option<f64>,
}

/// States produced by one pipeline run.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeOutput {
    /// Output of the final projection before renormalization.
    pub projected: Ket,
    /// Renormalized output.
    pub state: Ket,
    pub success_prob: f64,
    pub uqcm_success_prob: Option<f64>,
}

fn check_p(p: usize) -> Result<()> {
    if p < 2 {
        return Err(Error::Domain(format!("P must be at least 2, got {p}")));
    }
    check_capacity(2 * p - 1)
}

fn check_input(input: &Ket) -> Result<()> {
    if input.num_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: input.dim(),
        });
    }
    if !input.is_normalized() {
        return Err(Error::NotNormalized(input.norm_sq()));
    }
    Ok(())
}

/// `input ⊗ pair^{⊗(P−1)}` rearranged into the S, A…, B… layout.
pub fn with_ancillas(input: &Ket, pair: BellState, p: usize) -> Result<Ket> {
    check_p(p)?;
    let pair = pair.ket();
    let mut state = input.clone();
    for _ in 1..p {
        state = state.tensor(&pair)?;
    }
    // interleaved order S, A₁, B₁, A₂, B₂, …
    let order: Vec<usize> = std::iter::once(0)
        .chain((1..p).map(|i| 2 * i - 1))
        .chain((1..p).map(|i| 2 * i))
        .collect();
    state.permute_qubits(&order)
}

/// 1→P universal cloner: symmetrizes the input with one half of `P − 1`
/// singlets and post-selects.
pub fn uqcm(input: &Ket, p: usize) -> Result<UqcmOutput> {
    check_input(input)?;
    let state = with_ancillas(input, BellState::PsiMinus, p)?;
    let clone_qubits: Vec<usize> = (0..p).collect();
    let anticlone_qubits: Vec<usize> = (p..2 * p - 1).collect();
    let post = project_and_postselect(&state, &clone_qubits)?;
    Ok(UqcmOutput {
        state: post.state,
        clone_qubits,
        anticlone_qubits,
        success_prob: post.success_prob,
    })
}

/// Applies the plane's flip Pauli to every anticlone of a cloner output.
pub fn flip_anticlones(out: &UqcmOutput, plane: PlaneId) -> Result<Ket> {
    apply_each(&plane.flip_pauli().matrix(), &out.state, &out.anticlone_qubits)
}

/// Runs a pipeline on an arbitrary normalized one-qubit input.
pub fn run_scheme(scheme: Scheme, input: &Ket, plane: PlaneId, p: usize) -> Result<SchemeOutput> {
    check_input(input)?;
    let all: Vec<usize> = (0..2 * p - 1).collect();
    let (prepared, uqcm_success_prob) = match scheme {
        Scheme::A => {
            let out = uqcm(input, p)?;
            (flip_anticlones(&out, plane)?, Some(out.success_prob))
        }
        Scheme::B => (with_ancillas(input, plane.ancilla_bell(), p)?, None),
    };
    let post = project_and_postselect(&prepared, &all)?;
    Ok(SchemeOutput {
        projected: post.projected,
        state: post.state,
        success_prob: post.success_prob,
        uqcm_success_prob,
    })
}

/// Symmetrizes `input` with `P − 1` copies of an arbitrary Bell pair. With
/// the plane's own pair this is scheme B; other pairs probe off-plane
/// behavior.
pub fn symmetrize_with_pair(input: &Ket, pair: BellState, p: usize) -> Result<SchemeOutput> {
    check_input(input)?;
    let state = with_ancillas(input, pair, p)?;
    let all: Vec<usize> = (0..2 * p - 1).collect();
    let post = project_and_postselect(&state, &all)?;
    Ok(SchemeOutput {
        projected: post.projected,
        state: post.state,
        success_prob: post.success_prob,
        uqcm_success_prob: None,
    })
}

/// `⟨target|ρᵢ|target⟩` for every qubit `i` of `state`.
pub fn per_qubit_fidelities(state: &Ket, target: &Ket) -> Result<Vec<f64>> {
    single_qubit_marginals(state)?
        .iter()
        .map(|rho| rho.fidelity(target))
        .collect()
}

fn report(scheme: Scheme, plane: PlaneId, phase: f64, p: usize) -> Result<(CloneReport, Ket)> {
    check_p(p)?;
    let input = equatorial_state(plane, phase);
    let out = run_scheme(scheme, &input, plane, p)?;
    let m = 2 * p - 1;
    let optimal = fidelity_formula(FidelityKind::CovOdd, 1, CloneCount::Finite(m as u64))?.to_f64();
    let report = CloneReport {
        m,
        p,
        scheme,
        plane,
        input_phase: phase,
        per_clone_fidelity: per_qubit_fidelities(&out.state, &input)?,
        success_prob: out.success_prob,
        optimal_fidelity: optimal,
        uqcm_success_prob: out.uqcm_success_prob,
    };
    Ok((report, out.state))
}

/// Scheme A on the equatorial input of `plane` at `input_phase`.
pub fn pqcm_scheme_a(input_phase: f64, plane: PlaneId, p: usize) -> Result<(CloneReport, Ket)> {
    report(Scheme::A, plane, input_phase, p)
}

/// Scheme B on the equatorial input of `plane` at `input_phase`.
pub fn pqcm_scheme_b(input_phase: f64, plane: PlaneId, p: usize) -> Result<(CloneReport, Ket)> {
    report(Scheme::B, plane, input_phase, p)
}

/// `n` equally spaced angles in `[0, 2π)`.
pub fn default_probe_phases(n: usize) -> Vec<f64> {
    (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect()
}

fn check_probes(probes: &[f64]) -> Result<()> {
    if probes.is_empty() {
        return Err(Error::EmptySelection);
    }
    if let Some(x) = probes.iter().find(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("non-finite probe value {x}")));
    }
    Ok(())
}

/// Largest trace distance between `C(T ρ T†)` and `T^{⊗M} C(ρ) T†^{⊗M}` over
/// the probe grid, both outputs renormalized.
pub fn covariance_defect(
    plane: PlaneId,
    p: usize,
    scheme: Scheme,
    probe_phases: &[f64],
    rotation_angles: &[f64],
) -> Result<f64> {
    check_p(p)?;
    check_probes(probe_phases)?;
    check_probes(rotation_angles)?;
    let all: Vec<usize> = (0..2 * p - 1).collect();
    let defects: Vec<f64> = probe_phases
        .par_iter()
        .map(|&theta| -> Result<f64> {
            let input = equatorial_state(plane, theta);
            let base = run_scheme(scheme, &input, plane, p)?.state;
            let mut worst = 0.0f64;
            for &angle in rotation_angles {
                let rot = PhaseRotation::new(plane, angle);
                let rotated_input = phase_rotate(&rot, &input, &[0])?;
                let lhs = run_scheme(scheme, &rotated_input, plane, p)?.state;
                let rhs = phase_rotate(&rot, &base, &all)?;
                worst = worst.max(lhs.pure_trace_distance(&rhs)?);
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(defects.into_iter().fold(0.0, f64::max))
}

/// Largest `1 − |⟨out_A|out_B⟩|²` over the probe phases.
pub fn scheme_equivalence_defect(plane: PlaneId, p: usize, probe_phases: &[f64]) -> Result<f64> {
    check_p(p)?;
    check_probes(probe_phases)?;
    let defects: Vec<f64> = probe_phases
        .par_iter()
        .map(|&theta| -> Result<f64> {
            let input = equatorial_state(plane, theta);
            let a = run_scheme(Scheme::A, &input, plane, p)?.state;
            let b = run_scheme(Scheme::B, &input, plane, p)?.state;
            Ok(a.pure_trace_distance(&b)?.powi(2))
        })
        .collect::<Result<_>>()?;
    Ok(defects.into_iter().fold(0.0, f64::max))
}

/// `max − min` of the final success probability over the probe phases.
pub fn success_prob_spread(
    plane: PlaneId,
    p: usize,
    scheme: Scheme,
    probe_phases: &[f64],
) -> Result<f64> {
    check_p(p)?;
    check_probes(probe_phases)?;
    let probs: Vec<f64> = probe_phases
        .par_iter()
        .map(|&theta| Ok(run_scheme(scheme, &equatorial_state(plane, theta), plane, p)?.success_prob))
        .collect::<Result<_>>()?;
    let max = probs.iter().copied().fold(f64::MIN, f64::max);
    let min = probs.iter().copied().fold(f64::MAX, f64::min);
    Ok(max - min)
}

/// Overlaps of a cloner output with
/// `|{(P−k)φ; kφ⊥}⟩_C ⊗ |{kφ; (P−1−k)φ⊥}⟩_AC`, k = 0..P−1.
pub fn uqcm_dicke_overlaps(out: &UqcmOutput, basis: &QubitBasis) -> Result<Vec<C64>> {
    let p = out.clone_qubits.len();
    (0..p)
        .map(|k| {
            let clones = dicke_state(&DickeLabel::new(p, k, *basis))?;
            let anti = dicke_state(&DickeLabel::new(p - 1, p - 1 - k, *basis))?;
            clones.tensor(&anti)?.inner(&out.state)
        })
        .collect()
}

/// Overlaps of a symmetric `2P − 1`-qubit state with the Dicke states of
/// `2k` excitations, k = 0..P−1.
pub fn symmetric_dicke_overlaps(state: &Ket, basis: &QubitBasis) -> Result<Vec<C64>> {
    let m = state.num_qubits();
    (0..m.div_ceil(2))
        .map(|k| dicke_state(&DickeLabel::new(m, 2 * k, *basis))?.inner(state))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statekit::partial_trace;
    use crate::tol::SPECTRAL_TOL;

    #[test]
    fn layout_pairs_ancillas() {
        let s = with_ancillas(&Ket::basis(1, 0).unwrap(), BellState::PhiPlus, 3).unwrap();
        // pairs (1,3) and (2,4) are maximally entangled
        let rho = partial_trace(&s, &[1, 3]).unwrap();
        let bell = crate::statekit::DensityOp::from_ket(&BellState::PhiPlus.ket()).unwrap();
        assert!(rho.trace_distance(&bell).unwrap() < 1e-12);
    }

    #[test]
    fn uqcm_p2_fidelities() {
        let input = equatorial_state(PlaneId::XY, 0.4);
        let out = uqcm(&input, 2).unwrap();
        assert!((out.success_prob - 0.75).abs() < 1e-12);
        let f = per_qubit_fidelities(&out.state, &input).unwrap();
        assert!((f[0] - 5.0 / 6.0).abs() < SPECTRAL_TOL);
        assert!((f[1] - 5.0 / 6.0).abs() < SPECTRAL_TOL);
        // the anticlone approximates the orthogonal state
        assert!((f[2] - 1.0 / 3.0).abs() < SPECTRAL_TOL);
    }

    #[test]
    fn rejects_bad_inputs() {
        let input = equatorial_state(PlaneId::XZ, 0.0);
        assert!(uqcm(&input, 1).is_err());
        assert!(uqcm(&input.scaled(C64::new(2.0, 0.0)), 2).is_err());
        assert!(covariance_defect(PlaneId::XZ, 2, Scheme::A, &[], &[0.0]).is_err());
        assert!(matches!(uqcm(&BellState::PhiPlus.ket(), 2), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn zero_rotation_has_zero_defect() {
        let d = covariance_defect(PlaneId::XZ, 2, Scheme::A, &default_probe_phases(4), &[0.0]).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn report_serde_names() {
        let (r, _) = pqcm_scheme_a(0.0, PlaneId::XZ, 2).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["M"], 3);
        assert_eq!(v["P"], 2);
        assert_eq!(v["scheme"], "A");
        assert_eq!(v["plane"], "xz");
        let back: CloneReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
