//! Truncated two-mode Fock space for the collinear parametric amplifier.
//!
//! Both polarization modes share one spatial mode. `|m, n⟩` holds `m` photons
//! in the first mode of a [`ModeBasis`] and `n` in the second, each at most
//! `cutoff`. Units are `χℏ = 1`, so the gain is the dimensionless `χt`.
//!
//! Creation operators of the rotated basis, in terms of `â_H†, â_V†`:
//! `â_φ† = (â_H† + e^{iφ}â_V†)/√2` and `â_φ⊥† = (−e^{−iφ}â_H† + â_V†)/√2`.

use num_complex::Complex64 as C64;
use num_traits::Zero;

use crate::statekit::{partial_trace, DensityOp, Ket, OperatorMatrix};
use crate::symmetry::{dicke_state, DickeLabel};
use crate::tol::EQ_TOL;
use crate::{Error, Result};

/// Default photon cutoff per mode.
pub const DEFAULT_CUTOFF: usize = 6;
/// Smallest cutoff holding the three-photon first-order term.
pub const MIN_CUTOFF: usize = 3;
/// Largest cutoff for which dense operators are materialized.
pub const MAX_DENSE_CUTOFF: usize = 40;
/// Largest cutoff accepted for state vectors.
pub const MAX_CUTOFF: usize = 1000;
/// Boundary population above which [`Evolution::overflow`] is raised.
pub const OVERFLOW_THRESHOLD: f64 = 1e-8;
/// Weight outside the dominant photon-number sector tolerated by
/// [`photon_reduced_density`].
pub const SECTOR_TOL: f64 = 1e-10;

/// Polarization pair labelling the two modes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModeBasis {
    /// `{H, V}`.
    HV,
    /// `{φ, φ⊥}` at the given phase.
    Phi(f64),
}

impl ModeBasis {
    /// Rows give this basis' creation operators in terms of `(â_H†, â_V†)`.
    fn creation_rows(self) -> [[C64; 2]; 2] {
        match self {
            ModeBasis::HV => [[C64::new(1.0, 0.0), C64::zero()], [C64::zero(), C64::new(1.0, 0.0)]],
            ModeBasis::Phi(phi) => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                [
                    [C64::new(h, 0.0), C64::from_polar(h, phi)],
                    [-C64::from_polar(h, -phi), C64::new(h, 0.0)],
                ]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockVec {
    cutoff: usize,
    amplitudes: Vec<C64>,
    mode_basis: ModeBasis,
}

fn check_cutoff(cutoff: usize, min: usize, max: usize) -> Result<()> {
    if cutoff < min {
        return Err(Error::CutoffTooSmall { cutoff, min });
    }
    if cutoff > max {
        return Err(Error::Domain(format!("photon cutoff {cutoff} exceeds the maximum of {max}")));
    }
    Ok(())
}

impl FockVec {
    pub fn new(cutoff: usize, amplitudes: Vec<C64>, mode_basis: ModeBasis) -> Result<Self> {
        check_cutoff(cutoff, 1, MAX_CUTOFF)?;
        let dim = (cutoff + 1) * (cutoff + 1);
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        Ok(FockVec {
            cutoff,
            amplitudes,
            mode_basis,
        })
    }

    pub fn zero(cutoff: usize, mode_basis: ModeBasis) -> Result<Self> {
        check_cutoff(cutoff, 1, MAX_CUTOFF)?;
        let dim = (cutoff + 1) * (cutoff + 1);
        FockVec::new(cutoff, vec![C64::zero(); dim], mode_basis)
    }

    /// `|m, n⟩`.
    pub fn fock(cutoff: usize, m: usize, n: usize, mode_basis: ModeBasis) -> Result<Self> {
        let mut v = FockVec::zero(cutoff, mode_basis)?;
        if m > cutoff || n > cutoff {
            return Err(Error::Domain(format!("|{m},{n}⟩ exceeds cutoff {cutoff}")));
        }
        *v.amplitude_mut(m, n) = C64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn mode_basis(&self) -> ModeBasis {
        self.mode_basis
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    fn index(&self, m: usize, n: usize) -> usize {
        m * (self.cutoff + 1) + n
    }

    pub fn amplitude(&self, m: usize, n: usize) -> C64 {
        if m > self.cutoff || n > self.cutoff {
            return C64::zero();
        }
        self.amplitudes[self.index(m, n)]
    }

    fn amplitude_mut(&mut self, m: usize, n: usize) -> &mut C64 {
        let i = self.index(m, n);
        &mut self.amplitudes[i]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn scaled(&self, factor: C64) -> FockVec {
        FockVec {
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
            ..self.clone()
        }
    }

    pub fn normalized(&self) -> Result<FockVec> {
        let n = self.norm_sq();
        if n < crate::tol::VANISHING_PROB {
            return Err(Error::VanishingProjection(n));
        }
        Ok(self.scaled(C64::new(1.0 / n.sqrt(), 0.0)))
    }

    fn same_space(&self, other: &FockVec) -> Result<()> {
        if self.cutoff != other.cutoff {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                found: other.amplitudes.len(),
            });
        }
        if self.mode_basis != other.mode_basis {
            return Err(Error::Domain("Fock vectors are in different mode bases".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FockVec) -> Result<FockVec> {
        self.same_space(other)?;
        Ok(FockVec {
            amplitudes: self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    /// Largest amplitude difference; both vectors must share cutoff and basis.
    pub fn max_abs_diff(&self, other: &FockVec) -> Result<f64> {
        self.same_space(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Weight of each total photon number `N = m + n`, `N = 0..=2·cutoff`.
    pub fn photon_number_populations(&self) -> Vec<f64> {
        let c = self.cutoff;
        let mut pops = vec![0.0; 2 * c + 1];
        for m in 0..=c {
            for n in 0..=c {
                pops[m + n] += self.amplitude(m, n).norm_sqr();
            }
        }
        pops
    }

    /// Weight on states with either mode at the cutoff.
    pub fn boundary_population(&self) -> f64 {
        let c = self.cutoff;
        (0..=c)
            .flat_map(|m| (0..=c).map(move |n| (m, n)))
            .filter(|&(m, n)| m == c || n == c)
            .map(|(m, n)| self.amplitude(m, n).norm_sqr())
            .sum()
    }

    /// Projection onto the total-photon-number-`N` sector.
    pub fn sector(&self, total: usize) -> FockVec {
        let mut out = self.clone();
        let c = self.cutoff;
        for m in 0..=c {
            for n in 0..=c {
                if m + n != total {
                    *out.amplitude_mut(m, n) = C64::zero();
                }
            }
        }
        out
    }

    /// Re-expresses the state in another mode basis by expanding each
    /// `(b₁†)^m (b₂†)^n` as a homogeneous polynomial in the target creation
    /// operators. Components pushed past the cutoff are dropped, so the norm
    /// can only decrease; states with `m + n ≤ cutoff` convert exactly.
    pub fn to_basis(&self, target: ModeBasis) -> FockVec {
        if target == self.mode_basis {
            return self.clone();
        }
        // source creation ops in terms of HV, then HV in terms of the target
        let src = self.mode_basis.creation_rows();
        let tgt = target.creation_rows();
        let mut w = [[C64::zero(); 2]; 2];
        for (i, row) in w.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                // a_k† = Σ_j conj(tgt[j][k]) t_j†
                *entry = (0..2).map(|k| src[i][k] * tgt[j][k].conj()).sum();
            }
        }
        let c = self.cutoff;
        let sqrt_fact = sqrt_factorials(2 * c);
        let mut out = FockVec {
            cutoff: c,
            amplitudes: vec![C64::zero(); self.amplitudes.len()],
            mode_basis: target,
        };
        for m in 0..=c {
            for n in 0..=c {
                let amp = self.amplitude(m, n);
                if amp == C64::zero() {
                    continue;
                }
                let first = binomial_poly(w[0], m);
                let second = binomial_poly(w[1], n);
                let scale = amp / (sqrt_fact[m] * sqrt_fact[n]);
                for (a, fa) in first.iter().enumerate() {
                    for (b, fb) in second.iter().enumerate() {
                        // t₁ power a + b, t₂ power (m − a) + (n − b)
                        let p = a + b;
                        let q = m + n - p;
                        if p <= c && q <= c {
                            *out.amplitude_mut(p, q) += scale * fa * fb * sqrt_fact[p] * sqrt_fact[q];
                        }
                    }
                }
            }
        }
        out
    }
}

fn sqrt_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut f = 1.0f64;
    out.push(1.0);
    for k in 1..=n {
        f *= k as f64;
        out.push(f.sqrt());
    }
    out
}

/// Coefficients of `t₁^a t₂^{d−a}` in `(w₀t₁ + w₁t₂)^d`, indexed by `a`.
fn binomial_poly(w: [C64; 2], d: usize) -> Vec<C64> {
    let mut poly = vec![C64::new(1.0, 0.0)];
    for _ in 0..d {
        let mut next = vec![C64::zero(); poly.len() + 1];
        for (a, c) in poly.iter().enumerate() {
            next[a + 1] += c * w[0];
            next[a] += c * w[1];
        }
        poly = next;
    }
    poly
}

/// Dense operator on the truncated Fock space, index `m·(cutoff+1) + n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BosonOp {
    cutoff: usize,
    matrix: OperatorMatrix,
}

/// Which mode an elementary ladder operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    First,
    Second,
}

impl BosonOp {
    pub fn new(cutoff: usize, matrix: OperatorMatrix) -> Result<Self> {
        check_cutoff(cutoff, 1, MAX_DENSE_CUTOFF)?;
        let dim = (cutoff + 1) * (cutoff + 1);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.nrows(),
            });
        }
        Ok(BosonOp { cutoff, matrix })
    }

    /// Truncated creation operator of one mode.
    pub fn creation(cutoff: usize, mode: Mode) -> Result<Self> {
        check_cutoff(cutoff, 1, MAX_DENSE_CUTOFF)?;
        let side = cutoff + 1;
        let mut matrix = OperatorMatrix::zeros(side * side, side * side);
        for m in 0..=cutoff {
            for n in 0..=cutoff {
                let (m2, n2, factor) = match mode {
                    Mode::First if m < cutoff => (m + 1, n, (m + 1) as f64),
                    Mode::Second if n < cutoff => (m, n + 1, (n + 1) as f64),
                    _ => continue,
                };
                matrix[(m2 * side + n2, m * side + n)] = C64::new(factor.sqrt(), 0.0);
            }
        }
        Ok(BosonOp { cutoff, matrix })
    }

    pub fn annihilation(cutoff: usize, mode: Mode) -> Result<Self> {
        Ok(BosonOp::creation(cutoff, mode)?.adjoint())
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn adjoint(&self) -> BosonOp {
        BosonOp {
            cutoff: self.cutoff,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn hermiticity_defect(&self) -> f64 {
        crate::statekit::max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    /// `⟨m', n'|op|m, n⟩`.
    pub fn element(&self, row: (usize, usize), col: (usize, usize)) -> C64 {
        let side = self.cutoff + 1;
        self.matrix[(row.0 * side + row.1, col.0 * side + col.1)]
    }

    pub fn apply(&self, state: &FockVec) -> Result<FockVec> {
        if state.cutoff != self.cutoff {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                found: state.amplitudes.len(),
            });
        }
        let v = nalgebra::DVector::from_column_slice(&state.amplitudes);
        let out = &self.matrix * v;
        Ok(FockVec {
            amplitudes: out.iter().copied().collect(),
            ..state.clone()
        })
    }
}

/// Form in which the collinear Hamiltonian is written.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HamiltonianForm {
    /// `i â_H†â_V† − i â_H â_V`.
    HV,
    /// `(i/2)e^{−iφ}(â_φ†² − e^{2iφ}â_φ⊥†²) + h.c.`
    Rotated(f64),
}

/// The collinear amplifier Hamiltonian as a dense matrix in the `{H, V}`
/// Fock basis, whichever form it is assembled from.
pub fn build_hamiltonian(cutoff: usize, form: HamiltonianForm) -> Result<BosonOp> {
    check_cutoff(cutoff, MIN_CUTOFF, MAX_DENSE_CUTOFF)?;
    let ah = BosonOp::creation(cutoff, Mode::First)?.matrix;
    let av = BosonOp::creation(cutoff, Mode::Second)?.matrix;
    let i = C64::new(0.0, 1.0);
    let raising = match form {
        HamiltonianForm::HV => (&ah * &av) * i,
        HamiltonianForm::Rotated(phi) => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let e = C64::from_polar(1.0, phi);
            let a_phi = (&ah + &av * e) * C64::new(h, 0.0);
            let a_perp = (&ah * (-e.conj()) + &av) * C64::new(h, 0.0);
            let squares = &a_phi * &a_phi - (&a_perp * &a_perp) * (e * e);
            squares * (i * 0.5 * e.conj())
        }
    };
    let matrix = &raising + raising.adjoint();
    BosonOp::new(cutoff, matrix)
}

/// Largest entrywise difference between the rotated and `{H, V}` forms,
/// restricted to rows and columns with total photon number `≤ cutoff − 1`.
pub fn form_agreement_defect(cutoff: usize, phi: f64) -> Result<f64> {
    let hv = build_hamiltonian(cutoff, HamiltonianForm::HV)?;
    let rot = build_hamiltonian(cutoff, HamiltonianForm::Rotated(phi))?;
    let inside: Vec<(usize, usize)> = (0..=cutoff)
        .flat_map(|m| (0..=cutoff).map(move |n| (m, n)))
        .filter(|&(m, n)| m + n < cutoff)
        .collect();
    let mut worst = 0.0f64;
    for &r in &inside {
        for &c in &inside {
            worst = worst.max((hv.element(r, c) - rot.element(r, c)).norm());
        }
    }
    Ok(worst)
}

/// `H|ψ⟩` for a state in the `{H, V}` basis, without materializing `H`.
fn apply_hv_hamiltonian(state: &FockVec) -> FockVec {
    let c = state.cutoff;
    let i = C64::new(0.0, 1.0);
    let mut out = FockVec {
        amplitudes: vec![C64::zero(); state.amplitudes.len()],
        ..state.clone()
    };
    for m in 0..=c {
        for n in 0..=c {
            let mut v = C64::zero();
            if m >= 1 && n >= 1 {
                v += i * ((m * n) as f64).sqrt() * state.amplitude(m - 1, n - 1);
            }
            if m < c && n < c {
                v -= i * (((m + 1) * (n + 1)) as f64).sqrt() * state.amplitude(m + 1, n + 1);
            }
            *out.amplitude_mut(m, n) = v;
        }
    }
    out
}

/// Result of a truncated Taylor-series evolution.
#[derive(Clone, Debug, PartialEq)]
pub struct Evolution {
    /// Evolved state in the `{H, V}` basis, where the truncation acts.
    pub state: FockVec,
    /// Norm of the first omitted series term.
    pub next_term_norm: f64,
    /// `|1 − ‖ψ‖²|` for a normalized input.
    pub norm_deficit: f64,
    /// Weight on states with either mode at the cutoff.
    pub boundary_population: f64,
    /// Set when `boundary_population` exceeds [`OVERFLOW_THRESHOLD`].
    pub overflow: bool,
}

/// The series terms `(−i·gain·H)^j/j! |ψ⟩`, `j = 0..=order`, in the
/// `{H, V}` basis.
pub fn taylor_terms(state: &FockVec, gain: f64, order: usize) -> Vec<FockVec> {
    let mut term = state.to_basis(ModeBasis::HV);
    let mut terms = Vec::with_capacity(order + 1);
    terms.push(term.clone());
    for j in 1..=order {
        let factor = C64::new(0.0, -gain / j as f64);
        term = apply_hv_hamiltonian(&term).scaled(factor);
        terms.push(term.clone());
    }
    terms
}

/// Applies `Σ_{j ≤ order} (−i·gain·H)^j/j!` to `state`.
pub fn evolve(state: &FockVec, gain: f64, order: usize) -> Result<Evolution> {
    if order == 0 {
        return Err(Error::Domain("series order must be at least 1".into()));
    }
    if !gain.is_finite() {
        return Err(Error::Domain(format!("non-finite gain {gain}")));
    }
    if gain.abs() > 0.5 {
        log::warn!("gain {gain} is outside the perturbative regime |gain| ≤ 0.5");
    }
    let mut terms = taylor_terms(state, gain, order + 1);
    let next = terms.pop().expect("order + 2 terms");
    let mut sum = terms[0].clone();
    for t in &terms[1..] {
        sum = sum.add(t)?;
    }
    let input_norm = state.norm_sq();
    let boundary = sum.boundary_population();
    Ok(Evolution {
        next_term_norm: next.norm_sq().sqrt(),
        norm_deficit: (input_norm - sum.norm_sq()).abs(),
        boundary_population: boundary,
        overflow: boundary > OVERFLOW_THRESHOLD,
        state: sum,
    })
}

/// `|1, 0⟩` in the `{φ, φ⊥}` basis.
pub fn injected_photon(phase: f64, cutoff: usize) -> Result<FockVec> {
    FockVec::fock(cutoff, 1, 0, ModeBasis::Phi(phase))
}

/// Coefficient of `gain¹` in the amplified injected photon, in the
/// `{φ, φ⊥}` basis: `(1/2)e^{−iφ}(√6|3,0⟩ − √2 e^{2iφ}|1,2⟩)`.
pub fn first_order_output(phase: f64, cutoff: usize) -> Result<FockVec> {
    check_cutoff(cutoff, MIN_CUTOFF, MAX_CUTOFF)?;
    let input = injected_photon(phase, cutoff)?;
    let terms = taylor_terms(&input, 1.0, 1);
    Ok(terms[1].to_basis(ModeBasis::Phi(phase)).sector(3))
}

/// Single-photon polarization state of a fixed-photon-number state: the
/// `N`-photon sector is mapped onto `N` qubits (`|m, n⟩_{HV} ↦` Dicke state
/// with `n` excitations, `H ↦ |0⟩`) and all qubits but the first are traced
/// out.
pub fn photon_reduced_density(state: &FockVec) -> Result<DensityOp> {
    let hv = state.to_basis(ModeBasis::HV);
    let pops = hv.photon_number_populations();
    let total: f64 = pops.iter().sum();
    if total < crate::tol::VANISHING_PROB {
        return Err(Error::VanishingProjection(total));
    }
    let (n_photons, &dominant) = pops
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty populations");
    let outside = (total - dominant) / total;
    if outside > SECTOR_TOL {
        return Err(Error::MixedPhotonNumber(outside));
    }
    if n_photons == 0 {
        return Err(Error::Domain("vacuum has no photon polarization".into()));
    }
    let mut amplitudes = vec![C64::zero(); 1 << n_photons];
    for n in 0..=n_photons {
        let amp = hv.amplitude(n_photons - n, n);
        if amp == C64::zero() {
            continue;
        }
        let d = dicke_state(&DickeLabel::computational(n_photons, n))?;
        for (acc, x) in amplitudes.iter_mut().zip(d.amplitudes()) {
            *acc += amp * x;
        }
    }
    let (ket, _) = Ket::new(n_photons, amplitudes)?.normalized()?;
    let rho = partial_trace(&ket, &[0])?;
    debug_assert!(rho.hermiticity_defect() <= EQ_TOL);
    Ok(rho)
}
