//! Symmetric-subspace machinery: Dicke states, symmetrization projectors and
//! post-selected projections.

use num_complex::Complex64 as C64;
use num_traits::Zero;

use crate::statekit::{DensityOp, Ket, OperatorMatrix, QubitBasis};
use crate::tol::{self, VANISHING_PROB};
use crate::{Error, Result};

/// A Dicke state `|{(n−k)b0; k b1}⟩`: the normalized symmetric combination of
/// `n − k` qubits in `basis.zero` and `k` qubits in `basis.one`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DickeLabel {
    pub n: usize,
    pub k: usize,
    pub basis: QubitBasis,
}

impl DickeLabel {
    pub fn new(n: usize, k: usize, basis: QubitBasis) -> Self {
        DickeLabel { n, k, basis }
    }

    pub fn computational(n: usize, k: usize) -> Self {
        DickeLabel::new(n, k, QubitBasis::computational())
    }
}

/// Exact `C(n, k)` as a float (n ≤ 64 in practice).
fn binomial_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn dicke_state(label: &DickeLabel) -> Result<Ket> {
    let DickeLabel { n, k, basis } = *label;
    if n == 0 {
        return Err(Error::Domain("Dicke states need at least one qubit".into()));
    }
    if k > n {
        return Err(Error::ExcitationOutOfRange { n, k });
    }
    crate::statekit::check_capacity(n)?;
    // amplitude of |x⟩ is the t^k coefficient of Π_q (b0[x_q] + t·b1[x_q])
    let norm = 1.0 / binomial_f64(n, k).sqrt();
    let dim = 1usize << n;
    let mut poly = vec![C64::zero(); k + 1];
    let amplitudes = (0..dim)
        .map(|x| {
            poly.iter_mut().for_each(|c| *c = C64::zero());
            poly[0] = C64::new(1.0, 0.0);
            for q in 0..n {
                let bit = (x >> (n - 1 - q)) & 1;
                let (a, b) = (basis.zero[bit], basis.one[bit]);
                for d in (0..=k).rev() {
                    let lower = if d > 0 { poly[d - 1] } else { C64::zero() };
                    poly[d] = poly[d] * a + lower * b;
                }
            }
            poly[k] * norm
        })
        .collect();
    Ket::new(n, amplitudes)
}

/// The projector onto the symmetric subspace of `n` qubits, as a dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymProjector {
    pub n: usize,
    pub matrix: OperatorMatrix,
}

impl SymProjector {
    /// Number of eigenvalues above ½.
    pub fn rank(&self) -> usize {
        crate::statekit::hermitian_eigenvalues(&self.matrix)
            .iter()
            .filter(|&&l| l > 0.5)
            .count()
    }

    /// `‖Π² − Π‖_max`.
    pub fn idempotency_defect(&self) -> f64 {
        crate::statekit::max_abs(&(&self.matrix * &self.matrix - &self.matrix))
    }

    /// `Π ⊗ I` acting on `n + extra` qubits, with `Π` on the leading qubits.
    pub fn embed(&self, extra: usize) -> OperatorMatrix {
        let id = OperatorMatrix::identity(1 << extra, 1 << extra);
        self.matrix.kronecker(&id)
    }
}

fn check_operator_capacity(n: usize) -> Result<()> {
    let max = tol::max_operator_qubits();
    if n > max {
        return Err(Error::Capacity { requested: n, max });
    }
    Ok(())
}

/// `Σ_k |D(n,k)⟩⟨D(n,k)|` built from the Dicke states of `basis`.
pub fn symmetric_projector(n: usize, basis: &QubitBasis) -> Result<SymProjector> {
    if n == 0 {
        return Err(Error::Domain("symmetrization needs at least one qubit".into()));
    }
    check_operator_capacity(n)?;
    let dim = 1usize << n;
    let mut matrix = OperatorMatrix::zeros(dim, dim);
    for k in 0..=n {
        let d = dicke_state(&DickeLabel::new(n, k, *basis))?;
        let v = nalgebra::DVector::from_column_slice(d.amplitudes());
        matrix += &v * v.adjoint();
    }
    Ok(SymProjector { n, matrix })
}

/// Applies `Π^|subset| ⊗ I` by averaging amplitudes over equal-weight
/// patterns of the subset qubits.
pub fn project_subset(state: &Ket, subset: &[usize]) -> Result<Ket> {
    let n = state.num_qubits();
    if subset.is_empty() {
        return Err(Error::EmptySelection);
    }
    crate::statekit::check_capacity(n)?;
    let (inner, outer) = split_offsets(n, subset)?;
    let s = subset.len();
    let weights: Vec<usize> = (0..1usize << s).map(|j| j.count_ones() as usize).collect();
    let counts: Vec<f64> = (0..=s).map(|w| binomial_f64(s, w)).collect();
    let psi = state.amplitudes();
    let mut out = vec![C64::zero(); psi.len()];
    let mut sums = vec![C64::zero(); s + 1];
    for &base in &outer {
        sums.iter_mut().for_each(|x| *x = C64::zero());
        for (j, &off) in inner.iter().enumerate() {
            sums[weights[j]] += psi[base | off];
        }
        for (j, &off) in inner.iter().enumerate() {
            out[base | off] = sums[weights[j]] / counts[weights[j]];
        }
    }
    Ket::new(n, out)
}

/// Reference path for [`project_subset`]: the dense matrix `Π ⊗ I` applied
/// after moving the subset to the front.
pub fn project_subset_dense(state: &Ket, subset: &[usize]) -> Result<Ket> {
    let n = state.num_qubits();
    if subset.is_empty() {
        return Err(Error::EmptySelection);
    }
    check_operator_capacity(n)?;
    split_offsets(n, subset)?;
    let mut order: Vec<usize> = subset.to_vec();
    order.extend((0..n).filter(|q| !subset.contains(q)));
    let front = state.permute_qubits(&order)?;
    let proj = symmetric_projector(subset.len(), &QubitBasis::computational())?;
    let op = proj.embed(n - subset.len());
    let projected = front.apply(&op, &(0..n).collect::<Vec<_>>())?;
    // invert the reordering
    let mut inverse = vec![0; n];
    for (pos, &q) in order.iter().enumerate() {
        inverse[q] = pos;
    }
    projected.permute_qubits(&inverse)
}

fn split_offsets(n: usize, subset: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    for &q in subset {
        if q >= n {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: n,
            });
        }
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateQubit(w[0]));
    }
    let rest: Vec<usize> = (0..n).filter(|q| !subset.contains(q)).collect();
    let offsets = |qs: &[usize]| -> Vec<usize> {
        let k = qs.len();
        (0..1usize << k)
            .map(|j| {
                qs.iter()
                    .enumerate()
                    .filter(|&(pos, _)| j & (1 << (k - 1 - pos)) != 0)
                    .fold(0, |acc, (_, &q)| acc | (1 << (n - 1 - q)))
            })
            .collect()
    };
    Ok((offsets(subset), offsets(&rest)))
}

/// Outcome of a symmetrizing post-selection.
#[derive(Clone, Debug, PartialEq)]
pub struct PostSelection {
    /// Projected, unnormalized state.
    pub projected: Ket,
    /// Squared norm of `projected`.
    pub success_prob: f64,
    /// `projected` renormalized to unit norm.
    pub state: Ket,
}

/// Projects `subset` onto its symmetric subspace and renormalizes.
pub fn project_and_postselect(state: &Ket, subset: &[usize]) -> Result<PostSelection> {
    let projected = project_subset(state, subset)?;
    let success_prob = projected.norm_sq();
    if success_prob < VANISHING_PROB {
        return Err(Error::VanishingProjection(success_prob));
    }
    let (normalized, _) = projected.normalized()?;
    Ok(PostSelection {
        projected,
        success_prob,
        state: normalized,
    })
}

/// `‖Π^{2P−1}(Π^P ⊗ I^{P−1}) − Π^{2P−1}‖_max`.
pub fn concatenation_defect(p: usize) -> Result<f64> {
    if p == 0 {
        return Err(Error::Domain("P must be at least 1".into()));
    }
    let m = 2 * p - 1;
    check_operator_capacity(m)?;
    let basis = QubitBasis::computational();
    let full = symmetric_projector(m, &basis)?;
    let partial = symmetric_projector(p, &basis)?.embed(p - 1);
    Ok(crate::statekit::max_abs(&(&full.matrix * partial - &full.matrix)))
}

/// Squared overlaps `|⟨D(n,k)|ψ⟩|²`, k = 0..=n, in the given basis.
pub fn dicke_weights(state: &Ket, basis: &QubitBasis) -> Result<Vec<f64>> {
    let n = state.num_qubits();
    (0..=n)
        .map(|k| {
            let d = dicke_state(&DickeLabel::new(n, k, *basis))?;
            Ok(d.inner(state)?.norm_sqr())
        })
        .collect()
}

/// Reduced single-qubit states of every qubit of `state`.
pub fn single_qubit_marginals(state: &Ket) -> Result<Vec<DensityOp>> {
    (0..state.num_qubits())
        .map(|q| crate::statekit::partial_trace(state, &[q]))
        .collect()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use super::*;
    use crate::statekit::{bell_state, equatorial_state, max_abs, tensor, BellState, PlaneId};
    use crate::tol::EQ_TOL;

    fn basis_ket(bits: &[bool], basis: &QubitBasis) -> Ket {
        bits.iter()
            .map(|&b| basis.state(b))
            .reduce(|a, b| tensor(&a, &b).unwrap())
            .unwrap()
    }

    #[test]
    fn dicke_two_one_is_symmetric_pair() {
        let basis = QubitBasis::equatorial(PlaneId::XZ, 0.9);
        let d = dicke_state(&DickeLabel::new(2, 1, basis)).unwrap();
        let expected = basis_ket(&[false, true], &basis)
            .add(&basis_ket(&[true, false], &basis))
            .unwrap()
            .scaled(C64::new(FRAC_1_SQRT_2, 0.0));
        assert!((d.inner(&expected).unwrap().norm_sqr() - 1.0).abs() <= EQ_TOL);
    }

    #[test]
    fn dicke_three_qubit_states() {
        let basis = QubitBasis::equatorial(PlaneId::XY, 0.3);
        let pi3 = [[false, true, true], [true, false, true], [true, true, false]]
            .iter()
            .map(|b| basis_ket(b, &basis))
            .reduce(|a, b| a.add(&b).unwrap())
            .unwrap()
            .scaled(C64::new(1.0 / 3f64.sqrt(), 0.0));
        let d = dicke_state(&DickeLabel::new(3, 2, basis)).unwrap();
        assert!((d.inner(&pi3).unwrap() - C64::new(1.0, 0.0)).norm() <= EQ_TOL);
        let d0 = dicke_state(&DickeLabel::new(3, 0, basis)).unwrap();
        let pi1 = basis_ket(&[false, false, false], &basis);
        assert!((d0.inner(&pi1).unwrap() - C64::new(1.0, 0.0)).norm() <= EQ_TOL);
    }

    #[test]
    fn dicke_rejects_bad_labels() {
        assert!(matches!(
            dicke_state(&DickeLabel::computational(3, 4)),
            Err(Error::ExcitationOutOfRange { n: 3, k: 4 })
        ));
        assert!(dicke_state(&DickeLabel::computational(0, 0)).is_err());
    }

    #[test]
    fn three_qubit_projector_has_rank_four() {
        let p = symmetric_projector(3, &QubitBasis::computational()).unwrap();
        assert_eq!(p.rank(), 4);
        assert!(p.idempotency_defect() <= EQ_TOL);
    }

    #[test]
    fn singlet_is_annihilated() {
        let out = project_subset(&bell_state(BellState::PsiMinus), &[0, 1]).unwrap();
        assert!(out.norm_sq() <= EQ_TOL);
        assert!(matches!(
            project_and_postselect(&bell_state(BellState::PsiMinus), &[0, 1]),
            Err(Error::VanishingProjection(_))
        ));
    }

    #[test]
    fn symmetrizing_01_averages_permutations() {
        let out = project_subset(&Ket::basis(2, 0b01).unwrap(), &[0, 1]).unwrap();
        assert!((out.amplitude(0b01) - C64::new(0.5, 0.0)).norm() <= EQ_TOL);
        assert!((out.amplitude(0b10) - C64::new(0.5, 0.0)).norm() <= EQ_TOL);
        assert!((out.norm_sq() - 0.5).abs() <= EQ_TOL);
    }

    #[test]
    fn symmetric_input_passes_unchanged() {
        let d = dicke_state(&DickeLabel::computational(4, 2)).unwrap();
        let ps = project_and_postselect(&d, &[0, 1, 2, 3]).unwrap();
        assert!((ps.success_prob - 1.0).abs() <= EQ_TOL);
        assert!(ps.state.equal_up_to_phase(&d, EQ_TOL));
    }

    #[test]
    fn fast_projection_matches_dense_reference() {
        let a = equatorial_state(PlaneId::XZ, 0.3);
        let b = equatorial_state(PlaneId::YZ, 1.9);
        let psi = tensor(&tensor(&a, &bell_state(BellState::PsiMinus)).unwrap(), &b).unwrap();
        for subset in [vec![0, 1], vec![3, 0, 2], vec![1, 2, 3], vec![0, 1, 2, 3], vec![2]] {
            let fast = project_subset(&psi, &subset).unwrap();
            let dense = project_subset_dense(&psi, &subset).unwrap();
            let gap = fast
                .amplitudes()
                .iter()
                .zip(dense.amplitudes())
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(gap <= EQ_TOL, "subset {subset:?}: {gap}");
        }
    }

    #[test]
    fn subset_errors() {
        let k = Ket::basis(3, 0).unwrap();
        assert!(matches!(project_subset(&k, &[0, 0]), Err(Error::DuplicateQubit(0))));
        assert!(matches!(project_subset(&k, &[3]), Err(Error::QubitOutOfRange { .. })));
        assert_eq!(project_subset(&k, &[]).unwrap_err(), Error::EmptySelection);
    }

    #[test]
    fn concatenation_small_cases() {
        assert_eq!(concatenation_defect(1).unwrap(), 0.0);
        assert!(concatenation_defect(2).unwrap() <= EQ_TOL);
        assert!(concatenation_defect(3).unwrap() <= EQ_TOL);
    }

    #[test]
    fn projector_is_basis_independent() {
        let reference = symmetric_projector(3, &QubitBasis::computational()).unwrap();
        for plane in PlaneId::ALL {
            let rotated = symmetric_projector(3, &QubitBasis::equatorial(plane, 0.61)).unwrap();
            assert!(max_abs(&(&rotated.matrix - &reference.matrix)) <= EQ_TOL);
        }
    }
}
