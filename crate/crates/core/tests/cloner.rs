use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64 as C64;
use pcclone::angular::{b_coef, d_coef, gamma, projection_norm_sq, ratio_to_f64};
use pcclone::cloner::{
    covariance_defect, default_probe_phases, flip_anticlones, per_qubit_fidelities, pqcm_scheme_a,
    pqcm_scheme_b, run_scheme, scheme_equivalence_defect, success_prob_spread, symmetric_dicke_overlaps,
    symmetrize_with_pair, uqcm, uqcm_dicke_overlaps, Scheme,
};
use pcclone::statekit::{equatorial_state, BellState, Ket, PlaneId, QubitBasis};
use pcclone::symmetry::single_qubit_marginals;
use pcclone::Error;

const TOL: f64 = 1e-10;

fn cov_fidelity(p: usize) -> f64 {
    let m = (2 * p - 1) as f64;
    0.5 * (1.0 + (m + 1.0) / (2.0 * m))
}

/// Checks `values[k] = e^{iα}·expected[k]` for one common phase.
fn assert_proportional_with_unit_phase(values: &[C64], expected: &[f64]) {
    let phase = values[0] / expected[0];
    assert!((phase.norm() - 1.0).abs() < 1e-12, "modulus {}", phase.norm());
    for (v, e) in values.iter().zip(expected) {
        assert!((v - phase * e).norm() < 1e-12, "{v} vs {e}");
    }
}

fn generic_qubit(theta: f64, phi: f64) -> Ket {
    Ket::qubit(C64::new((theta / 2.0).cos(), 0.0), C64::from_polar((theta / 2.0).sin(), phi))
}

#[test]
fn uqcm_is_universal() {
    for p in [2usize, 3] {
        let clone_f = (2.0 + 1.0 / p as f64) / 3.0;
        for (theta, phi) in [(0.0, 0.0), (0.7, 1.9), (2.5, -0.4), (PI, 0.0)] {
            let input = generic_qubit(theta, phi);
            let perp = Ket::qubit(-input.amplitude(1).conj(), input.amplitude(0).conj());
            let out = uqcm(&input, p).unwrap();
            assert_eq!(out.clone_qubits, (0..p).collect::<Vec<_>>());
            assert_eq!(out.anticlone_qubits, (p..2 * p - 1).collect::<Vec<_>>());
            let marg = single_qubit_marginals(&out.state).unwrap();
            for &q in &out.clone_qubits {
                assert!((marg[q].fidelity(&input).unwrap() - clone_f).abs() < TOL);
            }
            for &q in &out.anticlone_qubits {
                assert!((marg[q].fidelity(&perp).unwrap() - 2.0 / 3.0).abs() < TOL);
            }
        }
    }
}

#[test]
fn uqcm_output_expands_in_b_k() {
    for p in 2..=4 {
        for (plane, phase) in [(PlaneId::XZ, 0.3), (PlaneId::XY, 2.0)] {
            let out = uqcm(&equatorial_state(plane, phase), p).unwrap();
            let overlaps = uqcm_dicke_overlaps(&out, &QubitBasis::equatorial(plane, phase)).unwrap();
            let b: Vec<f64> = (0..p).map(|k| b_coef(p, k).unwrap().to_f64()).collect();
            assert_proportional_with_unit_phase(&overlaps, &b);
        }
    }
}

#[test]
fn scheme_a_one_to_three() {
    for phase in default_probe_phases(8) {
        let (report, state) = pqcm_scheme_a(phase, PlaneId::XZ, 2).unwrap();
        assert_eq!((report.m, report.p, report.scheme), (3, 2, Scheme::A));
        assert_eq!(report.per_clone_fidelity.len(), 3);
        for f in &report.per_clone_fidelity {
            assert!((f - 5.0 / 6.0).abs() < TOL);
        }
        assert!((report.success_prob - 8.0 / 9.0).abs() < TOL);
        assert!((report.uqcm_success_prob.unwrap() - 0.75).abs() < TOL);
        assert!((report.optimal_fidelity - 5.0 / 6.0).abs() < 1e-15);
        assert!(state.is_normalized());
    }
}

#[test]
fn scheme_a_one_to_five() {
    let (report, _) = pqcm_scheme_a(1.1, PlaneId::XZ, 3).unwrap();
    for f in &report.per_clone_fidelity {
        assert!((f - 0.8).abs() < TOL);
    }
}

#[test]
fn scheme_a_pre_projection_fidelities_are_asymmetric() {
    for plane in PlaneId::ALL {
        let input = equatorial_state(plane, 0.9);
        let out = uqcm(&input, 2).unwrap();
        let before = per_qubit_fidelities(&out.state, &input).unwrap();
        let flipped = flip_anticlones(&out, plane).unwrap();
        let after = per_qubit_fidelities(&flipped, &input).unwrap();
        for (got, want) in before.iter().zip([5.0 / 6.0, 5.0 / 6.0, 1.0 / 3.0]) {
            assert!((got - want).abs() < TOL);
        }
        for (got, want) in after.iter().zip([5.0 / 6.0, 5.0 / 6.0, 2.0 / 3.0]) {
            assert!((got - want).abs() < TOL);
        }
    }
}

#[test]
fn final_projection_expands_in_d_k() {
    for p in 2..=4 {
        for plane in PlaneId::ALL {
            let phase = 0.25 * p as f64;
            let out = run_scheme(Scheme::A, &equatorial_state(plane, phase), plane, p).unwrap();
            let basis = QubitBasis::equatorial(plane, phase);
            // unnormalized amplitudes equal d_k up to one phase
            let overlaps = symmetric_dicke_overlaps(&out.projected, &basis).unwrap();
            let d: Vec<f64> = (0..p).map(|k| d_coef(p, k).unwrap().to_f64()).collect();
            assert_proportional_with_unit_phase(&overlaps, &d);
        }
    }
}

#[test]
fn clones_are_identical_and_diagonal() {
    for p in 2..=4 {
        let g = ratio_to_f64(&gamma(p).unwrap());
        for plane in PlaneId::ALL {
            for scheme in [Scheme::A, Scheme::B] {
                let phase = 0.4 + p as f64;
                let out = run_scheme(scheme, &equatorial_state(plane, phase), plane, p).unwrap();
                let basis = QubitBasis::equatorial(plane, phase);
                let (phi, perp) = (basis.state(false), basis.state(true));
                let marg = single_qubit_marginals(&out.state).unwrap();
                for rho in &marg {
                    assert!((rho.fidelity(&phi).unwrap() - g).abs() < TOL);
                    assert!((rho.fidelity(&perp).unwrap() - (1.0 - g)).abs() < TOL);
                    let v = nalgebra::DVector::from_column_slice(perp.amplitudes());
                    let u = nalgebra::DVector::from_column_slice(phi.amplitudes());
                    let off = (u.adjoint() * rho.matrix() * v)[(0, 0)];
                    assert!(off.norm() < TOL);
                    assert!(rho.trace_distance(&marg[0]).unwrap() < TOL);
                }
                assert!((g - cov_fidelity(p)).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn scheme_a_success_is_projection_norm() {
    for p in 2..=4 {
        let expected = ratio_to_f64(&projection_norm_sq(p).unwrap());
        for plane in PlaneId::ALL {
            let (report, _) = pqcm_scheme_a(0.3, plane, p).unwrap();
            // staged: the universal stage renormalizes, so the final stage
            // alone carries Σ d_k²
            assert!((report.success_prob - expected).abs() < TOL);
            assert!(report.uqcm_success_prob.is_some());
        }
    }
}

#[test]
fn scheme_b_examples() {
    let (_, a) = pqcm_scheme_a(0.0, PlaneId::XZ, 2).unwrap();
    let (rb, b) = pqcm_scheme_b(0.0, PlaneId::XZ, 2).unwrap();
    assert!((a.inner(&b).unwrap().norm() - 1.0).abs() < 1e-12);
    assert!((rb.success_prob - 2.0 / 3.0).abs() < TOL);
    assert!(rb.uqcm_success_prob.is_none());
    for plane in [PlaneId::YZ, PlaneId::XY] {
        for phase in default_probe_phases(8) {
            let (r, _) = pqcm_scheme_b(phase, plane, 2).unwrap();
            for f in &r.per_clone_fidelity {
                assert!((f - 5.0 / 6.0).abs() < TOL, "{plane} {phase}");
            }
        }
    }
}

#[test]
fn ancilla_selects_the_plane() {
    assert_eq!(PlaneId::YZ.ancilla_bell(), BellState::PhiMinus);
    assert_eq!(PlaneId::XY.ancilla_bell(), BellState::PsiPlus);
    // swapping the two ancillas breaks covariance on those planes
    for (plane, wrong) in [(PlaneId::YZ, BellState::PsiPlus), (PlaneId::XY, BellState::PhiMinus)] {
        let worst = default_probe_phases(8)
            .into_iter()
            .map(|phase| {
                let input = equatorial_state(plane, phase);
                let out = symmetrize_with_pair(&input, wrong, 2).unwrap();
                per_qubit_fidelities(&out.state, &input).unwrap()[0]
            })
            .fold(1.0, f64::min);
        assert!(worst < 5.0 / 6.0 - 0.1);
    }
}

#[test]
fn off_plane_inputs_clone_worse() {
    for phase in [FRAC_PI_2, 1.0, -2.0] {
        let input = equatorial_state(PlaneId::XY, phase);
        let out = symmetrize_with_pair(&input, PlaneId::XZ.ancilla_bell(), 2).unwrap();
        let f = per_qubit_fidelities(&out.state, &input).unwrap();
        assert!(f.iter().all(|&x| x < 5.0 / 6.0 - 1e-6), "{phase}: {f:?}");
    }
}

#[test]
fn covariance_and_equivalence() {
    let probes = default_probe_phases(8);
    for p in 2..=3 {
        for plane in PlaneId::ALL {
            for scheme in [Scheme::A, Scheme::B] {
                assert!(covariance_defect(plane, p, scheme, &probes, &probes).unwrap() <= TOL);
                assert!(success_prob_spread(plane, p, scheme, &probes).unwrap() <= 1e-12);
            }
            assert!(scheme_equivalence_defect(plane, p, &probes).unwrap() <= 1e-12);
        }
    }
    assert_eq!(covariance_defect(PlaneId::YZ, 3, Scheme::B, &probes, &[0.0]).unwrap(), 0.0);
}

#[test]
fn capacity_and_domain_errors() {
    assert!(matches!(pqcm_scheme_a(0.0, PlaneId::XZ, 13), Err(Error::Capacity { requested: 25, .. })));
    assert!(pqcm_scheme_b(0.0, PlaneId::XZ, 1).is_err());
    assert!(scheme_equivalence_defect(PlaneId::XZ, 2, &[]).is_err());
    assert!(covariance_defect(PlaneId::XZ, 2, Scheme::A, &[0.0], &[f64::NAN]).is_err());
}
