//! Invariant suites, one row per checked property.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive};

use crate::angular::{
    b_norm_sq, cg_completeness, d_coef, d_coef_via_cg, fidelity_formula, gamma, gamma_closed_form,
    ratio_to_f64, BigRational, CloneCount, FidelityKind, HalfInt,
};
use crate::cloner::{
    covariance_defect, default_probe_phases, pqcm_scheme_a, pqcm_scheme_b, scheme_equivalence_defect,
    Scheme, DEFAULT_PROBES,
};
use crate::opa::{
    build_hamiltonian, first_order_output, form_agreement_defect, photon_reduced_density,
    HamiltonianForm, DEFAULT_CUTOFF,
};
use crate::statekit::{equatorial_state, max_abs, transposition, PlaneId, QubitBasis};
use crate::symmetry::{concatenation_defect, symmetric_projector};
use crate::tol::{EQ_TOL, SPECTRAL_TOL};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Angular,
    Symmetry,
    Cloner,
    Opa,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "angular" => Ok(Suite::Angular),
            "symmetry" => Ok(Suite::Symmetry),
            "cloner" => Ok(Suite::Cloner),
            "opa" => Ok(Suite::Opa),
            _ => Err(Error::Domain(format!(
                "unknown suite {s:?}, expected all, angular, symmetry, cloner or opa"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Angular => "angular",
            Suite::Symmetry => "symmetry",
            Suite::Cloner => "cloner",
            Suite::Opa => "opa",
        })
    }
}

/// One verified property. Exact checks use threshold 0 and defect 0 or 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub defect: f64,
    pub threshold: f64,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, defect: f64, threshold: f64) -> Self {
        Check {
            suite,
            name: name.into(),
            defect,
            threshold,
        }
    }

    fn exact(suite: Suite, name: impl Into<String>, holds: bool) -> Self {
        Check::new(suite, name, if holds { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn passed(&self) -> bool {
        self.defect <= self.threshold
    }
}

/// Multiplies every float threshold by `scale` (exact checks stay at 0).
pub fn scale_thresholds(checks: &mut [Check], scale: f64) {
    for c in checks {
        c.threshold *= scale;
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run_suite(suite: Suite) -> Result<Vec<Check>> {
    match suite {
        Suite::All => {
            let mut out = angular_suite()?;
            out.extend(symmetry_suite()?);
            out.extend(cloner_suite()?);
            out.extend(opa_suite()?);
            Ok(out)
        }
        Suite::Angular => angular_suite(),
        Suite::Symmetry => symmetry_suite(),
        Suite::Cloner => cloner_suite(),
        Suite::Opa => opa_suite(),
    }
}

fn angular_suite() -> Result<Vec<Check>> {
    let s = Suite::Angular;
    let mut out = Vec::new();

    let mut complete = true;
    for tj1 in 0..=6i64 {
        for tj2 in 0..=6i64 {
            for tm1 in (-tj1..=tj1).step_by(2) {
                for tm2 in (-tj2..=tj2).step_by(2) {
                    let total = cg_completeness(
                        HalfInt::from_twice(tj1),
                        HalfInt::from_twice(tj2),
                        HalfInt::from_twice(tm1),
                        HalfInt::from_twice(tm1 + tm2),
                    )?;
                    complete &= total.is_one();
                }
            }
        }
    }
    out.push(Check::exact(s, "CG orthogonality, sum over J of squares = 1 (2j <= 6)", complete));

    let mut d_match = true;
    for p in 1..=20 {
        for k in 0..p {
            d_match &= d_coef(p, k)? == d_coef_via_cg(p, k)?;
        }
    }
    out.push(Check::exact(s, "d_k closed form = b_k x CG (P <= 20)", d_match));

    let mut b_unit = true;
    for p in 1..=50 {
        b_unit &= b_norm_sq(p)?.is_one();
    }
    out.push(Check::exact(s, "sum of b_k^2 = 1 (P <= 50)", b_unit));

    let mut gamma_ok = true;
    for p in 1..=101 {
        gamma_ok &= gamma(p)? == gamma_closed_form(p)?;
    }
    out.push(Check::exact(s, "gamma(P) = closed form (M <= 201)", gamma_ok));

    let phase = fidelity_formula(FidelityKind::PhaseEstimation, 1, CloneCount::Infinite)?;
    let phase = phase.exact().cloned().expect("rational");
    let mut relation = true;
    for m in (1..=51u64).step_by(2) {
        let cov = fidelity_formula(FidelityKind::CovOdd, 1, CloneCount::Finite(m))?;
        let lhs = cov.exact().cloned().expect("rational") - &phase;
        relation &= lhs == BigRational::new(1.into(), (4 * m).into());
    }
    out.push(Check::exact(s, "F_cov(1->M) - F_phase = 1/(4M) (odd M <= 51)", relation));
    Ok(out)
}

fn symmetry_suite() -> Result<Vec<Check>> {
    let s = Suite::Symmetry;
    let mut out = Vec::new();
    let comp = QubitBasis::computational();
    for n in 1..=6 {
        let pi = symmetric_projector(n, &comp)?;
        out.push(Check::new(s, format!("projector idempotency, n = {n}"), pi.idempotency_defect(), EQ_TOL));
        out.push(Check::exact(s, format!("projector rank = n + 1, n = {n}"), pi.rank() == n + 1));
    }
    let n = 4;
    let pi = symmetric_projector(n, &comp)?;
    let rotated = symmetric_projector(n, &QubitBasis::equatorial(PlaneId::XZ, 0.37))?;
    out.push(Check::new(
        s,
        "projector basis independence, n = 4",
        max_abs(&(&pi.matrix - &rotated.matrix)),
        EQ_TOL,
    ));
    let mut perm = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let t = transposition(n, i, j)?;
            perm = perm.max(max_abs(&(&t * &pi.matrix - &pi.matrix)));
            perm = perm.max(max_abs(&(&pi.matrix * &t - &pi.matrix)));
        }
    }
    out.push(Check::new(s, "projector permutation invariance, n = 4", perm, EQ_TOL));
    for p in 1..=3 {
        out.push(Check::new(s, format!("concatenation property, P = {p}"), concatenation_defect(p)?, EQ_TOL));
    }
    Ok(out)
}

fn cloner_suite() -> Result<Vec<Check>> {
    let s = Suite::Cloner;
    let mut out = Vec::new();
    let probes = default_probe_phases(DEFAULT_PROBES);
    for p in 2..=4usize {
        let m = 2 * p - 1;
        for scheme in [Scheme::A, Scheme::B] {
            for plane in PlaneId::ALL {
                let mut worst = 0.0f64;
                for &phase in &probes {
                    let (report, _) = match scheme {
                        Scheme::A => pqcm_scheme_a(phase, plane, p)?,
                        Scheme::B => pqcm_scheme_b(phase, plane, p)?,
                    };
                    for f in &report.per_clone_fidelity {
                        worst = worst.max((f - report.optimal_fidelity).abs());
                    }
                    if scheme == Scheme::A {
                        let expected = ratio_to_f64(&crate::angular::projection_norm_sq(p)?);
                        worst = worst.max((report.success_prob - expected).abs());
                    }
                }
                out.push(Check::new(
                    s,
                    format!("optimal fidelity, M = {m}, scheme {scheme}, plane {plane}"),
                    worst,
                    SPECTRAL_TOL,
                ));
            }
        }
    }
    for p in 2..=3 {
        for plane in PlaneId::ALL {
            let cov = covariance_defect(plane, p, Scheme::A, &probes, &probes)?;
            out.push(Check::new(s, format!("covariance, P = {p}, plane {plane}"), cov, SPECTRAL_TOL));
            let eq = scheme_equivalence_defect(plane, p, &probes)?;
            out.push(Check::new(s, format!("scheme equivalence, P = {p}, plane {plane}"), eq, EQ_TOL));
        }
    }
    Ok(out)
}

fn opa_suite() -> Result<Vec<Check>> {
    let s = Suite::Opa;
    let mut out = Vec::new();
    let c = DEFAULT_CUTOFF;
    let h = build_hamiltonian(c, HamiltonianForm::HV)?;
    out.push(Check::new(s, "Hamiltonian hermiticity", h.hermiticity_defect(), EQ_TOL));
    let mut form = 0.0f64;
    for phi in [0.0, PI / 3.0, PI / 2.0, 1.2] {
        form = form.max(form_agreement_defect(c, phi)?);
    }
    out.push(Check::new(s, "rotated form = HV form below cutoff", form, EQ_TOL));
    let mut ratio_defect = 0.0f64;
    let mut phase_defect = 0.0f64;
    let mut fid_defect = 0.0f64;
    for phi in default_probe_phases(DEFAULT_PROBES) {
        let v = first_order_output(phi, c)?;
        let (a30, a12) = (v.amplitude(3, 0), v.amplitude(1, 2));
        ratio_defect = ratio_defect.max((a30.norm() / a12.norm() - 3f64.sqrt()).abs());
        // a12/a30 = −e^{2iφ}/√3
        let rel = -(a12 / a30) * 3f64.sqrt();
        phase_defect = phase_defect.max((rel - num_complex::Complex64::from_polar(1.0, 2.0 * phi)).norm());
        let rho = photon_reduced_density(&v.normalized()?)?;
        let f = rho.fidelity(&equatorial_state(PlaneId::XY, phi))?;
        fid_defect = fid_defect.max((f - 5.0 / 6.0).abs());
    }
    out.push(Check::new(s, "first-order |amplitude ratio| = sqrt(3)", ratio_defect, SPECTRAL_TOL));
    out.push(Check::new(s, "first-order relative phase = e^{2i phi}", phase_defect, SPECTRAL_TOL));
    out.push(Check::new(s, "first-order reduced fidelity = 5/6", fid_defect, 1e-9));
    Ok(out)
}

/// Float value of an exact rational, for report rows.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| ratio_to_f64(r))
}
