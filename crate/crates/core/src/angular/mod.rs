//! Exact angular-momentum coupling and the coefficient theory of the
//! phase-covariant cloner.
//!
//! Everything here is exact: factorials are big integers, coefficients are
//! [`SignedSqrtRational`] and sums are [`BigRational`]. The only float output
//! is the even-M fidelity formula, which contains an irrational square root.

mod cg;
mod coef;
mod exact;
mod formula;
mod halfint;

pub use cg::cg;
pub use coef::{
    b_coef, b_norm_sq, combinatorial_sums, d_coef, d_coef_via_cg, gamma, gamma_closed_form,
    projection_norm_sq, CombinatorialSums,
};
pub use exact::{rational_sqrt, ratio_to_f64, SignedSqrtRational};
pub use formula::{fidelity_formula, CloneCount, FidelityKind, FidelityValue};
pub use halfint::{check_pair, triangle, HalfInt};
pub use num_rational::BigRational;

use num_traits::Zero;
use rayon::prelude::*;

use crate::Result;

/// One row of a γ sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaRow {
    pub m: usize,
    pub gamma: BigRational,
    pub closed_form: BigRational,
}

impl GammaRow {
    pub fn is_equal(&self) -> bool {
        self.gamma == self.closed_form
    }
}

/// γ(P) against the closed form for every odd `M = 2P − 1 ≤ max_m`, in
/// increasing `M`. Rows are computed in parallel.
pub fn gamma_sweep(max_m: usize) -> Result<Vec<GammaRow>> {
    let max_p = max_m.div_ceil(2);
    (1..=max_p)
        .into_par_iter()
        .map(|p| {
            Ok(GammaRow {
                m: 2 * p - 1,
                gamma: gamma(p)?,
                closed_form: gamma_closed_form(p)?,
            })
        })
        .collect()
}

/// `Σ_J cg(j1, j2, m1, M − m1; J, M)²` over the coupling range, for one
/// `(m1, M)`. Equals 1 exactly.
pub fn cg_completeness(j1: HalfInt, j2: HalfInt, m1: HalfInt, m: HalfInt) -> Result<BigRational> {
    let m2 = HalfInt::from_twice(m.twice() - m1.twice());
    let lo = (j1.twice() - j2.twice()).abs().max(m.twice().abs());
    let hi = j1.twice() + j2.twice();
    let mut total = BigRational::zero();
    let mut tj = lo;
    // J must share the parity of j1 + j2
    if (tj - hi) % 2 != 0 {
        tj += 1;
    }
    while tj <= hi {
        total += cg(j1, j2, m1, m2, HalfInt::from_twice(tj), m)?.square();
        tj += 2;
    }
    Ok(total)
}

/// `Σ_{m1} cg(j1, j2, m1, M − m1; J, M) · cg(j1, j2, m1, M − m1; J', M)` for
/// two totals `J, J'`, computed on signed squares so it stays exact when the
/// products are commensurable. Returns `δ_{JJ'}` for valid inputs.
pub fn cg_orthogonality(
    j1: HalfInt,
    j2: HalfInt,
    j: HalfInt,
    j_prime: HalfInt,
    m: HalfInt,
) -> Result<SignedSqrtRational> {
    let mut total = SignedSqrtRational::zero();
    let mut tm1 = -j1.twice();
    while tm1 <= j1.twice() {
        let m1 = HalfInt::from_twice(tm1);
        let m2 = HalfInt::from_twice(m.twice() - tm1);
        if m2.twice().abs() <= j2.twice() {
            let a = cg(j1, j2, m1, m2, j, m)?;
            let b = cg(j1, j2, m1, m2, j_prime, m)?;
            total = total.checked_add(&(&a * &b))?;
        }
        tm1 += 2;
    }
    Ok(total)
}
