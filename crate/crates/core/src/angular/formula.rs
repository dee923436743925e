use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::exact::{ratio, ratio_to_f64};
use crate::{Error, Result};

/// Closed-form optimal fidelities for cloning and estimation of qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FidelityKind {
    /// Phase-covariant 1→M cloning, odd M.
    CovOdd,
    /// Phase-covariant 1→M cloning, even M.
    CovEven,
    /// Universal N→M cloning.
    Universal,
    /// Optimal state estimation from N copies.
    Estimation,
    /// Optimal estimation of an equatorial phase from one copy.
    PhaseEstimation,
}

impl FromStr for FidelityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cov_odd" => Ok(FidelityKind::CovOdd),
            "cov_even" => Ok(FidelityKind::CovEven),
            "universal" => Ok(FidelityKind::Universal),
            "estimation" => Ok(FidelityKind::Estimation),
            "phase_estimation" => Ok(FidelityKind::PhaseEstimation),
            _ => Err(Error::Domain(format!("unknown fidelity kind {s:?}"))),
        }
    }
}

/// Number of output copies; `Infinite` gives the measurement limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CloneCount {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FidelityValue {
    Exact(BigRational),
    Approx(f64),
}

impl FidelityValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            FidelityValue::Exact(r) => ratio_to_f64(r),
            FidelityValue::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            FidelityValue::Exact(r) => Some(r),
            FidelityValue::Approx(_) => None,
        }
    }
}

impl fmt::Display for FidelityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FidelityValue::Exact(r) => write!(f, "{r}"),
            FidelityValue::Approx(x) => write!(f, "{x}"),
        }
    }
}

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// Evaluates the closed-form fidelity of `kind` for `n` inputs and `m` outputs.
///
/// `Estimation` and `PhaseEstimation` do not depend on `m`. Phase estimation
/// is only tabulated for a single input copy.
pub fn fidelity_formula(kind: FidelityKind, n: u64, m: CloneCount) -> Result<FidelityValue> {
    let int = |x: u64| BigRational::from_integer(BigInt::from(x));
    match kind {
        FidelityKind::CovOdd => {
            if n != 1 {
                return Err(domain("phase-covariant formulas need N = 1"));
            }
            match m {
                CloneCount::Infinite => Ok(FidelityValue::Exact(ratio(3, 4))),
                CloneCount::Finite(m) if m % 2 == 1 => {
                    // (1/2)(1 + (M+1)/(2M))
                    Ok(FidelityValue::Exact(BigRational::new(
                        BigInt::from(3 * m + 1),
                        BigInt::from(4 * m),
                    )))
                }
                CloneCount::Finite(m) => Err(domain(format!("cov_odd needs odd M, got {m}"))),
            }
        }
        FidelityKind::CovEven => {
            if n != 1 {
                return Err(domain("phase-covariant formulas need N = 1"));
            }
            match m {
                CloneCount::Infinite => Ok(FidelityValue::Exact(ratio(3, 4))),
                CloneCount::Finite(m) if m % 2 == 0 && m > 0 => {
                    let mf = m as f64;
                    Ok(FidelityValue::Approx(0.5 * (1.0 + (mf * (mf + 2.0)).sqrt() / (2.0 * mf))))
                }
                CloneCount::Finite(m) => Err(domain(format!("cov_even needs even M ≥ 2, got {m}"))),
            }
        }
        FidelityKind::Universal => {
            if n == 0 {
                return Err(domain("universal cloning needs N ≥ 1"));
            }
            match m {
                CloneCount::Infinite => Ok(FidelityValue::Exact(int(n + 1) / int(n + 2))),
                CloneCount::Finite(m) if m >= n => {
                    // (N + 1 + N/M)/(N + 2)
                    let beta = int(n) / int(m);
                    Ok(FidelityValue::Exact((int(n + 1) + beta) / int(n + 2)))
                }
                CloneCount::Finite(m) => Err(domain(format!("universal cloning needs M ≥ N, got {n}→{m}"))),
            }
        }
        FidelityKind::Estimation => {
            if n == 0 {
                return Err(domain("estimation needs N ≥ 1"));
            }
            Ok(FidelityValue::Exact(int(n + 1) / int(n + 2)))
        }
        FidelityKind::PhaseEstimation => {
            if n != 1 {
                return Err(domain("phase estimation is tabulated for N = 1 only"));
            }
            Ok(FidelityValue::Exact(ratio(3, 4)))
        }
    }
}
