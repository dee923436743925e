use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact value `s·√(p/q)` with `s ∈ {−1, 0, +1}` and `p/q` a reduced
/// nonnegative rational.
///
/// Products and squares stay in the type; sums only when the radicands differ
/// by a perfect-square factor, see [`SignedSqrtRational::checked_add`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedSqrtRational {
    sign: i8,
    radicand: BigRational,
}

impl SignedSqrtRational {
    pub fn zero() -> Self {
        SignedSqrtRational {
            sign: 0,
            radicand: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        SignedSqrtRational {
            sign: 1,
            radicand: BigRational::one(),
        }
    }

    /// `sign·√radicand`. A zero radicand or zero sign gives zero.
    pub fn new(sign: i8, radicand: BigRational) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::Domain("negative radicand".into()));
        }
        if sign == 0 || radicand.is_zero() {
            return Ok(Self::zero());
        }
        Ok(SignedSqrtRational {
            sign: sign.signum(),
            radicand,
        })
    }

    /// The value whose signed square is `r`: `sign(r)·√|r|`.
    pub fn from_signed_square(r: BigRational) -> Self {
        let sign = match r.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        if sign == 0 {
            return Self::zero();
        }
        SignedSqrtRational {
            sign,
            radicand: r.abs(),
        }
    }

    /// Exact rational `c`, stored as `sign(c)·√(c²)`.
    pub fn from_rational(c: &BigRational) -> Self {
        let signed = c * c.abs();
        Self::from_signed_square(signed)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn radicand_num(&self) -> BigUint {
        self.radicand.numer().magnitude().clone()
    }

    pub fn radicand_den(&self) -> BigUint {
        self.radicand.denom().magnitude().clone()
    }

    /// The exact square.
    pub fn square(&self) -> BigRational {
        self.radicand.clone()
    }

    /// `sign·value²`.
    pub fn signed_square(&self) -> BigRational {
        match self.sign {
            0 => BigRational::zero(),
            s if s < 0 => -self.radicand.clone(),
            _ => self.radicand.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let r = ratio_to_f64(&self.radicand);
        f64::from(self.sign) * r.sqrt()
    }

    /// Exact sum, defined only when `self/other` is rational; otherwise
    /// reports [`Error::Incommensurable`].
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        // √a + √b = (1 + √(b/a))·√a when b/a is a square of a rational
        let ratio = &other.radicand / &self.radicand;
        let root = rational_sqrt(&ratio).ok_or(Error::Incommensurable)?;
        let coeff = BigRational::from_integer(BigInt::from(self.sign))
            + BigRational::from_integer(BigInt::from(other.sign)) * root;
        let signed = &coeff * coeff.abs() * &self.radicand;
        Ok(Self::from_signed_square(signed))
    }
}

impl Mul for &SignedSqrtRational {
    type Output = SignedSqrtRational;

    fn mul(self, rhs: &SignedSqrtRational) -> SignedSqrtRational {
        if self.is_zero() || rhs.is_zero() {
            return SignedSqrtRational::zero();
        }
        SignedSqrtRational {
            sign: self.sign * rhs.sign,
            radicand: &self.radicand * &rhs.radicand,
        }
    }
}

impl Mul for SignedSqrtRational {
    type Output = SignedSqrtRational;

    fn mul(self, rhs: SignedSqrtRational) -> SignedSqrtRational {
        &self * &rhs
    }
}

impl Neg for SignedSqrtRational {
    type Output = SignedSqrtRational;

    fn neg(mut self) -> SignedSqrtRational {
        self.sign = -self.sign;
        self
    }
}

impl PartialOrd for SignedSqrtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedSqrtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signed_square().cmp(&other.signed_square())
    }
}

impl fmt::Display for SignedSqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => f.write_str("0"),
            s => {
                let sign = if s < 0 { "-" } else { "+" };
                if self.radicand.is_integer() {
                    write!(f, "{sign}√{}", self.radicand.numer())
                } else {
                    write!(f, "{sign}√({}/{})", self.radicand.numer(), self.radicand.denom())
                }
            }
        }
    }
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

/// Float approximation of a (possibly huge) rational, robust to operands
/// beyond the f64 range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() && (x != 0.0 || r.is_zero()) {
            return x;
        }
    }
    // scale both sides down to 64 significant bits
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let shift_n = num.bits().saturating_sub(64);
    let shift_d = den.bits().saturating_sub(64);
    let n = (num >> shift_n).to_f64().unwrap_or(0.0);
    let d = (den >> shift_d).to_f64().unwrap_or(1.0);
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * n / d * 2f64.powi(shift_n as i32 - shift_d as i32)
}

pub(crate) fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}
