use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exact::SignedSqrtRational;
use super::halfint::{check_pair, triangle, HalfInt};
use crate::Result;

pub(crate) fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn fact_int(n: i64) -> BigInt {
    debug_assert!(n >= 0);
    BigInt::from(factorial(n as u64))
}

/// Clebsch–Gordan coefficient `⟨j1 m1; j2 m2 | J M⟩` in the Condon–Shortley
/// convention, from the Racah single-sum formula in exact arithmetic.
///
/// Inputs violating the selection rules (`m1 + m2 ≠ M`, triangle rule) give
/// zero; malformed pairs (`j < 0`, `|m| > j`, `j − m` fractional) are errors.
pub fn cg(
    j1: HalfInt,
    j2: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<SignedSqrtRational> {
    check_pair(j1, m1)?;
    check_pair(j2, m2)?;
    check_pair(j, m)?;
    if m1.twice() + m2.twice() != m.twice() || !triangle(j1, j2, j) {
        return Ok(SignedSqrtRational::zero());
    }
    let (tj1, tj2, tj, tm1, tm2, tm) = (
        j1.twice(),
        j2.twice(),
        j.twice(),
        m1.twice(),
        m2.twice(),
        m.twice(),
    );
    // all of these are integers once the checks above hold
    let h = |x: i64| x / 2;
    let a = h(tj1 + tj2 - tj);
    let b = h(tj1 - tm1);
    let c = h(tj2 + tm2);
    let d = h(tj - tj2 + tm1);
    let e = h(tj - tj1 - tm2);

    let triangle_part = BigRational::new(
        BigInt::from(tj + 1)
            * fact_int(h(tj + tj1 - tj2))
            * fact_int(h(tj - tj1 + tj2))
            * fact_int(a),
        fact_int(h(tj1 + tj2 + tj) + 1),
    );
    let projection_part = fact_int(h(tj + tm))
        * fact_int(h(tj - tm))
        * fact_int(h(tj1 - tm1))
        * fact_int(h(tj1 + tm1))
        * fact_int(h(tj2 - tm2))
        * fact_int(h(tj2 + tm2));
    let prefactor = triangle_part * BigRational::from_integer(projection_part);

    let k_min = 0.max(-d).max(-e);
    let k_max = a.min(b).min(c);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let den = fact_int(k)
            * fact_int(a - k)
            * fact_int(b - k)
            * fact_int(c - k)
            * fact_int(d + k)
            * fact_int(e + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    // value = sum·√prefactor
    let signed = &sum * num_traits::Signed::abs(&sum) * prefactor;
    Ok(SignedSqrtRational::from_signed_square(signed))
}
