use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cg::{cg, factorial};
use super::exact::{ratio, SignedSqrtRational};
use super::halfint::HalfInt;
use crate::{Error, Result};

fn check_index(p: usize, k: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::Domain("P must be at least 1".into()));
    }
    if k + 1 > p {
        return Err(Error::CoefficientIndex { k, max: p - 1 });
    }
    Ok(())
}

fn alternating(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

fn to_rational(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Amplitude of `|{(P−k)φ; kφ⊥}⟩_C ⊗ |{kφ; (P−1−k)φ⊥}⟩_AC` in the output
/// of the 1→P universal cloner:
/// `(−1)^k √(2/(P+1)) √((P−1)!(P−k)! / (P!(P−1−k)!))`.
pub fn b_coef(p: usize, k: usize) -> Result<SignedSqrtRational> {
    check_index(p, k)?;
    let pp = p as u64;
    let kk = k as u64;
    let num = big(2) * factorial(pp - 1) * factorial(pp - kk);
    let den = big(p + 1) * factorial(pp) * factorial(pp - 1 - kk);
    SignedSqrtRational::new(alternating(k), to_rational(num, den))
}

/// Amplitude of the coupled state `|P/2, (P−1)/2; (2P−1)/2, (2P−1)/2 − 2k⟩`
/// after the final symmetrization, closed form:
/// `(−1)^k √(2/(P+1)) C(P−1,k) C(2P−1,2k)^{−1/2}`.
pub fn d_coef(p: usize, k: usize) -> Result<SignedSqrtRational> {
    check_index(p, k)?;
    let c = binomial(big(p - 1), big(k));
    let num = big(2) * &c * &c;
    let den = big(p + 1) * binomial(big(2 * p - 1), big(2 * k));
    SignedSqrtRational::new(alternating(k), to_rational(num, den))
}

/// The same amplitude as [`d_coef`], computed as `b_k` times the coupling
/// coefficient onto the stretched total angular momentum.
pub fn d_coef_via_cg(p: usize, k: usize) -> Result<SignedSqrtRational> {
    let b = b_coef(p, k)?;
    let (p, k) = (p as i64, k as i64);
    let coupling = cg(
        HalfInt::from_twice(p),
        HalfInt::from_twice(p - 1),
        HalfInt::from_twice(p - 2 * k),
        HalfInt::from_twice(p - 1 - 2 * k),
        HalfInt::from_twice(2 * p - 1),
        HalfInt::from_twice(2 * p - 1 - 4 * k),
    )?;
    Ok(&b * &coupling)
}

/// Sums over `T_k = C(P−1,k)² / C(2P−1,2k)`, k = 0..P−1, as integer
/// fractions over a common denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct CombinatorialSums {
    /// `D·Σ T_k`
    pub plain: BigUint,
    /// `D·Σ (2P−1−2k)·T_k`
    pub weighted: BigUint,
    /// Common denominator `D`.
    pub denominator: BigUint,
}

/// Evaluates both sums by nested (Horner) accumulation of the term ratio
/// `T_{k+1}/T_k = (P−1−k)(2k+1) / ((k+1)(2P−1−2k))`, so every step is a
/// multiplication by a machine integer.
pub fn combinatorial_sums(p: usize) -> Result<CombinatorialSums> {
    if p == 0 {
        return Err(Error::Domain("P must be at least 1".into()));
    }
    let p = p as u64;
    let m = 2 * p - 1;
    let weight = |k: u64| m - 2 * k;
    let mut plain = BigUint::one();
    let mut weighted = BigUint::from(weight(p - 1));
    let mut denominator = BigUint::one();
    for i in (0..p - 1).rev() {
        let n_i = (p - 1 - i) * (2 * i + 1);
        let d_i = (i + 1) * (m - 2 * i);
        let scaled_den = &denominator * d_i;
        plain = &scaled_den + &plain * n_i;
        weighted = &scaled_den * weight(i) + &weighted * n_i;
        denominator = scaled_den;
    }
    Ok(CombinatorialSums {
        plain,
        weighted,
        denominator,
    })
}

/// `Σ_k d_k²`, the squared norm of the symmetrized state (the success
/// probability of the final projection).
pub fn projection_norm_sq(p: usize) -> Result<BigRational> {
    let sums = combinatorial_sums(p)?;
    let lead = ratio(2, (p + 1) as i64);
    Ok(lead * to_rational(sums.plain, sums.denominator))
}

/// Weight of `|φ⟩` in the identical single-clone reduced state:
/// `Σ ((2P−1−2k)/(2P−1)) T_k / Σ T_k`.
pub fn gamma(p: usize) -> Result<BigRational> {
    let sums = combinatorial_sums(p)?;
    let m = BigUint::from(2 * p - 1);
    Ok(to_rational(sums.weighted, m * sums.plain))
}

/// `(1/2)(1 + (M+1)/(2M))` with `M = 2P − 1`.
pub fn gamma_closed_form(p: usize) -> Result<BigRational> {
    if p == 0 {
        return Err(Error::Domain("P must be at least 1".into()));
    }
    let m = (2 * p - 1) as i64;
    Ok(ratio(3 * m + 1, 4 * m))
}

/// `Σ_k b_k²`.
pub fn b_norm_sq(p: usize) -> Result<BigRational> {
    (0..p).try_fold(BigRational::zero(), |acc, k| Ok(acc + b_coef(p, k)?.square()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ssr(sign: i8, n: i64, d: i64) -> SignedSqrtRational {
        SignedSqrtRational::new(sign, ratio(n, d)).unwrap()
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_coef(2, 0).unwrap(), ssr(1, 2, 3));
        assert_eq!(b_coef(2, 1).unwrap(), ssr(-1, 1, 3));
        assert_eq!(b_coef(1, 0).unwrap(), SignedSqrtRational::one());
        assert!(matches!(b_coef(2, 2), Err(Error::CoefficientIndex { k: 2, max: 1 })));
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_coef(2, 0).unwrap(), ssr(1, 2, 3));
        assert_eq!(d_coef(2, 1).unwrap(), ssr(-1, 2, 9));
        assert_eq!(d_coef_via_cg(2, 1).unwrap(), ssr(-1, 2, 9));
        assert!(d_coef(3, 3).is_err());
    }

    #[test]
    fn projection_norms() {
        assert_eq!(projection_norm_sq(1).unwrap(), ratio(1, 1));
        assert_eq!(projection_norm_sq(2).unwrap(), ratio(8, 9));
    }

    #[test]
    fn gamma_small() {
        assert_eq!(gamma(1).unwrap(), ratio(1, 1));
        assert_eq!(gamma(2).unwrap(), ratio(5, 6));
        assert_eq!(gamma(3).unwrap(), ratio(4, 5));
        assert_eq!(gamma_closed_form(3).unwrap(), ratio(4, 5));
    }

    #[test]
    fn horner_sums_match_direct_rational_sums() {
        for p in 1..=30usize {
            let mut plain = BigRational::zero();
            let mut weighted = BigRational::zero();
            for k in 0..p {
                let c = binomial(big(p - 1), big(k));
                let t = to_rational(&c * &c, binomial(big(2 * p - 1), big(2 * k)));
                weighted += &t * BigRational::from_integer(BigInt::from(2 * p - 1 - 2 * k));
                plain += t;
            }
            let s = combinatorial_sums(p).unwrap();
            let d = s.denominator.clone();
            assert_eq!(to_rational(s.plain, d.clone()), plain, "P = {p}");
            assert_eq!(to_rational(s.weighted, d), weighted, "P = {p}");
        }
    }
}
