//! Clebsch–Gordan oracle by ladder-operator construction, exact rationals.
//!
//! Works in the unnormalized basis `|j, m) = (J₋)^{j−m}|j, j⟩`, where
//! `J₋|m) = |m−1)`, `J₊|m) = (j−m)(j+m+1)|m+1)` and
//! `(j, m | j, m) = (2j)!(j−m)!/(j+m)!`. Everything stays rational; the
//! square root is only taken implicitly by returning signed squares.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn fact(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(j, m | j, m)` with `j`, `m` given doubled.
fn norm_sq(tj: i64, tm: i64) -> BigRational {
    let (jpm, jmm) = ((tj + tm) / 2, (tj - tm) / 2);
    BigRational::new(fact(tj) * fact(jmm), fact(jpm))
}

fn binom(n: i64, k: i64) -> BigInt {
    fact(n) / (fact(k) * fact(n - k))
}

/// Signed squares `sign(c)·c²` of `⟨j1 m1; j2 M−m1 | J M⟩` for every valid
/// `(2m1, 2M)`, all arguments doubled. `J` must satisfy the triangle rule.
pub fn cg_table(tj1: i64, tj2: i64, tj: i64) -> BTreeMap<(i64, i64), BigRational> {
    // highest weight: coefficients a(m1) of |m1)|J−m1), annihilated by J₊
    let lo = (-tj1).max(tj - tj2);
    let hi = tj1.min(tj + tj2);
    let mut a: BTreeMap<i64, BigRational> = BTreeMap::new();
    a.insert(lo, BigRational::one());
    let mut tm1 = lo;
    while tm1 < hi {
        // a(m1+1)·(j2−m2)(j2+m2+1) = −a(m1)·(j1−m1)(j1+m1+1), m2 = J−m1−1
        let tm2 = tj - tm1 - 2;
        let up1 = rat((tj1 - tm1) / 2) * rat((tj1 + tm1) / 2 + 1);
        let up2 = rat((tj2 - tm2) / 2) * rat((tj2 + tm2) / 2 + 1);
        let next = -(&a[&tm1] * up1) / up2;
        a.insert(tm1 + 2, next);
        tm1 += 2;
    }
    // Condon–Shortley: positive coefficient at m1 = j1
    if a[&tj1].is_negative() {
        for v in a.values_mut() {
            *v = -v.clone();
        }
    }

    let mut table = BTreeMap::new();
    let mut tm = tj;
    while tm >= -tj {
        let steps = (tj - tm) / 2;
        // (J₁₋ + J₂₋)^steps applied to Σ a(m1)|m1)|J−m1)
        let mut coeffs: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&src, amp) in &a {
            for t in 0..=steps {
                let m1 = src - 2 * t;
                let m2 = (tj - src) - 2 * (steps - t);
                if m1 < -tj1 || m2 < -tj2 {
                    continue;
                }
                let c = amp * BigRational::from_integer(binom(steps, t));
                *coeffs.entry(m1).or_insert_with(BigRational::zero) += c;
            }
        }
        let weighted: BTreeMap<i64, BigRational> = coeffs
            .iter()
            .map(|(&m1, c)| (m1, c * c * norm_sq(tj1, m1) * norm_sq(tj2, tm - m1)))
            .collect();
        let total: BigRational = weighted.values().cloned().fold(BigRational::zero(), |x, y| x + y);
        for (&m1, w) in &weighted {
            let sq = w / &total;
            let signed = if coeffs[&m1].is_negative() { -sq } else { sq };
            table.insert((m1, tm), signed);
        }
        tm -= 2;
    }
    table
}
