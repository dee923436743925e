use std::fmt;

use crate::{Error, Result};

/// Integer or half-integer quantum number, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Checks `j ≥ 0`, `|m| ≤ j` and `j − m` integral.
pub fn check_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice < 0 {
        return Err(Error::InvalidAngularMomentum(format!("negative j = {j}")));
    }
    if m.twice.abs() > j.twice {
        return Err(Error::InvalidAngularMomentum(format!("|m| = |{m}| exceeds j = {j}")));
    }
    if (j.twice - m.twice) % 2 != 0 {
        return Err(Error::InvalidAngularMomentum(format!("j − m = {j} − {m} is not an integer")));
    }
    Ok(())
}

/// Triangle rule `|j1 − j2| ≤ j ≤ j1 + j2` with `j1 + j2 + j` integral.
pub fn triangle(j1: HalfInt, j2: HalfInt, j: HalfInt) -> bool {
    let (a, b, c) = (j1.twice, j2.twice, j.twice);
    c >= (a - b).abs() && c <= a + b && (a + b + c) % 2 == 0
}
