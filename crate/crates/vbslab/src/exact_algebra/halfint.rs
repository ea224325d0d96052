use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::VbsError;

/// A spin value or projection, stored as twice its value so that 3/2 is `3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    twice_value: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice_value: 0 };
    pub const HALF: HalfInt = HalfInt { twice_value: 1 };
    pub const ONE: HalfInt = HalfInt { twice_value: 2 };

    pub const fn from_twice(twice_value: i64) -> Self {
        HalfInt { twice_value }
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt { twice_value: 2 * value }
    }

    pub const fn twice(self) -> i64 {
        self.twice_value
    }

    pub const fn is_integer(self) -> bool {
        self.twice_value % 2 == 0
    }

    /// The integer value, if there is one.
    pub fn as_int(self) -> Option<i64> {
        self.is_integer().then_some(self.twice_value / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice_value as f64 / 2.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice_value), BigInt::from(2))
    }

    /// Local Hilbert space dimension `2S+1`. Panics on negative spins.
    pub fn multiplet_dim(self) -> usize {
        assert!(self.twice_value >= 0, "negative spin {self}");
        self.twice_value as usize + 1
    }

    /// `S(S+1)` as an exact rational.
    pub fn casimir(self) -> BigRational {
        let t = BigInt::from(self.twice_value);
        BigRational::new(&t * (&t + 2), BigInt::from(4))
    }

    pub fn abs(self) -> Self {
        HalfInt::from_twice(self.twice_value.abs())
    }

    /// Projections `S, S-1, ..., -S`, the basis order used everywhere in the crate.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        let t = self.twice_value;
        (0..=t.max(-1)).map(move |k| HalfInt::from_twice(t - 2 * k))
    }

    /// `j1 + j2 + j3` integral and triangle inequality satisfied.
    pub fn triangle(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> bool {
        let (a, b, c) = (j1.twice_value, j2.twice_value, j3.twice_value);
        a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && c <= a + b && c >= (a - b).abs()
    }
}

impl From<i64> for HalfInt {
    fn from(v: i64) -> Self {
        HalfInt::from_int(v)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice_value + rhs.twice_value)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice_value - rhs.twice_value)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice_value)
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice_value.cmp(&other.twice_value)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_value / 2)
        } else {
            write!(f, "{}/2", self.twice_value)
        }
    }
}

/// Accepts `"3"`, `"-1"`, `"3/2"`, `"1.5"`.
impl FromStr for HalfInt {
    type Err = VbsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || VbsError::Parse(format!("not a half-integer: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt::from_twice(num)),
                _ => Err(bad()),
            }
        } else if let Some((int, frac)) = s.split_once('.') {
            let neg = int.starts_with('-');
            let int: i64 = if int == "-" || int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let half = match frac.trim_end_matches('0') {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let twice = 2 * int.abs() + half;
            Ok(HalfInt::from_twice(if neg { -twice } else { twice }))
        } else {
            s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad())
        }
    }
}
