use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = int_sqrt(r.numer())?;
    let d = int_sqrt(r.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let s = num_integer::Roots::sqrt(n);
    (&s * &s == *n).then_some(s)
}

/// `sign * sqrt(square)` with `square` an exact rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedSqrtRational {
    sign: i8,
    square: BigRational,
}

impl SignedSqrtRational {
    /// Panics if `sign` is not in {-1, 0, 1}, if `square < 0`, or if exactly
    /// one of the two is zero.
    pub fn new(sign: i8, square: BigRational) -> Self {
        assert!((-1..=1).contains(&sign), "sign must be -1, 0 or 1");
        assert!(!square.is_negative(), "square must be nonnegative");
        assert_eq!(sign == 0, square.is_zero(), "sign is zero iff square is zero");
        SignedSqrtRational { sign, square }
    }

    pub fn zero() -> Self {
        SignedSqrtRational {
            sign: 0,
            square: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        SignedSqrtRational {
            sign: 1,
            square: BigRational::one(),
        }
    }

    /// Nonnegative root of `square`.
    pub fn sqrt_of(square: BigRational) -> Self {
        let sign = if square.is_zero() { 0 } else { 1 };
        SignedSqrtRational::new(sign, square)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let sign = if r.is_zero() {
            0
        } else if r.is_positive() {
            1
        } else {
            -1
        };
        SignedSqrtRational { sign, square: r * r }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn square(&self) -> &BigRational {
        &self.square
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// The value as a rational, when the square root happens to be rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        let root = rational_sqrt(&self.square)?;
        Some(if self.sign < 0 { -root } else { root })
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.square.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Multiply by a rational factor.
    pub fn scale(&self, r: &BigRational) -> Self {
        self * &SignedSqrtRational::from_rational(r)
    }

    /// `None` on division by zero.
    pub fn checked_div(&self, rhs: &SignedSqrtRational) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        Some(SignedSqrtRational {
            sign: self.sign * rhs.sign,
            square: &self.square / &rhs.square,
        })
    }

    /// Sum of two surds. `None` when the radicands differ by a non-square
    /// factor, i.e. when the sum is not itself a signed root of a rational.
    pub fn checked_add(&self, rhs: &SignedSqrtRational) -> Option<Self> {
        if self.is_zero() {
            return Some(rhs.clone());
        }
        if rhs.is_zero() {
            return Some(self.clone());
        }
        // rhs = q * sqrt(self.square) with q rational
        let ratio = rational_sqrt(&(&rhs.square / &self.square))?;
        let coeff = BigRational::from_integer(BigInt::from(self.sign)) + ratio * BigInt::from(rhs.sign);
        let unit = SignedSqrtRational::sqrt_of(self.square.clone());
        Some(unit.scale(&coeff))
    }
}

impl Mul for &SignedSqrtRational {
    type Output = SignedSqrtRational;
    fn mul(self, rhs: &SignedSqrtRational) -> SignedSqrtRational {
        SignedSqrtRational {
            sign: self.sign * rhs.sign,
            square: &self.square * &rhs.square,
        }
    }
}

impl Neg for SignedSqrtRational {
    type Output = SignedSqrtRational;
    fn neg(self) -> SignedSqrtRational {
        SignedSqrtRational {
            sign: -self.sign,
            square: self.square,
        }
    }
}

impl fmt::Display for SignedSqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(
                f,
                "{}sqrt({})",
                if s < 0 { "-" } else { "" },
                super::rational_string(&self.square)
            ),
        }
    }
}

/// A finite sum of surds kept in canonical form: no two terms have radicands
/// whose ratio is a rational square. Zero test and rational extraction are
/// therefore exact.
#[derive(Clone, Debug, Default)]
pub struct SurdSum {
    terms: Vec<SignedSqrtRational>,
}

impl SurdSum {
    pub fn new() -> Self {
        SurdSum::default()
    }

    pub fn add(&mut self, term: &SignedSqrtRational) {
        if term.is_zero() {
            return;
        }
        for i in 0..self.terms.len() {
            if let Some(sum) = self.terms[i].checked_add(term) {
                if sum.is_zero() {
                    self.terms.swap_remove(i);
                } else {
                    self.terms[i] = sum;
                }
                return;
            }
        }
        self.terms.push(term.clone());
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [t] => t.to_rational(),
            _ => None,
        }
    }

    /// The sum as a single surd, if all terms collapsed into one class.
    pub fn to_surd(&self) -> Option<SignedSqrtRational> {
        match self.terms.as_slice() {
            [] => Some(SignedSqrtRational::zero()),
            [t] => Some(t.clone()),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(SignedSqrtRational::to_f64).sum()
    }
}
