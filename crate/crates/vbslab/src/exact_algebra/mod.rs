//! Exact arithmetic: half-integers, big rationals, signed square roots of
//! rationals, Clebsch-Gordan and 3j symbols, and the Legendre coefficients
//! `λ(l, M)`. Nothing here touches floating point except explicit `to_f64`
//! conversions.

mod angular;
mod halfint;
mod surd;

pub use angular::{clebsch_gordan, factorial, lambda_coeff, threej, threej_000, threej_orthogonality_check, CgTable};
pub use halfint::HalfInt;
pub use surd::{rational_sqrt, SignedSqrtRational, SurdSum};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Render as `"p/q"`, always with an explicit denominator.
pub fn rational_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Option<ExactRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (d != BigInt::from(0)).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}
