//! Exact entanglement spectra of valence-bond-solid (VBS) ground states.
//!
//! The crate has two halves that are meant to be checked against each other:
//!
//! * closed forms evaluated in exact rational arithmetic
//!   ([`analytic_spectra`], [`sun_model`]);
//! * a brute-force pipeline that builds the VBS state vector from Schwinger
//!   bosons, traces out the environment and diagonalizes
//!   ([`vbs_constructor`], [`density_oracle`]).
//!
//! Dense linear algebra is generic over the real scalar `T` (`f32`/`f64`
//! through [`Real`]); exact routes use [`ExactRational`]. Local bases are
//! always ordered `m = S, S-1, ..., -S`, and the first site is the most
//! significant index of a product state.

pub mod analytic_spectra;
pub mod density_oracle;
pub mod error;
pub mod exact_algebra;
pub mod graph_model;
pub mod limits;
pub mod spin_operators;
pub mod sun_model;
pub mod vbs_constructor;

pub use error::{Result, VbsError};
pub use exact_algebra::{ExactRational, HalfInt, SignedSqrtRational};
pub use limits::Limits;

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;

/// Real scalar for the floating-point pipeline.
pub trait Real: RealField + Copy + num_traits::ToPrimitive {}
impl<T: RealField + Copy + num_traits::ToPrimitive> Real for T {}

/// Dense complex matrix over `T`.
pub type CMatrix<T> = DMatrix<Complex<T>>;
/// Dense complex vector over `T`.
pub type CVector<T> = DVector<Complex<T>>;

pub type CMatrix64 = CMatrix<f64>;
pub type CVector64 = CVector<f64>;
pub type StateVector64 = vbs_constructor::StateVector<f64>;
pub type DensityMatrix64 = density_oracle::DensityMatrix<f64>;
pub type Spectrum64 = density_oracle::Spectrum<f64>;
pub type SpinMatrixSet64 = spin_operators::SpinMatrixSet<f64>;

pub(crate) fn real<T: Real>(x: f64) -> T {
    nalgebra::convert(x)
}

pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    num_traits::ToPrimitive::to_f64(&x).unwrap_or(f64::NAN)
}
