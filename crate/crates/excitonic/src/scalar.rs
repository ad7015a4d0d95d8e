//! Scalar abstraction and physical constants.
//!
//! Every numerical routine in this crate is generic over [`Scalar`], which is
//! implemented for `f32` and `f64`. The contractual tolerances below are
//! stated for `f64`; for other widths they are scaled by the ratio of machine
//! epsilons so the checks keep the same meaning relative to the precision.

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};
use std::fmt::{Debug, Display};

/// Floating-point scalar the toolkit is generic over.
pub trait Scalar:
    Float + FloatConst + NumAssign + Debug + Display + Send + Sync + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Reduced Planck constant in eV·fs.
///
/// Internally ħ = 1: energies are in eV and times in eV⁻¹. This single
/// constant converts internal times to femtoseconds at the I/O boundary.
pub const HBAR_EV_FS: f64 = 0.6582119569;

/// Relative Hermiticity tolerance: ‖M − M†‖_F ≤ tol · ‖M‖_F.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Unitarity tolerance per unit of dimension: ‖U†U − I‖_F ≤ tol · dim.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Convert an `f64` literal into `T`.
pub(crate) fn lit<T: Scalar>(x: f64) -> T {
    T::from(x).expect("f64 literal must be representable in the scalar type")
}

/// Complex literal shorthand.
pub(crate) fn c<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(lit(re), lit(im))
}

/// A contractual tolerance, stated for `f64`, scaled to the precision of `T`.
pub(crate) fn spec_tol<T: Scalar>(f64_tol: f64) -> T {
    let ratio = T::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
    lit(f64_tol * ratio)
}

/// Wrap an angle into (−π, π].
pub fn wrap_angle<T: Scalar>(a: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut r = a % two_pi;
    if r > T::PI() {
        r -= two_pi;
    }
    if r <= -T::PI() {
        r += two_pi;
    }
    r
}

/// Signed distance between two angles modulo 2π, in (−π, π].
pub fn angle_diff<T: Scalar>(a: T, b: T) -> T {
    wrap_angle(a - b)
}
