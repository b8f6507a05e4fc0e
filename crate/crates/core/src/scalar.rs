//! Floating-point scalar abstraction.
//!
//! Every numerical routine in the crate is written against [`Real`], so the
//! same code runs in `f32` and `f64`. Fixed tolerances quoted for double
//! precision are widened to a small multiple of machine epsilon when the
//! scalar type cannot resolve them.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts an index or count.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Converts a signed index.
    #[inline]
    fn from_index(n: i64) -> Self {
        Self::from_i64(n).expect("index representable in scalar type")
    }

    /// `max(tol, 64 eps)`: an absolute tolerance stated for `f64`, floored at
    /// what the scalar type can represent.
    #[inline]
    fn tol(tol: f64) -> Self {
        Self::lit(tol).max(Self::epsilon() * Self::lit(64.0))
    }

    #[inline]
    fn two_pi() -> Self {
        Self::TAU()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// True when both parts are finite.
#[inline]
pub fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Neumaier-compensated sum. Grid quadratures add thousands of nearly equal
/// terms, and plain accumulation loses several digits.
pub fn compensated_sum<T: Real>(terms: impl IntoIterator<Item = T>) -> T {
    let (mut sum, mut carry) = (T::zero(), T::zero());
    for x in terms {
        let t = sum + x;
        carry = carry + if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
        sum = t;
    }
    sum + carry
}

/// [`compensated_sum`] on real and imaginary parts.
pub fn compensated_sum_complex<T: Real>(terms: impl IntoIterator<Item = Complex<T>>) -> Complex<T> {
    let terms: Vec<Complex<T>> = terms.into_iter().collect();
    Complex::new(compensated_sum(terms.iter().map(|z| z.re)), compensated_sum(terms.iter().map(|z| z.im)))
}

/// `exp(2 pi i k / m)` with octant reduction, so quarter and eighth roots
/// of unity are symmetric to the last bit.
pub fn root_of_unity<T: Real>(k: usize, m: usize) -> Complex<T> {
    debug_assert!(m > 0);
    let k = k % m;
    // Work in units of 1/(8m) of a full turn.
    let eighth = 8 * k;
    let octant = eighth / m;
    let rem = eighth % m;
    // angle within the octant, in [0, pi/4)
    let frac = T::from_count(rem) / T::from_count(m);
    let quarter_pi = T::FRAC_PI_4();
    let (s, c) = if octant.is_multiple_of(2) {
        (frac * quarter_pi).sin_cos()
    } else {
        // Reflect so the reduced angle stays small.
        let (s, c) = ((T::one() - frac) * quarter_pi).sin_cos();
        (c, s)
    };
    match octant {
        0 | 1 => Complex::new(c, s),
        2 | 3 => Complex::new(-s, c),
        4 | 5 => Complex::new(-c, -s),
        _ => Complex::new(s, -c),
    }
}
