//! Inner products on the circle, Parseval sums and shift operators.
//!
//! Square-summable sequences are represented by finitely supported
//! [`LaurentCoefficients`], so every identity here holds exactly at the
//! coefficient level and to roundoff at the quadrature level.

mod operator;

pub use operator::{
    apply_polynomial, operator_norm, random_contraction, random_polynomial, refined_sup_modulus, sup_modulus_on_disk,
    von_neumann_check, ComplexMatrix, ComplexPolynomial, ContractionOperator, VonNeumannReport,
    NORM_MAX_ITERATIONS, NORM_REL_TOL, VON_NEUMANN_SLACK,
};

use num_complex::Complex;
use num_traits::Zero;

use crate::boundary::{grid_point, BoundarySamples};
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum_complex, Real};
use crate::series::LaurentCoefficients;

/// `(1/m) sum_k s1(z_k) conj(s2(z_k))`.
pub fn circle_inner_product<T: Real>(s1: &BoundarySamples<T>, s2: &BoundarySamples<T>) -> Result<Complex<T>> {
    if s1.m() != s2.m() {
        return Err(Error::GridMismatch(s1.m(), s2.m()));
    }
    let sum = compensated_sum_complex(s1.values().iter().zip(s2.values()).map(|(a, b)| *a * b.conj()));
    Ok(sum / T::from_count(s1.m()))
}

/// `sum_n |a(n)|^2 r^(2|n|)` for `r` in `(0, 1]`.
pub fn parseval_sum<T: Real>(c: &LaurentCoefficients<T>, r: T) -> Result<T> {
    if !(r > T::zero() && r <= T::one()) {
        return Err(Error::InvalidRadius(r.to_f64().unwrap_or(f64::NAN)));
    }
    let r2 = r * r;
    Ok(c.iter()
        .fold(T::zero(), |acc, (n, a)| acc + a.norm_sqr() * r2.powi(n.unsigned_abs() as i32)))
}

/// `sum_n a(n) conj(b(n))`.
pub fn sequence_inner_product<T: Real>(a: &LaurentCoefficients<T>, b: &LaurentCoefficients<T>) -> Complex<T> {
    let lo = a.n_min().max(b.n_min());
    let hi = a.n_max().min(b.n_max());
    (lo..=hi).fold(Complex::zero(), |acc, n| acc + a.get(n) * b.get(n).conj())
}

/// Forward shift on two-sided sequences, `n -> a(n - 1)`.
///
/// The window moves to `[n_min + 1, n_max + 1]`, padded with a zero at index
/// 0 when needed to keep `n_min <= 0`.
pub fn shift_two_sided<T: Real>(c: &LaurentCoefficients<T>) -> LaurentCoefficients<T> {
    let n_min = (c.n_min() + 1).min(0);
    let pad = (c.n_min() + 1 - n_min) as usize;
    let mut coeffs = vec![Complex::zero(); pad];
    coeffs.extend_from_slice(c.coeffs());
    LaurentCoefficients::new(n_min, coeffs).expect("shifted window stays valid")
}

/// Forward shift on one-sided sequences: `a(n - 1)` for `n >= 1`, zero at 0.
///
/// Negative indices are permitted in the input window only if they hold zeros.
pub fn shift_one_sided<T: Real>(c: &LaurentCoefficients<T>) -> Result<LaurentCoefficients<T>> {
    if let Some((n, _)) = c.iter().find(|(n, a)| *n < 0 && !a.is_zero()) {
        return Err(Error::NegativeSupport(n));
    }
    let mut coeffs = Vec::with_capacity(c.n_max() as usize + 2);
    coeffs.push(Complex::zero());
    coeffs.extend((0..=c.n_max()).map(|n| c.get(n)));
    LaurentCoefficients::new(0, coeffs)
}

/// Largest discrepancy on the `m`-point grid between the trace of
/// `shift_two_sided(c)` and `z` times the trace of `c`.
pub fn multiplication_correspondence_check<T: Real>(c: &LaurentCoefficients<T>, m: usize) -> Result<T> {
    let min = 2 * (c.n_min().unsigned_abs() as usize + c.n_max() as usize + 2) + 1;
    if m < min {
        return Err(Error::GridTooSmall { m, min });
    }
    let shifted = shift_two_sided(c);
    Ok((0..m)
        .map(|k| {
            let z = grid_point::<T>(k, m);
            (shifted.eval_on_circle(z) - z.value() * c.eval_on_circle(z)).norm()
        })
        .fold(T::zero(), T::max))
}
