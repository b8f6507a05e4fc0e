//! Boundary data on the unit circle and its harmonic extension into the disk.
//!
//! Quadrature is the uniform trapezoidal rule on the `m` roots of unity
//! `z_k = exp(2 pi i k / m)`, which integrates trigonometric polynomials of
//! degree `< m` exactly. Arclength integrals carry the `2 pi` total length
//! of the circle; averages divide by `m`.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, compensated_sum_complex, is_finite, root_of_unity, Real};
use crate::series::{CirclePoint, DiskPoint, LaurentCoefficients};

/// The `m`-point circle grid, `k` ascending from 0.
pub fn circle_grid<T: Real>(m: usize) -> Result<Vec<CirclePoint<T>>> {
    if m == 0 {
        return Err(Error::GridTooSmall { m, min: 1 });
    }
    Ok((0..m).map(|k| grid_point(k, m)).collect())
}

#[inline]
pub(crate) fn grid_point<T: Real>(k: usize, m: usize) -> CirclePoint<T> {
    let z = root_of_unity::<T>(k, m);
    CirclePoint::new_unchecked(z / z.norm())
}

/// Values `h(z_k)` at the `m` equispaced circle points.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySamples<T: Real> {
    values: Vec<Complex<T>>,
}

impl<T: Real> BoundarySamples<T> {
    pub fn new(values: Vec<Complex<T>>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::GridTooSmall { m: 0, min: 1 });
        }
        if let Some(k) = values.iter().position(|v| !is_finite(*v)) {
            return Err(Error::NonFinite(format!("boundary sample k = {k}")));
        }
        Ok(Self { values })
    }

    /// Samples an arbitrary function of the circle point.
    pub fn from_fn<F>(m: usize, f: F) -> Result<Self>
    where
        F: Fn(CirclePoint<T>) -> Complex<T>,
    {
        let grid = circle_grid::<T>(m)?;
        Self::new(grid.into_iter().map(f).collect())
    }

    /// Boundary trace of a series on the `m`-point grid.
    pub fn from_series(c: &LaurentCoefficients<T>, m: usize) -> Result<Self> {
        Self::from_fn(m, |z| c.eval_on_circle(z))
    }

    /// Samples of `h(r z_k)`, the series restricted to the circle of radius `r`.
    pub fn from_series_at_radius(c: &LaurentCoefficients<T>, r: T, m: usize) -> Result<Self> {
        check_radius_open(r)?;
        Self::from_fn(m, |z| c.eval_raw(z.value() * r))
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }
}

pub(crate) fn check_radius_open<T: Real>(r: T) -> Result<()> {
    if r > T::zero() && r < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidRadius(r.to_f64().unwrap_or(f64::NAN)))
    }
}

/// `b(n) = (1/m) sum_k s_k z_k^(-n)` for `n` in `[-n_max, n_max]`.
fn discrete_coefficients<T: Real>(s: &BoundarySamples<T>, n_max: usize) -> Result<Vec<Complex<T>>> {
    let m = s.m();
    if m <= 2 * n_max {
        return Err(Error::Aliasing { m, n_max });
    }
    let roots: Vec<Complex<T>> = (0..m).map(|k| grid_point::<T>(k, m).value()).collect();
    let inv_m = T::one() / T::from_count(m);
    let n_max = n_max as i64;
    Ok((-n_max..=n_max)
        .map(|n| {
            // z_k^(-n) = z_{(-n k) mod m}, read from the table to avoid drift.
            let step = (-n).rem_euclid(m as i64) as usize;
            let mut idx = 0usize;
            let mut acc = Complex::zero();
            for v in s.values() {
                acc = acc + *v * roots[idx];
                idx += step;
                if idx >= m {
                    idx -= m;
                }
            }
            acc * inv_m
        })
        .collect())
}

/// Trapezoidal coefficient extraction from boundary values.
///
/// Exact to roundoff when the samples come from a series supported in
/// `[-n_max, n_max]`; requires `m > 2 n_max`.
pub fn coefficients_from_boundary<T: Real>(
    s: &BoundarySamples<T>,
    n_max: usize,
) -> Result<LaurentCoefficients<T>> {
    let b = discrete_coefficients(s, n_max)?;
    LaurentCoefficients::new(-(n_max as i64), b)
}

/// Result of extracting coefficients from samples on a circle of radius `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialCoefficients<T: Real> {
    /// `b(n) = a(n) r^|n|`, the raw quadrature values.
    pub scaled: LaurentCoefficients<T>,
    /// `a(n) = b(n) / r^|n|`.
    pub coefficients: LaurentCoefficients<T>,
    /// Set when `r^n_max < 1e-12` and the division amplifies roundoff.
    pub ill_conditioned: bool,
}

/// Coefficients of `h` from samples of `h(r z_k)`.
pub fn coefficients_at_radius<T: Real>(
    s_r: &BoundarySamples<T>,
    r: T,
    n_max: usize,
) -> Result<RadialCoefficients<T>> {
    check_radius_open(r)?;
    let b = discrete_coefficients(s_r, n_max)?;
    let nm = n_max as i64;
    let a: Vec<_> = b
        .iter()
        .zip(-nm..=nm)
        .map(|(bn, n)| *bn / r.powi(n.unsigned_abs() as i32))
        .collect();
    let ill_conditioned = r.powi(n_max as i32) < T::lit(1e-12);
    Ok(RadialCoefficients {
        scaled: LaurentCoefficients::new(-nm, b)?,
        coefficients: LaurentCoefficients::new(-nm, a)?,
        ill_conditioned,
    })
}

/// Closed-form Poisson kernel `(1/2pi) (1 - |zeta|^2) / |z - zeta|^2`.
pub fn poisson_kernel<T: Real>(z: CirclePoint<T>, zeta: DiskPoint<T>) -> T {
    let zeta = zeta.value();
    let num = T::one() - zeta.norm_sqr();
    let den = (z.value() - zeta).norm_sqr();
    num / den / T::two_pi()
}

/// Truncated series form of the Poisson kernel,
/// `(1/2pi)(sum_{n=0}^{N} conj(z)^n zeta^n + sum_{n=1}^{N} z^n conj(zeta)^n)`.
///
/// The sum is real in exact arithmetic; an imaginary residue above `1e-12`
/// is reported as an error.
pub fn poisson_kernel_series<T: Real>(z: CirclePoint<T>, zeta: DiskPoint<T>, n_max: usize) -> Result<T> {
    let q = z.value().conj() * zeta.value();
    let qbar = z.value() * zeta.value().conj();
    let mut sum = Complex::new(T::one(), T::zero());
    let mut qp = sum;
    let mut qbp = sum;
    for _ in 1..=n_max {
        qp = qp * q;
        qbp = qbp * qbar;
        sum = sum + qp + qbp;
    }
    if sum.im.abs() > T::tol(1e-12) {
        return Err(Error::ImaginaryResidue(sum.im.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(sum.re / T::two_pi())
}

/// Value of the discrete Poisson integral at one interior point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extension<T: Real> {
    pub value: Complex<T>,
    /// `1 - |zeta| < 10 * 2pi / m`: the kernel is narrower than ten grid
    /// spacings and the quadrature may be inaccurate.
    pub under_resolved: bool,
}

/// Trapezoidal Poisson integral `sum_k h(z_k) P(z_k, zeta) (2pi/m)`.
pub fn poisson_extend<T: Real>(s: &BoundarySamples<T>, zeta: DiskPoint<T>) -> Extension<T> {
    let m = s.m();
    let weight = T::two_pi() / T::from_count(m);
    let acc = compensated_sum_complex(s.values().iter().enumerate().map(|(k, v)| *v * poisson_kernel(grid_point(k, m), zeta)));
    let gap = T::one() - zeta.value().norm();
    Extension {
        value: acc * weight,
        under_resolved: gap < T::lit(10.0) * weight,
    }
}

/// `sum_k P(z_k, zeta) (2pi/m)`, which approximates 1.
pub fn kernel_mass<T: Real>(zeta: DiskPoint<T>, m: usize) -> Result<T> {
    if m < 4 {
        return Err(Error::GridTooSmall { m, min: 4 });
    }
    let weight = T::two_pi() / T::from_count(m);
    let sum = compensated_sum((0..m).map(|k| poisson_kernel(grid_point(k, m), zeta)));
    Ok(sum * weight)
}

/// For each radius `r`, the largest kernel value `P(z, r w)` over grid points
/// `z` with `|z - w| >= rho`. Radii lie in `[0, 1)`.
pub fn kernel_decay_profile<T: Real>(w: CirclePoint<T>, rho: T, radii: &[T], m: usize) -> Result<Vec<T>> {
    if rho.is_nan() || rho <= T::zero() {
        return Err(Error::InvalidParameter(format!("rho must be positive, got {rho}")));
    }
    let far: Vec<CirclePoint<T>> = circle_grid::<T>(m)?
        .into_iter()
        .filter(|z| (z.value() - w.value()).norm() >= rho)
        .collect();
    if far.is_empty() {
        return Err(Error::EmptyConstraintSet { rho: rho.to_f64().unwrap_or(f64::NAN) });
    }
    radii
        .iter()
        .map(|&r| {
            if !(r >= T::zero() && r < T::one()) {
                return Err(Error::InvalidRadius(r.to_f64().unwrap_or(f64::NAN)));
            }
            let zeta = DiskPoint::new(w.value() * r)?;
            Ok(far.iter().map(|&z| poisson_kernel(z, zeta)).fold(T::zero(), T::max))
        })
        .collect()
}

/// Polynomial in `z` and `conj(z)`: terms `c z^j conj(z)^k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MixedPolynomial<T: Real> {
    terms: BTreeMap<(u32, u32), Complex<T>>,
}

impl<T: Real> MixedPolynomial<T> {
    pub fn new() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// Builds from `(j, k, c)` triples; repeated monomials accumulate.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, Complex<T>)>,
    {
        let mut p = Self::new();
        for (j, k, c) in terms {
            p.add_term(j, k, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, j: u32, k: u32, c: Complex<T>) -> Result<()> {
        if !is_finite(c) {
            return Err(Error::NonFinite(format!("coefficient of z^{j} zbar^{k}")));
        }
        let slot = self.terms.entry((j, k)).or_insert_with(Complex::zero);
        *slot = *slot + c;
        Ok(())
    }

    /// `((j, k), c)` in lexicographic monomial order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Complex<T>)> + '_ {
        self.terms.iter().map(|(&jk, &c)| (jk, c))
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let zbar = z.conj();
        self.terms
            .iter()
            .fold(Complex::zero(), |acc, (&(j, k), &c)| acc + c * z.powu(j) * zbar.powu(k))
    }
}

/// Harmonic polynomial agreeing with `p` on the circle: each
/// `c z^j conj(z)^k` is sent to index `j - k`.
pub fn harmonic_projection<T: Real>(p: &MixedPolynomial<T>) -> LaurentCoefficients<T> {
    LaurentCoefficients::from_terms(p.terms().map(|((j, k), c)| (j as i64 - k as i64, c)))
        .expect("finite terms always form a valid window")
}
