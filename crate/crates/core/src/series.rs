//! Truncated two-sided power series on the unit disk.
//!
//! A [`LaurentCoefficients`] value holds `a(n)` for `n` in `[n_min, n_max]`
//! and represents
//!
//! ```text
//! h(z) = sum_{n >= 0} a(n) z^n + sum_{n < 0} a(n) conj(z)^(-n)
//! ```
//!
//! Non-negative indices form the holomorphic part, negative indices the
//! anti-holomorphic part. All sums run in ascending `|n|`, with the
//! holomorphic term before the anti-holomorphic one at equal `|n|`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

/// Coefficients `a(n)`, `n_min <= 0 <= n_max`, stored in ascending `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentCoefficients<T: Real> {
    n_min: i64,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> LaurentCoefficients<T> {
    /// Builds a sequence from its lowest index and the values in ascending order.
    pub fn new(n_min: i64, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidWindow { n_min, n_max: n_min - 1 });
        }
        let n_max = n_min + coeffs.len() as i64 - 1;
        if n_min > 0 || n_max < 0 {
            return Err(Error::InvalidWindow { n_min, n_max });
        }
        if let Some(i) = coeffs.iter().position(|c| !is_finite(*c)) {
            return Err(Error::NonFinite(format!("coefficient a({})", n_min + i as i64)));
        }
        Ok(Self { n_min, coeffs })
    }

    /// Builds a sequence from an explicit window, checking the entry count.
    pub fn with_window(n_min: i64, n_max: i64, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if n_min > 0 || n_max < 0 {
            return Err(Error::InvalidWindow { n_min, n_max });
        }
        let expected = (n_max - n_min + 1) as usize;
        if coeffs.len() != expected {
            return Err(Error::CoefficientCount { expected, actual: coeffs.len() });
        }
        Self::new(n_min, coeffs)
    }

    /// All-zero sequence on `[n_min, n_max]`.
    pub fn zeros(n_min: i64, n_max: i64) -> Result<Self> {
        if n_min > 0 || n_max < 0 {
            return Err(Error::InvalidWindow { n_min, n_max });
        }
        Ok(Self { n_min, coeffs: vec![Complex::zero(); (n_max - n_min + 1) as usize] })
    }

    /// The constant function `value`.
    pub fn constant(value: Complex<T>) -> Result<Self> {
        Self::new(0, vec![value])
    }

    /// Sequence on the smallest window holding the given `(n, a(n))` pairs
    /// and the index 0. Repeated indices accumulate.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex<T>)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let n_min = terms.iter().map(|t| t.0).min().unwrap_or(0).min(0);
        let n_max = terms.iter().map(|t| t.0).max().unwrap_or(0).max(0);
        let mut out = Self::zeros(n_min, n_max)?;
        for (n, a) in terms {
            if !is_finite(a) {
                return Err(Error::NonFinite(format!("coefficient a({n})")));
            }
            let i = (n - n_min) as usize;
            out.coeffs[i] = out.coeffs[i] + a;
        }
        Ok(out)
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.coeffs.len() as i64 - 1
    }

    /// `max(|n_min|, n_max)`.
    pub fn bandwidth(&self) -> usize {
        self.n_min.unsigned_abs().max(self.n_max() as u64) as usize
    }

    /// Coefficients in ascending index order.
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// `a(n)`, zero outside the stored window.
    pub fn get(&self, n: i64) -> Complex<T> {
        if n < self.n_min || n > self.n_max() {
            Complex::zero()
        } else {
            self.coeffs[(n - self.n_min) as usize]
        }
    }

    /// `(n, a(n))` in ascending `n`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex<T>)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, &a)| (self.n_min + i as i64, a))
    }

    /// Copy of the sequence on a window containing the current one.
    pub fn widened(&self, n_min: i64, n_max: i64) -> Result<Self> {
        let n_min = n_min.min(self.n_min);
        let n_max = n_max.max(self.n_max());
        let mut out = Self::zeros(n_min, n_max)?;
        let offset = (self.n_min - n_min) as usize;
        out.coeffs[offset..offset + self.coeffs.len()].copy_from_slice(&self.coeffs);
        Ok(out)
    }

    /// Evaluates the series at a disk point.
    pub fn eval(&self, z: DiskPoint<T>) -> Complex<T> {
        self.eval_raw(z.value())
    }

    /// Evaluates on the unit circle, where `conj(z) = 1/z`.
    pub fn eval_on_circle(&self, z: CirclePoint<T>) -> Complex<T> {
        self.eval_raw(z.value())
    }

    /// Evaluates the two-sided formula at an arbitrary complex number with no
    /// domain check. Callers guarantee `|z| <= 1`.
    pub fn eval_raw(&self, z: Complex<T>) -> Complex<T> {
        let zbar = z.conj();
        let n_max = self.n_max();
        let depth = self.bandwidth() as i64;
        let mut sum = self.get(0);
        let mut zp = Complex::new(T::one(), T::zero());
        let mut wp = zp;
        for n in 1..=depth {
            zp = zp * z;
            wp = wp * zbar;
            if n <= n_max {
                sum = sum + self.get(n) * zp;
            }
            if -n >= self.n_min {
                sum = sum + self.get(-n) * wp;
            }
        }
        sum
    }

    /// Coefficients of `d/dz`: `b(n - 1) = n a(n)` for `n >= 1`.
    pub fn dz(&self) -> Self {
        let n_max = self.n_max();
        if n_max == 0 {
            return Self { n_min: 0, coeffs: vec![Complex::zero()] };
        }
        let coeffs = (1..=n_max).map(|n| self.get(n) * T::from_index(n)).collect();
        Self { n_min: 0, coeffs }
    }

    /// Coefficients of `d/dzbar`: the term `a(n) conj(z)^(-n)`, `n <= -1`,
    /// maps to `(-n) a(n) conj(z)^(-n-1)`, stored at index `n + 1`.
    pub fn dzbar(&self) -> Self {
        if self.n_min == 0 {
            return Self { n_min: 0, coeffs: vec![Complex::zero()] };
        }
        let coeffs = (self.n_min..=-1).map(|n| self.get(n) * T::from_index(-n)).collect();
        Self { n_min: self.n_min + 1, coeffs }
    }

    /// `sum_{n >= 1} n a(n) z^(n-1)`.
    pub fn eval_dz(&self, z: DiskPoint<T>) -> Complex<T> {
        let z = z.value();
        let mut sum = Complex::zero();
        let mut zp = Complex::new(T::one(), T::zero());
        for n in 1..=self.n_max() {
            sum = sum + self.get(n) * T::from_index(n) * zp;
            zp = zp * z;
        }
        sum
    }

    /// `sum_{n <= -1} (-n) a(n) conj(z)^(-n-1)`.
    pub fn eval_dzbar(&self, z: DiskPoint<T>) -> Complex<T> {
        let zbar = z.value().conj();
        let mut sum = Complex::zero();
        let mut wp = Complex::new(T::one(), T::zero());
        for n in (self.n_min..=-1).rev() {
            sum = sum + self.get(n) * T::from_index(-n) * wp;
            wp = wp * zbar;
        }
        sum
    }

    /// True iff every stored negative-index coefficient is exactly zero.
    pub fn is_holomorphic(&self) -> bool {
        self.iter().all(|(n, a)| n >= 0 || a.is_zero())
    }

    /// `max_n |a(n)| r^|n|` for `0 < r < 1`.
    pub fn coefficient_tail_bound(&self, r: T) -> Result<T> {
        if !(r > T::zero() && r < T::one()) {
            return Err(Error::InvalidRadius(r.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(self.weighted_max(r))
    }

    /// `max_n |a(n)| r^|n|` with no range check on `r`.
    pub(crate) fn weighted_max(&self, r: T) -> T {
        self.iter()
            .map(|(n, a)| a.norm() * r.powi(n.unsigned_abs() as i32))
            .fold(T::zero(), T::max)
    }
}

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint<T: Real>(Complex<T>);

impl<T: Real> DiskPoint<T> {
    pub fn new(z: Complex<T>) -> Result<Self> {
        if is_finite(z) && z.norm() < T::one() {
            Ok(Self(z))
        } else {
            Err(Error::OutsideDisk {
                re: z.re.to_f64().unwrap_or(f64::NAN),
                im: z.im.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    pub fn from_parts(re: T, im: T) -> Result<Self> {
        Self::new(Complex::new(re, im))
    }

    /// `r e^{i theta}`.
    pub fn from_polar(r: T, theta: T) -> Result<Self> {
        Self::new(Complex::from_polar(r, theta))
    }

    pub fn origin() -> Self {
        Self(Complex::zero())
    }

    pub fn value(self) -> Complex<T> {
        self.0
    }
}

/// A point of the unit circle, renormalized to exact unit modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint<T: Real>(Complex<T>);

impl<T: Real> CirclePoint<T> {
    /// Accepts `z` with `||z| - 1| <= 1e-12` (floored at the scalar's resolution).
    pub fn new(z: Complex<T>) -> Result<Self> {
        let modulus = z.norm();
        if !is_finite(z) || (modulus - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::OffCircle {
                re: z.re.to_f64().unwrap_or(f64::NAN),
                im: z.im.to_f64().unwrap_or(f64::NAN),
                modulus: modulus.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self(z / modulus))
    }

    pub fn from_angle(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        let z = Complex::new(c, s);
        Self(z / z.norm())
    }

    pub(crate) fn new_unchecked(z: Complex<T>) -> Self {
        Self(z)
    }

    pub fn value(self) -> Complex<T> {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn disk(re: f64, im: f64) -> DiskPoint<f64> {
        DiskPoint::from_parts(re, im).unwrap()
    }

    #[test]
    fn window_invariants() {
        assert!(LaurentCoefficients::new(1, vec![c(1.0, 0.0)]).is_err());
        assert!(LaurentCoefficients::new(-3, vec![c(1.0, 0.0); 2]).is_err());
        assert!(LaurentCoefficients::new(0, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(LaurentCoefficients::<f64>::new(0, vec![]).is_err());
        assert!(matches!(
            LaurentCoefficients::with_window(-1, 1, vec![c(0.0, 0.0); 2]),
            Err(Error::CoefficientCount { expected: 3, actual: 2 })
        ));
        let s = LaurentCoefficients::new(-2, vec![c(1.0, 0.0); 5]).unwrap();
        assert_eq!((s.n_min(), s.n_max(), s.bandwidth()), (-2, 2, 2));
    }

    #[test]
    fn disk_and_circle_points() {
        assert!(DiskPoint::from_parts(1.0, 0.0).is_err());
        assert!(DiskPoint::from_parts(0.6, 0.8).is_err());
        assert!(DiskPoint::from_parts(0.5, 0.5).is_ok());
        assert!(CirclePoint::new(c(1.0 + 1e-9, 0.0)).is_err());
        let p = CirclePoint::new(c(0.6 + 5e-13, 0.8)).unwrap();
        assert!((p.value().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eval_constant() {
        let s = LaurentCoefficients::constant(c(5.0, 0.0)).unwrap();
        assert_eq!(s.eval(disk(0.3, 0.1)), c(5.0, 0.0));
    }

    #[test]
    fn eval_real_part() {
        let s = LaurentCoefficients::from_terms([(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]).unwrap();
        assert_eq!(s.eval(disk(0.5, 0.0)), c(1.0, 0.0));
        let z = DiskPoint::from_polar(0.7, 1.1).unwrap();
        let expect = 2.0 * 0.7 * 1.1f64.cos();
        assert!((s.eval(z) - c(expect, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_matches_naive_sum() {
        // Fixed pseudo-random coefficients, N = 8.
        let coeffs: Vec<C> = (0..17)
            .map(|i| {
                let t = i as f64;
                c((1.3 * t).sin() * 2.0, (0.7 * t + 0.3).cos())
            })
            .collect();
        let s = LaurentCoefficients::new(-8, coeffs).unwrap();
        let z = DiskPoint::from_polar(0.4, std::f64::consts::FRAC_PI_3).unwrap();
        let naive: C = s
            .iter()
            .map(|(n, a)| {
                if n >= 0 {
                    a * z.value().powi(n as i32)
                } else {
                    a * z.value().conj().powi(-n as i32)
                }
            })
            .sum();
        let got = s.eval(z);
        assert!((got - naive).norm() <= 1e-14 * naive.norm());
    }

    #[test]
    fn dz_examples() {
        let z = disk(0.2, -0.4);
        let s = LaurentCoefficients::from_terms([(1, c(1.0, 0.0))]).unwrap();
        assert_eq!(s.eval_dz(z), c(1.0, 0.0));
        let s = LaurentCoefficients::from_terms([(-3, c(7.0, 0.0))]).unwrap();
        assert_eq!(s.eval_dz(z), c(0.0, 0.0));
        let s = LaurentCoefficients::from_terms([(2, c(1.0, 0.0))]).unwrap();
        assert_eq!(s.eval_dz(disk(0.5, 0.0)), c(1.0, 0.0));
    }

    #[test]
    fn dzbar_examples() {
        let z = disk(0.2, -0.4);
        let s = LaurentCoefficients::from_terms([(5, c(3.0, 0.0))]).unwrap();
        assert_eq!(s.eval_dzbar(z), c(0.0, 0.0));
        let s = LaurentCoefficients::from_terms([(-1, c(1.0, 0.0))]).unwrap();
        assert_eq!(s.eval_dzbar(z), c(1.0, 0.0));
        // Finite-difference oracle: (d/dx + i d/dy)/2 with h = 1e-6 gives -0.6i.
        let s = LaurentCoefficients::from_terms([(-2, c(1.0, 0.0))]).unwrap();
        let got = s.eval_dzbar(disk(0.0, 0.3));
        assert!((got - c(0.0, -0.6)).norm() < 1e-15);
        let h = 1e-6;
        let f = |x: f64, y: f64| s.eval(disk(x, y));
        let dx = (f(h, 0.3) - f(-h, 0.3)) / (2.0 * h);
        let dy = (f(0.0, 0.3 + h) - f(0.0, 0.3 - h)) / (2.0 * h);
        let fd = (dx + c(0.0, 1.0) * dy) * 0.5;
        assert!((fd - got).norm() < 1e-8);
    }

    #[test]
    fn derivative_maps_match_pointwise() {
        let s = LaurentCoefficients::from_terms([
            (-3, c(0.5, -1.0)),
            (-1, c(2.0, 0.0)),
            (0, c(1.0, 1.0)),
            (2, c(-1.0, 0.25)),
            (4, c(0.0, 3.0)),
        ])
        .unwrap();
        let z = disk(0.3, 0.45);
        assert!((s.dz().eval(z) - s.eval_dz(z)).norm() < 1e-14);
        assert!((s.dzbar().eval(z) - s.eval_dzbar(z)).norm() < 1e-14);
        // d/dz d/dzbar = Laplacian / 4 annihilates harmonic series exactly.
        assert!(s.dz().dzbar().coeffs().iter().all(|a| a.is_zero()));
        assert!(s.dzbar().dz().coeffs().iter().all(|a| a.is_zero()));
    }

    #[test]
    fn holomorphic_test_is_exact() {
        let s = LaurentCoefficients::from_terms([(0, c(1.0, 0.0)), (3, c(0.0, 2.0))]).unwrap();
        assert!(s.is_holomorphic());
        let s = LaurentCoefficients::from_terms([(-1, c(1e-30, 0.0))]).unwrap();
        assert!(!s.is_holomorphic());
        let s = LaurentCoefficients::constant(c(0.0, 0.0)).unwrap();
        assert!(s.is_holomorphic());
        // zero padding on the negative side does not count
        let s = LaurentCoefficients::from_terms([(-2, c(0.0, 0.0)), (1, c(1.0, 0.0))]).unwrap();
        assert!(s.is_holomorphic());
    }

    #[test]
    fn tail_bound_examples() {
        let s = LaurentCoefficients::constant(c(2.0, 0.0)).unwrap();
        assert_eq!(s.coefficient_tail_bound(0.5).unwrap(), 2.0);
        let s = LaurentCoefficients::new(-4, vec![c(1.0, 0.0); 9]).unwrap();
        assert_eq!(s.coefficient_tail_bound(0.5).unwrap(), 1.0);
        let s = LaurentCoefficients::from_terms([(3, c(16.0, 0.0))]).unwrap();
        assert_eq!(s.coefficient_tail_bound(0.5).unwrap(), 2.0);
        assert!(s.coefficient_tail_bound(1.0).is_err());
        assert!(s.coefficient_tail_bound(0.0).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let s = LaurentCoefficients::<f32>::from_terms([
            (1, Complex::new(1.0, 0.0)),
            (-1, Complex::new(1.0, 0.0)),
        ])
        .unwrap();
        let v = s.eval(DiskPoint::from_parts(0.5f32, 0.0).unwrap());
        assert!((v.re - 1.0).abs() < 1e-6);
    }
}
