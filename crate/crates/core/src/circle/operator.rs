//! Finite-dimensional contractions, polynomial functional calculus and the
//! von Neumann inequality `||p(T)|| <= sup_{|z| <= 1} |p(z)|`.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use crate::boundary::grid_point;
use crate::random::unit_box;
use crate::error::{Error, Result};
use crate::scalar::{is_finite, root_of_unity, Real};

/// Relative convergence tolerance of the operator-norm iteration.
pub const NORM_REL_TOL: f64 = 1e-12;
/// Iteration cap of the operator-norm iteration.
pub const NORM_MAX_ITERATIONS: usize = 10_000;
/// Numerical slack in the von Neumann comparison.
pub const VON_NEUMANN_SLACK: f64 = 1e-8;

const CONTRACTION_SLACK: f64 = 1e-10;
const SUP_AGREEMENT: f64 = 1e-9;
const SUP_MAX_GRID: usize = 1 << 24;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn from_row_major(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        if let Some(i) = entries.iter().position(|e| !is_finite(*e)) {
            return Err(Error::NonFinite(format!("matrix entry ({}, {})", i / dim, i % dim)));
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![Complex::one(); dim])
    }

    pub fn diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * m.dim + i] = *d;
        }
        m
    }

    /// Ones on the superdiagonal: the one-sided shift truncated to `dim`.
    pub fn truncated_shift(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 1..dim {
            m.entries[(i - 1) * dim + i] = Complex::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions must agree");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] = out.entries[i * n + j] + a * other.entries[k * n + j];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: T) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|e| *e * s).collect() }
    }

    /// `A x`.
    pub fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(x).fold(Complex::zero(), |acc, (a, b)| acc + *a * b))
            .collect()
    }

    /// `A^H x`.
    pub fn apply_adjoint(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.dim;
        let mut out = vec![Complex::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o = *o + self.entries[i * n + j].conj() * xi;
            }
        }
        out
    }
}

fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr()).sqrt()
}

/// Largest singular value by power iteration on `A^H A`.
///
/// Starts from the normalized all-ones vector and iterates the quadratic
/// form `||A v||^2` until successive values agree to `1e-12` relative. If the
/// start vector lies in the kernel, the standard basis vectors are tried in
/// order; a matrix that annihilates all of them is zero.
pub fn operator_norm<T: Real>(a: &ComplexMatrix<T>) -> Result<T> {
    let n = a.dim();
    let tol = T::tol(NORM_REL_TOL);
    let ones = vec![Complex::new(T::one() / T::from_count(n).sqrt(), T::zero()); n];
    let basis = (0..n).map(|i| {
        let mut e = vec![Complex::zero(); n];
        e[i] = Complex::one();
        e
    });
    for start in std::iter::once(ones).chain(basis) {
        let mut v = start;
        let mut previous: Option<T> = None;
        for _ in 0..NORM_MAX_ITERATIONS {
            let av = a.apply(&v);
            let quad = av.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr());
            if quad == T::zero() {
                break;
            }
            if let Some(prev) = previous {
                if (quad - prev).abs() <= tol * quad {
                    return Ok(quad.sqrt());
                }
            }
            previous = Some(quad);
            let w = a.apply_adjoint(&av);
            let norm = vec_norm(&w);
            v = w.into_iter().map(|x| x / norm).collect();
        }
        if previous.is_some() {
            return Err(Error::NoConvergence(NORM_MAX_ITERATIONS));
        }
    }
    Ok(T::zero())
}

/// A square matrix of operator norm at most `1 + 1e-10`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionOperator<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> ContractionOperator<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        let norm = operator_norm(&matrix)?;
        if norm > T::one() + T::tol(CONTRACTION_SLACK) {
            return Err(Error::NotContraction(norm.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { matrix })
    }

    /// Skips the norm check. Only for exercising violation paths.
    #[doc(hidden)]
    pub fn new_unchecked(matrix: ComplexMatrix<T>) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// `c_0 + c_1 z + ... + c_n z^n`; the leading coefficient may be zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial<T: Real> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> ComplexPolynomial<T> {
    /// Coefficients in ascending degree.
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("polynomial needs at least one coefficient".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !is_finite(*c)) {
            return Err(Error::NonFinite(format!("polynomial coefficient c_{i}")));
        }
        Ok(Self { coeffs })
    }

    /// `z^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![Complex::zero(); d + 1];
        coeffs[d] = Complex::one();
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, c| acc * z + c)
    }
}

/// `p(T) = sum_j c_j T^j` by Horner's scheme in the matrix algebra.
pub fn apply_polynomial<T: Real>(p: &ComplexPolynomial<T>, t: &ContractionOperator<T>) -> ComplexMatrix<T> {
    let n = t.dim();
    let mut acc = ComplexMatrix::zeros(n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(t.matrix());
        for i in 0..n {
            acc.entries[i * n + i] = acc.entries[i * n + i] + c;
        }
    }
    acc
}

/// Maximum of `|p|` over the `m`-point circle grid.
///
/// The maximum over the closed disk is attained on the circle; the grid value
/// underestimates it by `O(m^-2)`.
pub fn sup_modulus_on_disk<T: Real>(p: &ComplexPolynomial<T>, m: usize) -> Result<T> {
    let min = 4 * (p.degree() + 1);
    if m < min {
        return Err(Error::GridTooSmall { m, min });
    }
    Ok((0..m).map(|k| p.eval(grid_point::<T>(k, m).value()).norm()).fold(T::zero(), T::max))
}

/// Supremum of `|p|` over the closed disk, starting from an `m`-point grid.
///
/// The grid doubles until two successive refinements each move the maximum
/// by at most `1e-9` (or the grid reaches 2^24 points). Grid nodes that could
/// sit next to the true maximum are then polished by golden-section search on
/// the neighbouring arc. Every value returned is an attained `|p(z)|`, so the
/// result never exceeds the true supremum.
pub fn refined_sup_modulus<T: Real>(p: &ComplexPolynomial<T>, m: usize) -> Result<T> {
    let mut best = sup_modulus_on_disk(p, m)?;
    let tol = T::tol(SUP_AGREEMENT);
    let mut m = m;
    let mut agreements = 0;
    while m < SUP_MAX_GRID && agreements < 2 {
        // The doubled grid adds the midpoints z_{2k+1} of the 2m-point grid.
        let fine = 2 * m;
        let refined = (0..m)
            .map(|k| p.eval(root_of_unity::<T>(2 * k + 1, fine)).norm())
            .fold(best, T::max);
        m = fine;
        agreements = if refined - best <= tol { agreements + 1 } else { 0 };
        best = refined;
    }
    Ok(polish(p, m, best))
}

/// `|p|^2` is a trigonometric polynomial of degree `n`, so its second
/// derivative is at most `n^2 sup|p|^2`. The node nearest the maximiser is
/// within `h = pi/m`, which bounds how far below `sup|p|` it can lie.
fn polish<T: Real>(p: &ComplexPolynomial<T>, m: usize, best: T) -> T {
    let n = T::from_count(p.degree());
    let h = T::PI() / T::from_count(m);
    let drop = (n * h).powi(2) / T::lit(2.0);
    if drop >= T::one() {
        return best;
    }
    let threshold = best * (T::one() - drop).sqrt();
    let f = |theta: T| p.eval(Complex::from_polar(T::one(), theta)).norm();
    let step = T::two_pi() / T::from_count(m);
    let mut out = best;
    for k in 0..m {
        let theta = step * T::from_count(k);
        if f(theta) < threshold {
            continue;
        }
        out = out.max(golden_max(&f, theta - step, theta + step));
    }
    out
}

fn golden_max<T: Real>(f: &impl Fn(T) -> T, mut a: T, mut b: T) -> T {
    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut best = f1.max(f2);
    for _ in 0..80 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        }
        best = best.max(f1).max(f2);
    }
    best
}

/// One evaluation of the von Neumann inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VonNeumannReport<T: Real> {
    /// `||p(T)||`.
    pub lhs: T,
    /// `sup_{|z| <= 1} |p(z)|`.
    pub rhs: T,
    pub holds: bool,
}

impl<T: Real> VonNeumannReport<T> {
    /// `rhs - lhs`.
    pub fn margin(&self) -> T {
        self.rhs - self.lhs
    }
}

pub fn von_neumann_check<T: Real>(
    p: &ComplexPolynomial<T>,
    t: &ContractionOperator<T>,
) -> Result<VonNeumannReport<T>> {
    let lhs = operator_norm(&apply_polynomial(p, t))?;
    let m = (4 * (p.degree() + 1)).max(64).next_power_of_two();
    let rhs = refined_sup_modulus(p, m)?;
    Ok(VonNeumannReport { lhs, rhs, holds: lhs <= rhs + T::tol(VON_NEUMANN_SLACK) })
}

/// Entries uniform in the complex unit box, divided by the operator norm,
/// then scaled by a uniform factor in `[0, 1]`.
pub fn random_contraction<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<ContractionOperator<T>> {
    let raw: Vec<Complex<T>> = (0..dim * dim).map(|_| unit_box(rng)).collect();
    let raw = ComplexMatrix::from_row_major(dim, raw)?;
    let norm = operator_norm(&raw)?;
    let scale: f64 = rng.random_range(0.0..=1.0);
    let matrix = if norm > T::zero() { raw.scale(T::lit(scale) / norm) } else { raw };
    ContractionOperator::new(matrix)
}

/// Polynomial of the given degree with coefficients in the complex unit box.
pub fn random_polynomial<T: Real, R: Rng + ?Sized>(rng: &mut R, degree: usize) -> ComplexPolynomial<T> {
    ComplexPolynomial { coeffs: (0..=degree).map(|_| unit_box(rng)).collect() }
}
