//! Independent reference computations. None of these go through the
//! library's evaluation or quadrature paths.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex;
use unitdisk::boundary::MixedPolynomial;
use unitdisk::LaurentCoefficients;

pub type C = Complex<f64>;

pub fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

/// Term-by-term sum with explicit powers, in storage order.
pub fn naive_eval(a: &LaurentCoefficients<f64>, z: C) -> C {
    a.iter()
        .map(|(n, an)| if n >= 0 { an * z.powi(n as i32) } else { an * z.conj().powi((-n) as i32) })
        .sum()
}

/// Sum of `|a(n) z^n|` terms, the natural scale for relative evaluation error.
pub fn term_magnitude(a: &LaurentCoefficients<f64>, z: C) -> f64 {
    a.iter().map(|(n, an)| an.norm() * z.norm().powi(n.unsigned_abs() as i32)).sum()
}

/// `exp(2 pi i k / m)` straight from the exponential.
pub fn node(k: usize, m: usize) -> C {
    Complex::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)
}

/// `(1/m) sum_k v_k exp(-2 pi i k n / m)` with the phase taken mod `m`.
pub fn naive_dft(values: &[C], n: i64) -> C {
    let m = values.len() as i64;
    let total: C = values
        .iter()
        .enumerate()
        .map(|(k, v)| v * Complex::from_polar(1.0, -2.0 * PI * ((k as i64 * n).rem_euclid(m)) as f64 / m as f64))
        .sum();
    total / m as f64
}

pub fn closed_poisson(z: C, zeta: C) -> f64 {
    (1.0 - zeta.norm_sqr()) / (2.0 * PI * (z - zeta).norm_sqr())
}

pub fn mixed_eval(p: &MixedPolynomial<f64>, z: C) -> C {
    p.terms().map(|((j, k), a)| a * z.powi(j as i32) * z.conj().powi(k as i32)).sum()
}

/// Central differences of `f` in `x` and `y`, recombined as
/// `(d/dx - i d/dy)/2` and `(d/dx + i d/dy)/2`.
pub fn fd_wirtinger(f: impl Fn(C) -> C, z: C, h: f64) -> (C, C) {
    let fx = (f(z + c(h, 0.0)) - f(z - c(h, 0.0))) / (2.0 * h);
    let fy = (f(z + c(0.0, h)) - f(z - c(0.0, h))) / (2.0 * h);
    let i = c(0.0, 1.0);
    ((fx - i * fy) / 2.0, (fx + i * fy) / 2.0)
}

/// Largest singular value of a 2x2 matrix from the closed form for the
/// eigenvalues of `A^H A`.
pub fn singular_2x2(a: [C; 4]) -> f64 {
    let [p, q, r, s] = a;
    let g11 = p.norm_sqr() + r.norm_sqr();
    let g22 = q.norm_sqr() + s.norm_sqr();
    let g12 = p.conj() * q + r.conj() * s;
    let mean = 0.5 * (g11 + g22);
    let disc = (0.25 * (g11 - g22).powi(2) + g12.norm_sqr()).sqrt();
    (mean + disc).sqrt()
}

pub fn max_abs_diff(a: &LaurentCoefficients<f64>, b: &LaurentCoefficients<f64>) -> f64 {
    let lo = a.n_min().min(b.n_min());
    let hi = a.n_max().max(b.n_max());
    (lo..=hi).map(|n| (a.get(n) - b.get(n)).norm()).fold(0.0, f64::max)
}
