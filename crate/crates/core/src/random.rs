//! Seeded sampling for sweeps.
//!
//! All randomness comes from [`SweepRng`], the PCG-XSH-RR generator with
//! 64-bit state (`state = state * 6364136223846793005 + increment`, output
//! a xorshifted, randomly rotated 32-bit word). Seeding goes through
//! `SeedableRng::seed_from_u64`, which is platform independent.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;

use crate::boundary::MixedPolynomial;
use crate::scalar::Real;
use crate::series::LaurentCoefficients;

pub type SweepRng = Pcg32;

pub fn seeded(seed: u64) -> SweepRng {
    Pcg32::seed_from_u64(seed)
}

/// Uniform point of the square `[-1, 1] x [-1, 1]`.
pub fn unit_box<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.random_range(-1.0..=1.0);
    let im: f64 = rng.random_range(-1.0..=1.0);
    Complex::new(T::lit(re), T::lit(im))
}

/// Series on `[n_min, n_max]` with unit-box coefficients.
pub fn random_series<T: Real, R: Rng + ?Sized>(rng: &mut R, n_min: i64, n_max: i64) -> LaurentCoefficients<T> {
    let coeffs = (n_min..=n_max).map(|_| unit_box(rng)).collect();
    LaurentCoefficients::new(n_min, coeffs).expect("window contains 0")
}

/// Uniform point of the disk `|z| <= radius`.
pub fn disk_point<T: Real, R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex<T> {
    let r: f64 = radius * rng.random_range(0.0f64..=1.0).sqrt();
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Complex::new(T::lit(r * theta.cos()), T::lit(r * theta.sin()))
}

/// Mixed polynomial with every monomial `z^j zbar^k`, `j, k <= max_exp`,
/// present independently with probability 1/2.
pub fn random_mixed_polynomial<T: Real, R: Rng + ?Sized>(rng: &mut R, max_exp: u32) -> MixedPolynomial<T> {
    let mut p = MixedPolynomial::new();
    for j in 0..=max_exp {
        for k in 0..=max_exp {
            if rng.random_bool(0.5) {
                p.add_term(j, k, unit_box(rng)).expect("finite");
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a: Vec<Complex<f64>> = (0..5).map(|_| unit_box(&mut seeded(3))).collect();
        let mut r1 = seeded(42);
        let mut r2 = seeded(42);
        let s1: LaurentCoefficients<f64> = random_series(&mut r1, -3, 4);
        let s2: LaurentCoefficients<f64> = random_series(&mut r2, -3, 4);
        assert_eq!(s1, s2);
        assert!(a.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn disk_points_stay_inside() {
        let mut rng = seeded(0);
        for _ in 0..1000 {
            let z: Complex<f64> = disk_point(&mut rng, 0.9);
            assert!(z.norm() <= 0.9 + 1e-15);
        }
    }
}
