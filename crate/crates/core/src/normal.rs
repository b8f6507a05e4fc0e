//! Finite surrogates for normal families.
//!
//! A family is normal when `|h(z)| <= M(r)` on every disk `|z| <= r`, and a
//! coefficient family is normal when `|a(n)| r^|n| <= C(r)`. The bounds below
//! compute witnesses for both and pass between them; [`extract_subsequence`]
//! is the diagonal argument run on finitely many coordinates with a
//! clustering tolerance.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::boundary::{check_radius_open, coefficients_at_radius, grid_point, BoundarySamples};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::LaurentCoefficients;

const MIN_GRID: usize = 64;

/// A finite, labelled, nonempty list of series.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionFamily<T: Real> {
    members: Vec<LaurentCoefficients<T>>,
    label: String,
}

impl<T: Real> FunctionFamily<T> {
    pub fn new(members: Vec<LaurentCoefficients<T>>, label: impl Into<String>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self { members, label: label.into() })
    }

    pub fn members(&self) -> &[LaurentCoefficients<T>] {
        &self.members
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Largest `max(|n_min|, n_max)` over the members.
    pub fn bandwidth(&self) -> usize {
        self.members.iter().map(|c| c.bandwidth()).max().unwrap_or(0)
    }

    /// Union `[min n_min, max n_max]` of the member windows.
    pub fn window(&self) -> (i64, i64) {
        let lo = self.members.iter().map(|c| c.n_min()).min().unwrap_or(0);
        let hi = self.members.iter().map(|c| c.n_max()).max().unwrap_or(0);
        (lo, hi)
    }
}

/// `M(r)` and `C(r)` witnesses over a list of radii.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalityCertificate<T: Real> {
    pub radii: Vec<T>,
    pub m_bounds: Vec<T>,
    pub c_bounds: Vec<T>,
}

impl<T: Real> NormalityCertificate<T> {
    /// Function and coefficient witnesses at each radius on an `m`-point grid.
    pub fn certify(f: &FunctionFamily<T>, radii: &[T], m: usize) -> Result<Self> {
        let m_bounds = radii.iter().map(|&r| function_bound(f, r, m)).collect::<Result<_>>()?;
        let c_bounds = radii
            .iter()
            .map(|&r| coefficient_bound_from_function(f, r, m))
            .collect::<Result<_>>()?;
        Ok(Self { radii: radii.to_vec(), m_bounds, c_bounds })
    }
}

fn check_min_grid(m: usize) -> Result<()> {
    if m < MIN_GRID {
        return Err(Error::GridTooSmall { m, min: MIN_GRID });
    }
    Ok(())
}

/// `max` over members and grid points of `|h(r z_k)|`.
pub fn function_bound<T: Real>(f: &FunctionFamily<T>, r: T, m: usize) -> Result<T> {
    check_radius_open(r)?;
    check_min_grid(m)?;
    let grid: Vec<Complex<T>> = (0..m).map(|k| grid_point::<T>(k, m).value() * r).collect();
    Ok(f.members
        .iter()
        .flat_map(|c| grid.iter().map(move |&z| c.eval_raw(z).norm()))
        .fold(T::zero(), T::max))
}

/// `max` over members and `n` of `|a(n)| r^|n|`, with `a(n) r^|n|` recovered
/// by quadrature from the values `h(r z_k)`.
pub fn coefficient_bound_from_function<T: Real>(f: &FunctionFamily<T>, r: T, m: usize) -> Result<T> {
    check_radius_open(r)?;
    check_min_grid(m)?;
    let n_max = f.bandwidth();
    let mut best = T::zero();
    for c in &f.members {
        let samples = BoundarySamples::from_series_at_radius(c, r, m)?;
        let scaled = coefficients_at_radius(&samples, r, n_max)?.scaled;
        best = scaled.coeffs().iter().map(|b| b.norm()).fold(best, T::max);
    }
    Ok(best)
}

/// `C(s) sum_n (r/s)^|n|` over the family window: a bound on `|h|` on the
/// disk of radius `r` derived from `|a(n)| <= C(s) s^-|n|`.
pub fn function_bound_from_coefficients<T: Real>(f: &FunctionFamily<T>, r: T, s: T) -> Result<T> {
    check_radius_open(r)?;
    check_radius_open(s)?;
    if r >= s {
        return Err(Error::InvalidParameter(format!("need r < s, got r = {r}, s = {s}")));
    }
    let c_s = f.members.iter().map(|c| c.weighted_max(s)).fold(T::zero(), T::max);
    let q = r / s;
    let (lo, hi) = f.window();
    let geometric = (lo..=hi).fold(T::zero(), |acc, n| acc + q.powi(n.unsigned_abs() as i32));
    Ok(c_s * geometric)
}

/// Indices of a clustered subsequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsequence {
    pub indices: Vec<usize>,
    /// A single member survived; trivially valid.
    pub degenerate: bool,
}

/// Diagonal extraction: visit `n = 0, 1, -1, 2, -2, ...` over the shared
/// window and at each step keep the largest group of the surviving members
/// whose `a(n)` fall in the same box of the complex plane.
///
/// Boxes are axis-aligned squares of side `tol / sqrt(2)`, so two values in
/// the same box differ by less than `tol` in modulus. Ties go to the box with
/// the lexicographically smallest `(re, im)` corner.
pub fn extract_subsequence<T: Real>(seq: &[LaurentCoefficients<T>], tol: T) -> Result<Subsequence> {
    let first = seq.first().ok_or(Error::EmptySequence)?;
    if !(tol > T::zero() && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let (lo, hi) = (first.n_min(), first.n_max());
    if seq.iter().any(|c| c.n_min() != lo || c.n_max() != hi) {
        return Err(Error::WindowMismatch);
    }
    let side = tol / T::SQRT_2();
    let box_of = |v: T| -> i64 { (v / side).floor().to_i64().unwrap_or(i64::MAX) };

    let mut order = vec![0i64];
    for k in 1..=hi.max(-lo) {
        order.push(k);
        order.push(-k);
    }

    let mut alive: Vec<usize> = (0..seq.len()).collect();
    for n in order.into_iter().filter(|n| (lo..=hi).contains(n)) {
        let mut groups: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for &j in &alive {
            let a = seq[j].get(n);
            groups.entry((box_of(a.re), box_of(a.im))).or_default().push(j);
        }
        // max_by_key keeps the last maximum; scan in reverse so the smallest corner wins ties.
        alive = groups
            .into_values()
            .rev()
            .max_by_key(|g| g.len())
            .expect("at least one member survives");
    }
    let degenerate = alive.len() == 1;
    Ok(Subsequence { indices: alive, degenerate })
}

/// Distances from each member to a limit, in coefficients and on circles.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport<T: Real> {
    /// `max_n |a_j(n) - a(n)|` per member.
    pub coeff_dist: Vec<T>,
    /// `sup_dist[j][i] = max_k |h_j(r_i z_k) - h(r_i z_k)|`.
    pub sup_dist: Vec<Vec<T>>,
    /// Window half-width `N` used in the two-sided bounds.
    pub bandwidth: usize,
}

impl<T: Real> ConvergenceReport<T> {
    /// `sup_dist <= coeff_dist * sum_{|n| <= N} r^|n|` for member `j`, radius `r`.
    pub fn sup_bound(&self, j: usize, r: T) -> T {
        let n = self.bandwidth as i32;
        let geometric = (-n..=n).fold(T::zero(), |acc, k| acc + r.powi(k.abs()));
        self.coeff_dist[j] * geometric
    }

    /// `coeff_dist <= sup_dist / r^N` for member `j` at radius index `i`.
    pub fn coeff_bound(&self, j: usize, i: usize, r: T) -> T {
        self.sup_dist[j][i] / r.powi(self.bandwidth as i32)
    }
}

pub fn convergence_equivalence_check<T: Real>(
    seq: &[LaurentCoefficients<T>],
    limit: &LaurentCoefficients<T>,
    radii: &[T],
    m: usize,
) -> Result<ConvergenceReport<T>> {
    check_min_grid(m)?;
    for &r in radii {
        check_radius_open(r)?;
    }
    let (lo, hi) = (limit.n_min(), limit.n_max());
    if seq.iter().any(|c| c.n_min() != lo || c.n_max() != hi) {
        return Err(Error::WindowMismatch);
    }
    if m <= 2 * limit.bandwidth() {
        return Err(Error::Aliasing { m, n_max: limit.bandwidth() });
    }
    let coeff_dist = seq
        .iter()
        .map(|c| (lo..=hi).map(|n| (c.get(n) - limit.get(n)).norm()).fold(T::zero(), T::max))
        .collect();
    let sup_dist = seq
        .iter()
        .map(|c| {
            radii
                .iter()
                .map(|&r| {
                    (0..m)
                        .map(|k| {
                            let z = grid_point::<T>(k, m).value() * r;
                            (c.eval_raw(z) - limit.eval_raw(z)).norm()
                        })
                        .fold(T::zero(), T::max)
                })
                .collect()
        })
        .collect();
    Ok(ConvergenceReport { coeff_dist, sup_dist, bandwidth: limit.bandwidth() })
}
