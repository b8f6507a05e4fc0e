//! Radial integral means `(1/2pi) int phi(|h(r z)|) |dz|` and their
//! monotonicity in `r`.
//!
//! For a monotone increasing convex gauge `phi` with `phi(0) = 0`, the mean
//! of a harmonic series is nondecreasing in `r`, and so is the supremum of
//! `|h|` on the circle of radius `r`. For holomorphic series the power gauges
//! `t^p` with `0 < p < 1` are admissible too.

use crate::boundary::grid_point;
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Real};
use crate::series::LaurentCoefficients;

/// Grid size used when the caller does not choose one.
pub const DEFAULT_GRID: usize = 1024;
/// Relative slack for monotonicity of convex-gauge and sup tables.
pub const MONOTONE_TOL: f64 = 1e-10;
/// Relative slack for monotonicity of holomorphic `p < 1` tables.
pub const HOLOMORPHIC_MONOTONE_TOL: f64 = 1e-9;

const MIN_GRID: usize = 64;

/// Monotone gauge `phi` on `[0, inf)`, normalized to `phi(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexGauge<T: Real> {
    /// `t^p`, `p > 0`. Convex only for `p >= 1`.
    Power(T),
    /// `exp(lambda t) - 1`, `lambda > 0`.
    ExpScaled(T),
    /// Piecewise-linear interpolant through `(knots, values)` with linear
    /// extrapolation at both ends, shifted so that `phi(0) = 0`.
    Tabulated { knots: Vec<T>, values: Vec<T> },
}

impl<T: Real> ConvexGauge<T> {
    pub fn power(p: T) -> Result<Self> {
        if p > T::zero() && p.is_finite() {
            Ok(Self::Power(p))
        } else {
            Err(Error::InvalidParameter(format!("power gauge needs p > 0, got {p}")))
        }
    }

    pub fn exp_scaled(lambda: T) -> Result<Self> {
        if lambda > T::zero() && lambda.is_finite() {
            Ok(Self::ExpScaled(lambda))
        } else {
            Err(Error::InvalidParameter(format!("exp gauge needs lambda > 0, got {lambda}")))
        }
    }

    /// Tabulated gauge. Knots must be strictly increasing and nonnegative,
    /// with at least two of them.
    pub fn tabulated(knots: Vec<T>, values: Vec<T>) -> Result<Self> {
        if knots.len() < 2 || knots.len() != values.len() {
            return Err(Error::InvalidParameter(
                "tabulated gauge needs at least two knots and one value per knot".into(),
            ));
        }
        if knots.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("tabulated gauge".into()));
        }
        if knots[0] < T::zero() || knots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "tabulated knots must be nonnegative and strictly increasing".into(),
            ));
        }
        let raw = Self::Tabulated { knots: knots.clone(), values: values.clone() };
        let offset = raw.eval(T::zero());
        let values = values.into_iter().map(|v| v - offset).collect();
        Ok(Self::Tabulated { knots, values })
    }

    pub fn eval(&self, t: T) -> T {
        match self {
            Self::Power(p) => t.powf(*p),
            Self::ExpScaled(lambda) => (*lambda * t).exp_m1(),
            Self::Tabulated { knots, values } => {
                let last = knots.len() - 1;
                // segment i covers [knots[i], knots[i + 1]], end segments extrapolate
                let i = knots[1..last].iter().take_while(|&&k| k <= t).count();
                let slope = (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
                values[i] + slope * (t - knots[i])
            }
        }
    }

    /// Monotone increasing and convex, so the convex-means inequality applies.
    pub fn is_convex_monotone(&self) -> bool {
        match self {
            Self::Power(p) => *p >= T::one(),
            Self::ExpScaled(_) => true,
            Self::Tabulated { knots, values } => {
                let slopes: Vec<T> = knots
                    .windows(2)
                    .zip(values.windows(2))
                    .map(|(k, v)| (v[1] - v[0]) / (k[1] - k[0]))
                    .collect();
                slopes[0] >= T::zero() && slopes.windows(2).all(|s| s[1] >= s[0])
            }
        }
    }

    /// `t^p` with `0 < p < 1`: admissible only for holomorphic input.
    pub fn is_holomorphic_only(&self) -> bool {
        matches!(self, Self::Power(p) if *p < T::one())
    }
}

fn check_grid(c_bandwidth: usize, m: usize) -> Result<()> {
    let min = MIN_GRID.max(8 * (c_bandwidth + 1) + 1);
    if m < min {
        return Err(Error::GridTooSmall { m, min });
    }
    Ok(())
}

/// `(1/m) sum_k phi(|h(r z_k)|)` for `0 < r < 1`.
///
/// Requires `m >= 64` and `m > 8 (bandwidth + 1)`.
pub fn integral_mean<T: Real>(c: &LaurentCoefficients<T>, r: T, g: &ConvexGauge<T>, m: usize) -> Result<T> {
    if !(r > T::zero() && r < T::one()) {
        return Err(Error::InvalidRadius(r.to_f64().unwrap_or(f64::NAN)));
    }
    check_grid(c.bandwidth(), m)?;
    let sum = compensated_sum((0..m).map(|k| g.eval(c.eval_raw(grid_point::<T>(k, m).value() * r).norm())));
    Ok(sum / T::from_count(m))
}

/// `max_k |h(r z_k)|` for `0 < r <= 1`.
pub fn sup_mean<T: Real>(c: &LaurentCoefficients<T>, r: T, m: usize) -> Result<T> {
    if !(r > T::zero() && r <= T::one()) {
        return Err(Error::InvalidRadius(r.to_f64().unwrap_or(f64::NAN)));
    }
    if m < MIN_GRID {
        return Err(Error::GridTooSmall { m, min: MIN_GRID });
    }
    Ok((0..m)
        .map(|k| c.eval_raw(grid_point::<T>(k, m).value() * r).norm())
        .fold(T::zero(), T::max))
}

/// What a [`MeanTable`] tabulates.
#[derive(Debug, Clone, PartialEq)]
pub enum MeanKind<T: Real> {
    Gauge(ConvexGauge<T>),
    Supremum,
}

/// Radii paired with mean values.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanTable<T: Real> {
    pub radii: Vec<T>,
    pub means: Vec<T>,
    pub kind: MeanKind<T>,
    pub m: usize,
}

impl<T: Real> MeanTable<T> {
    /// Each consecutive pair satisfies `mean_i <= mean_{i+1} + tol (1 + max(mean_i, mean_{i+1}))`.
    pub fn is_nondecreasing(&self, rel_tol: T) -> bool {
        self.means
            .windows(2)
            .all(|w| w[0] <= w[1] + rel_tol * (T::one() + w[0].max(w[1])))
    }

    /// Tolerance the table's own monotonicity claim is held to.
    pub fn default_tolerance(&self) -> T {
        match &self.kind {
            MeanKind::Gauge(g) if g.is_holomorphic_only() => T::tol(HOLOMORPHIC_MONOTONE_TOL),
            _ => T::tol(MONOTONE_TOL),
        }
    }

    pub fn is_monotone(&self) -> bool {
        self.is_nondecreasing(self.default_tolerance())
    }
}

fn check_radii<T: Real>(radii: &[T]) -> Result<()> {
    for &r in radii {
        if !(r > T::zero() && r < T::one()) {
            return Err(Error::InvalidRadius(r.to_f64().unwrap_or(f64::NAN)));
        }
    }
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("radii must be strictly increasing".into()));
    }
    Ok(())
}

/// Integral means over increasing radii in `(0, 1)`.
///
/// Holomorphic-only gauges are rejected for non-holomorphic input.
pub fn mean_scan<T: Real>(
    c: &LaurentCoefficients<T>,
    g: &ConvexGauge<T>,
    radii: &[T],
    m: usize,
) -> Result<MeanTable<T>> {
    check_radii(radii)?;
    if g.is_holomorphic_only() && !c.is_holomorphic() {
        return Err(Error::GaugeRequiresHolomorphic);
    }
    let means = radii.iter().map(|&r| integral_mean(c, r, g, m)).collect::<Result<_>>()?;
    Ok(MeanTable { radii: radii.to_vec(), means, kind: MeanKind::Gauge(g.clone()), m })
}

/// Sup-means over increasing radii in `(0, 1)`.
pub fn sup_scan<T: Real>(c: &LaurentCoefficients<T>, radii: &[T], m: usize) -> Result<MeanTable<T>> {
    check_radii(radii)?;
    let means = radii.iter().map(|&r| sup_mean(c, r, m)).collect::<Result<_>>()?;
    Ok(MeanTable { radii: radii.to_vec(), means, kind: MeanKind::Supremum, m })
}

/// Means of `|f|^p`, `0 < p < 1`, for holomorphic `f`.
pub fn holomorphic_subconvex_scan<T: Real>(
    c: &LaurentCoefficients<T>,
    p: T,
    radii: &[T],
    m: usize,
) -> Result<MeanTable<T>> {
    if !c.is_holomorphic() {
        return Err(Error::NotHolomorphic);
    }
    if !(p > T::zero() && p < T::one()) {
        return Err(Error::InvalidParameter(format!("exponent must lie in (0, 1), got {p}")));
    }
    mean_scan(c, &ConvexGauge::Power(p), radii, m)
}
