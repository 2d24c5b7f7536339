//! Probability seen in L for an electron spread uniformly over M, and the
//! averages over orbit orientations that make it spherically symmetric.
//!
//! A single orbit state gives `P^L = R P^M / r` with `r` the distance to the
//! orbit axis. Averaging over all axis orientations for a point at distance
//! `a` from the centre gives `mean(r) = pi a / 4` and `mean(1/r) = pi / (2a)`.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::AXIS_CUTOFF;

pub const DEFAULT_PANELS: usize = 10_000;

fn check_positive(what: &'static str, value: f64) -> Result<()> {
    if !(value >= AXIS_CUTOFF) || !value.is_finite() {
        return Err(Error::Singular { what, value });
    }
    Ok(())
}

/// `P^L = R P^M / r`.
pub fn pl_from_pm(p_m: f64, r: f64, bohr_radius: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_m) {
        return Err(Error::InvalidArgument(format!("probability {p_m} outside [0, 1]")));
    }
    if !(bohr_radius > 0.0) {
        return Err(Error::NonPositiveRadius(bohr_radius));
    }
    check_positive("r", r)?;
    Ok(bohr_radius * p_m / r)
}

/// Composite midpoint rule on `[lo, hi]`.
pub fn midpoint<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let w = (hi - lo) / panels as f64;
    (0..panels).map(|k| f(lo + (k as f64 + 0.5) * w)).sum::<f64>() * w
}

pub fn sphere_area(a: f64) -> Result<f64> {
    check_positive("a", a)?;
    Ok(4.0 * PI * a * a)
}

/// Surface of revolution `int_0^pi 2 pi a^2 sin(t) dt` by quadrature.
pub fn sphere_area_quadrature(a: f64, panels: usize) -> Result<f64> {
    check_positive("a", a)?;
    check_panels(panels)?;
    Ok(midpoint(|t| 2.0 * PI * a * a * t.sin(), 0.0, PI, panels))
}

fn check_panels(panels: usize) -> Result<()> {
    if panels == 0 {
        return Err(Error::InvalidArgument("quadrature needs at least one panel".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AverageMethod {
    ClosedForm,
    Quadrature { panels: usize },
    /// Uniform directions from a seeded generator; the sample count is split
    /// across `workers` independent streams.
    MonteCarlo { samples: u64, seed: u64, workers: u32 },
}

impl AverageMethod {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ClosedForm => "closed-form",
            Self::Quadrature { .. } => "quadrature",
            Self::MonteCarlo { .. } => "monte-carlo",
        }
    }
}

impl fmt::Display for AverageMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereAverageResult {
    pub a: f64,
    pub mean_distance: f64,
    pub mean_inverse_distance: f64,
    pub method: AverageMethod,
    /// Standard errors of the Monte Carlo means. The inverse-distance
    /// estimator has infinite variance, so its error estimate is unreliable.
    pub distance_std_error: Option<f64>,
    pub inverse_std_error: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    count: u64,
    sum_d: f64,
    sum_d2: f64,
    sum_inv: f64,
    sum_inv2: f64,
}

impl Moments {
    fn merge(self, o: Self) -> Self {
        Self {
            count: self.count + o.count,
            sum_d: self.sum_d + o.sum_d,
            sum_d2: self.sum_d2 + o.sum_d2,
            sum_inv: self.sum_inv + o.sum_inv,
            sum_inv2: self.sum_inv2 + o.sum_inv2,
        }
    }

    fn mean_and_error(n: f64, sum: f64, sum2: f64) -> (f64, f64) {
        let mean = sum / n;
        let var = (sum2 / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
        (mean, (var / n).sqrt())
    }
}

/// Uniform direction on the unit sphere: uniform azimuth and uniform `cos`.
pub fn sample_direction<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let cos_t: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let sin_t = (1.0 - cos_t * cos_t).sqrt();
    [sin_t * phi.cos(), sin_t * phi.sin(), cos_t]
}

fn worker_moments(a: f64, samples: u64, seed: u64, worker: u32) -> Moments {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(worker));
    let mut m = Moments::default();
    while m.count < samples {
        let [x, y, _] = sample_direction(&mut rng);
        // distance from the point to the fixed x3 axis
        let d = a * x.hypot(y);
        if d == 0.0 {
            continue;
        }
        m.count += 1;
        m.sum_d += d;
        m.sum_d2 += d * d;
        m.sum_inv += 1.0 / d;
        m.sum_inv2 += 1.0 / (d * d);
    }
    m
}

fn monte_carlo(a: f64, samples: u64, seed: u64, workers: u32) -> Result<Moments> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let workers = workers.max(1);
    let base = samples / u64::from(workers);
    let extra = samples % u64::from(workers);
    let parts: Vec<Moments> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let n = base + u64::from(u64::from(w) < extra);
            worker_moments(a, n, seed, w)
        })
        .collect();
    // merge in worker order so the result does not depend on scheduling
    Ok(parts.into_iter().fold(Moments::default(), Moments::merge))
}

/// Average distance from a point on the sphere of radius `a` to a uniformly
/// oriented axis through the centre.
pub fn mean_axis_distance(a: f64, method: AverageMethod) -> Result<f64> {
    Ok(sphere_average(a, method)?.mean_distance)
}

/// Average inverse distance to the axis.
pub fn mean_axis_inverse_distance(a: f64, method: AverageMethod) -> Result<f64> {
    Ok(sphere_average(a, method)?.mean_inverse_distance)
}

pub fn sphere_average(a: f64, method: AverageMethod) -> Result<SphereAverageResult> {
    check_positive("a", a)?;
    let mut out = SphereAverageResult {
        a,
        mean_distance: 0.0,
        mean_inverse_distance: 0.0,
        method,
        distance_std_error: None,
        inverse_std_error: None,
    };
    match method {
        AverageMethod::ClosedForm => {
            out.mean_distance = PI * a / 4.0;
            out.mean_inverse_distance = PI / (2.0 * a);
        }
        AverageMethod::Quadrature { panels } => {
            check_panels(panels)?;
            let area = sphere_area(a)?;
            // distance r = a sin(t) weighted by the ring 2 pi a^2 sin(t)
            let ring = |t: f64| 2.0 * PI * a * a * t.sin();
            out.mean_distance = midpoint(|t| a * t.sin() * ring(t), 0.0, PI, panels) / area;
            out.mean_inverse_distance = midpoint(|t| ring(t) / (a * t.sin()), 0.0, PI, panels) / area;
        }
        AverageMethod::MonteCarlo { samples, seed, workers } => {
            let m = monte_carlo(a, samples, seed, workers)?;
            let n = m.count as f64;
            let (md, ed) = Moments::mean_and_error(n, m.sum_d, m.sum_d2);
            let (mi, ei) = Moments::mean_and_error(n, m.sum_inv, m.sum_inv2);
            out.mean_distance = md;
            out.mean_inverse_distance = mi;
            out.distance_std_error = Some(ed);
            out.inverse_std_error = Some(ei);
        }
    }
    Ok(out)
}

/// `mean(P^L) = pi R P^M / (2a)`.
pub fn averaged_probability(p_m: f64, bohr_radius: f64, a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_m) {
        return Err(Error::InvalidArgument(format!("probability {p_m} outside [0, 1]")));
    }
    if !(bohr_radius > 0.0) {
        return Err(Error::NonPositiveRadius(bohr_radius));
    }
    check_positive("a", a)?;
    Ok(PI * bohr_radius * p_m / (2.0 * a))
}

/// Orientation-averaged Coulomb potential magnitude `f pi / (2a)`.
pub fn averaged_potential(f: f64, a: f64) -> Result<f64> {
    check_positive("a", a)?;
    Ok(f * PI / (2.0 * a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityLaw {
    /// Single orbit state, `P^L = R P^M / r`.
    Single,
    /// Orientation average, `P^L = pi R P^M / (2a)`.
    Averaged,
}

impl DensityLaw {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Single => "single",
            Self::Averaged => "averaged",
        }
    }
}

impl fmt::Display for DensityLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityProfile {
    pub law: DensityLaw,
    pub p_m: f64,
    pub bohr_radius: f64,
    /// `(r or a, probability)`.
    pub points: Vec<(f64, f64)>,
}

pub fn density_profile(law: DensityLaw, p_m: f64, bohr_radius: f64, distances: &[f64]) -> Result<DensityProfile> {
    let points = distances
        .iter()
        .map(|&x| {
            let v = match law {
                DensityLaw::Single => pl_from_pm(p_m, x, bohr_radius)?,
                DensityLaw::Averaged => averaged_probability(p_m, bohr_radius, x)?,
            };
            Ok((x, v))
        })
        .collect::<Result<_>>()?;
    Ok(DensityProfile { law, p_m, bohr_radius, points })
}
