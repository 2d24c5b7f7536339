//! Coordinates of the ordinary space L and the mapped space M.
//!
//! L carries Cartesian `(x0, x1, x2, x3)` and the polar chart
//! `x1 = r sin(theta)`, `x2 = r cos(theta)` with arc `s' = r theta`.
//! M shares `x0, r, x3` and replaces the arc by `s = R theta`, where the Bohr
//! radius `R` is a fixed chart parameter, so that `s' = (r / R) s`.
//!
//! Polar angles are normalized to `(-pi, pi]` when computed from Cartesian
//! points. The M arc coordinate `s` is never reduced modulo `2 pi R`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Radii below this are treated as lying on the `x3` axis.
pub const AXIS_CUTOFF: f64 = 1e-300;

fn check_radius(what: &'static str, value: f64) -> Result<()> {
    if value.abs() < AXIS_CUTOFF || value < 0.0 {
        return Err(Error::Singular { what, value });
    }
    Ok(())
}

fn check_bohr_radius(bohr_radius: f64) -> Result<()> {
    if !(bohr_radius > 0.0) {
        return Err(Error::NonPositiveRadius(bohr_radius));
    }
    Ok(())
}

/// Cartesian point of L.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LPoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl LPoint {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    /// Distance from the spatial origin.
    pub fn spatial_distance(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }
}

/// Polar chart point `(x0, r, theta, x3)` of L.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarPoint {
    pub x0: f64,
    pub r: f64,
    pub theta: f64,
    pub x3: f64,
}

impl PolarPoint {
    pub fn new(x0: f64, r: f64, theta: f64, x3: f64) -> Self {
        Self { x0, r, theta, x3 }
    }

    /// Arc length `s' = r theta` in L.
    pub fn arc(&self) -> f64 {
        self.r * self.theta
    }

    /// Same point with `theta` reduced to `(-pi, pi]`.
    pub fn normalized(&self) -> Self {
        Self { theta: normalize_angle(self.theta), ..*self }
    }
}

/// Reduces an angle to `(-pi, pi]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

/// Point of M, `(x0, s, r, x3)` with its chart's Bohr radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MPoint {
    pub x0: f64,
    pub s: f64,
    pub r: f64,
    pub x3: f64,
    pub bohr_radius: f64,
}

impl MPoint {
    pub fn new(x0: f64, s: f64, r: f64, x3: f64, bohr_radius: f64) -> Result<Self> {
        check_bohr_radius(bohr_radius)?;
        Ok(Self { x0, s, r, x3, bohr_radius })
    }

    /// Polar angle `theta = s / R` (unreduced).
    pub fn theta(&self) -> f64 {
        self.s / self.bohr_radius
    }

    /// The corresponding arc in L, `s' = (r / R) s`.
    pub fn arc_in_l(&self) -> f64 {
        self.r / self.bohr_radius * self.s
    }

    /// Coordinates as an array in axis order `(x0, s, r, x3)`.
    pub fn coords(&self) -> [f64; 4] {
        [self.x0, self.s, self.r, self.x3]
    }

    /// Point displaced by `delta` along each axis, same chart.
    pub fn offset(&self, delta: [f64; 4]) -> Self {
        Self {
            x0: self.x0 + delta[0],
            s: self.s + delta[1],
            r: self.r + delta[2],
            x3: self.x3 + delta[3],
            bohr_radius: self.bohr_radius,
        }
    }
}

/// Cartesian to polar; `theta` in `(-pi, pi]`.
pub fn to_polar(p: LPoint) -> Result<PolarPoint> {
    let r = p.x1.hypot(p.x2);
    if r < AXIS_CUTOFF {
        return Err(Error::DegenerateOrigin { r });
    }
    let mut theta = p.x1.atan2(p.x2);
    if theta == -PI {
        theta = PI;
    }
    Ok(PolarPoint::new(p.x0, r, theta, p.x3))
}

pub fn from_polar(p: PolarPoint) -> LPoint {
    let (s, c) = p.theta.sin_cos();
    LPoint::new(p.x0, p.r * s, p.r * c, p.x3)
}

/// L polar point to M: `s = R theta`.
pub fn l_to_m(p: PolarPoint, bohr_radius: f64) -> Result<MPoint> {
    MPoint::new(p.x0, bohr_radius * p.theta, p.r, p.x3, bohr_radius)
}

/// M point back to the L polar chart: `theta = s / R`.
pub fn m_to_l(p: MPoint) -> PolarPoint {
    PolarPoint::new(p.x0, p.r, p.theta(), p.x3)
}

/// `s' = (r / R) s`.
pub fn arc_m_to_l(s: f64, r: f64, bohr_radius: f64) -> Result<f64> {
    check_bohr_radius(bohr_radius)?;
    Ok(r / bohr_radius * s)
}

/// `s = (R / r) s'`.
pub fn arc_l_to_m(s_prime: f64, r: f64, bohr_radius: f64) -> Result<f64> {
    check_bohr_radius(bohr_radius)?;
    check_radius("r", r)?;
    Ok(bohr_radius / r * s_prime)
}

/// Volume element ratio `dV^M / dV^L = R / r`.
pub fn volume_ratio(r: f64, bohr_radius: f64) -> Result<f64> {
    check_bohr_radius(bohr_radius)?;
    check_radius("r", r)?;
    Ok(bohr_radius / r)
}

/// Rescales an L potential value into M: `A^M = A r / R`.
pub fn potential_to_m(a_value: f64, r: f64, bohr_radius: f64) -> Result<f64> {
    check_bohr_radius(bohr_radius)?;
    check_radius("r", r)?;
    Ok(a_value * r / bohr_radius)
}

/// Coulomb potential `f / r` evaluated in L and carried into M. The result is
/// `f / R` for every `r`.
pub fn coulomb_potential_m(f: f64, r: f64, bohr_radius: f64) -> Result<f64> {
    check_radius("r", r)?;
    potential_to_m(f / r, r, bohr_radius)
}

/// Infinitesimal displacement in the polar chart.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct PolarDisplacement {
    pub dx0: f64,
    pub dr: f64,
    pub dtheta: f64,
    pub dx3: f64,
}

/// Infinitesimal displacement in M coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct MDisplacement {
    pub dx0: f64,
    pub ds: f64,
    pub dr: f64,
    pub dx3: f64,
}

impl PolarDisplacement {
    /// The same displacement in M coordinates, `ds = R dtheta`.
    pub fn to_m(&self, bohr_radius: f64) -> MDisplacement {
        MDisplacement { dx0: self.dx0, ds: bohr_radius * self.dtheta, dr: self.dr, dx3: self.dx3 }
    }
}

/// `dtau_L^2 = dx0^2 + r^2 dtheta^2 + dr^2 + dx3^2` at `p`.
///
/// The quadratic form is all-plus as written for both spaces; no Lorentzian
/// signature is imposed here.
pub fn metric_interval_l(p: &PolarPoint, d: &PolarDisplacement) -> f64 {
    d.dx0 * d.dx0 + p.r * p.r * d.dtheta * d.dtheta + d.dr * d.dr + d.dx3 * d.dx3
}

/// `dtau_M^2 = dx0^2 + ds^2 + dr^2 + dx3^2`. The form is the same at every point of M.
pub fn metric_interval_m(_p: &MPoint, d: &MDisplacement) -> f64 {
    d.dx0 * d.dx0 + d.ds * d.ds + d.dr * d.dr + d.dx3 * d.dx3
}

/// Components of a four-vector in one of the two charts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FourVectorComponents {
    /// `(V0, V1, V2, V3)`.
    Cartesian([f64; 4]),
    /// `(V0, V_s, V_r, V3)`: arc and radial components.
    Polar([f64; 4]),
}

impl FourVectorComponents {
    /// Rotates `(V1, V2)` into `(V_s, V_r)` at polar angle `theta`. Already-polar
    /// input is returned unchanged.
    pub fn to_polar(self, theta: f64) -> Self {
        match self {
            Self::Cartesian([v0, v1, v2, v3]) => {
                let (s, c) = theta.sin_cos();
                Self::Polar([v0, v1 * c - v2 * s, v1 * s + v2 * c, v3])
            }
            p @ Self::Polar(_) => p,
        }
    }

    /// `V1 = V_r sin + V_s cos`, `V2 = V_r cos - V_s sin`.
    pub fn to_cartesian(self, theta: f64) -> Self {
        match self {
            Self::Polar([v0, vs, vr, v3]) => {
                let (s, c) = theta.sin_cos();
                Self::Cartesian([v0, vr * s + vs * c, vr * c - vs * s, v3])
            }
            c @ Self::Cartesian(_) => c,
        }
    }

    pub fn values(&self) -> [f64; 4] {
        match *self {
            Self::Cartesian(v) | Self::Polar(v) => v,
        }
    }

    /// Euclidean norm of the spatial `(1, 2)` block, which both charts share.
    pub fn plane_norm(&self) -> f64 {
        let v = self.values();
        v[1].hypot(v[2])
    }
}

/// [`FourVectorComponents::to_polar`] as a free function.
pub fn four_vector_to_polar(v: FourVectorComponents, theta: f64) -> FourVectorComponents {
    v.to_polar(theta)
}

/// [`FourVectorComponents::to_cartesian`] as a free function.
pub fn four_vector_to_cartesian(v: FourVectorComponents, theta: f64) -> FourVectorComponents {
    v.to_cartesian(theta)
}
