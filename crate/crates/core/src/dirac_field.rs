//! The reflector-form Dirac operator in M, plane-wave solutions and
//! finite-difference residual checks.
//!
//! The wave function is the reflector `Phi = [[0, phi1], [phi2, 0]]`, the Dirac
//! operator `D = i i0 d/dx0 + i_s d/ds + i_r d/dr + i3 d/dx3` and the mass term
//! `[[0, M], [-M‡, 0]]`. Expanding `(D - ie A) Phi = Phi M` blockwise gives
//!
//! ```text
//! (D  - i eA ) phi2 + phi1 M‡ = 0
//! (D‡ - i eA‡) phi1 - phi2 M  = 0
//! ```
//!
//! Public interfaces take real physical quantities. The imaginary quantities
//! of the reflector formalism are assembled internally with
//! `x0~ = -i x0`, `nu~ = -i nu`, `m~ = -i m_e`, `eta~ = -i eta`, `A0~ = A0 / i`,
//! so a constant potential energy `V` enters as the biquaternion `eA~ = -i V i0`.
//!
//! Plane waves carry the phase `exp{i(mu s - nu x0)}`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{rotated_basis, Biquaternion, BlockMatrix, RotatedBasis, I};
use crate::bohr_model::{BohrLevel, PhysicalParams};
use crate::error::{Error, Result};
use crate::geometry::{FourVectorComponents, LPoint, MPoint};

/// Relative dispersion defect above which construction is rejected.
pub const DISPERSION_TOLERANCE: f64 = 1e-9;
/// Tolerance on `M M‡ = -m_e^2` for user supplied mass terms.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// Mass term biquaternion `M`, given in the local frame `(i0, i_s, i_r, i3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassTerm {
    pub m_e: f64,
    pub m: Biquaternion,
}

impl MassTerm {
    /// `M = -i m_e i0`.
    pub fn rest(m_e: f64) -> Self {
        Self { m_e, m: Biquaternion::scalar(-I * m_e) }
    }

    /// Accepts `m` only if `M M‡ = -m_e^2`.
    pub fn new(m_e: f64, m: Biquaternion) -> Result<Self> {
        if !(m_e > 0.0) {
            return Err(Error::InvalidArgument(format!("rest mass must be positive, got {m_e}")));
        }
        let defect = (m * m.conj() + Biquaternion::scalar((m_e * m_e).into())).norm() / (m_e * m_e);
        if defect > MASS_TOLERANCE {
            return Err(Error::InvalidMassTerm { defect });
        }
        Ok(Self { m_e, m })
    }

    /// `M` expressed in the lab basis for a frame.
    pub fn in_frame(&self, basis: &RotatedBasis) -> Biquaternion {
        let [c0, cs, cr, c3] = self.m.coeffs();
        basis.combine(c0, cs, cr, c3)
    }
}

/// Potential four-vector with its coupling charge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialTerm {
    pub components: FourVectorComponents,
    /// Signed charge of the field particle (negative for the electron).
    pub charge: f64,
}

impl PotentialTerm {
    /// Constant Coulomb potential `A0 = f / R` of a nucleus with charge `f` as
    /// seen in M.
    pub fn coulomb_m(charge: f64, f: f64, bohr_radius: f64) -> Self {
        Self { components: FourVectorComponents::Polar([f / bohr_radius, 0.0, 0.0, 0.0]), charge }
    }

    /// `A~ = -i A0 i0 + i_s A_s + i_r A_r + i3 A3` for polar components, or
    /// with `(i1, i2)` for Cartesian components.
    pub fn tilde(&self, basis: &RotatedBasis) -> Biquaternion {
        let z = Complex64::from;
        match self.components {
            FourVectorComponents::Polar([a0, as_, ar, a3]) => basis.combine(-I * a0, z(as_), z(ar), z(a3)),
            FourVectorComponents::Cartesian([a0, a1, a2, a3]) => {
                Biquaternion::new(-I * a0, z(a1), z(a2), z(a3))
            }
        }
    }

    /// `e A~`.
    pub fn coupling(&self, basis: &RotatedBasis) -> Biquaternion {
        self.tilde(basis) * self.charge
    }

    /// Potential energy `e A0`.
    pub fn potential_energy(&self) -> f64 {
        self.charge * self.components.values()[0]
    }
}

/// `eA~` for a constant potential energy `v`.
pub fn constant_coupling(v: f64) -> Biquaternion {
    Biquaternion::scalar(-I * v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    /// Electron in the constant potential of the nucleus.
    Bound,
    /// The equivalent free electron, zero potential.
    Free,
}

/// Plane-wave solution with total energy `nu`, arc wave number `mu` and
/// constant potential energy `pot`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWaveSolution {
    pub nu: f64,
    pub mu: f64,
    pub pot: f64,
    pub mass: MassTerm,
    pub kind: SolutionKind,
}

impl PlaneWaveSolution {
    /// Validated constructor: `(nu - pot)^2 = m_e^2 + mu^2` to [`DISPERSION_TOLERANCE`].
    pub fn bound(nu: f64, mu: f64, pot: f64, mass: MassTerm) -> Result<Self> {
        let sol = Self { nu, mu, pot, mass, kind: SolutionKind::Bound };
        sol.validate()?;
        Ok(sol)
    }

    /// Free electron with kinetic energy `eta`.
    pub fn free(eta: f64, mu: f64, mass: MassTerm) -> Result<Self> {
        let sol = Self { nu: eta, mu, pot: 0.0, mass, kind: SolutionKind::Free };
        sol.validate()?;
        Ok(sol)
    }

    /// Bound solution of an orbit level.
    pub fn from_level(level: &BohrLevel, params: &PhysicalParams) -> Result<Self> {
        Self::bound(level.energy, level.mu, level.potential, MassTerm::rest(params.m_e))
    }

    /// The free electron equivalent to an orbit level.
    pub fn bohr_electron(level: &BohrLevel, params: &PhysicalParams) -> Result<Self> {
        Self::free(level.eta, level.mu, MassTerm::rest(params.m_e))
    }

    /// Skips validation; used for non-solution controls.
    pub fn unchecked(nu: f64, mu: f64, pot: f64, mass: MassTerm, kind: SolutionKind) -> Self {
        Self { nu, mu, pot, mass, kind }
    }

    fn validate(&self) -> Result<()> {
        if !(self.mass.m_e > 0.0) {
            return Err(Error::InvalidArgument(format!("rest mass must be positive, got {}", self.mass.m_e)));
        }
        let defect = dispersion_check(self) / (self.mass.m_e * self.mass.m_e);
        if defect.abs() > DISPERSION_TOLERANCE || !defect.is_finite() {
            return Err(Error::DispersionViolation { defect, tolerance: DISPERSION_TOLERANCE });
        }
        Ok(())
    }

    /// Kinetic term `eta = nu - pot`.
    pub fn eta(&self) -> f64 {
        self.nu - self.pot
    }

    /// `v = mu / eta`.
    pub fn velocity(&self) -> f64 {
        self.mu / self.eta()
    }

    /// The same solution with the potential removed and `nu` replaced by `eta`.
    pub fn to_free(&self) -> Self {
        Self { nu: self.eta(), pot: 0.0, kind: SolutionKind::Free, ..*self }
    }

    /// Scalar phase factor `exp{i(mu s - nu x0)}`.
    pub fn phase(&self, x0: f64, s: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.mu * s - self.nu * x0)
    }

    /// `phi2` coefficient `(eta - i mu i_s) M^-1` in a given frame.
    pub fn phi2_coefficient(&self, basis: &RotatedBasis) -> Biquaternion {
        let m_inv = self.mass.in_frame(basis).inverse().expect("mass term is invertible");
        (Biquaternion::scalar(self.eta().into()) - basis.i_s * (I * self.mu)) * m_inv
    }

    /// `(phi1, phi2)` at `p` with the frame given explicitly.
    pub fn components_in_frame(&self, p: &MPoint, basis: &RotatedBasis) -> (Biquaternion, Biquaternion) {
        let ph = self.phase(p.x0, p.s);
        (Biquaternion::scalar(ph), self.phi2_coefficient(basis) * ph)
    }

    /// Energy from the time derivative, `i d/dx0` applied to `phi1`, using
    /// a central difference of step `h`.
    pub fn energy_from_phase(&self, p: &MPoint, h: f64) -> f64 {
        let d = (self.phase(p.x0 + h, p.s) - self.phase(p.x0 - h, p.s)) / (2.0 * h);
        (I * d / self.phase(p.x0, p.s)).re
    }
}

/// `(nu - pot)^2 - mu^2 - m_e^2`.
pub fn dispersion_check(sol: &PlaneWaveSolution) -> f64 {
    let eta = sol.eta();
    eta * eta - sol.mu * sol.mu - sol.mass.m_e * sol.mass.m_e
}

/// Reflector `Phi(phi1, phi2)` at `p`, frame taken at the point's own angle.
pub fn eval_wavefunction(sol: &PlaneWaveSolution, p: &MPoint) -> BlockMatrix {
    let (phi1, phi2) = sol.components_in_frame(p, &rotated_basis(p.theta()));
    BlockMatrix::reflector(phi1, phi2)
}

/// `i d/dtheta` applied to `phi1` along the orbit `s = R theta` by central
/// difference, divided by `phi1`. Its magnitude is the angular momentum.
pub fn angular_momentum_from_phase(sol: &PlaneWaveSolution, p: &MPoint, dtheta: f64) -> f64 {
    let r = p.bohr_radius;
    let f = |theta: f64| sol.phase(p.x0, r * theta);
    let theta = p.theta();
    let d = (f(theta + dtheta) - f(theta - dtheta)) / (2.0 * dtheta);
    (I * d / f(theta)).re
}

/// Field values and their four partial derivatives at one point.
#[derive(Clone, Copy, Debug)]
pub struct LocalJet {
    pub phi1: Biquaternion,
    pub phi2: Biquaternion,
    pub d_phi1: [Biquaternion; 4],
    pub d_phi2: [Biquaternion; 4],
}

/// Applies `c0 d0 + c1 d1 + c2 d2 + c3 d3` with left-multiplied biquaternion
/// coefficients.
fn apply_operator(coeffs: &[Biquaternion; 4], d: &[Biquaternion; 4]) -> Biquaternion {
    coeffs.iter().zip(d).fold(Biquaternion::ZERO, |acc, (c, x)| acc + *c * *x)
}

/// Coefficients of `D` in a frame: `(i i0, i_s, i_r, i3)`.
pub fn dirac_operator_coeffs(basis: &RotatedBasis) -> [Biquaternion; 4] {
    [Biquaternion::scalar(I), basis.i_s, basis.i_r, Biquaternion::I3]
}

/// Coefficients of `D‡`.
pub fn dirac_operator_conj_coeffs(basis: &RotatedBasis) -> [Biquaternion; 4] {
    let [a, b, c, d] = dirac_operator_coeffs(basis);
    [a.conj(), b.conj(), c.conj(), d.conj()]
}

/// Both block equations at a point: returns
/// `((D - ieA) phi2 + phi1 M‡, (D‡ - ieA‡) phi1 - phi2 M)`.
pub fn block_equations(
    jet: &LocalJet,
    basis: &RotatedBasis,
    coupling: Biquaternion,
    mass: Biquaternion,
) -> (Biquaternion, Biquaternion) {
    let d_phi2 = apply_operator(&dirac_operator_coeffs(basis), &jet.d_phi2);
    let dc_phi1 = apply_operator(&dirac_operator_conj_coeffs(basis), &jet.d_phi1);
    let eq1 = d_phi2 - coupling * jet.phi2 * I + jet.phi1 * mass.conj();
    let eq2 = dc_phi1 - coupling.conj() * jet.phi1 * I - jet.phi2 * mass;
    (eq1, eq2)
}

/// `(D - ieA) Phi - Phi M` in reflector form for constant biquaternions
/// standing in for the derivative action `d` on the field.
pub fn reflector_equation(
    d: Biquaternion,
    coupling: Biquaternion,
    phi1: Biquaternion,
    phi2: Biquaternion,
    mass: Biquaternion,
) -> BlockMatrix {
    let op = BlockMatrix::reflector(d, d.conj());
    let pot = BlockMatrix::reflector(coupling * I, (coupling * I).conj());
    let phi = BlockMatrix::reflector(phi1, phi2);
    let m = BlockMatrix::reflector(mass, -mass.conj());
    (op - pot) * phi - phi * m
}

/// How the arc/radial frame is handled when differentiating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FrameMode {
    /// `i_s, i_r` held constant at the residual point's angle. Fields are then
    /// stored in local frame components `(i0, i_s, i_r, i3)`.
    #[default]
    Frozen,
    /// Fields use the frame at each node's own angle, so derivatives pick up
    /// `d i_s / d theta = -i_r` and `d i_r / d theta = i_s`.
    Rotating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DerivativeMode {
    /// Order-2 central differences, one-sided order-2 stencils at the edges.
    #[default]
    FiniteDifference,
    /// Closed-form derivatives of the plane wave.
    Analytic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ResidualOptions {
    pub frame: FrameMode,
    pub derivative: DerivativeMode,
}

/// Rectangular block of grid nodes in M, `origin + index * h` along
/// `(x0, s, r, x3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridRegion {
    pub origin: MPoint,
    pub nodes: [usize; 4],
}

impl GridRegion {
    pub fn new(origin: MPoint, nodes: [usize; 4]) -> Self {
        Self { origin, nodes }
    }

    /// A cube of `n` nodes per axis centred on `center`.
    pub fn centered(center: MPoint, n: usize, h: f64) -> Self {
        let half = (n.saturating_sub(1)) as f64 * h / 2.0;
        Self { origin: center.offset([-half; 4]), nodes: [n; 4] }
    }

    pub fn len(&self) -> usize {
        self.nodes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, idx: [usize; 4], h: f64) -> MPoint {
        self.origin.offset(idx.map(|i| i as f64 * h))
    }

    pub fn flat(&self, idx: [usize; 4]) -> usize {
        let n = self.nodes;
        ((idx[0] * n[1] + idx[1]) * n[2] + idx[2]) * n[3] + idx[3]
    }

    pub fn unflat(&self, mut k: usize) -> [usize; 4] {
        let n = self.nodes;
        let mut idx = [0; 4];
        for axis in (0..4).rev() {
            idx[axis] = k % n[axis];
            k /= n[axis];
        }
        idx
    }

    fn check(&self, h: f64) -> Result<()> {
        for (axis, &nodes) in self.nodes.iter().enumerate() {
            if nodes < 3 {
                return Err(Error::DegenerateGrid { axis, nodes });
            }
        }
        if !(h > 0.0) {
            return Err(Error::InvalidArgument(format!("grid spacing must be positive, got {h}")));
        }
        if !(self.origin.r > 0.0) {
            return Err(Error::RegionOnAxis(self.origin.r));
        }
        Ok(())
    }
}

/// A solution sampled on a uniform grid.
#[derive(Clone, Debug)]
pub struct SampledField {
    pub region: GridRegion,
    pub h: f64,
    pub frame: FrameMode,
    pub values: Vec<BlockMatrix>,
}

impl SampledField {
    pub fn sample(sol: &PlaneWaveSolution, region: GridRegion, h: f64, frame: FrameMode) -> Result<Self> {
        region.check(h)?;
        let local = rotated_basis(0.0);
        let values = (0..region.len())
            .into_par_iter()
            .map(|k| {
                let p = region.point(region.unflat(k), h);
                let basis = match frame {
                    FrameMode::Frozen => local,
                    FrameMode::Rotating => rotated_basis(p.theta()),
                };
                let (phi1, phi2) = sol.components_in_frame(&p, &basis);
                BlockMatrix::reflector(phi1, phi2)
            })
            .collect();
        Ok(Self { region, h, frame, values })
    }

    pub fn at(&self, idx: [usize; 4]) -> &BlockMatrix {
        &self.values[self.region.flat(idx)]
    }

    /// Order-2 derivative along `axis` at `idx`, for `(phi1, phi2)`.
    pub fn derivative(&self, idx: [usize; 4], axis: usize) -> (Biquaternion, Biquaternion) {
        let n = self.region.nodes[axis];
        let i = idx[axis];
        let at = |j: usize| {
            let mut k = idx;
            k[axis] = j;
            let b = self.at(k);
            (b.a12, b.a21)
        };
        let inv = 0.5 / self.h;
        let combine = |w: [(f64, usize); 3]| {
            w.iter().fold((Biquaternion::ZERO, Biquaternion::ZERO), |(a, b), &(c, j)| {
                let (p1, p2) = at(j);
                (a + p1 * (c * inv), b + p2 * (c * inv))
            })
        };
        if i == 0 {
            combine([(-3.0, 0), (4.0, 1), (-1.0, 2)])
        } else if i == n - 1 {
            combine([(3.0, n - 1), (-4.0, n - 2), (1.0, n - 3)])
        } else {
            combine([(1.0, i + 1), (-1.0, i - 1), (0.0, i)])
        }
    }

    pub fn jet(&self, idx: [usize; 4]) -> LocalJet {
        let b = self.at(idx);
        let mut d_phi1 = [Biquaternion::ZERO; 4];
        let mut d_phi2 = [Biquaternion::ZERO; 4];
        for axis in 0..4 {
            let (a, c) = self.derivative(idx, axis);
            d_phi1[axis] = a;
            d_phi2[axis] = c;
        }
        LocalJet { phi1: b.a12, phi2: b.a21, d_phi1, d_phi2 }
    }
}

/// Closed-form jet of a plane-wave solution.
pub fn analytic_jet(sol: &PlaneWaveSolution, p: &MPoint, frame: FrameMode) -> LocalJet {
    let basis = match frame {
        FrameMode::Frozen => rotated_basis(0.0),
        FrameMode::Rotating => rotated_basis(p.theta()),
    };
    let ph = sol.phase(p.x0, p.s);
    let coeff = sol.phi2_coefficient(&basis);
    let phi1 = Biquaternion::scalar(ph);
    let phi2 = coeff * ph;
    let dt = Complex64::new(0.0, -sol.nu);
    let ds = Complex64::new(0.0, sol.mu);
    let mut d_phi2_s = phi2 * ds;
    if frame == FrameMode::Rotating {
        // d/ds of (eta - i mu i_s) M^-1 through theta = s / R
        let inv_r = 1.0 / p.bohr_radius;
        let m = sol.mass.in_frame(&basis);
        let m_inv = m.inverse().expect("mass term is invertible");
        let [_, ms, mr, _] = sol.mass.m.coeffs();
        let dm = (basis.d_i_s() * ms + basis.d_i_r() * mr) * inv_r;
        let d_front = basis.d_i_s() * (-I * sol.mu * inv_r);
        let front = Biquaternion::scalar(sol.eta().into()) - basis.i_s * (I * sol.mu);
        let d_coeff = d_front * m_inv - front * m_inv * dm * m_inv;
        d_phi2_s += d_coeff * ph;
    }
    LocalJet {
        phi1,
        phi2,
        d_phi1: [phi1 * dt, phi1 * ds, Biquaternion::ZERO, Biquaternion::ZERO],
        d_phi2: [phi2 * dt, d_phi2_s, Biquaternion::ZERO, Biquaternion::ZERO],
    }
}

fn check_spacing(sol: &PlaneWaveSolution, h: f64) -> Result<()> {
    let product = sol.mu.abs() * h;
    if product >= 0.1 {
        return Err(Error::SpacingTooCoarse { h, product });
    }
    Ok(())
}

/// Maximum over grid nodes of the larger block-equation norm.
pub fn dirac_residual(sol: &PlaneWaveSolution, region: &GridRegion, h: f64, opts: ResidualOptions) -> Result<f64> {
    region.check(h)?;
    check_spacing(sol, h)?;
    let coupling = constant_coupling(sol.pot);
    let node_basis = |p: &MPoint| match opts.frame {
        FrameMode::Frozen => rotated_basis(0.0),
        FrameMode::Rotating => rotated_basis(p.theta()),
    };
    let residual_at = |jet: LocalJet, p: &MPoint| {
        let basis = node_basis(p);
        let mass = sol.mass.in_frame(&basis);
        let (a, b) = block_equations(&jet, &basis, coupling, mass);
        a.norm().max(b.norm())
    };
    let max = match opts.derivative {
        DerivativeMode::FiniteDifference => {
            let field = SampledField::sample(sol, *region, h, opts.frame)?;
            (0..region.len())
                .into_par_iter()
                .map(|k| {
                    let idx = region.unflat(k);
                    residual_at(field.jet(idx), &region.point(idx, h))
                })
                .reduce(|| 0.0, f64::max)
        }
        DerivativeMode::Analytic => (0..region.len())
            .into_par_iter()
            .map(|k| {
                let p = region.point(region.unflat(k), h);
                residual_at(analytic_jet(sol, &p, opts.frame), &p)
            })
            .reduce(|| 0.0, f64::max),
    };
    Ok(max)
}

/// Residuals at successively halved spacings `h, h/2, ...`.
pub fn residual_refinement(
    sol: &PlaneWaveSolution,
    center: MPoint,
    nodes_per_axis: usize,
    spacings: &[f64],
    opts: ResidualOptions,
) -> Result<Vec<f64>> {
    spacings
        .iter()
        .map(|&h| dirac_residual(sol, &GridRegion::centered(center, nodes_per_axis, h), h, opts))
        .collect()
}

/// Least-squares slope of `ln(residual)` against `ln(h)`.
pub fn convergence_slope(spacings: &[f64], residuals: &[f64]) -> Result<f64> {
    if spacings.len() != residuals.len() || spacings.len() < 2 {
        return Err(Error::InvalidArgument("need at least two (h, residual) pairs".into()));
    }
    if residuals.iter().chain(spacings).any(|&x| !(x > 0.0)) {
        return Err(Error::InvalidArgument("spacings and residuals must be positive".into()));
    }
    let xs: Vec<f64> = spacings.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

fn cartesian_offset(p: &LPoint, axis: usize, delta: f64) -> LPoint {
    let mut q = *p;
    match axis {
        0 => q.x0 += delta,
        1 => q.x1 += delta,
        2 => q.x2 += delta,
        _ => q.x3 += delta,
    }
    q
}

/// Central-difference `D` (or `D‡`) of a biquaternion field in Cartesian L.
fn apply_fd<F: Fn(&LPoint) -> Biquaternion>(field: &F, p: &LPoint, h: f64, conj: bool) -> Biquaternion {
    let coeffs = if conj {
        dirac_operator_conj_coeffs(&rotated_basis(0.0))
    } else {
        dirac_operator_coeffs(&rotated_basis(0.0))
    };
    let d: [Biquaternion; 4] = std::array::from_fn(|axis| {
        (field(&cartesian_offset(p, axis, h)) - field(&cartesian_offset(p, axis, -h))) * (0.5 / h)
    });
    apply_operator(&coeffs, &d)
}

/// `D D‡` applied by composing two central-difference first-derivative
/// operators to a biquaternion field.
pub fn composite_dd_conj<F: Fn(&LPoint) -> Biquaternion>(field: F, p: &LPoint, h: f64) -> Biquaternion {
    let inner = |q: &LPoint| apply_fd(&field, q, h, true);
    apply_fd(&inner, p, h, false)
}

/// Largest `|D D‡ A|` over the sample points for the static Coulomb field
/// `A = f / a`. The source term vanishes away from the nucleus.
pub fn photon_residual_coulomb(f: f64, points: &[LPoint], h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("grid spacing must be positive, got {h}")));
    }
    for p in points {
        let a = p.spatial_distance();
        if a < 10.0 * h {
            return Err(Error::TooCloseToSource { distance: a, limit: 10.0 * h });
        }
    }
    let field = |q: &LPoint| Biquaternion::scalar((f / q.spatial_distance()).into());
    Ok(points
        .par_iter()
        .map(|p| composite_dd_conj(field, p, h).norm())
        .reduce(|| 0.0, f64::max))
}
