//! Circular-orbit levels of the bound two-body state.
//!
//! A level solves the force balance `g / R = m v^2 gamma` together with the
//! quantization `m v R gamma = n`, with `gamma = 1 / sqrt(1 - v^2)` and
//! `hbar = c = 1`. Dividing the two gives `v = g / n` in closed form, from which
//! every other quantity follows. Total energy is `E = m / gamma = eta + V`
//! with kinetic term `eta = gamma m` and potential energy `V = -g / R`.
//!
//! All quantities here are in natural units with the rest mass as the energy
//! scale. Conversion to eV happens only at presentation time through
//! [`Constants`].

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// CODATA 2018 fine-structure constant.
pub const CODATA_ALPHA: f64 = 7.297_352_569_3e-3;
/// CODATA 2018 electron rest energy in eV.
pub const CODATA_ELECTRON_MASS_EV: f64 = 510_998.95;

/// Presentation constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub alpha: f64,
    pub electron_mass_ev: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self { alpha: CODATA_ALPHA, electron_mass_ev: CODATA_ELECTRON_MASS_EV }
    }
}

impl Constants {
    /// Unit-mass parameters for a nucleus of charge number `z`: `g = z alpha`.
    pub fn hydrogen_like(&self, z: f64) -> PhysicalParams {
        PhysicalParams { m_e: 1.0, g: z * self.alpha }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalParams {
    /// Rest mass of the orbiting particle.
    pub m_e: f64,
    /// Attractive coupling, `Z alpha` for a hydrogen-like atom.
    pub g: f64,
}

impl PhysicalParams {
    pub fn new(m_e: f64, g: f64) -> Result<Self> {
        if !(m_e > 0.0) || !m_e.is_finite() {
            return Err(Error::InvalidArgument(format!("rest mass must be positive, got {m_e}")));
        }
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::InvalidArgument(format!("coupling must be positive, got {g}")));
        }
        Ok(Self { m_e, g })
    }

    fn check(&self) -> Result<()> {
        Self::new(self.m_e, self.g).map(|_| ())
    }
}

/// Sense of circulation around the nucleus. `Negative` corresponds to a
/// negative quantum number and flips the wave number and angular momentum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Circulation {
    #[default]
    Positive,
    Negative,
}

impl Circulation {
    pub fn sign(self) -> f64 {
        match self {
            Self::Positive => 1.0,
            Self::Negative => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BohrLevel {
    pub n: u32,
    /// Orbital speed as a fraction of c.
    pub v: f64,
    pub radius: f64,
    /// Total energy `nu`.
    pub energy: f64,
    /// Kinetic term `eta = gamma m`.
    pub eta: f64,
    /// Potential energy `-g / R`.
    pub potential: f64,
    /// Wave number along the arc, signed by circulation.
    pub mu: f64,
    /// `gamma m v R`, signed by circulation.
    pub angular_momentum: f64,
    pub circulation: Circulation,
}

impl BohrLevel {
    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.v * self.v).sqrt()
    }

    /// Binding energy `E - m`.
    pub fn binding(&self, params: &PhysicalParams) -> f64 {
        self.energy - params.m_e
    }

    /// The same orbit traversed the other way.
    pub fn reversed(&self) -> Self {
        let circulation = match self.circulation {
            Circulation::Positive => Circulation::Negative,
            Circulation::Negative => Circulation::Positive,
        };
        Self { mu: -self.mu, angular_momentum: -self.angular_momentum, circulation, ..*self }
    }

    /// Relative residuals of the force balance and the quantization condition.
    pub fn plug_back(&self, params: &PhysicalParams) -> (f64, f64) {
        let g = self.gamma();
        let lhs = params.g / self.radius;
        let rhs = params.m_e * self.v * self.v * g;
        let first = (lhs - rhs).abs() / lhs.abs();
        let n = f64::from(self.n);
        let second = (params.m_e * self.v * self.radius * g - n).abs() / n;
        (first, second)
    }
}

fn check_principal(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidPrincipal(0));
    }
    Ok(())
}

/// Solves both orbit equations for level `n` in closed form.
pub fn solve_level(params: &PhysicalParams, n: u32) -> Result<BohrLevel> {
    params.check()?;
    check_principal(n)?;
    let nf = f64::from(n);
    let v = params.g / nf;
    if v >= 1.0 {
        return Err(Error::SupercriticalCoupling { ratio: v });
    }
    let root = (1.0 - v * v).sqrt();
    let gamma = 1.0 / root;
    let radius = nf / (params.m_e * v * gamma);
    let eta = gamma * params.m_e;
    Ok(BohrLevel {
        n,
        v,
        radius,
        energy: params.m_e * root,
        eta,
        potential: -params.g / radius,
        mu: eta * v,
        angular_momentum: eta * v * radius,
        circulation: Circulation::Positive,
    })
}

/// Levels `1..=n_max`.
pub fn spectrum(params: &PhysicalParams, n_max: u32) -> Result<Vec<BohrLevel>> {
    (1..=n_max).map(|n| solve_level(params, n)).collect()
}

/// Textbook Dirac one-electron energy for principal number `n` and
/// `kappa = j + 1/2`:
/// `E = m [1 + (g / (n - kappa + sqrt(kappa^2 - g^2)))^2]^(-1/2)`.
pub fn dirac_energy_general(params: &PhysicalParams, n: u32, kappa: u32) -> Result<f64> {
    params.check()?;
    check_principal(n)?;
    if kappa == 0 || kappa > n {
        return Err(Error::InvalidArgument(format!("kappa = {kappa} must lie in 1..={n}")));
    }
    let k = f64::from(kappa);
    if params.g >= k {
        return Err(Error::SupercriticalCoupling { ratio: params.g / k });
    }
    let denom = f64::from(n) - k + (k * k - params.g * params.g).sqrt();
    let x = params.g / denom;
    Ok(params.m_e / (1.0 + x * x).sqrt())
}

/// Dirac energy of the level with zero radial quantum number and `j = n - 1/2`.
pub fn dirac_energy(params: &PhysicalParams, n: u32) -> Result<f64> {
    check_principal(n)?;
    if params.g >= f64::from(n) {
        return Err(Error::SupercriticalCoupling { ratio: params.g / f64::from(n) });
    }
    dirac_energy_general(params, n, n)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionResult {
    pub n_from: u32,
    pub n_to: u32,
    pub energy_from: f64,
    pub energy_to: f64,
    /// `E_from - E_to`, positive for emission.
    pub delta_e: f64,
}

pub fn transition(params: &PhysicalParams, n_from: u32, n_to: u32) -> Result<TransitionResult> {
    let from = solve_level(params, n_from)?;
    let to = solve_level(params, n_to)?;
    Ok(TransitionResult {
        n_from,
        n_to,
        energy_from: from.energy,
        energy_to: to.energy,
        delta_e: from.energy - to.energy,
    })
}

/// Direction the orbit must move to absorb an energy imbalance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitShift {
    Higher,
    Lower,
    OnShell,
}

impl fmt::Display for OrbitShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Higher => "higher",
            Self::Lower => "lower",
            Self::OnShell => "on-shell",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Imbalance {
    pub n: u32,
    /// On-shell speed `g / n`.
    pub v: f64,
    pub v_e: f64,
    /// On-shell radius.
    pub radius: f64,
    /// Radius keeping `gamma_e m v_e R_e = n`.
    pub radius_e: f64,
    /// `gamma_e m v_e (v - v_e)`.
    pub delta_n: f64,
}

impl Imbalance {
    pub fn shift(&self) -> OrbitShift {
        if self.delta_n > 0.0 {
            OrbitShift::Higher
        } else if self.delta_n < 0.0 {
            OrbitShift::Lower
        } else {
            OrbitShift::OnShell
        }
    }
}

/// Energy imbalance for an electron at speed `v_e` under the level-`n`
/// quantization condition.
pub fn energy_imbalance(params: &PhysicalParams, n: u32, v_e: f64) -> Result<Imbalance> {
    if !(v_e > 0.0 && v_e < 1.0) {
        return Err(Error::VelocityOutOfRange(v_e));
    }
    let level = solve_level(params, n)?;
    let gamma_e = 1.0 / (1.0 - v_e * v_e).sqrt();
    let p_e = gamma_e * params.m_e * v_e;
    Ok(Imbalance {
        n,
        v: level.v,
        v_e,
        radius: level.radius,
        radius_e: f64::from(n) / p_e,
        delta_n: p_e * (level.v - v_e),
    })
}

/// `m_x3` eigenvalue `gamma m v R` of the level, in units of hbar.
pub fn angular_momentum_eigenvalue(level: &BohrLevel) -> f64 {
    level.circulation.sign() * level.eta * level.v * level.radius
}

/// A value `k / 2` stored as the integer `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(pub i64);

impl HalfInteger {
    pub fn from_int(k: i64) -> Self {
        Self(2 * k)
    }

    pub fn half() -> Self {
        Self(1)
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn twice(self) -> i64 {
        self.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plus => "+",
            Self::Minus => "-",
        })
    }
}

/// One way of writing `E = O ± S ± B` with `S = B = 1/2` and equal signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionCandidate {
    pub orbital: u32,
    pub sign: Sign,
    /// Dirac total angular momentum `D = O ± S`.
    pub dirac_total: HalfInteger,
}

impl DecompositionCandidate {
    /// Phase changes `(alpha_1, alpha_2)`, each `±pi` with the candidate's sign.
    pub fn phases(&self) -> (f64, f64) {
        let p = self.sign.value() as f64 * PI;
        (p, p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngularDecomposition {
    pub total: u32,
    pub candidates: Vec<DecompositionCandidate>,
}

/// Enumerates the candidates for total angular momentum `total >= 1`.
pub fn decompose_angular_momentum(total: i64) -> Result<AngularDecomposition> {
    if total < 1 {
        return Err(Error::SelectionRule(total));
    }
    let mut candidates = Vec::with_capacity(2);
    for sign in [Sign::Plus, Sign::Minus] {
        // E = O + sign (S + B) = O + sign
        let orbital = total - sign.value();
        if orbital >= 0 {
            candidates.push(DecompositionCandidate {
                orbital: orbital as u32,
                sign,
                dirac_total: HalfInteger(2 * orbital + sign.value()),
            });
        }
    }
    candidates.sort_by_key(|c| c.orbital);
    Ok(AngularDecomposition { total: total as u32, candidates })
}

/// Bookkeeping for a superposition in which clockwise orbits map to `B = +1/2`
/// and anticlockwise orbits to `B = -1/2` with equal weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpinMappingAverage {
    pub clockwise_b: HalfInteger,
    pub anticlockwise_b: HalfInteger,
    /// Average `B`, stored as twice its value over the two mappings (always 0).
    pub average_b_twice: i64,
    /// Remaining total angular momentum after averaging, equal to `D`.
    pub total: HalfInteger,
}

pub fn spin_mapping_average(candidate: &DecompositionCandidate) -> SpinMappingAverage {
    let cw = HalfInteger::half();
    let acw = HalfInteger(-1);
    let sum = cw.0 + acw.0;
    SpinMappingAverage {
        clockwise_b: cw,
        anticlockwise_b: acw,
        average_b_twice: sum / 2,
        total: HalfInteger(candidate.dirac_total.0 + sum / 2),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitPhase {
    /// Wavelengths `1 / mu` fitting the circumference `2 pi R`; equals `n`
    /// (signed by circulation).
    pub wavelength_fit: f64,
    /// `alpha_1 + alpha_2 = ±2 pi`.
    pub combined_phase: f64,
}

pub fn orbit_phase_check(level: &BohrLevel) -> OrbitPhase {
    let circumference = 2.0 * PI * level.radius;
    let alpha = level.circulation.sign() * PI;
    OrbitPhase { wavelength_fit: level.mu * circumference / (2.0 * PI), combined_phase: alpha + alpha }
}
