//! Aggregated invariant checks. Each check records what was measured and the
//! threshold it was held to; a report passes only if every check does.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{decompose, matrix_of, random_biquaternion, rotated_basis, Biquaternion, BlockMatrix};
use crate::bohr_model::{solve_level, PhysicalParams};
use crate::dirac_field::{
    convergence_slope, dirac_residual, dispersion_check, DerivativeMode, GridRegion, MassTerm, PlaneWaveSolution,
    ResidualOptions,
};
use crate::error::Result;
use crate::geometry::MPoint;

/// Product used by the algebra suite; swappable so the suite itself can be
/// exercised against a faulty table.
pub type Product = fn(Biquaternion, Biquaternion) -> Biquaternion;

pub const ALGEBRA_TOLERANCE: f64 = 1e-12;
pub const SLOPE_TARGET: f64 = 2.0;
pub const SLOPE_TOLERANCE: f64 = 0.1;
pub const ANALYTIC_RESIDUAL_TOLERANCE: f64 = 1e-12;
pub const DISPERSION_DEFECT_TOLERANCE: f64 = 1e-12;
/// Finest finite-difference residual must stay below this multiple of the
/// plane-wave truncation scale `(|nu|^3 + |mu|^3) h^2`.
pub const FD_TRUNCATION_FACTOR: f64 = 1.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `measured <= threshold`.
    pub fn at_most(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self { name: name.into(), measured, threshold, passed: measured <= threshold }
    }

    /// Passes when `|measured - target| <= tolerance`; the threshold field holds the tolerance.
    pub fn near(name: impl Into<String>, measured: f64, target: f64, tolerance: f64) -> Self {
        Self { name: name.into(), measured, threshold: tolerance, passed: (measured - target).abs() <= tolerance }
    }

    /// Informational value that always passes.
    pub fn info(name: impl Into<String>, measured: f64) -> Self {
        Self { name: name.into(), measured, threshold: f64::INFINITY, passed: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

/// `(sign, index)` of `i_row i_col`.
pub const BASIS_TABLE: [[(i8, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
];

fn diff(a: &Biquaternion, b: &Biquaternion) -> f64 {
    (*a - *b).norm()
}

fn table_defect(product: Product, elements: &[Biquaternion; 4]) -> f64 {
    let mut worst: f64 = 0.0;
    for (r, row) in BASIS_TABLE.iter().enumerate() {
        for (c, &(sign, k)) in row.iter().enumerate() {
            let expect = elements[k] * f64::from(sign);
            worst = worst.max(diff(&product(elements[r], elements[c]), &expect));
        }
    }
    worst
}

fn block_product(product: Product, a: &BlockMatrix, b: &BlockMatrix) -> BlockMatrix {
    let p = product;
    BlockMatrix::new(
        p(a.a11, b.a11) + p(a.a12, b.a21),
        p(a.a11, b.a12) + p(a.a12, b.a22),
        p(a.a21, b.a11) + p(a.a22, b.a21),
        p(a.a21, b.a12) + p(a.a22, b.a22),
    )
}

/// Multiplication table, ring homomorphism, conjugation, rotated basis and
/// block product checks over `cases` random samples.
pub fn algebra_suite(product: Product, cases: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = [Biquaternion::I0, Biquaternion::I1, Biquaternion::I2, Biquaternion::I3];
    let mut report = Report::default();
    report.push(Check::at_most("basis table exact (16 products)", table_defect(product, &basis), 0.0));

    let (mut scalar_part, mut hom, mut anti, mut assoc, mut rot, mut block) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..cases {
        let a = random_biquaternion(&mut rng);
        let b = random_biquaternion(&mut rng);
        let c = random_biquaternion(&mut rng);
        let scale = a.norm() * b.norm();

        let qq = product(a, a.conj());
        scalar_part = scalar_part.max(qq.vector_norm() / a.norm().powi(2));
        scalar_part = scalar_part.max((qq.c0 - a.quadratic_form()).norm() / a.norm().powi(2));

        let m = matrix_of(product(a, b)) - matrix_of(a) * matrix_of(b);
        hom = hom.max(m.iter().map(|z| z.norm()).fold(0.0, f64::max) / scale);

        anti = anti.max(diff(&product(a, b).conj(), &product(b.conj(), a.conj())) / scale);
        assoc = assoc.max(diff(&product(product(a, b), c), &product(a, product(b, c))) / (scale * c.norm()));

        let theta: f64 = rng.random_range(-PI..PI);
        rot = rot.max(table_defect(product, &rotated_basis(theta).elements()));

        let x = BlockMatrix::new(a, b, c, random_biquaternion(&mut rng));
        let y = BlockMatrix::new(c, a, random_biquaternion(&mut rng), b);
        let flat = x.to_matrix4() * y.to_matrix4();
        let got = block_product(product, &x, &y).to_matrix4();
        block = block.max((got - flat).iter().map(|z| z.norm()).fold(0.0, f64::max) / (x.max_norm() * y.max_norm()));
    }
    report.push(Check::at_most("q q‡ scalar (relative)", scalar_part, ALGEBRA_TOLERANCE));
    report.push(Check::at_most("matrix_of homomorphism", hom, ALGEBRA_TOLERANCE));
    report.push(Check::at_most("conjugation reverses products", anti, ALGEBRA_TOLERANCE));
    report.push(Check::at_most("associativity", assoc, ALGEBRA_TOLERANCE));
    report.push(Check::at_most("rotated basis table", rot, ALGEBRA_TOLERANCE));
    report.push(Check::at_most("block product vs 4x4", block, ALGEBRA_TOLERANCE));

    // i1 i2 = i3 seen through the matrix representation
    let i3 = decompose(&(matrix_of(Biquaternion::I1) * matrix_of(Biquaternion::I2)));
    report.push(Check::at_most("matrix base i1 i2 = i3", diff(&i3, &Biquaternion::I3), ALGEBRA_TOLERANCE));
    report
}

/// Inputs for the residual convergence study.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracStudy {
    pub solution: PlaneWaveSolution,
    pub center: MPoint,
    pub nodes_per_axis: usize,
    pub h: f64,
    pub levels: usize,
}

impl DiracStudy {
    /// Bound solution of level `n`, or the free electron at rest when `g == 0`.
    pub fn for_level(m_e: f64, g: f64, n: u32, h: f64, levels: usize) -> Result<Self> {
        let (solution, bohr_radius) = if g == 0.0 {
            (PlaneWaveSolution::free(m_e, 0.0, MassTerm::rest(m_e))?, 1.0 / m_e)
        } else {
            let params = PhysicalParams::new(m_e, g)?;
            let level = solve_level(&params, n)?;
            (PlaneWaveSolution::from_level(&level, &params)?, level.radius)
        };
        let center = MPoint::new(0.0, 0.25 * bohr_radius, bohr_radius, 0.0, bohr_radius)?;
        Ok(Self { solution, center, nodes_per_axis: 5, h, levels })
    }

    pub fn spacings(&self) -> Vec<f64> {
        (0..self.levels).map(|k| self.h / f64::from(1u32 << k)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiracOutcome {
    pub spacings: Vec<f64>,
    pub residuals: Vec<f64>,
    pub slope: f64,
    pub analytic_residual: f64,
    pub dispersion_defect: f64,
    pub report: Report,
}

pub fn dirac_suite(study: &DiracStudy) -> Result<DiracOutcome> {
    let sol = &study.solution;
    let spacings = study.spacings();
    let residuals = spacings
        .iter()
        .map(|&h| {
            let region = GridRegion::centered(study.center, study.nodes_per_axis, h);
            dirac_residual(sol, &region, h, ResidualOptions::default())
        })
        .collect::<Result<Vec<_>>>()?;
    let slope = convergence_slope(&spacings, &residuals)?;
    let analytic = ResidualOptions { derivative: DerivativeMode::Analytic, ..Default::default() };
    let region = GridRegion::centered(study.center, study.nodes_per_axis, study.h);
    let analytic_residual = dirac_residual(sol, &region, study.h, analytic)?;
    let m2 = sol.mass.m_e * sol.mass.m_e;
    let dispersion_defect = dispersion_check(sol).abs() / m2;

    let mut report = Report::default();
    for (h, r) in spacings.iter().zip(&residuals) {
        report.push(Check::info(format!("residual h={h:e}"), *r));
    }
    report.push(Check::near("convergence slope", slope, SLOPE_TARGET, SLOPE_TOLERANCE));
    let finest = residuals.last().copied().unwrap_or(f64::INFINITY);
    let h_min = spacings.last().copied().unwrap_or(study.h);
    let scale = (sol.nu.abs().powi(3) + sol.mu.abs().powi(3)) * h_min * h_min;
    report.push(Check::at_most("finest residual", finest, FD_TRUNCATION_FACTOR * scale));
    report.push(Check::at_most("analytic residual", analytic_residual, ANALYTIC_RESIDUAL_TOLERANCE * sol.mass.m_e));
    report.push(Check::at_most("dispersion defect", dispersion_defect, DISPERSION_DEFECT_TOLERANCE));
    Ok(DiracOutcome { spacings, residuals, slope, analytic_residual, dispersion_defect, report })
}
