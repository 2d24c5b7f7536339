//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! before asserting, so `cargo test -- --nocapture` doubles as a report.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use mspace_core::algebra::quat_mul;
use mspace_core::bohr_model::{
    angular_momentum_eigenvalue, decompose_angular_momentum, energy_imbalance, solve_level, OrbitShift,
    PhysicalParams, Sign, CODATA_ALPHA, CODATA_ELECTRON_MASS_EV,
};
use mspace_core::density::{
    averaged_potential, averaged_probability, mean_axis_inverse_distance, sphere_average, AverageMethod,
};
use mspace_core::dirac_field::{convergence_slope, photon_residual_coulomb};
use mspace_core::geometry::{
    coulomb_potential_m, from_polar, l_to_m, m_to_l, metric_interval_l, metric_interval_m, to_polar, volume_ratio,
    LPoint, PolarDisplacement, PolarPoint,
};
use mspace_core::suite::{algebra_suite, dirac_suite, DiracStudy};
use mspace_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const COUPLINGS: [f64; 4] = [1e-4, CODATA_ALPHA, 0.1, 0.5];

fn verdict(n: u32, title: &str, passed: bool, detail: String) {
    let mark = if passed { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} [{mark}] {title}: {detail}");
    assert!(passed, "criterion {n} failed: {detail}");
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("").split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let k = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[k].parse().unwrap()).collect()
}

#[test]
fn criterion_01_algebra_suite() {
    let t = Instant::now();
    let report = algebra_suite(quat_mul, 1000, 42);
    let took = t.elapsed();
    let worst = report.checks.iter().skip(1).map(|c| c.measured).fold(0.0, f64::max);
    let ok = report.passed() && report.checks[0].measured == 0.0 && took < Duration::from_secs(1);
    verdict(1, "algebra suite", ok, format!("table exact, worst defect {worst:.2e} over 1000 cases in {took:.2?}"));
}

#[test]
fn criterion_02_geometry_suite() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut trip, mut vol, mut pot, mut metric) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let x1: f64 = rng.random_range(-100.0..100.0);
        let x2: f64 = rng.random_range(-100.0..100.0);
        let big_r: f64 = rng.random_range(0.01..100.0);
        let p = LPoint::new(rng.random_range(-1.0..1.0), x1, x2, rng.random_range(-1.0..1.0));
        let m = l_to_m(to_polar(p).unwrap(), big_r).unwrap();
        let back = from_polar(m_to_l(m));
        let scale = x1.hypot(x2);
        trip = trip.max((back.x1 - x1).abs().max((back.x2 - x2).abs()) / scale);

        let r = scale;
        vol = vol.max(rel(volume_ratio(r, big_r).unwrap(), big_r / r));
        vol = vol.max((volume_ratio(r, big_r).unwrap() * volume_ratio(big_r, r).unwrap() - 1.0).abs());
        let f: f64 = rng.random_range(0.1..10.0);
        pot = pot.max(rel(coulomb_potential_m(f, r, big_r).unwrap(), f / big_r));

        let pp = PolarPoint::new(0.0, big_r, rng.random_range(-PI..PI), 0.0);
        let d = PolarDisplacement {
            dx0: rng.random_range(-1.0..1.0),
            dr: rng.random_range(-1.0..1.0),
            dtheta: rng.random_range(-1.0..1.0),
            dx3: rng.random_range(-1.0..1.0),
        };
        let ml = metric_interval_l(&pp, &d);
        metric = metric.max(rel(metric_interval_m(&l_to_m(pp, big_r).unwrap(), &d.to_m(big_r)), ml));
    }
    let took = t.elapsed();
    let worst = trip.max(vol).max(pot).max(metric);
    let ok = worst < 1e-12 && took < Duration::from_secs(1);
    verdict(
        2,
        "geometry suite",
        ok,
        format!("round trip {trip:.1e}, volume {vol:.1e}, potential {pot:.1e}, metric {metric:.1e} in {took:.2?}"),
    );
}

#[test]
fn criterion_03_dirac_residual() {
    let t = Instant::now();
    let study = DiracStudy::for_level(1.0, CODATA_ALPHA, 1, 1e-2, 3).unwrap();
    let out = dirac_suite(&study).unwrap();
    let took = t.elapsed();
    let ok = (out.slope - 2.0).abs() <= 0.1
        && out.analytic_residual < 1e-12
        && out.dispersion_defect < 1e-12
        && took < Duration::from_secs(30);
    verdict(
        3,
        "Dirac residual",
        ok,
        format!(
            "slope {:.4} over h={:?}, analytic {:.1e}, dispersion {:.1e} in {took:.2?}",
            out.slope, out.spacings, out.analytic_residual, out.dispersion_defect
        ),
    );
}

#[test]
fn criterion_04_photon_coulomb() {
    let points: Vec<LPoint> = (0..12)
        .map(|k| {
            let th = 2.0 * PI * k as f64 / 12.0;
            let z = -0.8 + 1.6 * (k % 5) as f64 / 4.0;
            let rho = (1.0 - z * z).sqrt();
            LPoint::new(0.0, rho * th.cos(), rho * th.sin(), z)
        })
        .collect();
    let f = 2.0;
    let hs = [4e-3, 2e-3, 1e-3];
    let res: Vec<f64> = hs.iter().map(|&h| photon_residual_coulomb(f, &points, h).unwrap()).collect();
    let slope = convergence_slope(&hs, &res).unwrap();
    let at_1e3 = res[2];
    let ok = at_1e3 < 1e-4 * f && (slope - 2.0).abs() <= 0.1;
    verdict(4, "photon/Coulomb", ok, format!("residual {at_1e3:.2e} at h=1e-3 (f={f}), slope {slope:.3}"));
}

#[test]
fn criterion_05_spectrum() {
    let out = mspace_cli::run(["mspace", "--units", "ev", "spectrum", "--z", "1", "--n-max", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let (header, rows) = parse_csv(&out.stdout);
    assert_eq!(header.join(","), "n,v,R,E,binding,E_dirac,rel_diff");
    let binding = column(&header, &rows, "binding");
    let rel_diff = column(&header, &rows, "rel_diff");
    let mut ok = true;
    for (i, (b, want)) in binding.iter().zip([-13.606, -3.401, -1.512]).enumerate() {
        let n = (i + 1) as f64;
        let nonrel = -CODATA_ELECTRON_MASS_EV * CODATA_ALPHA * CODATA_ALPHA / (2.0 * n * n);
        ok &= rel(*b, nonrel) < 1e-3 && (b - want).abs() < 1e-3 * want.abs();
    }
    ok &= rel_diff.iter().all(|&d| d < 1e-12);

    let t = mspace_cli::run(["mspace", "--units", "ev", "transition", "--from", "2", "--to", "1"]);
    let (th, tr) = parse_csv(&t.stdout);
    let lyman = column(&th, &tr[..1], "delta_E")[0];
    ok &= t.code == 0 && (lyman - 10.20).abs() <= 0.01;
    let worst = rel_diff.iter().copied().fold(0.0, f64::max);
    verdict(5, "spectrum", ok, format!("binding {binding:.4?} eV, max rel_diff {worst:.1e}, Lyman-alpha {lyman:.4} eV"));
}

#[test]
fn criterion_06_plug_back() {
    let mut worst = 0.0f64;
    for g in COUPLINGS {
        let p = PhysicalParams::new(1.0, g).unwrap();
        for n in 1..=10 {
            let (a, b) = solve_level(&p, n).unwrap().plug_back(&p);
            worst = worst.max(a).max(b);
        }
    }
    let sup = |g: f64, n: u32| matches!(solve_level(&PhysicalParams::new(1.0, g).unwrap(), n), Err(Error::SupercriticalCoupling { .. }));
    let rejects = sup(1.0, 1) && sup(2.0, 1) && sup(2.0, 2) && sup(3.5, 3) && !sup(2.0, 3);
    verdict(6, "plug-back", worst < 1e-12 && rejects, format!("worst residual {worst:.1e}, g >= n rejected: {rejects}"));
}

#[test]
fn criterion_07_angular_momentum() {
    let mut worst = 0.0f64;
    for g in COUPLINGS {
        let p = PhysicalParams::new(1.0, g).unwrap();
        for n in 1..=10 {
            let level = solve_level(&p, n).unwrap();
            let nf = f64::from(n);
            worst = worst.max(rel(angular_momentum_eigenvalue(&level), nf));
            worst = worst.max(rel(angular_momentum_eigenvalue(&level.reversed()), -nf));
        }
    }
    let mut enumeration = true;
    for e in 1..=5i64 {
        let mut brute = Vec::new();
        for o in 0..=(e + 5) {
            // S = B = ±1/2 with one shared sign
            for s in [1i64, -1] {
                if 2 * o + 2 * s == 2 * e {
                    brute.push((o as u32, s));
                }
            }
        }
        brute.sort();
        let mut got: Vec<_> = decompose_angular_momentum(e)
            .unwrap()
            .candidates
            .iter()
            .map(|c| (c.orbital, if c.sign == Sign::Plus { 1 } else { -1 }))
            .collect();
        got.sort();
        enumeration &= got == brute;
    }
    let zero_rejected = matches!(decompose_angular_momentum(0), Err(Error::SelectionRule(0)));
    verdict(
        7,
        "angular momentum",
        worst < 1e-12 && enumeration && zero_rejected,
        format!("eigenvalue defect {worst:.1e}, enumeration matches: {enumeration}, E=0 rejected: {zero_rejected}"),
    );
}

#[test]
fn criterion_08_energy_imbalance() {
    let mut ok = true;
    let mut checked = 0;
    for g in COUPLINGS {
        let p = PhysicalParams::new(1.0, g).unwrap();
        for n in 1..=5u32 {
            let v = g / f64::from(n);
            ok &= energy_imbalance(&p, n, v).unwrap().delta_n == 0.0;
            let mut previous = f64::INFINITY;
            for k in -10..=10 {
                let v_e = v * (1.0 + 0.01 * f64::from(k));
                let im = energy_imbalance(&p, n, v_e).unwrap();
                let higher = im.delta_n > 0.0;
                ok &= higher == (im.radius_e > im.radius);
                ok &= higher == (im.shift() == OrbitShift::Higher);
                ok &= im.delta_n < previous;
                previous = im.delta_n;
                checked += 1;
            }
        }
    }
    verdict(8, "energy imbalance", ok, format!("{checked} sweep points: zero on shell, higher <=> dN > 0 <=> R_e > R, monotone"));
}

#[test]
fn criterion_09_averages() {
    let exact = sphere_average(1.0, AverageMethod::ClosedForm).unwrap();
    let quad = sphere_average(1.0, AverageMethod::Quadrature { panels: 10_000 }).unwrap();
    let mc = sphere_average(1.0, AverageMethod::MonteCarlo { samples: 100_000, seed: 42, workers: 4 }).unwrap();
    let closed = rel(exact.mean_distance, PI / 4.0).max(rel(exact.mean_inverse_distance, PI / 2.0));
    let q = rel(quad.mean_distance, PI / 4.0).max(rel(quad.mean_inverse_distance, PI / 2.0));
    let m = rel(mc.mean_distance, PI / 4.0).max(rel(mc.mean_inverse_distance, PI / 2.0));
    let mut compose = 0.0f64;
    for (p_m, big_r, a, f) in [(1.0, 1.0, 1.0, 1.0), (0.3, 137.0, 50.0, 2.0), (0.9, 0.5, 3.0, 0.7)] {
        let inv = mean_axis_inverse_distance(a, AverageMethod::ClosedForm).unwrap();
        compose = compose.max(rel(averaged_probability(p_m, big_r, a).unwrap(), big_r * p_m * inv));
        compose = compose.max(rel(averaged_potential(f, a).unwrap(), f * inv));
    }
    let ok = closed < 1e-15 && q < 1e-8 && m < 1e-2 && compose <= 2.0 * f64::EPSILON;
    verdict(9, "averages", ok, format!("closed {closed:.1e}, quadrature {q:.1e}, monte carlo {m:.1e}, composition {compose:.1e}"));
}

fn binary(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_mspace")).args(args).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn criterion_10_cli_determinism() {
    let runs: [&[&str]; 4] = [
        &["--units", "ev", "spectrum", "--z", "1", "--n-max", "5"],
        &["--format", "json", "spectrum", "--n-max", "5"],
        &["average", "--a", "1"],
        &["--format", "json", "average", "--a", "1", "--method", "monte-carlo"],
    ];
    let mut repeatable = true;
    for args in runs {
        repeatable &= binary(args) == binary(args);
    }
    let spectrum_golden = binary(runs[0]) == include_bytes!("golden/spectrum_hydrogen_n5.csv");
    let average_golden = binary(runs[2]) == include_bytes!("golden/average_a1.csv");
    verdict(
        10,
        "CLI determinism",
        repeatable && spectrum_golden && average_golden,
        format!("repeat runs identical: {repeatable}, spectrum golden: {spectrum_golden}, average golden: {average_golden}"),
    );
}
