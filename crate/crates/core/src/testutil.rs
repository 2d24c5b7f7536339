use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::algebra::Biquaternion;

pub fn max_abs_diff4(a: &Biquaternion, b: &Biquaternion) -> f64 {
    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff2(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
