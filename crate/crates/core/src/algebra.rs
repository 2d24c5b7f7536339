//! Complex quaternions (biquaternions) over the basis `(i0, i1, i2, i3)`.
//!
//! The basis obeys `i_r^2 = -1`, `i1 i2 = i3`, `i2 i1 = -i3` with cyclic
//! variations, and `i0` is the identity. Coefficients are complex and commute
//! with the basis. The 2x2 matrix base is `i_r = -i sigma_r` with the standard
//! Pauli matrices; [`matrix_of`] is kept as an independent representation for
//! checking the coefficient arithmetic.
//!
//! Block matrices of biquaternions carry the reflector structure used by the
//! Dirac operator, wave function and mass term.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use rand::Rng;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
/// The scalar imaginary unit `i = sqrt(-1)`, distinct from the basis element `i1`.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// `c0 i0 + c1 i1 + c2 i2 + c3 i3` with complex coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Biquaternion {
    pub c0: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl Biquaternion {
    pub const ZERO: Self = Self::new(ZERO, ZERO, ZERO, ZERO);
    pub const I0: Self = Self::new(ONE, ZERO, ZERO, ZERO);
    pub const I1: Self = Self::new(ZERO, ONE, ZERO, ZERO);
    pub const I2: Self = Self::new(ZERO, ZERO, ONE, ZERO);
    pub const I3: Self = Self::new(ZERO, ZERO, ZERO, ONE);

    pub const fn new(c0: Complex64, c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        Self { c0, c1, c2, c3 }
    }

    /// Biquaternion with real coefficients.
    pub fn real(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        Self::new(c0.into(), c1.into(), c2.into(), c3.into())
    }

    /// Pure `i0` multiple.
    pub fn scalar(c: Complex64) -> Self {
        Self::new(c, ZERO, ZERO, ZERO)
    }

    /// Basis element `i_mu` for `mu` in `0..4`.
    pub fn basis(mu: usize) -> Self {
        match mu {
            0 => Self::I0,
            1 => Self::I1,
            2 => Self::I2,
            3 => Self::I3,
            _ => panic!("basis index {mu} out of range 0..4"),
        }
    }

    pub fn coeffs(&self) -> [Complex64; 4] {
        [self.c0, self.c1, self.c2, self.c3]
    }

    pub fn from_coeffs(c: [Complex64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    /// Quaternion conjugation `q‡`: negates the `i1, i2, i3` parts and leaves
    /// the complex coefficients themselves untouched.
    pub fn conj(&self) -> Self {
        Self::new(self.c0, -self.c1, -self.c2, -self.c3)
    }

    /// Complex conjugation of every coefficient; the basis is untouched.
    pub fn complex_conj(&self) -> Self {
        Self::new(self.c0.conj(), self.c1.conj(), self.c2.conj(), self.c3.conj())
    }

    /// `c0^2 + c1^2 + c2^2 + c3^2`, the scalar value of `q q‡`.
    pub fn quadratic_form(&self) -> Complex64 {
        self.c0 * self.c0 + self.c1 * self.c1 + self.c2 * self.c2 + self.c3 * self.c3
    }

    /// Multiplicative inverse `q‡ / (q q‡)`, or `None` for null elements.
    pub fn inverse(&self) -> Option<Self> {
        let q = self.quadratic_form();
        if q.norm() == 0.0 {
            return None;
        }
        Some(self.conj() * (ONE / q))
    }

    /// Euclidean norm of the coefficient vector in `C^4`.
    pub fn norm(&self) -> f64 {
        self.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Norm of the `i1, i2, i3` part.
    pub fn vector_norm(&self) -> f64 {
        (self.c1.norm_sqr() + self.c2.norm_sqr() + self.c3.norm_sqr()).sqrt()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.c0 * k, self.c1 * k, self.c2 * k, self.c3 * k)
    }
}

/// Product in the complex quaternion ring.
pub fn quat_mul(a: Biquaternion, b: Biquaternion) -> Biquaternion {
    // (a0 + a)(b0 + b) = a0 b0 - a.b + a0 b + b0 a + a x b
    let (a0, a1, a2, a3) = (a.c0, a.c1, a.c2, a.c3);
    let (b0, b1, b2, b3) = (b.c0, b.c1, b.c2, b.c3);
    Biquaternion::new(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 + a2 * b0 + a3 * b1 - a1 * b3,
        a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
    )
}

/// Biquaternion with each real and imaginary coefficient part uniform in `[-1, 1)`.
pub fn random_biquaternion<R: Rng + ?Sized>(rng: &mut R) -> Biquaternion {
    let mut c = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    Biquaternion::new(c(), c(), c(), c())
}

/// Quaternion conjugation, see [`Biquaternion::conj`].
pub fn quat_conj(q: Biquaternion) -> Biquaternion {
    q.conj()
}

/// Pauli matrices `sigma_1..sigma_3` (index 0 is unused and holds the identity).
pub fn pauli(r: usize) -> Matrix2<Complex64> {
    match r {
        0 => Matrix2::new(ONE, ZERO, ZERO, ONE),
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, -I, I, ZERO),
        3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {r} out of range 0..4"),
    }
}

/// 2x2 complex matrix of `q` in the base `i_r = -i sigma_r`.
pub fn matrix_of(q: Biquaternion) -> Matrix2<Complex64> {
    pauli(0) * q.c0 + (pauli(1) * q.c1 + pauli(2) * q.c2 + pauli(3) * q.c3) * (-I)
}

/// Inverse of [`matrix_of`]: decomposes any 2x2 complex matrix.
pub fn decompose(m: &Matrix2<Complex64>) -> Biquaternion {
    // c0 = tr(m)/2 and c_r = tr(m (-i sigma_r)^-1)/2 = tr(m i sigma_r)/2
    let half = Complex64::new(0.5, 0.0);
    let c0 = m.trace() * half;
    let cr = |r: usize| (m * pauli(r) * I).trace() * half;
    Biquaternion::new(c0, cr(1), cr(2), cr(3))
}

impl Add for Biquaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)
    }
}

impl AddAssign for Biquaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Biquaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.c0 - o.c0, self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3)
    }
}

impl Neg for Biquaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c0, -self.c1, -self.c2, -self.c3)
    }
}

impl Mul for Biquaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        quat_mul(self, o)
    }
}

impl Mul<Complex64> for Biquaternion {
    type Output = Self;
    fn mul(self, k: Complex64) -> Self {
        self.scale(k)
    }
}

impl Mul<f64> for Biquaternion {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self.scale(k.into())
    }
}

impl Mul<Biquaternion> for Complex64 {
    type Output = Biquaternion;
    fn mul(self, q: Biquaternion) -> Biquaternion {
        q.scale(self)
    }
}

impl Mul<Biquaternion> for f64 {
    type Output = Biquaternion;
    fn mul(self, q: Biquaternion) -> Biquaternion {
        q.scale(self.into())
    }
}

impl fmt::Display for Biquaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})i0 + ({})i1 + ({})i2 + ({})i3", self.c0, self.c1, self.c2, self.c3)
    }
}

/// The radial/arc basis obtained by rotating `(i1, i2)` through `theta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotatedBasis {
    pub theta: f64,
    /// Along the arc.
    pub i_s: Biquaternion,
    /// Along the radius.
    pub i_r: Biquaternion,
}

impl RotatedBasis {
    /// The four elements `(i0, i_s, i_r, i3)` in table order.
    pub fn elements(&self) -> [Biquaternion; 4] {
        [Biquaternion::I0, self.i_s, self.i_r, Biquaternion::I3]
    }

    /// Assembles `c0 i0 + cs i_s + cr i_r + c3 i3`.
    pub fn combine(&self, c0: Complex64, cs: Complex64, cr: Complex64, c3: Complex64) -> Biquaternion {
        Biquaternion::scalar(c0) + self.i_s * cs + self.i_r * cr + Biquaternion::I3 * c3
    }

    /// Coefficients of `q` in `(i0, i_s, i_r, i3)`.
    pub fn components(&self, q: Biquaternion) -> [Complex64; 4] {
        let (s, c) = self.theta.sin_cos();
        [q.c0, q.c1 * c - q.c2 * s, q.c1 * s + q.c2 * c, q.c3]
    }

    /// `d i_s / d theta = -i_r`.
    pub fn d_i_s(&self) -> Biquaternion {
        -self.i_r
    }

    /// `d i_r / d theta = i_s`.
    pub fn d_i_r(&self) -> Biquaternion {
        self.i_s
    }
}

/// `i_s = i1 cos(theta) - i2 sin(theta)`, `i_r = i1 sin(theta) + i2 cos(theta)`,
/// the inversion of `i1 = i_r sin + i_s cos`, `i2 = i_r cos - i_s sin`.
pub fn rotated_basis(theta: f64) -> RotatedBasis {
    let (s, c) = theta.sin_cos();
    RotatedBasis {
        theta,
        i_s: Biquaternion::real(0.0, c, -s, 0.0),
        i_r: Biquaternion::real(0.0, s, c, 0.0),
    }
}

/// A 2x2 matrix of biquaternions, `[[a11, a12], [a21, a22]]`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct BlockMatrix {
    pub a11: Biquaternion,
    pub a12: Biquaternion,
    pub a21: Biquaternion,
    pub a22: Biquaternion,
}

impl BlockMatrix {
    pub fn new(a11: Biquaternion, a12: Biquaternion, a21: Biquaternion, a22: Biquaternion) -> Self {
        Self { a11, a12, a21, a22 }
    }

    /// Off-diagonal form `[[0, upper], [lower, 0]]`.
    pub fn reflector(upper: Biquaternion, lower: Biquaternion) -> Self {
        Self::new(Biquaternion::ZERO, upper, lower, Biquaternion::ZERO)
    }

    /// `[[a, 0], [0, b]]`.
    pub fn diagonal(a: Biquaternion, b: Biquaternion) -> Self {
        Self::new(a, Biquaternion::ZERO, Biquaternion::ZERO, b)
    }

    pub fn identity() -> Self {
        Self::diagonal(Biquaternion::I0, Biquaternion::I0)
    }

    pub fn is_reflector(&self) -> bool {
        self.a11 == Biquaternion::ZERO && self.a22 == Biquaternion::ZERO
    }

    pub fn is_block_diagonal(&self) -> bool {
        self.a12 == Biquaternion::ZERO && self.a21 == Biquaternion::ZERO
    }

    pub fn entries(&self) -> [Biquaternion; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    /// Largest entry norm.
    pub fn max_norm(&self) -> f64 {
        self.entries().iter().map(Biquaternion::norm).fold(0.0, f64::max)
    }

    /// Flattened 4x4 complex matrix, each block replaced by [`matrix_of`].
    pub fn to_matrix4(&self) -> Matrix4<Complex64> {
        let mut out = Matrix4::zeros();
        for (k, q) in self.entries().into_iter().enumerate() {
            let (bi, bj) = (k / 2, k % 2);
            out.fixed_view_mut::<2, 2>(2 * bi, 2 * bj).copy_from(&matrix_of(q));
        }
        out
    }
}

/// Block product with [`quat_mul`] entries.
pub fn block_mul(a: &BlockMatrix, b: &BlockMatrix) -> BlockMatrix {
    BlockMatrix::new(
        a.a11 * b.a11 + a.a12 * b.a21,
        a.a11 * b.a12 + a.a12 * b.a22,
        a.a21 * b.a11 + a.a22 * b.a21,
        a.a21 * b.a12 + a.a22 * b.a22,
    )
}

impl Mul for BlockMatrix {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        block_mul(&self, &o)
    }
}

impl Sub for BlockMatrix {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{max_abs_diff2, max_abs_diff4};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn i1_i2_is_i3() {
        assert_eq!(Biquaternion::I1 * Biquaternion::I2, Biquaternion::I3);
        assert_eq!(Biquaternion::I2 * Biquaternion::I1, -Biquaternion::I3);
    }

    #[test]
    fn full_table_exact() {
        // (row, col) -> (sign, index) from i_r^2 = -1, i1 i2 = i3 and cyclic.
        let table: [[(f64, usize); 4]; 4] = [
            [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
            [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
            [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
            [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
        ];
        for (a, row) in table.iter().enumerate() {
            for (b, &(sign, k)) in row.iter().enumerate() {
                assert_eq!(Biquaternion::basis(a) * Biquaternion::basis(b), Biquaternion::basis(k) * sign);
            }
        }
    }

    #[test]
    fn identity_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_biquaternion(&mut rng);
        assert_eq!(Biquaternion::I0 * q, q);
        assert_eq!(q * Biquaternion::I0, q);
    }

    #[test]
    fn sum_times_difference_matches_matrix_product() {
        let a = Biquaternion::I1 + Biquaternion::I2;
        let b = Biquaternion::I1 - Biquaternion::I2;
        let oracle = decompose(&(matrix_of(a) * matrix_of(b)));
        assert_eq!(a * b, Biquaternion::I3 * -2.0);
        assert!(max_abs_diff4(&(a * b), &oracle) < 1e-15);
    }

    #[test]
    fn conjugation_on_basis() {
        for r in 1..4 {
            assert_eq!(Biquaternion::basis(r).conj(), -Biquaternion::basis(r));
        }
        assert_eq!(Biquaternion::I0.conj(), Biquaternion::I0);
        // complex coefficients are left alone
        let q = Biquaternion::new(c(1.0, 2.0), c(0.0, 1.0), ZERO, ZERO);
        assert_eq!(q.conj().c0, c(1.0, 2.0));
        assert_eq!(q.conj().c1, c(0.0, -1.0));
    }

    #[test]
    fn conjugation_reverses_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = random_biquaternion(&mut rng);
            let b = random_biquaternion(&mut rng);
            assert!(max_abs_diff4(&(a * b).conj(), &(b.conj() * a.conj())) < 1e-12);
        }
    }

    #[test]
    fn matrix_of_basis() {
        let m = matrix_of(Biquaternion::I3);
        assert_eq!(m, Matrix2::new(-I, ZERO, ZERO, I));
        assert_eq!(matrix_of(Biquaternion::I0), Matrix2::identity());
    }

    #[test]
    fn q_qconj_is_scalar_identity_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let q = random_biquaternion(&mut rng);
            let m = matrix_of(q * q.conj());
            let expect = Matrix2::identity() * q.quadratic_form();
            assert!(max_abs_diff2(&m, &expect) < 1e-12);
        }
    }

    #[test]
    fn decompose_inverts_matrix_of() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = random_biquaternion(&mut rng);
        assert!(max_abs_diff4(&decompose(&matrix_of(q)), &q) < 1e-15);
    }

    #[test]
    fn inverse_of_null_element_is_none() {
        // (1 + i i1) has q q‡ = 1 + i^2 = 0
        let q = Biquaternion::new(ONE, I, ZERO, ZERO);
        assert!(q.inverse().is_none());
        let p = Biquaternion::real(1.0, 2.0, 0.0, -1.0);
        assert!(max_abs_diff4(&(p * p.inverse().unwrap()), &Biquaternion::I0) < 1e-15);
    }

    #[test]
    fn rotated_basis_special_angles() {
        let b0 = rotated_basis(0.0);
        assert_eq!(b0.i_s, Biquaternion::I1);
        assert_eq!(b0.i_r, Biquaternion::I2);
        let b = rotated_basis(std::f64::consts::FRAC_PI_2);
        assert!(max_abs_diff4(&b.i_s, &-Biquaternion::I2) < 1e-15);
        assert!(max_abs_diff4(&b.i_r, &Biquaternion::I1) < 1e-15);
    }

    #[test]
    fn rotated_basis_recombines() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let theta: f64 = rng.random_range(-10.0..10.0);
            let b = rotated_basis(theta);
            let (s, co) = theta.sin_cos();
            assert!(max_abs_diff4(&(b.i_r * s + b.i_s * co), &Biquaternion::I1) < 1e-12);
            assert!(max_abs_diff4(&(b.i_r * co - b.i_s * s), &Biquaternion::I2) < 1e-12);
            assert!(max_abs_diff4(&(b.i_s * b.i_r), &Biquaternion::I3) < 1e-12);
        }
    }

    #[test]
    fn rotated_components_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let q = random_biquaternion(&mut rng);
        let b = rotated_basis(0.7);
        let [c0, cs, cr, c3] = b.components(q);
        assert!(max_abs_diff4(&b.combine(c0, cs, cr, c3), &q) < 1e-14);
    }

    #[test]
    fn frame_derivatives_match_finite_difference() {
        let h = 1e-6;
        let b = rotated_basis(0.4);
        let (p, m) = (rotated_basis(0.4 + h), rotated_basis(0.4 - h));
        let ds = (p.i_s - m.i_s) * (0.5 / h);
        let dr = (p.i_r - m.i_r) * (0.5 / h);
        assert!(max_abs_diff4(&ds, &b.d_i_s()) < 1e-9);
        assert!(max_abs_diff4(&dr, &b.d_i_r()) < 1e-9);
    }

    #[test]
    fn reflector_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let [a, b, cq, d] = std::array::from_fn(|_| random_biquaternion(&mut rng));
        let p = BlockMatrix::reflector(a, b) * BlockMatrix::reflector(cq, d);
        assert!(p.is_block_diagonal());
        assert_eq!(p, BlockMatrix::diagonal(a * d, b * cq));
        let oracle = BlockMatrix::reflector(a, b).to_matrix4() * BlockMatrix::reflector(cq, d).to_matrix4();
        assert!((p.to_matrix4() - oracle).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);

        let r = BlockMatrix::reflector(a, b) * BlockMatrix::diagonal(cq, d);
        assert!(r.is_reflector());
    }

    #[test]
    fn block_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let x = BlockMatrix::new(
            random_biquaternion(&mut rng),
            random_biquaternion(&mut rng),
            random_biquaternion(&mut rng),
            random_biquaternion(&mut rng),
        );
        assert_eq!(BlockMatrix::identity() * x, x);
    }

    #[test]
    #[should_panic]
    fn basis_index_out_of_range() {
        let _ = Biquaternion::basis(4);
    }
}
