use approx::assert_relative_eq;
use mspace_core::algebra::{
    block_mul, decompose, matrix_of, quat_mul, random_biquaternion, rotated_basis, Biquaternion, BlockMatrix,
};
use mspace_core::dirac_field::PotentialTerm;
use mspace_core::geometry::{
    from_polar, l_to_m, m_to_l, metric_interval_l, metric_interval_m, to_polar, FourVectorComponents, LPoint,
    PolarDisplacement,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bq() -> impl Strategy<Value = Biquaternion> {
    prop::array::uniform8(-2.0f64..2.0).prop_map(|v| {
        Biquaternion::new(
            Complex64::new(v[0], v[1]),
            Complex64::new(v[2], v[3]),
            Complex64::new(v[4], v[5]),
            Complex64::new(v[6], v[7]),
        )
    })
}

fn close(a: &Biquaternion, b: &Biquaternion, scale: f64) -> bool {
    (*a - *b).norm() <= 1e-12 * scale.max(1.0)
}

#[test]
fn thousand_random_norms_are_scalar() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let q = random_biquaternion(&mut rng);
        let p = q * q.conj();
        assert!(p.vector_norm() < 1e-12);
        assert!((p.c0 - q.quadratic_form()).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_is_a_matrix_homomorphism(a in bq(), b in bq()) {
        let lhs = matrix_of(quat_mul(a, b));
        let rhs = matrix_of(a) * matrix_of(b);
        let d = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(d <= 1e-12 * (a.norm() * b.norm()).max(1.0));
        prop_assert!(close(&decompose(&matrix_of(a)), &a, a.norm()));
    }

    #[test]
    fn conjugation_reverses_order(a in bq(), b in bq()) {
        prop_assert!(close(&(a * b).conj(), &(b.conj() * a.conj()), a.norm() * b.norm()));
        prop_assert!(close(&a.conj().conj(), &a, a.norm()));
    }

    #[test]
    fn associativity(a in bq(), b in bq(), c in bq()) {
        prop_assert!(close(&((a * b) * c), &(a * (b * c)), a.norm() * b.norm() * c.norm()));
    }

    #[test]
    fn rotated_basis_keeps_the_table(theta in -10.0f64..10.0) {
        let rb = rotated_basis(theta);
        let [i0, is, ir, i3] = rb.elements();
        let one = Biquaternion::I0;
        prop_assert!(close(&(is * ir), &i3, 1.0));
        prop_assert!(close(&(ir * i3), &is, 1.0));
        prop_assert!(close(&(i3 * is), &ir, 1.0));
        prop_assert!(close(&(ir * is), &-i3, 1.0));
        for e in [is, ir, i3] {
            prop_assert!(close(&(e * e), &-one, 1.0));
        }
        prop_assert!(close(&i0, &one, 0.0));
    }

    #[test]
    fn block_product_matches_4x4(a in bq(), b in bq(), c in bq(), d in bq()) {
        let x = BlockMatrix::new(a, b, c, d);
        let y = BlockMatrix::new(d, c, b, a);
        let got = block_mul(&x, &y).to_matrix4();
        let want = x.to_matrix4() * y.to_matrix4();
        let err = (got - want).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-12 * (x.max_norm() * y.max_norm()).max(1.0));
    }

    #[test]
    fn reflector_products_are_block_diagonal(a in bq(), b in bq(), c in bq(), d in bq()) {
        let p = BlockMatrix::reflector(a, b) * BlockMatrix::reflector(c, d);
        prop_assert!(p.is_block_diagonal());
        prop_assert!(close(&p.a11, &(a * d), a.norm() * d.norm()));
        prop_assert!(close(&p.a22, &(b * c), b.norm() * c.norm()));
    }

    #[test]
    fn potential_assembly_is_chart_independent(
        a in prop::array::uniform4(-3.0f64..3.0),
        theta in -3.1f64..3.1,
    ) {
        let rb = rotated_basis(theta);
        let cart = PotentialTerm { components: FourVectorComponents::Cartesian(a), charge: -1.0 };
        let polar = PotentialTerm { components: FourVectorComponents::Cartesian(a).to_polar(theta), charge: -1.0 };
        prop_assert!(close(&cart.tilde(&rb), &polar.tilde(&rb), 10.0));
        prop_assert!(close(&cart.coupling(&rb), &polar.coupling(&rb), 10.0));
    }

    #[test]
    fn chart_round_trip(x in -1e3f64..1e3, y in -1e3f64..1e3, t in -5.0f64..5.0, z in -5.0f64..5.0, big_r in 1e-3f64..1e3) {
        prop_assume!(x.hypot(y) > 1e-6);
        let p = LPoint::new(t, x, y, z);
        let m = l_to_m(to_polar(p).unwrap(), big_r).unwrap();
        let back = from_polar(m_to_l(m));
        let scale = x.hypot(y);
        prop_assert!((back.x1 - x).abs() <= 1e-9 * scale);
        prop_assert!((back.x2 - y).abs() <= 1e-9 * scale);
        prop_assert_eq!(back.x0, t);
        prop_assert_eq!(back.x3, z);
    }

    #[test]
    fn metrics_agree_on_the_orbit(r in 1e-3f64..1e3, th in -3.0f64..3.0, d in prop::array::uniform4(-1.0f64..1.0)) {
        let p = mspace_core::geometry::PolarPoint::new(0.0, r, th, 0.0);
        let dp = PolarDisplacement { dx0: d[0], dr: d[1], dtheta: d[2], dx3: d[3] };
        let m = l_to_m(p, r).unwrap();
        assert_relative_eq!(metric_interval_l(&p, &dp), metric_interval_m(&m, &dp.to_m(r)), max_relative = 1e-12);
    }
}
