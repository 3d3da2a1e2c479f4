use approx::assert_abs_diff_eq;
use nalgebra::{Rotation3, Vector3};
use proptest::prelude::*;

use slantix::curve::{CurveSample, SampledCurve};
use slantix::exec::Execution;
use slantix::io::{parse_number, read_csv, write_csv};
use slantix::oracle::{circular_helix_start, integrate_frenet, IntegratorConfig, InitialState};
use slantix::profiles::{Branch, CurvatureSpec, IntrinsicProfile, Sign, SlantParameters};
use slantix::quadrature::QuadratureConfig;
use slantix::synthesis::{linspace, position_natural_with, salkowski_sampled};
use slantix::verify::{estimate_curvature_torsion, slant_angle_check};

fn away_from_half(n: f64) -> bool {
    (n - 0.5).abs() > 0.02
}

fn moved(curve: &SampledCurve, rot: &Rotation3<f64>, shift: Vector3<f64>) -> SampledCurve {
    let mut c = curve.clone();
    for s in &mut c.samples {
        *s = CurveSample { position: rot * s.position + shift, frame: None, ..*s };
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn estimates_survive_rigid_motion(
        n in 0.1f64..0.9,
        axis in prop::array::uniform3(-1.0f64..1.0),
        angle in -3.0f64..3.0,
        shift in prop::array::uniform3(-10.0f64..10.0),
    ) {
        prop_assume!(away_from_half(n));
        let q = SlantParameters::with_n(n).unwrap();
        let curve = salkowski_sampled(&q, &linspace(-1.0 / n, 1.0 / n, 401)).unwrap();
        let axis = Vector3::from(axis);
        prop_assume!(axis.norm() > 0.1);
        let rot = Rotation3::new(axis.normalize() * angle);
        let a = estimate_curvature_torsion(&curve).unwrap();
        let b = estimate_curvature_torsion(&moved(&curve, &rot, Vector3::from(shift))).unwrap();
        for (x, y) in a.estimates.iter().zip(&b.estimates) {
            assert_abs_diff_eq!(x.kappa, y.kappa, epsilon = 1e-7);
            assert_abs_diff_eq!(x.tau, y.tau, epsilon = 1e-6);
        }
    }

    #[test]
    fn natural_route_normals_keep_slant_angle(n in 0.05f64..0.95, arccos in any::<bool>(), minus in any::<bool>()) {
        prop_assume!(away_from_half(n));
        let branch = if arccos { Branch::Arccos } else { Branch::Arcsin };
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        let q = SlantParameters::new(n, branch, sign).unwrap();
        let profile = IntrinsicProfile::slant_from_kappa(CurvatureSpec::Constant { kappa0: 1.0 }, q).unwrap();
        let curve = position_natural_with(
            &profile, &q, &linspace(-0.8 / q.m(), 0.8 / q.m(), 161), QuadratureConfig::default(), Execution::Sequential,
        ).unwrap();
        let r = slant_angle_check(&curve, Vector3::z(), n, 1e-8).unwrap();
        prop_assert_eq!(r.pass, Some(true), "{:?}", r);
        for s in &curve.samples {
            prop_assert!(s.frame.unwrap().orthonormality_defect() < 1e-9);
        }
    }

    #[test]
    fn oracle_retraces_backwards(k in 0.2f64..3.0, t in -3.0f64..3.0, len in 0.1f64..4.0) {
        let prof = IntrinsicProfile::constant(k, t).unwrap();
        let cfg = IntegratorConfig::with_step(1e-3);
        let fwd = integrate_frenet(&prof, &circular_helix_start(k, t, 0.0).unwrap(), len, &cfg).unwrap();
        let end = fwd.samples.last().unwrap();
        let back_start = InitialState::new(end.position, end.frame.unwrap(), len).unwrap();
        let back = integrate_frenet(&prof, &back_start, 0.0, &cfg).unwrap();
        let first = back.samples.iter().find(|s| s.s == 0.0).unwrap();
        prop_assert!((first.position - fwd.samples[0].position).norm() < 1e-9);
    }

    #[test]
    fn rationals_parse_exactly_once(num in 1u32..1000, den in 1u32..1000) {
        let v = parse_number(&format!("{num}/{den}")).unwrap();
        prop_assert_eq!(v, num as f64 / den as f64);
    }

    #[test]
    fn csv_round_trip_is_bit_exact(n in 0.05f64..0.95, count in 7usize..60) {
        prop_assume!(away_from_half(n));
        let q = SlantParameters::with_n(n).unwrap();
        let curve = salkowski_sampled(&q, &linspace(-1.0, 1.0, count)).unwrap();
        let mut buf = Vec::new();
        write_csv(&curve, &mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        for (a, b) in curve.samples.iter().zip(&back.samples) {
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn sequential_and_parallel_agree_exactly() {
    let q = SlantParameters::with_n(1.0 / 3.0).unwrap();
    let profile = IntrinsicProfile::slant_from_kappa(CurvatureSpec::Cosine { amplitude: 1.0, mu: q.m() }, q).unwrap();
    let grid = linspace(-3.0, 3.0, 601);
    let run = |exec| position_natural_with(&profile, &q, &grid, QuadratureConfig::default(), exec).unwrap();
    let (a, b) = (run(Execution::Sequential), run(Execution::Parallel));
    for (x, y) in a.samples.iter().zip(&b.samples) {
        assert_eq!(x, y);
    }
}
