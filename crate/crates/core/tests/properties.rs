mod common;

use std::f64::consts::PI;

use common::*;
use hypfeuer_core::cevians::feet;
use hypfeuer_core::cycle::{classify, cycle_through, geodesic_through, hyp_circle, transform_cycle, CycleClass};
use hypfeuer_core::disk::{
    absolute_inverse, hyp_distance, point_towards, sigma, signed_angle, triangle_area, DiskIsometry,
};
use hypfeuer_core::generate::instance_rng;
use hypfeuer_core::power::{pseudolength, radical_axis};
use hypfeuer_core::theorems::*;
use hypfeuer_core::{CevianKind, DiskPoint, Triangle, TriangleConfig};
use proptest::prelude::*;

fn point(max: f64) -> impl Strategy<Value = DiskPoint> {
    (0.0..max, -PI..PI).prop_map(|(r, t)| DiskPoint::from_polar(r, t).unwrap())
}

fn motion(reflect: bool) -> impl Strategy<Value = DiskIsometry> {
    (point(0.6), -PI..PI, Just(reflect)).prop_map(|(a, t, r)| DiskIsometry::new(a.z(), t, r).unwrap())
}

fn any_motion() -> impl Strategy<Value = DiskIsometry> {
    prop_oneof![motion(false), motion(true)]
}

fn triangle() -> impl Strategy<Value = Triangle> {
    (point(0.7), point(0.7), point(0.7)).prop_filter_map("thin triangle", |(a, b, c)| {
        Triangle::new(a, b, c).ok().filter(|t| t.angles().iter().all(|x| *x >= 0.15))
    })
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

fn moved(t: &DiskIsometry, p: DiskPoint) -> DiskPoint {
    t.apply(p).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn metric_quantities_are_invariant(a in point(0.7), b in point(0.7), c in point(0.7), t in motion(false)) {
        let (ta, tb, tc) = (moved(&t, a), moved(&t, b), moved(&t, c));
        prop_assert!((hyp_distance(a, b) - hyp_distance(ta, tb)).abs() < 1e-12);
        prop_assert!((pseudolength(a, b) - pseudolength(ta, tb)).abs() < 1e-12);
        if let (Ok(s), Ok(ts)) = (signed_angle(a, b, c), signed_angle(ta, tb, tc)) {
            let diff = (s.value() - ts.value()).abs();
            prop_assert!(diff < 1e-12 || (diff - 2.0 * PI).abs() < 1e-12);
        }
        if let Ok(tri) = Triangle::new(a, b, c) {
            let image = tri.transformed(&t).unwrap();
            prop_assert!((triangle_area(&tri) - triangle_area(&image)).abs() < 1e-12);
            let s = sigma(tri.a, tri.b, tri.c).unwrap();
            let ts = sigma(image.a, image.b, image.c).unwrap();
            prop_assert!((s - ts).abs() < 1e-11);
        }
    }

    #[test]
    fn reflections_negate_angles(a in point(0.7), b in point(0.7), c in point(0.7), t in motion(true)) {
        if let (Ok(s), Ok(ts)) = (signed_angle(a, b, c), signed_angle(moved(&t, a), moved(&t, b), moved(&t, c))) {
            prop_assume!(s.value().abs() < PI - 1e-9);
            prop_assert!((s.value() + ts.value()).abs() < 1e-12);
        }
    }

    #[test]
    fn motions_form_a_group(t1 in any_motion(), t2 in any_motion(), t3 in any_motion(), p in point(0.8)) {
        let back = t1.invert().apply(moved(&t1, p)).unwrap();
        prop_assert!((back.z() - p.z()).norm() < 1e-12);
        let lhs = t1.compose(&t2).compose(&t3).apply_z(p.z());
        let rhs = t1.compose(&t2.compose(&t3)).apply_z(p.z());
        prop_assert!((lhs - rhs).norm() < 1e-12);
        prop_assert!((DiskIsometry::IDENTITY.compose(&t1).apply_z(p.z()) - t1.apply_z(p.z())).norm() < 1e-15);
    }

    #[test]
    fn signed_angle_is_antisymmetric(x in point(0.8), y in point(0.8), z in point(0.8)) {
        if let (Ok(s), Ok(r)) = (signed_angle(x, y, z), signed_angle(z, y, x)) {
            prop_assume!(s.value().abs() < PI - 1e-9);
            prop_assert!((s.value() + r.value()).abs() < 1e-14);
        }
    }

    #[test]
    fn sigma_adds_up_at_a_side_point(tri in triangle(), frac in 0.02..0.98f64) {
        let x = point_towards(tri.b, tri.c, frac * hyp_distance(tri.b, tri.c)).unwrap();
        let total = sigma(tri.b, x, tri.a).unwrap() + sigma(tri.a, x, tri.c).unwrap();
        prop_assert!((total - triangle_area(&tri)).abs() < 1e-10, "{} vs {}", total, triangle_area(&tri));
    }

    #[test]
    fn sigma_is_monotone_along_a_side(tri in triangle()) {
        let d = hyp_distance(tri.b, tri.c);
        let grid: Vec<_> = (1..40)
            .map(|i| point_towards(tri.b, tri.c, d * i as f64 / 40.0).unwrap())
            .map(|x| (sigma(tri.b, x, tri.a).unwrap(), sigma(tri.a, x, tri.c).unwrap()))
            .collect();
        for w in grid.windows(2) {
            prop_assert!(w[1].0 < w[0].0 && w[1].1 > w[0].1);
        }
    }

    #[test]
    fn pseudolength_is_half_distance_tanh(a in point(0.9), b in point(0.9)) {
        prop_assert!((pseudolength(a, b) - (hyp_distance(a, b) / 2.0).tanh()).abs() < 1e-12);
    }

    #[test]
    fn motions_keep_the_class(center in point(0.7), radius in 0.05..2.0f64, p in point(0.8), q in point(0.8), r in point(0.8), t in any_motion()) {
        let mut cycles = vec![hyp_circle(center, radius).unwrap()];
        cycles.extend(geodesic_through(p, q));
        cycles.extend(cycle_through(p, q, r));
        for c in cycles {
            if let Ok(class) = classify(&c) {
                prop_assert_eq!(classify(&transform_cycle(&t, &c)).ok(), Some(class));
            }
        }
    }

    #[test]
    fn cycle_through_ignores_order(p in point(0.8), q in point(0.8), r in point(0.8)) {
        if let Ok(c) = cycle_through(p, q, r) {
            for other in [cycle_through(q, r, p), cycle_through(r, q, p), cycle_through(p, r, q)] {
                prop_assert!(same_cycle(&c, &other.unwrap()) < 1e-13);
            }
        }
    }

    #[test]
    fn geodesics_pass_through_inverse(p in point(0.8), q in point(0.8)) {
        prop_assume!(p.radius() > 0.05 && hyp_distance(p, q) > 1e-6);
        let g = geodesic_through(p, q).unwrap();
        prop_assert!(g.distance(absolute_inverse(p).unwrap().z()) < 1e-10);
    }

    #[test]
    fn radical_axis_is_a_geodesic(c1 in point(0.6), r1 in 0.05..1.2f64, c2 in point(0.6), r2 in 0.05..1.2f64) {
        let (x, y) = (hyp_circle(c1, r1).unwrap(), hyp_circle(c2, r2).unwrap());
        if let Ok(axis) = radical_axis(&x, &y) {
            prop_assert_eq!(classify(&axis).unwrap(), CycleClass::Geodesic);
        }
    }

    #[test]
    fn half_area_at_pseudoaltitude_feet(tri in triangle()) {
        if let Ok(h) = feet(&tri, CevianKind::Pseudoaltitudes) {
            let half = triangle_area(&tri) / 2.0;
            let [a, b, c] = tri.vertices();
            for (x, p, v, q) in [(h[0], b, a, c), (h[1], c, b, a), (h[2], a, c, b)] {
                prop_assert!((sigma(p, x, v).unwrap() - half).abs() < 1e-10);
                prop_assert!((sigma(v, x, q).unwrap() - half).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn constructions_commute_with_motions(tri in triangle(), t in any_motion()) {
        let cfg = TriangleConfig::build(tri).unwrap();
        let image = TriangleConfig::build(tri.transformed(&t).unwrap()).unwrap();
        let pairs = [
            (cfg.circumcenter.map(|x| x.0), image.circumcenter.map(|x| x.0)),
            (cfg.euler_center.map(|x| x.0), image.euler_center.map(|x| x.0)),
            (cfg.bisector_point.map(|x| x.0), image.bisector_point.map(|x| x.0)),
            (cfg.orthocenter.map(|x| x.0), image.orthocenter.map(|x| x.0)),
            (Some(cfg.incircle.center), Some(image.incircle.center)),
        ];
        for (before, after) in pairs {
            if let (Some(p), Some(q)) = (before, after) {
                prop_assert!(hyp_distance(moved(&t, p), q) < 1e-10);
            }
        }
        prop_assert!(same_cycle(&transform_cycle(&t, &cfg.euler_circle), &image.euler_circle) < 1e-10);
    }

    #[test]
    fn checks_commute_with_motions(tri in triangle(), t in any_motion(), seed in any::<u64>()) {
        let tol = Tolerances::default();
        let cfg = TriangleConfig::build(tri).unwrap();
        let image = TriangleConfig::build(tri.transformed(&t).unwrap()).unwrap();
        let run = |c: &TriangleConfig| {
            let mut rng = instance_rng(seed, 0);
            [
                check_six_point(c, tol.theorem),
                check_euler_line(c, tol.theorem),
                check_ratios(c, tol.theorem),
                check_feuerbach(c, tol.chain),
                check_cyclic_quads(c, tol.theorem),
                check_sigma_half_area(c, tol.theorem),
                check_tangent_cevians(c, &c.circumcircle, false, tol.chain, &mut rng),
            ]
        };
        for (x, y) in run(&cfg).iter().zip(run(&image).iter()) {
            prop_assert_eq!(x.status, y.status, "{}", x.name);
            if let (Some(r), Some(s)) = (x.residual, y.residual) {
                prop_assert!((r - s).abs() < 1e-10, "{}: {} vs {}", x.name, r, s);
            }
        }
    }
}
