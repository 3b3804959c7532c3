mod common;

use std::f64::consts::PI;

use common::*;
use hypfeuer_core::cevians::{bisector_foot, circumcenter, incircle, pseudoaltitude_foot};
use hypfeuer_core::cycle::{
    classify, cycle_through, geodesic_through, hyp_center_radius, hyp_circle, intersect, tangency_residual,
    transform_cycle, CycleClass, GeneralizedCycle,
};
use hypfeuer_core::disk::{absolute_inverse, hyp_distance, isometry_to_origin, point_towards, triangle_area};
use hypfeuer_core::generate::{
    instance_rng, random_circle_pair, random_isometry, random_point, random_triangle, TriangleBox,
};
use hypfeuer_core::power::{
    homothetic_centers, homothety, homothety_cycle, inversion, monge_line, power_of_point, pseudolength, radical_axis,
    radical_center,
};
use hypfeuer_core::theorems::*;
use hypfeuer_core::{DiskPoint, HomothetySign, Triangle, TriangleConfig, Vertex};
use num_complex::Complex64;
use rand::Rng;

fn z(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn translation_preserves_distances() {
    let p = pt(0.3, 0.4);
    let t = isometry_to_origin(p).unwrap();
    assert!(t.apply(p).unwrap().z().norm() < 1e-15);
    let mut rng = instance_rng(11, 0);
    for _ in 0..100 {
        let (x, y) = (random_point(&mut rng, 0.9), random_point(&mut rng, 0.9));
        let moved = hyp_distance(t.apply(x).unwrap(), t.apply(y).unwrap());
        assert!((moved - hyp_distance(x, y)).abs() < 1e-12);
    }
}

#[test]
fn composition_is_associative() {
    let mut rng = instance_rng(12, 0);
    for _ in 0..50 {
        let (t1, t2) = (
            {
                let r = rng.random();
                random_isometry(&mut rng, r)
            },
            {
                let r = rng.random();
                random_isometry(&mut rng, r)
            },
        );
        let p = random_point(&mut rng, 0.9);
        let lhs = t1.compose(&t2).apply(p).unwrap();
        let rhs = t1.apply(t2.apply(p).unwrap()).unwrap();
        assert!((lhs.z() - rhs.z()).norm() < 1e-13);
    }
}

#[test]
fn distance_is_symmetric() {
    let (a, b) = (pt(0.2, 0.0), pt(0.0, 0.3));
    assert_eq!(hyp_distance(a, b), hyp_distance(b, a));
    assert!((hyp_distance(DiskPoint::ORIGIN, pt(0.5, 0.0)) - 3f64.ln()).abs() < 1e-15);
}

#[test]
fn area_matches_argument_formula() {
    let mut rng = instance_rng(13, 0);
    for _ in 0..200 {
        let t = random_triangle(&mut rng, &TriangleBox::default()).value;
        let [a, b, c] = t.vertices().map(|v| v.z());
        assert!((triangle_area(&t) - area_by_arg(a, b, c)).abs() < 1e-12);
    }
}

#[test]
fn right_angle_triangle_angle_sum() {
    let t = tri((0.0, 0.0), (0.5, 0.0), (0.0, 0.5));
    let [alpha, beta, gamma] = t.angles().map(f64::abs);
    assert!((alpha - PI / 2.0).abs() < 1e-15);
    assert!((triangle_area(&t) - (PI / 2.0 - beta - gamma)).abs() < 1e-15);
}

#[test]
fn inverse_points_through_three_points() {
    let (a, b, x) = (pt(0.3, 0.0), pt(0.0, 0.2), pt(0.1, 0.1));
    let (sa, sb) = (absolute_inverse(a).unwrap(), absolute_inverse(b).unwrap());
    let c = cycle_through(sa, sb, x).unwrap();
    for p in [sa.z(), sb.z(), x.z()] {
        assert!(c.distance(p) < 1e-12);
    }
}

#[test]
fn geodesic_orthogonal_and_through_inverse() {
    let g = geodesic_through(pt(0.3, 0.0), pt(0.0, 0.3)).unwrap();
    let (a, _, c) = g.coeffs();
    assert!((c - a).abs() < 1e-12);
    assert_eq!(classify(&g).unwrap(), CycleClass::Geodesic);
    let mut rng = instance_rng(14, 0);
    let p = pt(0.3, 0.1);
    for _ in 0..20 {
        let g = geodesic_through(p, random_point(&mut rng, 0.9)).unwrap();
        assert!(g.distance(absolute_inverse(p).unwrap().z()) < 1e-10);
    }
}

#[test]
fn center_on_real_diameter() {
    let c = GeneralizedCycle::circle(z(0.4, 0.0), 0.2).unwrap();
    let (m, r) = hyp_center_radius(&c).unwrap();
    assert!(m.z().im.abs() < 1e-15);
    let (d1, d2) = (hyp_distance(pt(0.2, 0.0), m), hyp_distance(m, pt(0.6, 0.0)));
    assert!((d1 - d2).abs() < 1e-13 && (d1 - r).abs() < 1e-13);
}

#[test]
fn circle_samples_equidistant_from_center() {
    let mut rng = instance_rng(15, 0);
    for _ in 0..50 {
        let center = random_point(&mut rng, 0.7);
        let radius = rng.random_range(0.05..2.0);
        let c = hyp_circle(center, radius).unwrap();
        let (found, r) = hyp_center_radius(&c).unwrap();
        for s in c.sample(32) {
            let d = hyp_distance(found, DiskPoint::new(s).unwrap());
            assert!((d - r).abs() < 1e-10 && (r - radius).abs() < 1e-10);
        }
    }
}

#[test]
fn geodesics_through_common_point() {
    let mut rng = instance_rng(16, 0);
    for _ in 0..50 {
        let p = random_point(&mut rng, 0.8);
        let g1 = geodesic_through(p, random_point(&mut rng, 0.8)).unwrap();
        let g2 = geodesic_through(p, random_point(&mut rng, 0.8)).unwrap();
        let found = intersect(&g1, &g2).unwrap().into_iter().min_by(|x, y| x.norm().total_cmp(&y.norm())).unwrap();
        assert!((found - p.z()).norm() < 1e-11);
    }
}

#[test]
fn tangency_survives_motions() {
    let c1 = GeneralizedCycle::circle(z(0.0, 0.0), 0.3).unwrap();
    let c2 = GeneralizedCycle::circle(z(0.5, 0.0), 0.2).unwrap();
    assert!(tangency_residual(&c1, &c2) < 1e-15);
    let c3 = GeneralizedCycle::circle(z(0.0, 0.0), 0.6).unwrap();
    assert!(tangency_residual(&c1, &c3) > 0.1);
    let mut rng = instance_rng(17, 0);
    for _ in 0..50 {
        let t = {
            let r = rng.random();
            random_isometry(&mut rng, r)
        };
        let moved = tangency_residual(&transform_cycle(&t, &c1), &transform_cycle(&t, &c3));
        assert!((moved - tangency_residual(&c1, &c3)).abs() < 1e-10);
    }
}

#[test]
fn transformed_samples_stay_on_image() {
    let mut rng = instance_rng(18, 0);
    let c = hyp_circle(pt(0.2, -0.3), 0.8).unwrap();
    for _ in 0..20 {
        let t = {
            let r = rng.random();
            random_isometry(&mut rng, r)
        };
        let image = transform_cycle(&t, &c);
        for s in c.sample(32) {
            assert!(image.distance(t.apply_z(s)) < 1e-11);
        }
    }
    let moved = transform_cycle(
        &isometry_to_origin(pt(0.5, 0.0)).unwrap(),
        &geodesic_through(pt(0.5, 0.0), pt(0.5, 0.3)).unwrap(),
    );
    assert_eq!(classify(&moved).unwrap(), CycleClass::Geodesic);
}

/// Triangle used for the small-scale comparisons.
fn reference() -> Triangle {
    tri((0.3, 0.5), (0.6, -0.2), (-0.4, -0.1))
}

#[test]
fn euclidean_limit_of_feet() {
    let lambda = 1e-3;
    let t = scaled(&reference(), lambda);
    let scale = lambda;
    for v in Vertex::ALL {
        let (vv, p, q) = v.cyclic(&t);
        let (m, _) = bisector_foot(&t, v).unwrap();
        let (h, _) = pseudoaltitude_foot(&t, v).unwrap();
        let mid = (p.z() + q.z()) / 2.0;
        let alt = euclid_foot(vv.z(), p.z(), q.z());
        assert!((m.z() - mid).norm() / scale < 1e-6, "{v:?}");
        assert!((h.z() - alt).norm() / scale < 1e-6, "{v:?}");
    }
}

#[test]
fn euclidean_limit_of_circles() {
    let lambda = 1e-3;
    let base = reference();
    let t = scaled(&base, lambda);
    let cfg = TriangleConfig::build(t).unwrap();
    let [a, b, c] = base.vertices().map(|v| v.z());
    let (la, lb, lc) = ((b - c).norm(), (c - a).norm(), (a - b).norm());
    let s = (la + lb + lc) / 2.0;
    let euclid_area = (s * (s - la) * (s - lb) * (s - lc)).sqrt();
    let inradius = euclid_area / s;
    // The disk metric is twice the Euclidean one at the center.
    let r = incircle(&t).unwrap().radius;
    assert!((r / (2.0 * lambda) - inradius).abs() / inradius < 1e-5);

    let circum_r = la * lb * lc / (4.0 * euclid_area);
    let (center, radius) = cfg.euler_circle.euclidean_circle().unwrap();
    let centroid = (a + b + c) / 3.0;
    let ax = (a.norm_sqr() * (b.im - c.im) + b.norm_sqr() * (c.im - a.im) + c.norm_sqr() * (a.im - b.im))
        / (2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im)));
    let ay = (a.norm_sqr() * (c.re - b.re) + b.norm_sqr() * (a.re - c.re) + c.norm_sqr() * (b.re - a.re))
        / (2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im)));
    let circ = z(ax, ay);
    let orthocenter = 3.0 * centroid - 2.0 * circ;
    let nine_center = (circ + orthocenter) / 2.0;
    assert!((center / lambda - nine_center).norm() < 1e-5);
    assert!((radius / lambda - circum_r / 2.0).abs() < 1e-5);
    let o = circumcenter(&t).unwrap();
    assert!((o.z() / lambda - circ).norm() < 1e-5);
}

#[test]
fn power_is_chord_independent() {
    let mut rng = instance_rng(19, 0);
    for _ in 0..50 {
        let c = hyp_circle(random_point(&mut rng, 0.5), rng.random_range(0.2..1.5)).unwrap();
        let p = random_point(&mut rng, 0.7);
        let power = power_of_point(p, &c).unwrap();
        let mut products = Vec::new();
        for _ in 0..8 {
            let through = point_towards(p, random_point(&mut rng, 0.9), 0.5).unwrap();
            let g = geodesic_through(p, through).unwrap();
            let hits = intersect(&g, &c).unwrap();
            let inside: Vec<_> = hits.into_iter().filter_map(|h| DiskPoint::new(h).ok()).collect();
            if inside.len() == 2 {
                products.push(pseudolength(p, inside[0]) * pseudolength(p, inside[1]));
            }
        }
        for prod in &products {
            assert!((prod - power.abs()).abs() < 1e-11, "{prod} vs {power}");
        }
    }
}

#[test]
fn radical_axis_through_common_points() {
    let mut rng = instance_rng(20, 0);
    let mut seen = 0;
    while seen < 20 {
        let [c1, c2] = random_circle_pair(&mut rng).value;
        let common = intersect(&c1, &c2).unwrap();
        if common.len() != 2 {
            continue;
        }
        seen += 1;
        let axis = radical_axis(&c1, &c2).unwrap();
        for p in common {
            assert!(axis.distance(p) < 1e-10);
        }
    }
}

#[test]
fn pseudoaltitude_circles_meet_at_orthocenter() {
    let t = reference();
    let cfg = TriangleConfig::build(t).unwrap();
    let h = cfg.pseudoaltitude_feet().unwrap();
    let [a, b, c] = t.vertices();
    let cs =
        [cycle_through(a, b, h[0]).unwrap(), cycle_through(a, c, h[0]).unwrap(), cycle_through(b, c, h[1]).unwrap()];
    let (p, spread) = radical_center(&cs[0], &cs[1], &cs[2]).unwrap();
    assert!(spread < 1e-10);
    assert!(hyp_distance(p, cfg.orthocenter.unwrap().0) < 1e-9);
}

#[test]
fn homothety_keeps_cycles() {
    let c = hyp_circle(pt(0.1, 0.2), 0.7).unwrap();
    let center = pt(-0.2, 0.1);
    for k in [0.4, -0.6] {
        let images: Vec<_> =
            c.sample(16).into_iter().map(|s| homothety(center, k, DiskPoint::new(s).unwrap()).unwrap()).collect();
        let fitted = cycle_through(images[0], images[5], images[10]).unwrap();
        for p in &images {
            assert!(fitted.distance(p.z()) < 1e-11);
        }
        assert!(same_cycle(&fitted, &homothety_cycle(center, k, &c).unwrap()) < 1e-11);
    }
}

#[test]
fn inversion_is_involutive() {
    let mut rng = instance_rng(21, 0);
    let mut done = 0;
    while done < 50 {
        let (c, p) = (random_point(&mut rng, 0.6), random_point(&mut rng, 0.6));
        let r2 = pseudolength(c, p) * rng.random_range(0.5..1.0);
        let Ok(q) = inversion(c, r2, p) else { continue };
        let back = inversion(c, r2, q).unwrap();
        assert!((back.z() - p.z()).norm() < 1e-12);
        done += 1;
    }
}

#[test]
fn homothetic_centers_match_pencil_limit_points() {
    let mut rng = instance_rng(22, 0);
    let mut compared = [0, 0];
    for _ in 0..200 {
        let [c1, c2] = random_circle_pair(&mut rng).value;
        let Ok(centers) = homothetic_centers(&c1, &c2, &mut rng) else { continue };
        for (i, (sign, found)) in [(1.0, centers.positive), (-1.0, centers.negative)].into_iter().enumerate() {
            let oracle = pencil_center(&c1, &c2, sign);
            match (found, oracle) {
                (Some(f), Some(o)) => {
                    assert!((f.point.z() - o).norm() < 1e-8, "{f:?} {o}");
                    assert!(f.angle_spread < 1e-9);
                    compared[i] += 1;
                }
                (None, Some(o)) => assert!(o.norm() > 0.999, "missed center {o}"),
                (Some(f), None) => panic!("spurious center {f:?}"),
                (None, None) => {}
            }
        }
    }
    assert!(compared[0] > 20 && compared[1] > 20, "{compared:?}");
}

#[test]
fn monge_line_ignores_labels() {
    let mut rng = instance_rng(23, 0);
    let circles = hypfeuer_core::generate::random_circle_triple(&mut rng).value;
    let signs = [HomothetySign::Positive; 3];
    let line = monge_line(&circles, signs, &mut rng).unwrap();
    let swapped = [circles[1], circles[2], circles[0]];
    let other = monge_line(&swapped, signs, &mut rng).unwrap();
    assert!(same_cycle(&line.line, &other.line) < 1e-10);
    assert!(line.residual < 1e-9);
}

#[test]
fn congruent_triple_has_no_positive_centers() {
    let mut rng = instance_rng(24, 0);
    let circles = [-0.4, 0.0, 0.4].map(|x| hyp_circle(pt(x, 0.0), 0.1).unwrap());
    for signs in monge_patterns() {
        let check = check_monge(&circles, signs, 1e-12, &mut rng);
        assert_eq!(check.flag.as_deref(), Some("missing_center"), "{check:?}");
    }
}

#[test]
fn six_point_perturbation_is_detected() {
    let cfg = TriangleConfig::build(reference()).unwrap();
    assert!(check_six_point(&cfg, 1e-9).passed());
    let mut bent = cfg.clone();
    let mut h = bent.feet.pseudoaltitude.unwrap();
    h[0] = point_towards(h[0], cfg.triangle.c, 1e-4).unwrap();
    bent.feet.pseudoaltitude = Some(h);
    let check = check_six_point(&bent, 1e-9);
    assert!(!check.passed());
    assert!(check.residual.unwrap() > 1e-7, "{check:?}");
}

#[test]
fn trapezoid_contrapositive() {
    // Turn D about A by 0.1 rad away from the balanced position.
    let quad = [pt(-0.4, -0.2), pt(0.4, -0.2), pt(0.2, 0.3), pt(-0.2, 0.3)];
    let check = check_trapezoid(&quad, 1e-9);
    let d = DiskPoint::new(check.witness.points["balanced_d"]).unwrap();
    let to_a = isometry_to_origin(quad[0]).unwrap();
    let turned = to_a.invert().apply_z(to_a.apply_z(d.z()) * Complex64::from_polar(1.0, 0.1));
    let bent = [quad[0], quad[1], quad[2], DiskPoint::new(turned).unwrap()];
    let gap = hypfeuer_core::disk::area(bent[0], bent[1], bent[3]).unwrap()
        - hypfeuer_core::disk::area(bent[0], bent[1], bent[2]).unwrap();
    assert!(quad_angle_gap(&bent).unwrap().abs() > 0.01);
    assert!(gap.abs() > 1e-3, "{gap}");
}

#[test]
fn converse_inscribed_angle() {
    // Points seeing a, b under one σ value lie on one cycle.
    let c = hyp_circle(pt(0.1, 0.1), 0.8).unwrap();
    let s = c.sample(12);
    let [a, b, x, y] = [s[0], s[5], s[7], s[10]].map(|p| DiskPoint::new(p).unwrap());
    let sx = hypfeuer_core::disk::sigma(a, x, b).unwrap();
    let sy = hypfeuer_core::disk::sigma(a, y, b).unwrap();
    assert!((sx - sy).abs() < 1e-12);
    assert!(cycle_through(a, b, x).unwrap().distance(y.z()) < 1e-12);
}

#[test]
fn external_tangent_cevians_meet_at_negative_center() {
    // A thin triangle with a small circumcircle admits the external variant.
    let t = tri((0.0, 0.12), (0.02, -0.1), (-0.02, -0.1));
    let cfg = TriangleConfig::build(t).unwrap();
    let mut rng = instance_rng(25, 0);
    let check = check_tangent_cevians(&cfg, &cfg.circumcircle, true, 1e-8, &mut rng);
    assert!(check.passed(), "{check:?}");
    assert!(check.witness.values.contains_key("to_homothetic_center"));
}

#[test]
fn euler_line_direction_in_the_limit() {
    let lambda = 1e-3;
    let base = reference();
    let cfg = TriangleConfig::build(scaled(&base, lambda)).unwrap();
    let o = cfg.circumcenter.unwrap().0.z();
    let h = cfg.orthocenter.unwrap().0.z();
    let [a, b, c] = base.vertices().map(|v| v.z());
    let centroid = (a + b + c) / 3.0;
    let m = cfg.bisector_point.unwrap().0.z();
    assert!((m / lambda - centroid).norm() < 1e-5);
    let dir = (h - o) / (h - o).norm();
    let euclid = centroid * lambda - o;
    let cross = (dir.conj() * euclid / euclid.norm()).im;
    assert!(cross.abs() < 1e-5);
}

#[test]
fn pseudoaltitude_foot_outside_segment() {
    // Wide angle at A pushes the other feet off their sides.
    let t = tri((0.0, 0.05), (0.5, -0.05), (-0.5, -0.05));
    for v in Vertex::ALL {
        let (vv, p, q) = v.cyclic(&t);
        let (x, w) = pseudoaltitude_foot(&t, v).unwrap();
        assert!(w <= 1e-14);
        let left = hypfeuer_core::disk::sigma(p, x, vv).unwrap();
        let right = hypfeuer_core::disk::sigma(vv, x, q).unwrap();
        assert!((left - right).abs() < 1e-12);
    }
}
