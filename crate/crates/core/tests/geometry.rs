use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unitfield_core::geometry::{build_grid, principal_frame, shape_operator, unit_sphere_volume, Hypersurface};
use unitfield_core::linalg::vector;
use unitfield_core::Surface;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn random_params(rng: &mut impl Rng, m: usize, periodic_last: bool) -> Vec<f64> {
    (0..m)
        .map(|i| if periodic_last && i + 1 == m { rng.gen_range(0.0..2.0 * PI) } else { rng.gen_range(0.2..PI - 0.2) })
        .collect()
}

#[test]
fn sphere_volumes() {
    assert!(rel(unit_sphere_volume::<f64>(1), 2.0 * PI * PI) < 1e-15);
    assert!(rel(unit_sphere_volume::<f64>(2), PI.powi(3)) < 1e-15);

    let s3 = Surface::round_sphere(1, 1.0).unwrap();
    let v = build_grid(&s3, &[24, 24, 32]).unwrap().total_weight().unwrap();
    assert!(rel(v, 2.0 * PI * PI) < 1e-10, "{v}");

    let s5 = Surface::round_sphere(2, 1.0).unwrap();
    let v = build_grid(&s5, &[12, 12, 12, 12, 8]).unwrap().total_weight().unwrap();
    assert!(rel(v, PI.powi(3)) < 1e-8, "{v}");

    for r in [0.5, 2.0] {
        let s = Surface::round_sphere(1, r).unwrap();
        let v = build_grid(&s, &[24, 24, 32]).unwrap().total_weight().unwrap();
        assert!(rel(v, 2.0 * PI * PI * r.powi(3)) < 1e-10, "r={r}: {v}");
    }
}

#[test]
fn torus_volume() {
    // vol(S¹(R) tube of radius ρ in ℝ⁴) = 2πR · 4πρ²
    let t = Surface::tube_torus(3.0, 1.0).unwrap();
    let v = build_grid(&t, &[32, 24, 32]).unwrap().total_weight().unwrap();
    assert!(rel(v, 2.0 * PI * 3.0 * 4.0 * PI) < 1e-10, "{v}");
}

#[test]
fn sphere_shape_operator_is_scalar() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (n, r) in [(1, 1.0), (1, 2.5), (2, 0.7)] {
        let s = Surface::round_sphere(n, r).unwrap();
        for _ in 0..20 {
            let p = s.eval_point(0, &random_params(&mut rng, s.dim(), true)).unwrap();
            assert!((vector::norm(&p.position) - r).abs() < 1e-13);
            let pf = principal_frame(&p).unwrap();
            for k in pf.curvatures {
                assert!((k - 1.0 / r).abs() < 1e-9, "n={n} r={r}: {k}");
            }
        }
    }
}

#[test]
fn ellipsoid_gauss_kronecker_curvature() {
    // For Σ x_i²/a_i² = 1 in ℝ^{m+1}: K = 1 / (∏ a_i² · (Σ x_i²/a_i⁴)^{(m+2)/2}).
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for axes in [vec![1.0, 1.2, 1.4, 1.7], vec![0.8, 1.0, 1.1, 1.3, 1.6, 2.0]] {
        let e = Surface::ellipsoid(axes.clone()).unwrap();
        let m = e.dim() as i32;
        let prod: f64 = axes.iter().map(|a| a * a).product();
        for _ in 0..25 {
            let p = e.eval_point(0, &random_params(&mut rng, e.dim(), true)).unwrap();
            let level: f64 = p.position.iter().zip(&axes).map(|(x, a)| x * x / (a * a)).sum();
            assert!((level - 1.0).abs() < 1e-12);
            let q: f64 = p.position.iter().zip(&axes).map(|(x, a)| x * x / a.powi(4)).sum();
            let want = 1.0 / (prod * q.powf((m + 2) as f64 / 2.0));
            let got = shape_operator(&p).unwrap().coord.det();
            assert!(rel(got, want) < 1e-8, "axes {axes:?}: {got} vs {want}");
        }
    }
}

#[test]
fn shape_operator_is_self_adjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let surfaces = [
        Surface::ellipsoid(vec![1.0, 1.2, 1.4, 1.7]).unwrap(),
        Surface::tube_torus(3.0, 1.0).unwrap(),
        Surface::round_sphere(2, 1.3).unwrap(),
    ];
    for s in &surfaces {
        let periodic_last = !matches!(s.name(), n if n.starts_with("tube"));
        for _ in 0..20 {
            let mut u = random_params(&mut rng, s.dim(), periodic_last);
            if !periodic_last {
                u[0] = rng.gen_range(0.0..2.0 * PI);
            }
            let p = s.eval_point(0, &u).unwrap();
            let so = shape_operator(&p).unwrap();
            let scale = so.second_form.max_abs().max(1.0);
            assert!(so.second_form.max_asymmetry() < 1e-9 * scale, "{}", s.name());
            // ⟨S x, y⟩ = ⟨x, S y⟩ for random tangent vectors.
            let x = p.project_tangent(&(0..s.ambient_dim()).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>());
            let y = p.project_tangent(&(0..s.ambient_dim()).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>());
            let lhs = vector::dot(&so.apply(&p, &x).unwrap(), &y);
            let rhs = vector::dot(&x, &so.apply(&p, &y).unwrap());
            assert!((lhs - rhs).abs() < 1e-9, "{}: {lhs} vs {rhs}", s.name());
        }
    }
}

#[test]
fn torus_principal_curvatures() {
    let (big, small) = (3.0, 1.0);
    let t = Surface::tube_torus(big, small).unwrap();
    for (phi, core) in [(0.3, 0.3_f64.cos() / (big + small * 0.3_f64.cos())), (PI / 2.0, 0.0), (2.5, 2.5_f64.cos() / (big + small * 2.5_f64.cos()))] {
        let p = t.eval_point(0, &[0.7, phi, 1.9]).unwrap();
        let mut k = principal_frame(&p).unwrap().curvatures;
        k.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((k[0] - 1.0 / small).abs() < 1e-9 && (k[1] - 1.0 / small).abs() < 1e-9, "{k:?}");
        assert!((k[2] - core).abs() < 1e-9, "phi={phi}: {k:?} vs {core}");
    }
    // Near the outer equator the core curvature approaches 1/(R + ρ).
    let p = t.eval_point(0, &[0.0, 1e-4, 0.0]).unwrap();
    let k = principal_frame(&p).unwrap().curvatures;
    assert!(k.iter().any(|c| (c - 1.0 / (big + small)).abs() < 1e-7), "{k:?}");
}

#[test]
fn orientation_reversal_flips_curvature() {
    let s = Surface::round_sphere(1, 2.0).unwrap();
    let r = s.clone().reversed();
    let u = [0.9, 1.3, 4.0];
    let k = principal_frame(&s.eval_point(0, &u).unwrap()).unwrap().curvatures;
    let kr = principal_frame(&r.eval_point(0, &u).unwrap()).unwrap().curvatures;
    for (a, b) in k.iter().zip(&kr) {
        assert!((a + b).abs() < 1e-12);
    }
}

#[test]
fn invalid_surfaces_rejected() {
    assert!(Surface::round_sphere(1, 0.0).is_err());
    assert!(Surface::round_sphere(1, -1.0).is_err());
    assert!(Surface::ellipsoid(vec![1.0, 1.0, 1.0]).is_err());
    assert!(Surface::ellipsoid(vec![1.0, 1.0, -1.0, 1.0]).is_err());
    assert!(Surface::tube_torus(1.0, 2.0).is_err());
    let s = Hypersurface::round_sphere(1, 1.0_f64).unwrap();
    assert!(build_grid(&s, &[3, 8, 8]).is_err());
    assert!(build_grid(&s, &[8, 8]).is_err());
}

#[test]
fn single_precision_sphere() {
    let s = Hypersurface::round_sphere(1, 1.0_f32).unwrap();
    let v = build_grid(&s, &[16, 16, 16]).unwrap().total_weight().unwrap();
    assert!((v as f64 - 2.0 * PI * PI).abs() < 1e-4);
}

#[test]
fn ellipsoid_volume_converges_under_refinement() {
    let e = Surface::ellipsoid(vec![1.0, 1.2, 1.4, 1.7]).unwrap();
    let v: Vec<f64> =
        [8, 16, 32].iter().map(|&k| build_grid(&e, &[k, k, k]).unwrap().total_weight().unwrap()).collect();
    let (d1, d2) = ((v[1] - v[0]).abs(), (v[2] - v[1]).abs());
    assert!(d2 <= d1 / 4.0 || d2 < 1e-12 * v[2], "{v:?}");
}
