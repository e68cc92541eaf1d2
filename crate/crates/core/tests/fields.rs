use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unitfield_core::fields::{
    circle_field, fd_param_derivatives, hopf_field, natural_field, perturbed_field, point_frame, projected_hopf_field,
    UnitField,
};
use unitfield_core::geometry::build_grid;
use unitfield_core::linalg::{minor_square_sum, vector};
use unitfield_core::Surface;

fn catalog() -> Vec<(Surface, Arc<dyn UnitField<f64>>)> {
    let s3 = Surface::round_sphere(1, 1.0).unwrap();
    let s3b = Surface::round_sphere(1, 2.0).unwrap();
    let s5 = Surface::round_sphere(2, 1.0).unwrap();
    let ell = Surface::ellipsoid(vec![1.0, 1.2, 1.4, 1.7]).unwrap();
    let tor = Surface::tube_torus(3.0, 1.0).unwrap();
    let hopf: Arc<dyn UnitField<f64>> = Arc::new(hopf_field(&s3).unwrap());
    vec![
        (s3.clone(), hopf.clone()),
        (s3b.clone(), Arc::new(hopf_field(&s3b).unwrap())),
        (s5.clone(), Arc::new(hopf_field(&s5).unwrap())),
        (ell.clone(), Arc::new(projected_hopf_field(&ell).unwrap())),
        (tor.clone(), Arc::new(circle_field(&tor).unwrap())),
        (s3.clone(), Arc::new(perturbed_field(&s3, hopf, 0.2, 5).unwrap())),
        (ell.clone(), Arc::new(perturbed_field(&ell, natural_field(&ell).unwrap(), 0.3, 9).unwrap())),
    ]
}

fn sample_nodes(s: &Surface, count: usize, seed: u64) -> Vec<unitfield_core::Point> {
    let grid = build_grid(s, &vec![8; s.dim()]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| grid.node(rng.gen_range(0..grid.len())).unwrap().point).collect()
}

#[test]
fn fields_are_unit_and_tangent() {
    for (s, f) in catalog() {
        let grid = build_grid(&s, &vec![6; s.dim()]).unwrap();
        for i in 0..grid.len() {
            let p = grid.node_light(i).unwrap().point;
            let v = f.value(&p).unwrap();
            assert!((vector::norm(&v) - 1.0).abs() < 1e-12, "{}", f.name());
            assert!(vector::dot(&v, &p.normal).abs() < 1e-12, "{}", f.name());
        }
    }
}

#[test]
fn closed_form_derivatives_match_finite_differences() {
    for (s, f) in catalog() {
        for p in sample_nodes(&s, 15, 21) {
            let exact = f.param_derivatives(&s, &p).unwrap();
            let fd = fd_param_derivatives(f.as_ref(), &s, &p).unwrap();
            for (e, d) in exact.iter().zip(&fd) {
                let err = vector::norm(&vector::sub(e, d));
                assert!(err < 1e-7 * vector::norm(e).max(1.0), "{}: {err}", f.name());
            }
        }
    }
}

#[test]
fn last_row_of_covariant_matrix_vanishes() {
    for (s, f) in catalog() {
        for p in sample_nodes(&s, 20, 22) {
            let pf = point_frame(&s, f.as_ref(), &p).unwrap();
            let d = pf.a.dim();
            assert!(pf.a.row(d - 1).iter().all(|x| x.abs() < 1e-9), "{}: {:?}", f.name(), pf.a.row(d - 1));
        }
    }
}

#[test]
fn hopf_covariant_matrix() {
    // On S^{2n+1}(r) the Hopf field is Killing: a is skew with entries ±1/r on
    // a complex-structure pairing, so ‖∇v‖² = 2n/r² and 𝓑_k is fixed.
    for (n, r) in [(1usize, 1.0), (1, 2.0), (2, 1.0)] {
        let s = Surface::round_sphere(n, r).unwrap();
        let f = hopf_field(&s).unwrap();
        for p in sample_nodes(&s, 10, 23) {
            let a = point_frame(&s, &f, &p).unwrap().a;
            let skew = a.add_scaled(1.0, &a.transpose()).unwrap().max_abs();
            assert!(skew < 1e-10);
            assert!((a.frobenius_sq() - 2.0 * n as f64 / (r * r)).abs() < 1e-10);
            if n == 1 {
                let nz: Vec<f64> = a.as_slice().iter().copied().filter(|x| x.abs() > 1e-9).collect();
                assert_eq!(nz.len(), 2);
                assert!(nz.iter().all(|x| (x.abs() - 1.0 / r).abs() < 1e-10));
            } else {
                assert!((minor_square_sum(&a, 2).unwrap() - 6.0).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn perturbation_is_reproducible() {
    let s = Surface::round_sphere(1, 1.0).unwrap();
    let base: Arc<dyn UnitField<f64>> = Arc::new(hopf_field(&s).unwrap());
    let zero = perturbed_field(&s, base.clone(), 0.0, 3).unwrap();
    let (a, b) = (perturbed_field(&s, base.clone(), 0.1, 3).unwrap(), perturbed_field(&s, base.clone(), 0.1, 3).unwrap());
    let c = perturbed_field(&s, base.clone(), 0.1, 4).unwrap();
    assert_eq!(a.direction(), b.direction());
    assert_ne!(a.direction(), c.direction());
    for p in sample_nodes(&s, 10, 24) {
        assert_eq!(zero.value(&p).unwrap(), base.value(&p).unwrap());
        assert_eq!(a.value(&p).unwrap(), b.value(&p).unwrap());
    }
    assert!(perturbed_field(&s, base.clone(), 1.0, 0).is_err());
    assert!(perturbed_field(&s, base, -0.1, 0).is_err());
}

#[test]
fn projected_hopf_agrees_with_hopf_on_spheres() {
    let s = Surface::round_sphere(1, 1.5).unwrap();
    let (h, ph) = (hopf_field(&s).unwrap(), projected_hopf_field(&s).unwrap());
    for p in sample_nodes(&s, 10, 25) {
        let d = vector::sub(&h.value(&p).unwrap(), &ph.value(&p).unwrap());
        assert!(vector::norm(&d) < 1e-13);
    }
}
