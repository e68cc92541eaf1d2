#![allow(dead_code)]

use std::sync::Arc;

use itertools::Itertools;
use rand::Rng;
use unitfield_core::fields::{covariant_matrix, natural_field, point_frame, UnitField};
use unitfield_core::linalg::{det_poly_coeffs, vector, SquareMatrix};
use unitfield_core::{Point, Surface};

/// Every catalog surface paired with its natural field.
pub fn catalog_pairs() -> Vec<(Surface, Arc<dyn UnitField<f64>>)> {
    [
        Surface::round_sphere(1, 1.0),
        Surface::round_sphere(1, 0.5),
        Surface::round_sphere(2, 1.0),
        Surface::ellipsoid(vec![1.0, 1.2, 1.4, 1.7]),
        Surface::tube_torus(3.0, 1.0),
    ]
    .into_iter()
    .map(|s| {
        let s = s.unwrap();
        let f = natural_field(&s).unwrap();
        (s, f)
    })
    .collect()
}

/// Haar-ish random orthogonal matrix from Gram–Schmidt on Gaussian-like columns.
pub fn random_rotation(rng: &mut impl Rng, k: usize) -> SquareMatrix<f64> {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(k);
    while cols.len() < k {
        let mut c: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for b in &cols {
            vector::reject_unit(&mut c, b);
        }
        if let Some(u) = vector::normalized(&c) {
            cols.push(u);
        }
    }
    SquareMatrix::from_fn(k, |i, j| cols[j][i])
}

/// Largest change of any `η_k` when the first `2n` frame vectors are rotated by `q`.
pub fn eta_rotation_deviation(s: &Surface, f: &dyn UnitField<f64>, p: &Point, q: &SquareMatrix<f64>) -> f64 {
    let pf = point_frame(s, f, p).unwrap();
    let base = det_poly_coeffs(pf.h(), &pf.a).unwrap();
    let rotated = pf.frame.rotated(p, q).unwrap();
    let a = covariant_matrix(s, f, p, &rotated).unwrap();
    let eta = det_poly_coeffs(&rotated.h, &a).unwrap();
    base.as_slice().iter().zip(eta.as_slice()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn permutation_sign(p: &[usize]) -> f64 {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Coefficients of `det(h + t a)` from the Leibniz sum, multiplying out each
/// product of linear factors.
pub fn leibniz_poly(h: &SquareMatrix<f64>, a: &SquareMatrix<f64>) -> Vec<f64> {
    let d = h.dim();
    let mut total = vec![0.0; d + 1];
    for p in (0..d).permutations(d) {
        let mut poly = vec![1.0];
        for (i, &j) in p.iter().enumerate() {
            let mut next = vec![0.0; poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k] += c * h[(i, j)];
                next[k + 1] += c * a[(i, j)];
            }
            poly = next;
        }
        let s = permutation_sign(&p);
        for (t, c) in total.iter_mut().zip(poly) {
            *t += s * c;
        }
    }
    total
}
