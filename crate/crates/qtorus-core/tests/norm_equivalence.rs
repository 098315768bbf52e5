//! Cross-module checks: the metric-weighted module norm is sandwiched by
//! the standard norm through the metric's spectral data, and the
//! compression machinery agrees with the symbolic route on elements it can
//! certify exactly.

use std::sync::Arc;

use num_complex::Complex64;
use qtorus_core::algebra::{ThetaMatrix, TorusElement};
use qtorus_core::geometry::{self, MetricMatrix, MetricSpec, ModuleVector};
use qtorus_core::gns::{self, GnsConfig};
use qtorus_core::rng::DetRng;

fn theta2(v: f64) -> Arc<ThetaMatrix> {
    Arc::new(ThetaMatrix::new(2, &[0.0, v, -v, 0.0]).unwrap())
}

fn quick_gns() -> GnsConfig {
    GnsConfig {
        radii: vec![2, 4],
        ..GnsConfig::default()
    }
}

fn random_vector(th: &Arc<ThetaMatrix>, rng: &mut DetRng) -> ModuleVector {
    let comps: Vec<TorusElement> = (0..th.n())
        .map(|_| {
            let coeffs: Vec<(Vec<i32>, Complex64)> = (0..3)
                .map(|_| {
                    (
                        vec![rng.int_in(-1, 1), rng.int_in(-1, 1)],
                        rng.complex(),
                    )
                })
                .collect();
            TorusElement::from_coeffs(th, coeffs).unwrap()
        })
        .collect();
    ModuleVector::new(comps).unwrap()
}

/// For a conformal metric `g = (eps + h^2) I` the weighted norm obeys
/// `sqrt(eps) ‖X‖_st <= ‖X‖_g <= sqrt(eps + ‖h‖^2) ‖X‖_st`.
#[test]
fn conformal_norm_sandwich() {
    let th = theta2(0.37);
    let cfg = quick_gns();
    let mut rng = DetRng::new(5, 0);
    for round in 0..5 {
        let h = {
            let coeffs: Vec<(Vec<i32>, Complex64)> = (0..2)
                .map(|_| {
                    (
                        vec![rng.int_in(-1, 1), rng.int_in(-1, 1)],
                        rng.complex(),
                    )
                })
                .collect();
            TorusElement::from_coeffs(&th, coeffs)
                .unwrap()
                .real_part()
                .scale_re(0.6)
        };
        let eps = 0.5 + 0.5 * rng.unit();
        let g = MetricMatrix::make(
            &MetricSpec::Conformal {
                h: h.clone(),
                epsilon: eps,
            },
            Some(2),
        )
        .unwrap();

        let h_norm_upper = gns::norm_interval(&h, &cfg).unwrap().upper;
        let lo_const = eps.sqrt();
        let hi_const = (eps + h_norm_upper * h_norm_upper).sqrt();

        let x = random_vector(&th, &mut rng);
        let st = geometry::norm_st(&x, &cfg).unwrap();
        let wg = geometry::norm_g(&g, &x, &cfg).unwrap();
        let slack = 1e-9 * (1.0 + wg.upper.max(st.upper));
        assert!(
            lo_const * st.lower <= wg.upper + slack,
            "round {round}: lower sandwich {} > {}",
            lo_const * st.lower,
            wg.upper
        );
        assert!(
            wg.lower <= hi_const * st.upper + slack,
            "round {round}: upper sandwich {} > {}",
            wg.lower,
            hi_const * st.upper
        );
    }
}

/// Diagonal metrics with an orthogonal rotation share the same spectral
/// bounds as the bare diagonal, so the sandwich constants come from the
/// diagonal entries alone.
#[test]
fn rotated_diagonal_norm_sandwich() {
    let th = theta2(0.29);
    let cfg = quick_gns();
    let mut rng = DetRng::new(13, 0);
    let (c, s) = (0.6f64, 0.8f64);
    let d: Vec<TorusElement> = (0..2)
        .map(|_| {
            let coeffs: Vec<(Vec<i32>, Complex64)> = (0..2)
                .map(|_| {
                    (
                        vec![rng.int_in(-1, 1), rng.int_in(-1, 1)],
                        rng.complex(),
                    )
                })
                .collect();
            TorusElement::from_coeffs(&th, coeffs)
                .unwrap()
                .real_part()
                .scale_re(0.5)
        })
        .collect();
    let eps = 1.0;
    let g = MetricMatrix::make(
        &MetricSpec::RotatedDiagonal {
            d: d.clone(),
            epsilon: eps,
            o: vec![c, s, -s, c],
        },
        Some(2),
    )
    .unwrap();

    let mut hi = 0.0f64;
    for dl in &d {
        let u = gns::norm_interval(dl, &cfg).unwrap().upper;
        hi = hi.max(eps + u * u);
    }
    let (lo_const, hi_const) = (eps.sqrt(), hi.sqrt());

    for _ in 0..4 {
        let x = random_vector(&th, &mut rng);
        let st = geometry::norm_st(&x, &cfg).unwrap();
        let wg = geometry::norm_g(&g, &x, &cfg).unwrap();
        let slack = 1e-9 * (1.0 + wg.upper.max(st.upper));
        assert!(lo_const * st.lower <= wg.upper + slack);
        assert!(wg.lower <= hi_const * st.upper + slack);
    }
}

/// The scalar-matrix route through the dense compression agrees with the
/// elementwise norm engine on 1x1 grids.
#[test]
fn matrix_norm_reduces_to_element_norm() {
    let th = theta2(0.41);
    let cfg = quick_gns();
    let mut rng = DetRng::new(21, 0);
    for _ in 0..4 {
        let coeffs: Vec<(Vec<i32>, Complex64)> = (0..3)
            .map(|_| {
                (
                    vec![rng.int_in(-1, 1), rng.int_in(-1, 1)],
                    rng.complex(),
                )
            })
            .collect();
        let a = TorusElement::from_coeffs(&th, coeffs).unwrap();
        let grid = vec![a.clone()];
        let m = gns::matrix_norm_interval(&grid, 1, &cfg).unwrap();
        let e = gns::norm_interval(&a, &cfg).unwrap();
        let slack = 1e-9 * (1.0 + m.upper.max(e.upper));
        assert!(m.lower <= e.upper + slack && e.lower <= m.upper + slack);
    }
}

/// Rescaling the metric rescales the weighted norm by the square root of
/// the factor, as intervals.
#[test]
fn metric_rescaling_scales_the_norm() {
    let th = theta2(0.33);
    let cfg = quick_gns();
    let mut rng = DetRng::new(34, 0);
    let h = {
        let coeffs: Vec<(Vec<i32>, Complex64)> = (0..2)
            .map(|_| {
                (
                    vec![rng.int_in(-1, 1), rng.int_in(-1, 1)],
                    rng.complex(),
                )
            })
            .collect();
        TorusElement::from_coeffs(&th, coeffs)
            .unwrap()
            .real_part()
            .scale_re(0.5)
    };
    let g = MetricMatrix::make(&MetricSpec::Conformal { h, epsilon: 1.0 }, Some(2)).unwrap();
    let g3 = g.scale(3.0).unwrap();
    for _ in 0..3 {
        let x = random_vector(&th, &mut rng);
        let base = geometry::norm_g(&g, &x, &cfg).unwrap().scale(3.0f64.sqrt());
        let scaled = geometry::norm_g(&g3, &x, &cfg).unwrap();
        let slack = 1e-9 * (1.0 + base.upper.max(scaled.upper));
        assert!(base.lower <= scaled.upper + slack && scaled.lower <= base.upper + slack);
    }
}
