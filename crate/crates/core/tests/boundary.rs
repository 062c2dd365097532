mod common;

use common::*;
use dbr_core::boundary::*;
use dbr_core::space::{hb_inner, kernel, make_context, RowSchur};
use dbr_core::{Error, Tolerances};
use num_complex::Complex64 as Cx;
use proptest::prelude::*;

#[test]
fn caratheodory_sarason() {
    let c = ctx("SARASON");
    let r = caratheodory(&c, cx(1.0, 0.0)).unwrap();
    assert!(r.satisfies_caratheodory);
    assert!((r.boundary_vector[0] - cx(1.0, 0.0)).norm() < 1e-12);
    for v in [r.k_norm_sq_exact, r.k_norm_sq_lhopital] {
        assert!((v.unwrap() - 0.5).abs() < 1e-10);
    }
    assert!((r.k_norm_sq_radial.unwrap() - 0.5).abs() < 1e-4);
    assert!((r.clark_mass.unwrap() - 2.0).abs() < 1e-8);
}

#[test]
fn caratheodory_row2() {
    let c = ctx("ROW2");
    let r = caratheodory(&c, cx(1.0, 0.0)).unwrap();
    assert!(r.satisfies_caratheodory);
    let s = 0.5f64.sqrt();
    assert!((r.boundary_vector[0] - cx(s, 0.0)).norm() < 1e-12 && (r.boundary_vector[1] - cx(s, 0.0)).norm() < 1e-12);
    let exact = r.k_norm_sq_exact.unwrap();
    assert!((exact - 1.25).abs() < 1e-10, "{exact}");
    assert!((r.k_norm_sq_lhopital.unwrap() - 1.25).abs() < 1e-10);
    assert!((r.k_norm_sq_radial.unwrap() - 1.25).abs() < 1e-4);
    let mass = r.clark_mass.unwrap();
    assert!((mass - 0.8).abs() < 1e-8);
    assert!((mass * exact - 1.0).abs() < 1e-8);

    let r = caratheodory(&c, cx(-1.0, 0.0)).unwrap();
    assert!(!r.satisfies_caratheodory && r.k_norm_sq_exact.is_none() && r.clark_mass.is_none());
    assert!(matches!(caratheodory(&c, cx(0.5, 0.0)), Err(Error::DomainError(_))));
}

#[test]
fn caratheodory_flags_inconsistent_boundary() {
    // ZERO has no boundary spectrum, |B| = 0 everywhere: a plain negative
    let r = caratheodory(&ctx("ZERO"), cx(0.0, 1.0)).unwrap();
    assert!(!r.satisfies_caratheodory);
}

#[test]
fn three_way_agreement_on_all_boundary_points() {
    for name in FIXTURES {
        let c = ctx(name);
        for p in c.boundary() {
            let r = caratheodory(&c, p.point).unwrap();
            let exact = r.k_norm_sq_exact.unwrap();
            assert!((exact - r.k_norm_sq_lhopital.unwrap()).abs() <= 1e-8, "{name}");
            assert!((exact - r.k_norm_sq_radial.unwrap()).abs() <= 1e-4, "{name}");
            assert!((exact * r.clark_mass.unwrap() - 1.0).abs() <= 1e-8, "{name}");
        }
    }
}

#[test]
fn clark_examples() {
    let sar = ctx("SARASON");
    let m = clark(&sar, &[cx(1.0, 0.0)], DEFAULT_CLARK_GRID).unwrap();
    assert_eq!(m.point_masses.len(), 1);
    assert!((m.point_masses[0].0 - cx(1.0, 0.0)).norm() < 1e-12 && (m.point_masses[0].1 - 2.0).abs() < 1e-12);
    assert!(m.density.iter().all(|&d| (d - 1.0).abs() < 1e-10));
    assert!((m.total_mass - 3.0).abs() < 1e-10);
    assert!((m.h0 - cx(3.0, 0.0)).norm() < 1e-14 && m.imag_const.abs() < 1e-14);

    let row2 = ctx("ROW2");
    let s = 0.5f64.sqrt();
    let m = clark(&row2, &[cx(s, 0.0), cx(s, 0.0)], DEFAULT_CLARK_GRID).unwrap();
    assert_eq!(m.point_masses.len(), 1);
    assert!((m.point_masses[0].1 - 0.8).abs() < 1e-10);
    assert!((m.ac_mass - 13.0 / 15.0).abs() < 1e-6, "{}", m.ac_mass);
    assert!((m.total_mass - 5.0 / 3.0).abs() < 1e-6);
    assert!(m.herglotz_residual < 1e-6);

    for name in FIXTURES {
        let c = ctx(name);
        let m = clark(&c, &vec![cx(0.0, 0.0); c.dim()], 1 << 10).unwrap();
        assert!(m.point_masses.is_empty());
        assert!(m.density.iter().all(|&d| (d - 1.0).abs() < 1e-14));
        assert!((m.total_mass - 1.0).abs() < 1e-14);
    }
}

#[test]
fn clark_errors() {
    let c = ctx("ROW2");
    assert!(matches!(clark(&c, &[cx(1.0, 0.0)], 64), Err(Error::DimensionMismatch { .. })));
    assert!(matches!(clark(&c, &[cx(1.0, 0.0), cx(1.0, 0.0)], 64), Err(Error::DomainError(_))));
    // B = (1): b_ξ ≡ 1 for ξ = 1
    let one = RowSchur::from_rows(1, vec![vec![cx(1.0, 0.0)]]).unwrap();
    let tol = Tolerances::default();
    assert!(make_context(one, tol).is_err());
}

#[test]
fn clark_density_matches_closed_form_at_atoms() {
    // removable value at λ = 1 for ROW2: limit of the density from nearby grid points
    let c = ctx("ROW2");
    let s = 0.5f64.sqrt();
    let m = clark(&c, &[cx(s, 0.0), cx(s, 0.0)], 1 << 12).unwrap();
    let at = m.density_at(cx(1.0, 0.0));
    let near = m.density_at(Cx::from_polar(1.0, 1e-4));
    assert!((at - near).abs() < 1e-6, "{at} vs {near}");
    assert!(m.min_density >= 0.0);
}

#[test]
fn kernel_convergence_examples() {
    let c = ctx("SARASON");
    let radii = [0.9, 0.99, 0.999];
    let v = kernel_convergence(&c, cx(1.0, 0.0), &radii).unwrap();
    for (r, val) in radii.iter().zip(&v) {
        let b = (1.0 + r) / 2.0;
        let want = (1.0 - b * b) / (1.0 - r * r) - 0.5;
        assert!((val - want).abs() < 1e-12, "{val} vs {want}");
    }
    assert!(v.windows(2).all(|w| w[1] < w[0]));

    let row2 = ctx("ROW2");
    let v = kernel_convergence(&row2, cx(1.0, 0.0), &[0.999]).unwrap();
    assert!(v[0] < 1e-2, "{}", v[0]);
    assert!(matches!(kernel_convergence(&row2, cx(-1.0, 0.0), &[0.5]), Err(Error::BoundaryNotRegular { .. })));
    assert!(matches!(kernel_convergence(&row2, cx(1.0, 0.0), &[1.0]), Err(Error::DomainError(_))));
}

#[test]
fn kernel_convergence_at_origin_matches_inner_products() {
    for name in FIXTURES {
        let c = ctx(name);
        for p in c.boundary() {
            let k0 = kernel(&c, cx(0.0, 0.0), None).unwrap().element;
            let kl = kernel(&c, p.point, None).unwrap().element;
            let diff = k0.sub(&kl);
            let direct = hb_inner(&diff, &diff).re;
            let v = kernel_convergence(&c, p.point, &[0.0]).unwrap()[0];
            assert!((v - direct).abs() < 1e-9, "{name}: {v} vs {direct}");
        }
    }
}

#[test]
fn kernel_convergence_monotone_near_boundary() {
    let radii: Vec<f64> = (0..40).map(|k| 0.9 + 0.0999 * k as f64 / 39.0).collect();
    for name in FIXTURES {
        let c = ctx(name);
        for p in c.boundary() {
            let v = kernel_convergence(&c, p.point, &radii).unwrap();
            assert!(v.windows(2).all(|w| w[1] <= w[0]), "{name}: {v:?}");
        }
    }
}

#[test]
fn infinite_rank_example() {
    assert!((infinite_symbol_eval(cx(1.0, 0.0)).unwrap() - cx(1.0, 0.0)).norm() < 1e-15);
    assert!((infinite_symbol_eval(cx(0.0, 0.0)).unwrap() - cx(0.25, 0.0)).norm() < 1e-15);
    let slope: f64 = infinite_symbol_slope();
    assert!((slope - 1.75).abs() < 1e-10);
    assert!((1.0 / slope - 4.0 / 7.0).abs() < 1e-10);
    let radial: f64 = infinite_symbol_radial_slope().unwrap();
    assert!((radial - 1.75).abs() < 1e-4);
    assert!((1.0 / radial - 4.0 / 7.0).abs() < 1e-4);
    // independent check: central difference of g at 1 along the radius
    let h = 1e-5;
    let g = |r: f64| infinite_symbol_eval(cx(r, 0.0)).unwrap().re;
    let fd = (g(1.0) - g(1.0 - 2.0 * h)) / (2.0 * h);
    assert!((fd - 1.75).abs() < 1e-4);
    assert!(infinite_symbol_eval(cx(1.5, 0.0)).is_err());
}

#[test]
fn radii_and_extrapolation() {
    assert_eq!(radius::<f64>(4), 1.0 - 1.0 / 16.0);
    let s: Vec<f64> = RADIAL_LEVELS.map(|k| 2.0 + 3.0 * 2f64.powi(-k)).collect();
    assert!((richardson(&s) - 2.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// Total mass balances `Re H_ξ(0)` and the Herglotz reconstruction holds
    /// for random interior `ξ`.
    #[test]
    fn clark_balance_random_xi(idx in 0usize..FIXTURES.len(), seed in any::<u64>()) {
        let name = FIXTURES[idx];
        let c = ctx(name);
        let xi = random_ball(&mut rng(seed), c.dim(), 0.999);
        let m = clark(&c, &xi, DEFAULT_CLARK_GRID).unwrap();
        prop_assert!(m.balance_residual() <= 1e-6, "{}: {:e}", name, m.balance_residual());
        prop_assert!(m.herglotz_residual <= 1e-6, "{}: {:e}", name, m.herglotz_residual);
        prop_assert!(m.min_density >= 0.0);
        prop_assert!(m.point_masses.iter().all(|(_, w)| *w > 0.0));
    }
}

#[test]
fn clark_balance_at_boundary_vectors() {
    for name in FIXTURES {
        let c = ctx(name);
        let mut xis = vec![vec![cx(0.0, 0.0); c.dim()]];
        xis.extend(c.boundary().iter().map(|p| c.symbol().eval(p.point)));
        for xi in xis {
            let m = clark(&c, &xi, DEFAULT_CLARK_GRID).unwrap();
            assert!(m.balance_residual() <= 1e-6, "{name}: {:e}", m.balance_residual());
            assert!(m.herglotz_residual <= 1e-6, "{name}: {:e}", m.herglotz_residual);
        }
    }
}
