mod common;

use common::*;
use dbr_core::boundary::{caratheodory, clark, DEFAULT_CLARK_GRID};
use dbr_core::fixtures::*;
use dbr_core::polymath::Poly;
use dbr_core::space::{density_residual, embed, gram, hb_inner, point_eval_residual};
use dbr_core::Error;
use num_complex::Complex64 as Cx;

/// Recomputes one expected quantity through the public pipeline.
fn measure(name: &str, key: &str) -> f64 {
    let c = ctx(name);
    let one = Cx::new(1.0, 0.0);
    match key {
        "mate_0" => c.mate().coeff(0).re,
        "mate_1" => c.mate().coeff(1).re,
        "defect_c0" => c.symbol().scalar_defect().scalar_coeff(0).re,
        "defect_c1" => c.symbol().scalar_defect().scalar_coeff(1).re,
        "defect_at_1" => c.defect_at(one),
        "norm_sq_1" => embed(&c, &Poly::one()).unwrap().norm_sq,
        "norm_sq_z" => embed(&c, &Poly::monomial(1, one)).unwrap().norm_sq,
        "gram_01" => gram(&c, 1).unwrap()[(0, 1)].re,
        "kernel_1_norm_sq" => caratheodory(&c, one).unwrap().k_norm_sq_exact.unwrap(),
        "point_eval_residual_1" => point_eval_residual(&c, one, 40).unwrap().residual,
        "clark_mass_1" => caratheodory(&c, one).unwrap().clark_mass.unwrap(),
        "clark_total" => {
            let xi = c.symbol().eval(one);
            clark(&c, &xi, DEFAULT_CLARK_GRID).unwrap().total_mass
        }
        "density_residual_w0_n0" => density_residual(&c, Cx::new(0.0, 0.0), 0).unwrap().residual,
        "lambda_count" => c.boundary().len() as f64,
        other => panic!("no measurement for `{other}`"),
    }
}

#[test]
fn expected_values_are_reproduced() {
    for name in ["ZERO", "SARASON", "ROW2", "TRUNC(1)", "TRUNC(3)", "TRUNC(8)"] {
        let f = fixture::<f64>(name).unwrap();
        for e in &f.expected {
            let got = measure(name, e.key);
            let tol = if e.key == "point_eval_residual_1" { 1e-3 } else { 1e-8 };
            assert!((got - e.value).abs() <= tol, "{name}.{}: {got} vs {}", e.key, e.value);
        }
    }
}

#[test]
fn names_are_parsed() {
    assert_eq!(fixture::<f64>("sarason").unwrap().name, "SARASON");
    assert_eq!(fixture::<f64>("trunc(5)").unwrap().symbol.dim(), 5);
    assert_eq!(fixture::<f64>("TRUNC7").unwrap().symbol.dim(), 7);
    assert_eq!(fixture::<f64>(&format!("TRUNC({MAX_TRUNC})")).unwrap().symbol.dim(), MAX_TRUNC);
    for bad in ["TRUNC(0)", "TRUNC(21)", "ROW3", "", "TRUNC(x)"] {
        assert!(matches!(fixture::<f64>(bad), Err(Error::UnknownFixture(_))), "{bad}");
    }
    for name in FIXTURE_NAMES {
        assert!(fixture::<f64>(name).is_ok());
        assert!(fixture::<f32>(name).is_ok());
    }
}

#[test]
fn symbols_are_contractive() {
    let mut names: Vec<String> = FIXTURE_NAMES.iter().map(|s| s.to_string()).collect();
    names.extend((1..=MAX_TRUNC).map(|d| format!("TRUNC({d})")));
    for name in names {
        let f = fixture::<f64>(&name).unwrap();
        let sup = (0..2048)
            .map(|j| {
                let z = Cx::from_polar(1.0, std::f64::consts::TAU * j as f64 / 2048.0);
                f.symbol.eval(z).iter().map(|c| c.norm_sqr()).sum::<f64>()
            })
            .fold(0.0, f64::max);
        assert!(sup <= 1.0 + 1e-12, "{name}: {sup}");
    }
}

#[test]
fn flat_has_no_mate() {
    let f = fixture::<f64>("FLAT").unwrap();
    for j in 0..64 {
        let z = Cx::from_polar(1.0, std::f64::consts::TAU * j as f64 / 64.0);
        let n: f64 = f.symbol.eval(z).iter().map(|c| c.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-14);
    }
    assert!(f.expected.is_empty());
}

#[test]
fn inner_product_table_is_consistent() {
    let c = ctx("SARASON");
    let one = embed(&c, &Poly::one()).unwrap();
    let z = embed(&c, &Poly::monomial(1, Cx::new(1.0, 0.0))).unwrap();
    assert!((hb_inner(&one, &z) - Cx::new(2.0, 0.0)).norm() < 1e-12);
}
