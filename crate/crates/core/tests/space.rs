mod common;

use common::*;
use dbr_core::fixtures::fixture;
use dbr_core::linalg::CMat;
use dbr_core::polymath::*;
use dbr_core::space::*;
use dbr_core::{Error, Tolerances};
use num_complex::Complex64 as Cx;
use proptest::prelude::*;
use rand::Rng;

fn close(a: Cx, b: Cx, tol: f64) -> bool {
    (a - b).norm() <= tol
}

#[test]
fn context_examples() {
    let zero = ctx("ZERO");
    assert!(close(zero.mate().coeff(0), cx(1.0, 0.0), 1e-14) && zero.mate().degree() == Some(0));
    assert!((&zero.outer_factor().coeff(0) - &CMat::identity(1)).max_abs() < 1e-14);
    assert!(zero.boundary().is_empty());

    let sar = ctx("SARASON");
    assert!(close(sar.mate().coeff(0), cx(0.5, 0.0), 1e-9) && close(sar.mate().coeff(1), cx(-0.5, 0.0), 1e-9));
    assert_eq!(sar.boundary().len(), 1);
    assert!(close(sar.boundary()[0].point, cx(1.0, 0.0), 1e-8) && sar.boundary()[0].multiplicity == 1);

    let row2 = ctx("ROW2");
    assert_eq!(row2.dim(), 2);
    assert!(row2.outer_factor().degree().unwrap() <= 2);
    assert_eq!(row2.boundary().len(), 1);
    assert!(close(row2.boundary()[0].point, cx(1.0, 0.0), 1e-8) && row2.boundary()[0].multiplicity == 1);
}

#[test]
fn context_boundary_invariants() {
    for name in FIXTURES {
        let c = ctx(name);
        for p in c.boundary() {
            let bl = c.symbol().eval(p.point);
            let norm: f64 = bl.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-8, "{name}");
            let bconj: Vec<Cx> = bl.iter().map(|x| x.conj()).collect();
            let defect = c.outer_factor().eval(p.point).matvec(&bconj);
            assert!(defect.iter().all(|x| x.norm() < 1e-7), "{name}");
        }
    }
}

#[test]
fn ill_conditioned_constant_is_reported() {
    let tol = Tolerances { max_cond_a0: 1.5, ..Tolerances::default() };
    let b = fixture::<f64>("ROW2").unwrap().symbol;
    assert!(matches!(make_context(b, tol), Err(Error::IllConditionedConstant { .. })));
    let b = fixture::<f64>("FLAT").unwrap().symbol;
    assert_eq!(make_context(b, Tolerances::default()).unwrap_err(), Error::MateUndefined);
}

#[test]
fn embed_examples() {
    let c = ctx("SARASON");
    let one = embed(&c, &Poly::one()).unwrap();
    assert!(close(one.f_plus.row(0)[0], cx(-1.0, 0.0), 1e-12) && one.f_plus.len() == 1);
    assert!((one.norm_sq - 2.0).abs() < 1e-12);

    let z = embed(&c, &poly(&[0.0, 1.0])).unwrap();
    assert!(close(z.f_plus.row(0)[0], cx(-2.0, 0.0), 1e-12));
    assert!(close(z.f_plus.row(1)[0], cx(-1.0, 0.0), 1e-12));
    assert!((z.norm_sq - 6.0).abs() < 1e-12);

    for name in FIXTURES {
        let e = embed(&ctx(name), &Poly::zero()).unwrap();
        assert!(e.f_plus.is_zero() && e.norm_sq == 0.0);
    }
}

#[test]
fn inner_product_examples() {
    let c = ctx("SARASON");
    let one = embed(&c, &Poly::one()).unwrap();
    assert!(close(hb_inner(&one, &one), cx(2.0, 0.0), 1e-12));
    assert_eq!(hb_inner(&one, &HBElement::zero(1)), cx(0.0, 0.0));

    let row2 = ctx("ROW2");
    let k1 = kernel(&row2, cx(1.0, 0.0), None).unwrap();
    assert!(k1.exact);
    assert!(close(k1.element.f.coeff(0), cx(0.75, 0.0), 1e-9) && close(k1.element.f.coeff(1), cx(0.5, 0.0), 1e-9));
    let direct = embed(&row2, &poly(&[0.75, 0.5])).unwrap();
    assert!(close(hb_inner(&direct, &direct), cx(1.25, 0.0), 1e-9));
    assert!((k1.element.norm_sq - 1.25).abs() < 1e-9);
    assert!(close(k1.element.f.eval(cx(1.0, 0.0)), cx(1.25, 0.0), 1e-9));
}

#[test]
fn kernel_examples() {
    let c = ctx("SARASON");
    let k0 = kernel(&c, cx(0.0, 0.0), None).unwrap();
    assert!(k0.exact && k0.tail_bound == 0.0);
    assert!(close(k0.element.f.coeff(0), cx(0.75, 0.0), 1e-14) && close(k0.element.f.coeff(1), cx(-0.25, 0.0), 1e-14));
    assert!(k0.element.f.degree() == Some(1));

    let k1 = kernel(&c, cx(1.0, 0.0), None).unwrap();
    assert!(close(k1.element.f.coeff(0), cx(0.5, 0.0), 1e-9) && k1.element.f.degree() == Some(0));
    assert!((k1.element.norm_sq - 0.5).abs() < 1e-9);

    assert!(matches!(kernel(&c, cx(-1.0, 0.0), None), Err(Error::BoundaryNotRegular { .. })));
    assert!(matches!(kernel(&ctx("ZERO"), cx(0.0, 1.0), None), Err(Error::BoundaryNotRegular { .. })));
}

#[test]
fn boundary_kernels_have_exact_degree() {
    for name in FIXTURES {
        let c = ctx(name);
        for p in c.boundary() {
            let k = kernel(&c, p.point, None).unwrap();
            let bound = c.symbol().degree().max(c.outer_factor().degree().unwrap_or(0)).saturating_sub(1);
            assert!(k.element.f.degree().unwrap_or(0) <= bound, "{name}");
            assert!(k.element.f_plus.degree().unwrap_or(0) <= bound, "{name}");
            let res = k.element.membership_residual(&c).max_abs_coeff();
            assert!(res < 1e-9, "{name}: {res:e}");
        }
    }
}

#[test]
fn shift_examples() {
    let c = ctx("SARASON");
    let one = embed(&c, &Poly::one()).unwrap();
    let l = backward_shift(&one);
    assert!(l.f.is_zero() && l.f_plus.is_zero() && l.norm_sq == 0.0);

    let z2 = embed(&c, &poly(&[0.0, 0.0, 1.0])).unwrap();
    let l = backward_shift(&z2);
    assert!(close(l.f.coeff(1), cx(1.0, 0.0), 0.0) && l.f.degree() == Some(1));

    let mut el = embed(&c, &poly(&[1.0, 2.0, 3.0])).unwrap();
    for _ in 0..3 {
        el = backward_shift(&el);
    }
    assert!(el.f.is_zero() && el.f_plus.is_zero());

    let mz = multiply_z(&c, &one).unwrap();
    assert!((mz.norm_sq - 6.0).abs() < 1e-12);
    assert_eq!(multiply_z(&c, &HBElement::zero(1)).unwrap(), HBElement::zero(1));
}

#[test]
fn b_times_vector_has_documented_plus_part() {
    for name in ["SARASON", "ROW2", "TRUNC(3)"] {
        let c = ctx(name);
        let b1 = c.symbol().component(0);
        let el = embed(&c, &b1).unwrap();
        let d = c.dim();
        let mut e1 = vec![cx(0.0, 0.0); d];
        e1[0] = cx(1.0, 0.0);
        // A(z)e₁ − (A(0)*)^{-1} e₁
        let mut want = c.outer_factor().apply_const(&e1);
        let corr = c.a0_adjoint_inverse().matvec(&e1);
        want = &want - &VecPoly::constant(&corr);
        let len = want.len().max(el.f_plus.len());
        for k in 0..len {
            let (g, w) = (el.f_plus.rows().get(k), want.rows().get(k));
            for i in 0..d {
                let gv = g.map_or(cx(0.0, 0.0), |r| r[i]);
                let wv = w.map_or(cx(0.0, 0.0), |r| r[i]);
                assert!(close(gv, wv, 1e-9), "{name}: coefficient {k}, coordinate {i}: {gv} vs {wv}");
            }
        }
    }
}

#[test]
fn conj_toeplitz_examples() {
    let c = ctx("ROW2");
    let f = poly(&[0.3, -1.0, 0.5, 2.0]);
    let el = embed(&c, &f).unwrap();
    assert_eq!(toeplitz_conj_hb(&c, &Poly::one(), &el).unwrap(), el);
    let shifted = toeplitz_conj_hb(&c, &poly(&[0.0, 1.0]), &el).unwrap();
    assert_eq!(shifted, backward_shift(&el));
    let via_hb = toeplitz_conj_hb(&c, c.mate(), &el).unwrap();
    let via_embed = embed(&c, &toeplitz_conj(c.mate(), &f)).unwrap();
    let diff = via_hb.sub(&via_embed);
    assert!(diff.norm_sq.sqrt() < 1e-10);
}

#[test]
fn gram_examples() {
    let g = gram(&ctx("ZERO"), 4).unwrap();
    assert!((&g - &CMat::identity(5)).max_abs() < 1e-14);

    let g = gram(&ctx("SARASON"), 1).unwrap();
    assert!(close(g[(0, 0)], cx(2.0, 0.0), 1e-12));
    assert!(close(g[(1, 1)], cx(6.0, 0.0), 1e-12));
    assert!(close(g[(0, 1)], cx(2.0, 0.0), 1e-12));

    for name in FIXTURES {
        let g = gram(&ctx(name), 10).unwrap();
        assert!(g.hermitian_defect() < 1e-12);
        assert!(g.cholesky().is_some(), "{name}");
    }
}

#[test]
fn density_residual_examples() {
    let zero = ctx("ZERO");
    let mut rng = rng(5);
    for _ in 0..10 {
        let w = random_disk(&mut rng, 0.9);
        let n = rng.gen_range(0..12);
        let r = density_residual(&zero, w, n).unwrap().residual;
        let want = w.norm().powi(2 * n as i32 + 2) / (1.0 - w.norm_sqr());
        assert!((r - want).abs() < 1e-10, "{r} vs {want}");
    }
    let sar = ctx("SARASON");
    let r = density_residual(&sar, cx(0.0, 0.0), 0).unwrap().residual;
    assert!((r - 0.25).abs() < 1e-12, "{r}");
    assert!(matches!(density_residual(&sar, cx(1.0, 0.0), 3), Err(Error::DomainError(_))));
}

#[test]
fn density_residual_decreases_at_half() {
    for name in ["ZERO", "SARASON", "ROW2", "TRUNC(3)"] {
        let c = ctx(name);
        let r: Vec<f64> = (0..=8).map(|n| density_residual(&c, cx(0.5, 0.0), n).unwrap().residual).collect();
        for w in r.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "{name}: {r:?}");
        }
        assert!(r[8] < 1e-2, "{name}: {r:?}");
    }
}

#[test]
fn density_residual_matches_brute_force_projection() {
    // distance in embedded coordinates, by an independent Gram–Schmidt
    for name in ["SARASON", "ROW2", "TRUNC(3)"] {
        let c = ctx(name);
        let w = cx(0.3, -0.4);
        let n = 5;
        let k = kernel(&c, w, Some(80)).unwrap();
        let len = 81;
        let target = coords(&k.element, len);
        let basis: Vec<Vec<Cx>> =
            (0..=n).map(|j| coords(&embed(&c, &Poly::monomial(j, cx(1.0, 0.0))).unwrap(), len)).collect();
        let oracle = mgs_distance_sq(&target, &basis);
        let r = density_residual(&c, w, n).unwrap().residual;
        assert!((r - oracle).abs() < 1e-9, "{name}: {r} vs {oracle}");
    }
}

#[test]
fn point_eval_residual_matches_brute_force_projection() {
    for (name, lam, n) in [("ROW2", cx(1.0, 0.0), 12), ("ROW2", cx(-1.0, 0.0), 12), ("SARASON", cx(0.0, 1.0), 9), ("ZERO", cx(1.0, 0.0), 7)] {
        let c = ctx(name);
        let len = n + 2;
        let target = coords(&embed(&c, &Poly::one()).unwrap(), len);
        let basis: Vec<Vec<Cx>> = (0..n)
            .map(|k| {
                let p = &Poly::monomial(k + 1, cx(1.0, 0.0)) - &Poly::monomial(k, lam);
                coords(&embed(&c, &p).unwrap(), len)
            })
            .collect();
        let oracle = mgs_distance_sq(&target, &basis);
        let r = point_eval_residual(&c, lam, n).unwrap().residual;
        assert!((r - oracle).abs() < 1e-9, "{name} at {lam}: {r} vs {oracle}");
    }
}

#[test]
fn point_eval_examples() {
    let zero = ctx("ZERO");
    for n in [5, 20, 40] {
        let r = point_eval_residual(&zero, cx(1.0, 0.0), n).unwrap().residual;
        assert!((r - 1.0 / (n as f64 + 1.0)).abs() < 1e-10, "N = {n}: {r}");
    }
    let row2 = ctx("ROW2");
    let r = point_eval_residual(&row2, cx(1.0, 0.0), 40).unwrap().residual;
    assert!((r - 0.8).abs() < 1e-3, "{r}");
    // closed forms from the brute-force projection: 4/(2N+5) at −1 and 4/(N+5) at i
    for n in [10, 40] {
        let r = point_eval_residual(&row2, cx(-1.0, 0.0), n).unwrap().residual;
        assert!((r - 4.0 / (2.0 * n as f64 + 5.0)).abs() < 1e-9, "N = {n}: {r}");
        let r = point_eval_residual(&row2, cx(0.0, 1.0), n).unwrap().residual;
        assert!((r - 4.0 / (n as f64 + 5.0)).abs() < 1e-9, "N = {n}: {r}");
    }
}

#[test]
fn rank_one_identity_examples() {
    let c = ctx("SARASON");
    assert_eq!(rank_one_identity_defect(&c, &Poly::zero(), &poly(&[1.0, 2.0])).unwrap(), 0.0);
    assert!(rank_one_identity_defect(&c, &Poly::one(), &Poly::one()).unwrap() < 1e-10);
    for name in ["SARASON", "ROW2"] {
        let c = ctx(name);
        for j in 0..=15 {
            for k in 0..=15 {
                let f = Poly::monomial(j, cx(1.0, 0.0));
                let g = Poly::monomial(k, cx(1.0, 0.0));
                let d = rank_one_identity_defect(&c, &f, &g).unwrap();
                let scale = embed(&c, &f).unwrap().norm() * embed(&c, &g).unwrap().norm();
                assert!(d <= 1e-8 * scale, "{name}: z^{j}, z^{k}: {d:e}");
            }
        }
    }
}

#[test]
fn gram_projection_rejects_negative_residual() {
    let m = CMat::identity(1);
    assert!(matches!(gram_projection(1.0, &m, &[cx(2.0, 0.0)]), Err(Error::ConditioningWarning { .. })));
    let p = gram_projection(2.0, &m, &[cx(1.0, 0.0)]).unwrap();
    assert!((p.residual - 1.0).abs() < 1e-15 && p.jitter == 0.0);
}

// ---------- properties ----------

fn fixture_strategy() -> impl Strategy<Value = &'static str> {
    prop::sample::select(FIXTURES.to_vec())
}

fn contexts() -> Vec<(&'static str, SpaceContext<f64>)> {
    FIXTURES.iter().map(|&n| (n, ctx(n))).collect()
}

thread_local! {
    static CTX: Vec<(&'static str, SpaceContext<f64>)> = contexts();
}

fn with_ctx<R>(name: &str, f: impl FnOnce(&SpaceContext<f64>) -> R) -> R {
    CTX.with(|all| f(&all.iter().find(|(n, _)| *n == name).unwrap().1))
}

fn poly_from(seed: u64, deg: usize) -> Poly<f64> {
    random_poly(&mut rng(seed), deg)
}

fn vec_from(seed: u64, d: usize, deg: usize) -> VecPoly<f64> {
    let mut r = rng(seed);
    VecPoly::from_coordinates(&(0..d).map(|_| random_poly(&mut r, deg)).collect::<Vec<_>>())
}

fn h2_norm_sq(p: &Poly<f64>) -> f64 {
    p.coeffs().iter().map(|c| c.norm_sqr()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_residual_vanishes(name in fixture_strategy(), seed in any::<u64>(), deg in 0usize..=20) {
        with_ctx(name, |c| {
            let f = poly_from(seed, deg);
            let el = embed(c, &f).unwrap();
            // independent oracle: analytic part of B̄f + A* f⁺ by a naive DFT
            let b = c.symbol();
            let a = c.outer_factor();
            let n = 128;
            for i in 0..c.dim() {
                let oracle = analytic_part_oracle(
                    |z| {
                        let bz = b.eval(z);
                        let az = a.eval(z);
                        let fp = el.f_plus.eval(z);
                        let mut s = bz[i].conj() * f.eval(z);
                        for r in 0..c.dim() {
                            s += az[(r, i)].conj() * fp[r];
                        }
                        s
                    },
                    deg + 1,
                    n,
                );
                for v in &oracle {
                    prop_assert!(v.norm() < 1e-10, "{}: {:e}", name, v.norm());
                }
            }
            prop_assert!(el.f_plus.degree().unwrap_or(0) <= deg);
            prop_assert!((el.norm_sq - hb_inner(&el, &el).re).abs() < 1e-12 * el.norm_sq.max(1.0));
            prop_assert!(el.norm_sq >= h2_norm_sq(&f) - 1e-12);
            Ok(())
        })?;
    }

    #[test]
    fn orthogonal_to_graph_of_multipliers(name in fixture_strategy(), seed in any::<u64>(), deg in 0usize..=12, hdeg in 0usize..=8) {
        with_ctx(name, |c| {
            let el = embed(c, &poly_from(seed, deg)).unwrap();
            let h = vec_from(seed ^ 0x5a5a, c.dim(), hdeg);
            let mut bh = Poly::zero();
            for i in 0..c.dim() {
                bh = &bh + &(&c.symbol().component(i) * &h.coordinate(i));
            }
            let ah = c.outer_factor().apply(&h);
            let v = el.f.h2_inner(&bh) + el.f_plus.h2_inner(&ah);
            prop_assert!(v.norm() < 1e-9, "{}: {:e}", name, v.norm());
            Ok(())
        })?;
    }

    #[test]
    fn reproducing_property(name in fixture_strategy(), seed in any::<u64>(), deg in 0usize..=15) {
        with_ctx(name, |c| {
            let mut r = rng(seed);
            let f = random_poly(&mut r, deg);
            let w = random_disk(&mut r, 0.9);
            let k = kernel(c, w, None).unwrap();
            let el = embed(c, &f).unwrap();
            let v = hb_inner(&el, &k.element);
            prop_assert!((v - f.eval(w)).norm() <= 1e-8 + k.tail_bound * el.norm(), "{}: {} vs {}", name, v, f.eval(w));
            Ok(())
        })?;
    }

    #[test]
    fn kernel_diagonal_agrees_with_truncated_kernel(name in fixture_strategy(), seed in any::<u64>()) {
        with_ctx(name, |c| {
            let w = random_disk(&mut rng(seed), 0.9);
            let k = kernel(c, w, None).unwrap();
            let diag = kernel_diagonal(c, w);
            prop_assert!((k.element.f.eval(w).re - diag).abs() <= 1e-8 + k.tail_bound);
            prop_assert!((k.element.norm_sq - diag).abs() <= 1e-8 + 2.0 * k.tail_bound * diag.sqrt() + k.tail_bound * k.tail_bound);
            Ok(())
        })?;
    }

    #[test]
    fn contractive_containments(name in fixture_strategy(), seed in any::<u64>(), deg in 0usize..=12) {
        with_ctx(name, |c| {
            let p = poly_from(seed, deg);
            let ap = embed(c, &(c.mate() * &p)).unwrap();
            prop_assert!(ap.norm_sq <= h2_norm_sq(&p) * (1.0 + 1e-9) + 1e-12);
            let th = embed(c, &toeplitz_conj(c.mate(), &p)).unwrap();
            prop_assert!(th.norm_sq <= h2_norm_sq(&p) * (1.0 + 1e-9) + 1e-12);
            let f = embed(c, &p).unwrap();
            prop_assert!(h2_norm_sq(&p) <= f.norm_sq * (1.0 + 1e-12) + 1e-12);
            Ok(())
        })?;
    }

    #[test]
    fn backward_shift_contracts_and_inverts_mz(name in fixture_strategy(), seed in any::<u64>(), deg in 0usize..=15) {
        with_ctx(name, |c| {
            let el = embed(c, &poly_from(seed, deg)).unwrap();
            let l = backward_shift(&el);
            prop_assert!(l.norm_sq <= el.norm_sq * (1.0 + 1e-12));
            let back = backward_shift(&multiply_z(c, &el).unwrap());
            prop_assert_eq!(&back.f, &el.f);
            let diff = back.sub(&el);
            prop_assert!(diff.norm_sq.sqrt() <= 1e-10 * el.norm().max(1.0));
            // the shifted pair is itself the embedding of Lf
            let direct = embed(c, &el.f.backward_shift()).unwrap();
            prop_assert!(l.sub(&direct).norm_sq.sqrt() <= 1e-10 * el.norm().max(1.0));
            Ok(())
        })?;
    }

    #[test]
    fn conj_toeplitz_commutes_with_embedding(name in fixture_strategy(), seed in any::<u64>(), deg in 0usize..=12, pdeg in 0usize..=5) {
        with_ctx(name, |c| {
            let f = poly_from(seed, deg);
            let phi = poly_from(seed.wrapping_add(1), pdeg);
            let via_hb = toeplitz_conj_hb(c, &phi, &embed(c, &f).unwrap()).unwrap();
            let via_embed = embed(c, &toeplitz_conj(&phi, &f)).unwrap();
            prop_assert!(via_hb.sub(&via_embed).norm_sq.sqrt() <= 1e-10 * via_hb.norm().max(1.0));
            Ok(())
        })?;
    }

    #[test]
    fn density_residual_non_increasing(name in fixture_strategy(), seed in any::<u64>()) {
        with_ctx(name, |c| {
            let w = random_disk(&mut rng(seed), 0.8);
            let mut prev = f64::INFINITY;
            for n in 0..10 {
                let r = density_residual(c, w, n).unwrap().residual;
                prop_assert!(r >= 0.0);
                prop_assert!(r <= prev + 1e-10 * prev.min(1.0).max(1e-3));
                prev = r;
            }
            Ok(())
        })?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn conj_toeplitz_contraction(name in fixture_strategy(), seed in any::<u64>(), deg in 0usize..=12, pdeg in 0usize..=6) {
        with_ctx(name, |c| {
            let raw = poly_from(seed.wrapping_mul(3), pdeg);
            let grid = CircleGrid::<f64>::new(12, false);
            let sup = grid.eval_poly(raw.coeffs()).iter().map(|v| v.norm()).fold(0.0, f64::max);
            let phi = raw.scale(cx(1.0 / sup, 0.0));
            let el = embed(c, &poly_from(seed, deg)).unwrap();
            let t = toeplitz_conj_hb(c, &phi, &el).unwrap();
            prop_assert!(t.norm() <= el.norm() + 1e-9, "{}: {} > {}", name, t.norm(), el.norm());
            Ok(())
        })?;
    }
}
