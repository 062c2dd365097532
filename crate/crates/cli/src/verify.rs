//! The invariant suite behind `dbr verify`: each property is measured on the
//! given context and compared against its tolerance.

use dbr_core::boundary::{caratheodory, clark, DEFAULT_CLARK_GRID};
use dbr_core::cyclic::{cyclicity, is_outer};
use dbr_core::polymath::{toeplitz_conj, CircleGrid, Poly, VecPoly};
use dbr_core::space::{
    backward_shift, density_residual, embed, hb_inner, kernel, multiply_z, rank_one_identity_defect, toeplitz_conj_hb,
    SpaceContext,
};
use dbr_core::{Complex64, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Random instances drawn per sampled property.
const SAMPLES: usize = 12;
const MAX_DEG: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct Property {
    pub name: &'static str,
    pub pass: bool,
    pub value: f64,
    pub tolerance: f64,
}

impl Property {
    /// `value ≤ tolerance`; NaN fails.
    fn at_most(name: &'static str, value: f64, tolerance: f64) -> Self {
        Property { name, pass: value <= tolerance, value, tolerance }
    }
}

fn random_c(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly<f64> {
    let deg = rng.gen_range(0..=max_deg);
    let mut c: Vec<Complex64> = (0..=deg).map(|_| random_c(rng)).collect();
    if c[deg].norm() < 1e-3 {
        c[deg] = Complex64::new(1.0, 0.0);
    }
    Poly::new(c)
}

fn random_disk(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.gen::<f64>().sqrt(), std::f64::consts::TAU * rng.gen::<f64>())
}

fn circle(n: usize) -> impl Iterator<Item = Complex64> {
    (0..n).map(move |j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64))
}

pub fn run(ctx: &SpaceContext<f64>, seed: u64) -> Result<Vec<Property>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let (b, a, m, d) = (ctx.symbol(), ctx.outer_factor(), ctx.mate(), ctx.dim());

    // factorization identities on 512 points
    let (mut mate_res, mut id_res, mut det_res) = (0.0f64, 0.0f64, 0.0f64);
    for z in circle(512) {
        let bz = b.eval(z);
        let az = a.eval(z);
        let bb: f64 = bz.iter().map(|c| c.norm_sqr()).sum();
        mate_res = mate_res.max((m.eval(z).norm_sqr() + bb - 1.0).abs());
        let ata = &az.adjoint() * &az;
        for r in 0..d {
            for s in 0..d {
                let id = if r == s { 1.0 } else { 0.0 };
                id_res = id_res.max((ata[(r, s)] + bz[r].conj() * bz[s] - id).norm());
            }
        }
        det_res = det_res.max((az.det() - m.eval(z)).norm());
    }
    out.push(Property::at_most("mate_residual", mate_res, 1e-9));
    out.push(Property::at_most("factor_identity", id_res, 1e-8));
    out.push(Property::at_most("det_identity", det_res, 1e-7));

    let outer = is_outer(m, ctx.tolerances().tol_unimodular, &ctx.tolerances().root_options())?;
    out.push(Property::at_most("mate_outer", outer.interior_roots.len() as f64, 0.0));

    // embedding residual and orthogonality to {(Bh, Ah)}
    let (mut memb, mut orth) = (0.0f64, 0.0f64);
    for _ in 0..SAMPLES {
        let f = random_poly(&mut rng, MAX_DEG);
        let el = embed(ctx, &f)?;
        memb = memb.max(el.membership_residual(ctx).max_abs_coeff());
        let hdeg = rng.gen_range(0..=8);
        let h = VecPoly::from_coordinates(&(0..d).map(|_| random_poly(&mut rng, hdeg)).collect::<Vec<_>>());
        let mut bh = Poly::zero();
        for i in 0..d {
            bh = &bh + &(&b.component(i) * &h.coordinate(i));
        }
        orth = orth.max((el.f.h2_inner(&bh) + el.f_plus.h2_inner(&a.apply(&h))).norm());
    }
    out.push(Property::at_most("embedding_residual", memb, 1e-10));
    out.push(Property::at_most("orthogonal_complement", orth, 1e-9));

    // reproducing property, slack by the reported truncation bound
    let mut repro = f64::NEG_INFINITY;
    for _ in 0..SAMPLES {
        let f = random_poly(&mut rng, MAX_DEG);
        let w = random_disk(&mut rng, 0.9);
        let k = kernel(ctx, w, None)?;
        let el = embed(ctx, &f)?;
        repro = repro.max((hb_inner(&el, &k.element) - f.eval(w)).norm() - k.tail_bound * el.norm());
    }
    out.push(Property::at_most("reproducing_kernel", repro, 1e-8));

    // L contraction and L∘M_z = id
    let (mut l_excess, mut inv) = (f64::NEG_INFINITY, 0.0f64);
    for _ in 0..SAMPLES {
        let el = embed(ctx, &random_poly(&mut rng, 15))?;
        l_excess = l_excess.max(backward_shift(&el).norm_sq - el.norm_sq);
        let back = backward_shift(&multiply_z(ctx, &el)?);
        inv = inv.max(back.sub(&el).norm() / el.norm().max(1.0));
    }
    out.push(Property::at_most("backward_shift_contraction", l_excess, 0.0));
    out.push(Property::at_most("shift_left_inverse", inv, 1e-12));

    // conjugate Toeplitz: commutes with the embedding, contractive for sup |φ| = 1
    let grid = CircleGrid::<f64>::new(12, false);
    let (mut comm, mut t_excess) = (0.0f64, f64::NEG_INFINITY);
    for _ in 0..SAMPLES {
        let f = random_poly(&mut rng, 12);
        let raw = random_poly(&mut rng, 5);
        let sup = grid.eval_poly(raw.coeffs()).iter().map(|v| v.norm()).fold(0.0, f64::max);
        let phi = raw.scale(Complex64::new(1.0 / sup, 0.0));
        let el = embed(ctx, &f)?;
        let lhs = toeplitz_conj_hb(ctx, &phi, &el)?;
        let rhs = embed(ctx, &toeplitz_conj(&phi, &f))?;
        comm = comm.max(lhs.sub(&rhs).norm() / lhs.norm().max(1.0));
        t_excess = t_excess.max(lhs.norm() - el.norm());
    }
    out.push(Property::at_most("toeplitz_commutation", comm, 1e-10));
    out.push(Property::at_most("toeplitz_contraction", t_excess, 1e-9));

    // contractive containments M(a) ⊆ M(ā) ⊆ H(B)
    let mut ratio = 0.0f64;
    for _ in 0..SAMPLES {
        let p = random_poly(&mut rng, 12);
        let pn = p.norm_sq();
        let ap = embed(ctx, &(m * &p))?.norm_sq;
        let th = embed(ctx, &toeplitz_conj(m, &p))?.norm_sq;
        ratio = ratio.max(ap / pn).max(th / pn);
    }
    out.push(Property::at_most("containment_ratio", ratio, 1.0 + 1e-9));

    // rank-one identity on monomial pairs
    let mut defect = 0.0f64;
    for j in 0..=8 {
        for k in 0..=8 {
            let one = Complex64::new(1.0, 0.0);
            defect = defect.max(rank_one_identity_defect(ctx, &Poly::monomial(j, one), &Poly::monomial(k, one))?);
        }
    }
    out.push(Property::at_most("rank_one_identity", defect, 1e-8));

    // density residual at w = 1/2 is non-increasing and non-negative
    let w = Complex64::new(0.5, 0.0);
    let mut prev = f64::INFINITY;
    let (mut rise, mut lowest) = (f64::NEG_INFINITY, f64::INFINITY);
    for n in 0..=20 {
        let r = density_residual(ctx, w, n)?.residual;
        rise = rise.max(r - prev);
        lowest = lowest.min(r);
        prev = r;
    }
    out.push(Property::at_most("density_monotone", rise, 1e-12));
    out.push(Property::at_most("density_nonnegative", -lowest, 0.0));

    // Clark balance at ξ = 0 and random interior ξ
    let mut balance = 0.0f64;
    let mut xis = vec![vec![Complex64::new(0.0, 0.0); d]];
    for _ in 0..3 {
        let v: Vec<Complex64> = (0..d).map(|_| random_c(&mut rng)).collect();
        let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        xis.push(v.iter().map(|c| c / n * 0.9 * rng.gen::<f64>()).collect());
    }
    for xi in &xis {
        let mu = clark(ctx, xi, DEFAULT_CLARK_GRID)?;
        balance = balance.max(mu.balance_residual()).max(mu.herglotz_residual);
    }
    out.push(Property::at_most("clark_balance", balance, 1e-6));

    // boundary points: exact kernel norm, L'Hôpital value and Clark mass agree
    let mut three_way = 0.0f64;
    let mut regular = true;
    for p in ctx.boundary() {
        let r = caratheodory(ctx, p.point)?;
        regular &= r.satisfies_caratheodory;
        match (r.k_norm_sq_exact, r.k_norm_sq_lhopital, r.clark_mass) {
            (Some(e), Some(l), Some(mass)) => {
                three_way = three_way.max((e - l).abs() / e.max(1.0)).max((mass * e - 1.0).abs());
            }
            (Some(e), Some(l), None) => three_way = three_way.max((e - l).abs() / e.max(1.0)),
            _ => regular = false,
        }
    }
    out.push(Property::at_most("boundary_three_way", if regular { three_way } else { f64::INFINITY }, 1e-8));

    let one = cyclicity(ctx, &Poly::one())?;
    out.push(Property::at_most("one_is_cyclic", if one.verdict { 0.0 } else { 1.0 }, 0.0));
    Ok(out)
}
