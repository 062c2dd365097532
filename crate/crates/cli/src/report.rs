//! JSON renderings of core results.

use dbr_core::boundary::{BoundaryReport, ClarkMeasure};
use dbr_core::cyclic::{Crosscheck, CyclicityCertificate};
use dbr_core::linalg::CMat;
use dbr_core::polymath::{Poly, VecPoly};
use dbr_core::space::{HBElement, KernelElement, SpaceContext};
use dbr_core::{Complex64, Error};
use serde_json::{json, Value};

pub fn c(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Non-finite values become `null` in JSON; keep them readable instead.
pub fn real(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(x.to_string())
    }
}

fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, real)
}

pub fn poly(p: &Poly<f64>) -> Value {
    Value::Array(p.coeffs().iter().map(|&z| c(z)).collect())
}

pub fn vecpoly(v: &VecPoly<f64>) -> Value {
    Value::Array(v.rows().iter().map(|r| Value::Array(r.iter().map(|&z| c(z)).collect())).collect())
}

fn mat(m: &CMat<f64>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row_slice(i).iter().map(|&z| c(z)).collect())).collect())
}

pub fn context(ctx: &SpaceContext<f64>) -> Value {
    let mr = ctx.mate_report();
    let fr = ctx.factor_report();
    json!({
        "d": ctx.dim(),
        "symbol": vecpoly(ctx.symbol().symbol()),
        "mate": poly(ctx.mate()),
        "mate_residual": real(mr.residual_sup),
        "mate_outer_gap": real(mr.outer_gap),
        "outer_factor": Value::Array(ctx.outer_factor().coeffs().iter().map(mat).collect()),
        "factor_residual": real(fr.residual_sup),
        "factor_outer_gap": real(fr.outer_gap),
        "factor_iterations": fr.iterations,
        "factor_trace": Value::Array(fr.trace.iter().map(|&x| real(x)).collect()),
        "cond_a0": real(ctx.cond_a0()),
        "boundary_spectrum": Value::Array(
            ctx.boundary().iter().map(|p| json!({"lambda": c(p.point), "multiplicity": p.multiplicity})).collect()
        ),
    })
}

pub fn element(el: &HBElement<f64>, ctx: &SpaceContext<f64>) -> Value {
    json!({
        "f": poly(&el.f),
        "f_plus": vecpoly(&el.f_plus),
        "norm_sq": real(el.norm_sq),
        "norm": real(el.norm()),
        "membership_residual": real(el.membership_residual(ctx).max_abs_coeff()),
    })
}

pub fn kernel(k: &KernelElement<f64>, diagonal: Option<f64>, ctx: &SpaceContext<f64>) -> Value {
    json!({
        "w": c(k.w),
        "exact": k.exact,
        "terms": k.terms,
        "tail_bound": real(k.tail_bound),
        "diagonal": opt(diagonal),
        "element": element(&k.element, ctx),
    })
}

pub fn clark(m: &ClarkMeasure<f64>) -> Value {
    json!({
        "xi": Value::Array(m.xi.iter().map(|&z| c(z)).collect()),
        "point_masses": Value::Array(m.point_masses.iter().map(|&(l, w)| json!({"lambda": c(l), "mass": real(w)})).collect()),
        "grid_size": m.density.len(),
        "ac_mass": real(m.ac_mass),
        "total_mass": real(m.total_mass),
        "h0": c(m.h0),
        "imag_const": real(m.imag_const),
        "min_density": real(m.min_density),
        "max_density": real(m.density.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        "balance_residual": real(m.balance_residual()),
        "herglotz_residual": real(m.herglotz_residual),
    })
}

pub fn boundary(r: &BoundaryReport<f64>, convergence: Option<(&[f64], &[f64])>) -> Value {
    let mut v = json!({
        "lambda": c(r.lambda),
        "satisfies_caratheodory": r.satisfies_caratheodory,
        "boundary_vector": Value::Array(r.boundary_vector.iter().map(|&z| c(z)).collect()),
        "k_norm_sq_exact": opt(r.k_norm_sq_exact),
        "k_norm_sq_lhopital": opt(r.k_norm_sq_lhopital),
        "k_norm_sq_radial": opt(r.k_norm_sq_radial),
        "clark_mass": opt(r.clark_mass),
    });
    if let Some((radii, values)) = convergence {
        v["kernel_convergence"] =
            Value::Array(radii.iter().zip(values).map(|(&r, &x)| json!({"r": real(r), "value": real(x)})).collect());
    }
    v
}

pub fn cyclicity(cert: &CyclicityCertificate<f64>) -> Value {
    json!({
        "verdict": cert.verdict,
        "is_outer": cert.is_outer,
        "interior_roots": Value::Array(cert.interior_roots.iter().map(|&z| c(z)).collect()),
        "boundary_checks": Value::Array(cert.boundary_checks.iter().map(|b| json!({
            "lambda": c(b.lambda),
            "value": c(b.value),
            "pass": b.pass,
        })).collect()),
        "min_boundary_value": opt(cert.min_boundary_value),
        "max_interior_residual": opt(cert.max_interior_residual),
        "min_root_modulus": opt(cert.min_root_modulus),
    })
}

pub fn crosscheck(x: &Crosscheck<f64>) -> Value {
    json!({
        "N": x.n,
        "entries": Value::Array(x.entries.iter().map(|e| json!({
            "lambda": c(e.lambda),
            "member": e.member,
            "residual": real(e.residual),
        })).collect()),
        "gap_ratio": real(x.gap_ratio),
        "inconclusive": x.inconclusive,
    })
}

/// Error name, message and the variant's fields.
pub fn error(e: &Error) -> Value {
    let details = match e {
        Error::DimensionMismatch { expected, found } => json!({"expected": expected, "found": found}),
        Error::RootFindingFailed { iterations, best_residual } => {
            json!({"iterations": iterations, "best_residual": real(*best_residual)})
        }
        Error::NotPositive { min } => json!({"min": real(*min)}),
        Error::OddBoundaryMultiplicity { root_re, root_im, multiplicity } => {
            json!({"root": [root_re, root_im], "multiplicity": multiplicity})
        }
        Error::FactorizationDiverged { trace } => json!({"trace": trace.iter().map(|&x| real(x)).collect::<Vec<_>>()}),
        Error::SingularIterate { index } => json!({"index": index}),
        Error::DegenerateDeterminant { excluded, total } => json!({"excluded": excluded, "total": total}),
        Error::IllConditionedConstant { cond } => json!({"cond": real(*cond)}),
        Error::EmbeddingResidual { residual, tolerance } => json!({"residual": real(*residual), "tolerance": real(*tolerance)}),
        Error::BoundaryNotRegular { re, im } => json!({"lambda": [re, im]}),
        Error::ConditioningWarning { value } => json!({"value": real(*value)}),
        Error::HigherOrderBoundaryZero { re, im, multiplicity } => json!({"lambda": [re, im], "multiplicity": multiplicity}),
        Error::NonpositiveMass { re, im, mass_re, mass_im } => json!({"lambda": [re, im], "mass": [mass_re, mass_im]}),
        Error::UnknownFixture(name) => json!({"name": name}),
        Error::DomainError(_) | Error::InvalidInput(_) | Error::MateUndefined | Error::DegenerateSymbol | Error::ZeroFunction => {
            json!({})
        }
    };
    json!({"error": e.name(), "message": e.to_string(), "details": details})
}
