//! Named row Schur symbols with hand-checked expected quantities.

use crate::error::{Error, Result};
use crate::polymath::VecPoly;
use crate::scalar::{cr, Real};
use crate::space::RowSchur;

/// How an expected value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Worked out by hand from the closed-form symbol.
    HandComputed,
    /// Forced by structure (identity space, error branch, …).
    Structural,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub key: &'static str,
    pub value: f64,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct Fixture<T> {
    pub name: String,
    pub symbol: RowSchur<T>,
    pub expected: Vec<Expected>,
}

impl<T> Fixture<T> {
    pub fn expected(&self, key: &str) -> Option<f64> {
        self.expected.iter().find(|e| e.key == key).map(|e| e.value)
    }
}

/// Largest admissible `d` for `TRUNC(d)`.
pub const MAX_TRUNC: usize = 20;

/// Names accepted by [`fixture`] (with `TRUNC(3)` standing for the family).
pub const FIXTURE_NAMES: [&str; 5] = ["ZERO", "SARASON", "ROW2", "FLAT", "TRUNC(3)"];

fn hand(key: &'static str, value: f64) -> Expected {
    Expected { key, value, origin: Origin::HandComputed }
}

fn structural(key: &'static str, value: f64) -> Expected {
    Expected { key, value, origin: Origin::Structural }
}

/// Looks up a fixture by name: `ZERO`, `SARASON`, `ROW2`, `FLAT` or `TRUNC(d)`
/// with `1 ≤ d ≤ 20` (case-insensitive).
///
/// `FLAT` has `|B| ≡ 1` on the circle, so it is a valid symbol whose mate does
/// not exist; every downstream construction fails with `MateUndefined`.
pub fn fixture<T: Real>(name: &str) -> Result<Fixture<T>> {
    let upper = name.trim().to_ascii_uppercase();
    let s2 = T::lit(2.0).sqrt();
    let half = T::lit(0.5);
    let (rows, dim, expected): (Vec<Vec<T>>, usize, Vec<Expected>) = match upper.as_str() {
        "ZERO" => (
            vec![vec![T::zero()]],
            1,
            vec![structural("mate_0", 1.0), structural("norm_sq_1", 1.0), structural("lambda_count", 0.0)],
        ),
        "SARASON" => (
            vec![vec![half], vec![half]],
            1,
            vec![
                hand("mate_0", 0.5),
                hand("mate_1", -0.5),
                hand("defect_c0", 0.5),
                hand("defect_c1", -0.25),
                hand("norm_sq_1", 2.0),
                hand("norm_sq_z", 6.0),
                hand("gram_01", 2.0),
                hand("kernel_1_norm_sq", 0.5),
                hand("clark_mass_1", 2.0),
                hand("clark_total", 3.0),
                hand("density_residual_w0_n0", 0.25),
                hand("lambda_count", 1.0),
            ],
        ),
        "ROW2" => {
            let b = T::one() / (T::lit(2.0) * s2);
            (
                vec![vec![b, T::zero()], vec![b, T::zero()], vec![T::zero(), T::one() / s2]],
                2,
                vec![
                    hand("mate_0", 1.0 / (2.0 * 2f64.sqrt())),
                    hand("mate_1", -1.0 / (2.0 * 2f64.sqrt())),
                    hand("defect_c0", 0.25),
                    hand("defect_c1", -0.125),
                    hand("defect_at_1", 0.0),
                    hand("kernel_1_norm_sq", 1.25),
                    hand("point_eval_residual_1", 0.8),
                    hand("clark_mass_1", 0.8),
                    hand("clark_total", 5.0 / 3.0),
                    hand("lambda_count", 1.0),
                ],
            )
        }
        "FLAT" => (vec![vec![T::zero(), T::one() / s2], vec![T::one() / s2, T::zero()]], 2, vec![]),
        _ => {
            let d = parse_trunc(&upper).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
            let b = T::one() / (T::lit(2.0) * s2);
            let mut rows = vec![vec![T::zero(); d]; d + 1];
            rows[0][0] = b;
            rows[1][0] = b;
            for (i, row) in rows.iter_mut().enumerate().skip(2) {
                row[i - 1] = T::lit(2f64.powf(-(i as f64) / 2.0));
            }
            let floor = 2f64.powi(-(d as i32));
            (
                rows,
                d,
                vec![
                    hand("defect_c0", 0.25 + floor),
                    hand("defect_c1", -0.125),
                    hand("defect_at_1", floor),
                    hand("lambda_count", 0.0),
                ],
            )
        }
    };
    let rows = rows.into_iter().map(|r| r.into_iter().map(cr).collect()).collect();
    let symbol = VecPoly::new(dim, rows)?;
    let tol = T::lit(1e-10);
    Ok(Fixture { name: upper, symbol: RowSchur::new(symbol, tol)?, expected })
}

fn parse_trunc(name: &str) -> Option<usize> {
    let inner = name.strip_prefix("TRUNC")?;
    let inner = inner.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(inner);
    let d: usize = inner.trim().parse().ok()?;
    (1..=MAX_TRUNC).contains(&d).then_some(d)
}
