//! JSON problem description: the symbol `B`, tolerance overrides and the
//! per-command payloads. Complex numbers are `[re, im]` pairs and polynomial
//! coefficients are listed in ascending powers of `z`.

use dbr_core::fixtures::fixture;
use dbr_core::polymath::{Poly, VecPoly};
use dbr_core::space::RowSchur;
use dbr_core::{Complex64, Tolerances};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1.0";

pub type Pair = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema_version: String,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<SymbolSpec>,
    /// Named fixture used instead of an explicit `B`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Pair>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSpec {
    pub d: usize,
    /// `coeffs[k][i]` is the `z^k` coefficient of `b_i`.
    pub coeffs: Vec<Vec<Pair>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_psd: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_factor_degenerate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_outer: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_eval: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_root: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_cluster: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_unimodular: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_pair: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_cond_a0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_log2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, t: &mut Tolerances<f64>) {
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = self.$field { t.$field = v; }
            )*};
        }
        set!(tol_psd, tol_factor, tol_factor_degenerate, tol_outer, tol_eval, tol_root, tol_cluster, tol_unimodular, tol_pair, max_cond_a0, max_iter, seed);
        if let Some(g) = self.grid_log2 {
            t.grid_log2 = Some(g);
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let reals = [
            ("tol_psd", self.tol_psd),
            ("tol_factor", self.tol_factor),
            ("tol_factor_degenerate", self.tol_factor_degenerate),
            ("tol_outer", self.tol_outer),
            ("tol_eval", self.tol_eval),
            ("tol_root", self.tol_root),
            ("tol_cluster", self.tol_cluster),
            ("tol_unimodular", self.tol_unimodular),
            ("tol_pair", self.tol_pair),
            ("max_cond_a0", self.max_cond_a0),
        ];
        for (name, v) in reals {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::invalid(format!("tolerances.{name} must be a positive number, got {v}")));
                }
            }
        }
        if self.max_iter == Some(0) {
            return Err(CliError::invalid("tolerances.max_iter must be at least 1"));
        }
        if let Some(g) = self.grid_log2 {
            if !(3..=20).contains(&g) {
                return Err(CliError::invalid(format!("tolerances.grid_log2 must lie in 3..=20, got {g}")));
            }
        }
        Ok(())
    }
}

impl ProblemSpec {
    /// A spec that only names a fixture.
    pub fn for_fixture(name: &str) -> Self {
        ProblemSpec {
            schema_version: SCHEMA_VERSION.to_string(),
            b: None,
            fixture: Some(name.to_string()),
            tolerances: None,
            f: None,
            w: None,
            xi: None,
            lambda: None,
            n: None,
            radii: None,
        }
    }

    /// Parses and validates; JSON syntax errors carry their line and column.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec: ProblemSpec = serde_json::from_str(text).map_err(CliError::from_json)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let major = self.schema_version.split('.').next().unwrap_or("");
        if major != "1" {
            return Err(CliError::invalid(format!("unsupported schema_version `{}` (expected {SCHEMA_VERSION})", self.schema_version)));
        }
        match (&self.b, &self.fixture) {
            (Some(_), Some(_)) => return Err(CliError::invalid("give either `B` or `fixture`, not both")),
            (Some(b), None) => b.validate()?,
            (None, Some(name)) => {
                fixture::<f64>(name)?;
            }
            (None, None) => {}
        }
        if let Some(t) = &self.tolerances {
            t.validate()?;
        }
        let pairs = self.f.iter().chain(self.xi.iter()).flatten().chain(self.w.iter()).chain(self.lambda.iter());
        for p in pairs {
            if !(p[0].is_finite() && p[1].is_finite()) {
                return Err(CliError::invalid("complex payload entries must be finite"));
            }
        }
        if let Some(r) = &self.radii {
            if r.iter().any(|x| !x.is_finite()) {
                return Err(CliError::invalid("radii must be finite"));
            }
        }
        Ok(())
    }

    pub fn has_symbol(&self) -> bool {
        self.b.is_some() || self.fixture.is_some()
    }

    pub fn symbol(&self) -> Result<RowSchur<f64>, CliError> {
        match (&self.b, &self.fixture) {
            (Some(b), _) => b.to_schur(self.tolerances().tol_psd),
            (None, Some(name)) => Ok(fixture::<f64>(name)?.symbol),
            (None, None) => Err(CliError::invalid("the problem needs a symbol: `B` or `fixture`")),
        }
    }

    pub fn tolerances(&self) -> Tolerances<f64> {
        let mut t = Tolerances::default();
        if let Some(o) = &self.tolerances {
            o.apply(&mut t);
        }
        t
    }

    pub fn f_poly(&self) -> Result<Poly<f64>, CliError> {
        let f = self.f.as_ref().ok_or_else(|| CliError::invalid("missing payload `f`"))?;
        Ok(Poly::new(f.iter().map(|&p| to_c(p)).collect()))
    }

    pub fn w_point(&self) -> Result<Complex64, CliError> {
        self.w.map(to_c).ok_or_else(|| CliError::invalid("missing payload `w`"))
    }

    pub fn lambda_point(&self) -> Result<Complex64, CliError> {
        self.lambda.map(to_c).ok_or_else(|| CliError::invalid("missing payload `lambda`"))
    }

    pub fn xi_vec(&self) -> Result<Vec<Complex64>, CliError> {
        let xi = self.xi.as_ref().ok_or_else(|| CliError::invalid("missing payload `xi`"))?;
        Ok(xi.iter().map(|&p| to_c(p)).collect())
    }

    pub fn n_value(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::invalid("missing payload `N`"))
    }
}

impl SymbolSpec {
    fn validate(&self) -> Result<(), CliError> {
        if self.d == 0 {
            return Err(CliError::invalid("B.d must be at least 1"));
        }
        if self.coeffs.is_empty() {
            return Err(CliError::invalid("B.coeffs must list at least the constant term"));
        }
        for (k, row) in self.coeffs.iter().enumerate() {
            if row.len() != self.d {
                return Err(CliError::invalid(format!("B.coeffs[{k}] has {} entries, expected d = {}", row.len(), self.d)));
            }
            if row.iter().any(|p| !(p[0].is_finite() && p[1].is_finite())) {
                return Err(CliError::invalid(format!("B.coeffs[{k}] contains a non-finite value")));
            }
        }
        Ok(())
    }

    pub fn to_schur(&self, tol_psd: f64) -> Result<RowSchur<f64>, CliError> {
        self.validate()?;
        let rows = self.coeffs.iter().map(|r| r.iter().map(|&p| to_c(p)).collect()).collect();
        let sym = VecPoly::new(self.d, rows)?;
        Ok(RowSchur::new(sym, tol_psd)?)
    }
}

pub fn to_c(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}
