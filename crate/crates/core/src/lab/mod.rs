//! Certifiers for operator and norm inequalities, and seeded campaigns
//! that run them (together with the eigenvalue localization checks) over
//! generated instances.

pub mod campaign;
pub mod norms;
pub mod power;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{is_symmetric, is_t_psd, is_t_psd_scaled, spectral_radius_symmetric, symmetrize};
use crate::certificate::{InequalityCertificate, Instance, TheoremId};
use crate::error::{Result, TensorError};
use crate::tensor::Tensor3;

pub use campaign::{run_campaign, run_trial, CampaignConfig, CampaignReport, CampaignSummary, Overrides, TrialFailure};
pub use norms::{
    check_am_gm, check_complex_norm_bounds, check_heinz_family, check_holder, check_holder_corollary,
    check_holder_pairs, check_minkowski, holder_n3_exponent, ComplexNormVariant,
};
pub use power::{
    check_furuta, check_hansen_power, check_loewner_heinz, check_young_commuting, check_young_witness,
};

/// Default relative tolerance for certificates.
pub const DEFAULT_TOL: f64 = 1e-8;

/// How literally a printed statement is evaluated.
///
/// `Corrected` evaluates the mathematically sound reading, `Literal` the
/// statement exactly as printed, and `Exploratory` the corrected reading
/// with parameter-range hypotheses lifted (to probe sharpness).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Corrected,
    Literal,
    Exploratory,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Corrected => "corrected",
            Mode::Literal => "literal",
            Mode::Exploratory => "exploratory",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = TensorError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(Mode::Corrected),
            "literal" => Ok(Mode::Literal),
            "exploratory" => Ok(Mode::Exploratory),
            other => Err(TensorError::InvalidParameter(format!("unknown mode `{other}`"))),
        }
    }
}

/// Tolerance, mode and provenance shared by every certifier call.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckContext {
    pub tol: f64,
    pub mode: Mode,
    pub seed: u64,
    pub stream: u64,
}

impl Default for CheckContext {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            mode: Mode::Corrected,
            seed: 0,
            stream: 0,
        }
    }
}

impl CheckContext {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub(crate) fn instance(&self, theorem: TheoremId, dims: [usize; 3]) -> Instance {
        Instance::new(theorem, self.seed, dims)
            .with("stream", self.stream as f64)
            .with("mode", self.mode.as_str())
    }

    /// Parameter-range hypotheses are enforced outside exploratory mode.
    pub(crate) fn enforce_ranges(&self) -> bool {
        self.mode != Mode::Exploratory
    }
}

pub(crate) fn hypothesis(msg: impl Into<String>) -> TensorError {
    TensorError::Hypothesis(msg.into())
}

pub(crate) fn require_psd(a: &Tensor3, name: &str, tol: f64) -> Result<()> {
    let v = is_t_psd(a, tol)?;
    if v.holds {
        Ok(())
    } else {
        Err(hypothesis(format!(
            "{name} is not t-positive semidefinite (smallest slice eigenvalue {:e})",
            v.min_gap_eigenvalue
        )))
    }
}

pub(crate) fn require_symmetric(a: &Tensor3, name: &str, tol: f64) -> Result<()> {
    let s = is_symmetric(a, tol);
    if s.holds {
        Ok(())
    } else {
        Err(hypothesis(format!(
            "{name} is not symmetric (residual {:e})",
            s.residual
        )))
    }
}

pub(crate) fn require_same_square(tensors: &[&Tensor3]) -> Result<()> {
    let dims = tensors[0].dims();
    if !tensors[0].is_square() || tensors.iter().any(|t| t.dims() != dims) {
        return Err(TensorError::DimensionMismatch(format!(
            "equal square tensors required, got {:?}",
            tensors.iter().map(|t| t.dims()).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

/// Conjugate exponent `p/(p−1)`.
pub(crate) fn conjugate_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

/// Certificate for `big ≥ small`.
///
/// Each side must be symmetric relative to its own size; both are then
/// symmetrized, so roundoff in large products cannot trip the symmetry
/// check on a small difference. The tolerance scales with the larger
/// spectral radius of the two sides.
pub(crate) fn loewner_certificate(
    instance: &Instance,
    form: &str,
    big: &Tensor3,
    small: &Tensor3,
    tol: f64,
) -> Result<InequalityCertificate> {
    let scale = spectral_radius_symmetric(big, tol)?.max(spectral_radius_symmetric(small, tol)?);
    let gap = &symmetrize(big) - &symmetrize(small);
    let verdict = is_t_psd_scaled(&gap, tol, scale)?;
    Ok(InequalityCertificate::loewner(instance, form, &verdict))
}
