//! Machine-readable verdicts for single inequality evaluations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::LoewnerVerdict;
use crate::error::TensorError;

/// Registry of checkable theorems, by stable kebab-case name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    LoewnerHeinz,
    HansenPower,
    Furuta,
    YoungCommuting,
    YoungWitness,
    ComplexNormA,
    ComplexNormB,
    ComplexNormC,
    AmGm,
    HeinzFamily,
    Holder,
    HolderPairs,
    HolderCorollary,
    Minkowski,
    Schur,
    Gershgorin,
    BauerFike,
    HoffmanWielandt,
    DiagSpectrum,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::LoewnerHeinz,
        TheoremId::HansenPower,
        TheoremId::Furuta,
        TheoremId::YoungCommuting,
        TheoremId::YoungWitness,
        TheoremId::ComplexNormA,
        TheoremId::ComplexNormB,
        TheoremId::ComplexNormC,
        TheoremId::AmGm,
        TheoremId::HeinzFamily,
        TheoremId::Holder,
        TheoremId::HolderPairs,
        TheoremId::HolderCorollary,
        TheoremId::Minkowski,
        TheoremId::Schur,
        TheoremId::Gershgorin,
        TheoremId::BauerFike,
        TheoremId::HoffmanWielandt,
        TheoremId::DiagSpectrum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::LoewnerHeinz => "loewner-heinz",
            TheoremId::HansenPower => "hansen-power",
            TheoremId::Furuta => "furuta",
            TheoremId::YoungCommuting => "young-commuting",
            TheoremId::YoungWitness => "young-witness",
            TheoremId::ComplexNormA => "complex-norm-a",
            TheoremId::ComplexNormB => "complex-norm-b",
            TheoremId::ComplexNormC => "complex-norm-c",
            TheoremId::AmGm => "am-gm",
            TheoremId::HeinzFamily => "heinz-family",
            TheoremId::Holder => "holder",
            TheoremId::HolderPairs => "holder-pairs",
            TheoremId::HolderCorollary => "holder-corollary",
            TheoremId::Minkowski => "minkowski",
            TheoremId::Schur => "schur",
            TheoremId::Gershgorin => "gershgorin",
            TheoremId::BauerFike => "bauer-fike",
            TheoremId::HoffmanWielandt => "hoffman-wielandt",
            TheoremId::DiagSpectrum => "diag-spectrum",
        }
    }

    /// One-line statement shown in listings.
    pub fn summary(self) -> &'static str {
        match self {
            TheoremId::LoewnerHeinz => "A >= B >= 0, 0 <= r <= 1  =>  A^r >= B^r",
            TheoremId::HansenPower => "Q'*X^r*Q <= (Q'*X*Q)^r (0<r<=1), >= for 1<=r<=2",
            TheoremId::Furuta => "(B^r*A^p*B^r)^(1/q) >= B^((p+2r)/q) and A^((p+2r)/q) >= (A^r*B^p*A^r)^(1/q)",
            TheoremId::YoungCommuting => "commuting A, B >= 0  =>  A*B <= A^p/p + B^q/q",
            TheoremId::YoungWitness => "U'*|A*B'|*U <= |A|^p/p + |B|^q/q for a constructed orthogonal U",
            TheoremId::ComplexNormA => "norm bounds for T = A + iB, A and B symmetric",
            TheoremId::ComplexNormB => "norm bounds for T = A + iB, A t-PSD and B symmetric",
            TheoremId::ComplexNormC => "norm bounds for T = A + iB, A and B t-PSD",
            TheoremId::AmGm => "||A*X*B'|| <= 1/2 ||A'*A*X + X*B'*B||",
            TheoremId::HeinzFamily => "(2+t)||A^r X B^(2-r) + A^(2-r) X B^r|| <= 2||A^2 X + t A X B + X B^2||; 4||A*B|| <= ||(A+B)^2||",
            TheoremId::Holder => "|| |A*X*B|^r || <= || |A^p*X|^r ||^(1/p) || |X*B^q|^r ||^(1/q)",
            TheoremId::HolderPairs => "2^-|1/p-1/2| ||C'*A + D'*B|| <= || |A|^p+|B|^p ||^(1/p) || |C|^q+|D|^q ||^(1/q)",
            TheoremId::HolderCorollary => "|| |A*B|^r || <= || |A|^(pr) ||^(1/p) || |B|^(qr) ||^(1/q)",
            TheoremId::Minkowski => "Minkowski inequality for | . |^p sums",
            TheoremId::Schur => "sum |lambda|^2 <= n3 ||A||_F^2",
            TheoremId::Gershgorin => "t-eigenvalues lie in the Gershgorin discs; component counts",
            TheoremId::BauerFike => "|lambda - mu| <= ||Q^-1||_2 ||Q||_2 ||A - B||_2",
            TheoremId::HoffmanWielandt => "matched t-eigenvalue distance <= sqrt(n3) ||B - A||_F <= n3 ||B - A||_F",
            TheoremId::DiagSpectrum => "spectrum of T = A + iB bounded by sqrt(2)||T||",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = TensorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| TensorError::UnknownTheorem(s.to_string()))
    }
}

/// Which norm a certificate compares; Löwner certificates use `n/a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormKind {
    #[serde(rename = "frobenius")]
    Frobenius,
    #[serde(rename = "spectral")]
    Spectral,
    #[serde(rename = "n/a")]
    NotApplicable,
}

/// A numeric or textual instance parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(f64),
    Text(String),
}

impl From<f64> for ParamValue {
    fn from(x: f64) -> Self {
        ParamValue::Number(x)
    }
}

impl From<&str> for ParamValue {
    fn from(s: &str) -> Self {
        ParamValue::Text(s.to_string())
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// What was checked: theorem, seed and dimensions plus named parameters
/// (exponents, trial stream, statement form, mode).
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub theorem: TheoremId,
    pub seed: u64,
    pub dims: [usize; 3],
    pub params: Params,
}

impl Instance {
    pub fn new(theorem: TheoremId, seed: u64, dims: [usize; 3]) -> Self {
        Self {
            theorem,
            seed,
            dims,
            params: Params::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<ParamValue>) {
        self.params.insert(key.to_string(), value.into());
    }

    fn form(&self, form: &str) -> Params {
        let mut params = self.params.clone();
        params.insert("form".into(), form.into());
        params
    }
}

/// Verdict of one inequality on one instance.
///
/// For norm inequalities `margin = rhs − lhs`; for Löwner inequalities
/// `lhs = 0` and `rhs = margin` is the smallest eigenvalue of the gap.
/// `tol` is the absolute threshold: `holds ⟺ margin ≥ −tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCertificate {
    pub theorem_id: TheoremId,
    pub seed: u64,
    pub dims: [usize; 3],
    pub params: Params,
    pub norm_kind: NormKind,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tol: f64,
    pub holds: bool,
}

impl InequalityCertificate {
    /// `lhs ≤ rhs`, accepted when `lhs ≤ rhs + tol·(1 + |rhs|)`.
    pub fn norm(
        instance: &Instance,
        form: &str,
        norm_kind: NormKind,
        lhs: f64,
        rhs: f64,
        tol: f64,
    ) -> Self {
        Self::bound(instance, form, norm_kind, lhs, rhs, tol * (1.0 + rhs.abs()))
    }

    /// `lhs ≤ rhs` with an explicit absolute threshold.
    pub fn bound(
        instance: &Instance,
        form: &str,
        norm_kind: NormKind,
        lhs: f64,
        rhs: f64,
        threshold: f64,
    ) -> Self {
        let margin = rhs - lhs;
        Self {
            theorem_id: instance.theorem,
            seed: instance.seed,
            dims: instance.dims,
            params: instance.form(form),
            norm_kind,
            lhs,
            rhs,
            margin,
            tol: threshold,
            holds: margin >= -threshold,
        }
    }

    /// Löwner inequality certificate from a gap verdict.
    pub fn loewner(instance: &Instance, form: &str, verdict: &LoewnerVerdict) -> Self {
        Self {
            theorem_id: instance.theorem,
            seed: instance.seed,
            dims: instance.dims,
            params: instance.form(form),
            norm_kind: NormKind::NotApplicable,
            lhs: 0.0,
            rhs: verdict.min_gap_eigenvalue,
            margin: verdict.min_gap_eigenvalue,
            tol: verdict.tolerance_used,
            holds: verdict.holds,
        }
    }

    pub fn param(&self, key: &str) -> Option<&ParamValue> {
        self.params.get(key)
    }

    pub fn form(&self) -> Option<&str> {
        match self.params.get("form") {
            Some(ParamValue::Text(s)) => Some(s),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(json, format!("\"{}\"", t.as_str()));
        }
        assert!(matches!(
            "nosuch".parse::<TheoremId>(),
            Err(TensorError::UnknownTheorem(_))
        ));
    }

    #[test]
    fn json_field_names() {
        let inst = Instance::new(TheoremId::AmGm, 7, [2, 2, 3]).with("p", 2.0);
        let cert = InequalityCertificate::norm(&inst, "corrected", NormKind::Spectral, 1.0, 2.0, 1e-8);
        let v: serde_json::Value = serde_json::to_value(&cert).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        for k in ["theorem_id", "seed", "dims", "params", "norm_kind", "lhs", "rhs", "margin", "tol", "holds"] {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert_eq!(v["norm_kind"], "spectral");
        assert_eq!(v["params"]["form"], "corrected");
        assert_eq!(v["params"]["p"], 2.0);
        assert!(cert.holds);
        assert_eq!(cert.margin, 1.0);
    }

    #[test]
    fn violation_threshold() {
        let inst = Instance::new(TheoremId::AmGm, 0, [1, 1, 1]);
        let cert = InequalityCertificate::norm(&inst, "x", NormKind::Frobenius, 2.0, 1.5, 1e-8);
        assert!(!cert.holds);
        assert_eq!(cert.margin, -0.5);
        let tight = InequalityCertificate::norm(&inst, "x", NormKind::Frobenius, 1.0 + 1e-12, 1.0, 1e-8);
        assert!(tight.holds);
    }
}
