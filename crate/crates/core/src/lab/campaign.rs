//! Seeded campaigns: many generated instances of one theorem, each run on
//! its own RNG substream so results do not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{symmetrize, t_inverse, t_product_chain, DEFAULT_INVERSE_TOL};
use crate::certificate::{InequalityCertificate, Params, TheoremId};
use crate::error::{Result, TensorError};
use crate::generate::{
    gen_commuting_psd_pair, gen_loewner_pair, gen_loewner_pair_shifted, gen_random, gen_symmetric, gen_t_psd, DEFAULT_DELTA,
};
use crate::lab::{norms, power, CheckContext, ComplexNormVariant, Mode, DEFAULT_TOL};
use crate::localization;
use crate::rng::RngStream;
use crate::spectral::{gen_orthogonal, spectral_norm};
use crate::tensor::Tensor3;

/// Fixed values for exponents that campaigns otherwise sample.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Overrides {
    pub r: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub t: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub theorem: TheoremId,
    pub n: usize,
    pub n3: usize,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    pub mode: Mode,
    pub overrides: Overrides,
}

impl CampaignConfig {
    pub fn new(theorem: TheoremId, n: usize, n3: usize, trials: u64, seed: u64) -> Self {
        Self {
            theorem,
            n,
            n3,
            trials,
            seed,
            tol: DEFAULT_TOL,
            mode: Mode::Corrected,
            overrides: Overrides::default(),
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_overrides(mut self, overrides: Overrides) -> Self {
        self.overrides = overrides;
        self
    }

    fn context(&self, trial: u64) -> CheckContext {
        CheckContext {
            tol: self.tol,
            mode: self.mode,
            seed: self.seed,
            stream: trial,
        }
    }
}

/// A trial whose instance was rejected or whose evaluation failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: u64,
    pub error: String,
    /// Solver failure or violated hypothesis, as opposed to bad input.
    pub numerical: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub theorem_id: TheoremId,
    pub mode: Mode,
    pub seed: u64,
    pub dims: [usize; 3],
    pub trials: u64,
    pub certificates: usize,
    pub violations: usize,
    pub errors: usize,
    /// Smallest `rhs − lhs` over all certificates.
    pub worst_margin: Option<f64>,
    pub worst_trial: Option<u64>,
    pub worst_params: Option<Params>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    /// Certificates in trial order.
    pub certificates: Vec<InequalityCertificate>,
    pub failures: Vec<TrialFailure>,
    pub summary: CampaignSummary,
}

/// Definiteness shift for Furuta instances. `B^r∗A^p∗B^r` has eigenvalues
/// down to about `δ^{2r}`, and the `1/q` power turns their absolute
/// roundoff into errors of order `(ε‖·‖)^{1/q}`; with the default shift
/// this exceeds the tolerance in rare trials.
pub const FURUTA_DELTA: f64 = 0.1;

impl CampaignReport {
    /// `0` when every certificate holds, `1` when any is violated, `3` when
    /// none is violated but some trial failed.
    pub fn exit_code(&self) -> i32 {
        if self.summary.violations > 0 {
            1
        } else if self.summary.errors > 0 {
            3
        } else {
            0
        }
    }
}

fn pick(value: Option<f64>, rng: &mut RngStream, choices: &[f64]) -> f64 {
    value.unwrap_or_else(|| rng.choose(choices))
}

fn example_pair(n: usize, n3: usize) -> (Tensor3, Tensor3) {
    let mut a = Tensor3::zeros(n, n, n3);
    let mut b = Tensor3::zeros(n, n, n3);
    for (i, j, v) in [(0, 0, 2.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 1.0)] {
        a.set(i, j, 0, v);
    }
    b.set(0, 0, 0, 1.0);
    (a, b)
}

/// `G·u/‖G‖₂` for random `G` and `u ∈ [0.2, 1]`.
fn contraction(n: usize, n3: usize, rng: &mut RngStream) -> Tensor3 {
    let g = gen_random([n, n, n3], rng);
    let u = rng.uniform(0.2, 1.0);
    g.scale(u / spectral_norm(&g))
}

/// Rejection-samples `r ∈ [0,2], p ∈ [0,4], q ∈ [1,4]` on
/// `(1+2r)q ≥ p+2r`; overridden exponents are held fixed.
fn furuta_exponents(o: &Overrides, rng: &mut RngStream) -> (f64, f64, f64) {
    for _ in 0..1000 {
        let r = o.r.unwrap_or_else(|| rng.uniform(0.0, 2.0));
        let p = o.p.unwrap_or_else(|| rng.uniform(0.0, 4.0));
        let q = o.q.unwrap_or_else(|| rng.uniform(1.0, 4.0));
        if power::furuta_admissible(r, p, q) {
            return (r, p, q);
        }
    }
    (o.r.unwrap_or(0.0), o.p.unwrap_or(0.0), o.q.unwrap_or(1.0))
}

/// `A = Q⁻¹∗S∗Q` with `Q = Q₁∗D∗Q₂` well conditioned and `S` f-diagonal,
/// and a perturbation `B = A + εE`.
fn bauer_fike_instance(
    n: usize,
    n3: usize,
    rng: &mut RngStream,
) -> Result<(Tensor3, Tensor3, Tensor3, Tensor3)> {
    let q1 = gen_orthogonal(n, n3, rng);
    let q2 = gen_orthogonal(n, n3, rng);
    let mut d = Tensor3::zeros(n, n, n3);
    for i in 0..n {
        d.set(i, i, 0, rng.uniform(0.5, 2.0));
    }
    let q = t_product_chain(&[&q1, &d, &q2])?;
    let mut s = Tensor3::zeros(n, n, n3);
    for k in 0..n3 {
        for i in 0..n {
            s.set(i, i, k, rng.symmetric_unit());
        }
    }
    let q_inv = t_inverse(&q, DEFAULT_INVERSE_TOL)?;
    let a = t_product_chain(&[&q_inv, &s, &q])?;
    let eps = rng.uniform(1e-3, 1e-1);
    let b = &a + &gen_random([n, n, n3], rng).scale(eps);
    Ok((a, b, q, s))
}

/// Generates the instance for one trial and certifies it.
pub fn run_trial(config: &CampaignConfig, trial: u64) -> Result<Vec<InequalityCertificate>> {
    let (n, n3) = (config.n, config.n3);
    if n == 0 || n3 == 0 {
        return Err(TensorError::InvalidDims { n1: n, n2: n, n3 });
    }
    let ctx = config.context(trial);
    let o = &config.overrides;
    let rng = &mut RngStream::new(config.seed, trial);
    let literal = config.mode == Mode::Literal;
    match config.theorem {
        TheoremId::LoewnerHeinz => {
            let r = pick(o.r, rng, &[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]);
            let (a, b) = if trial == 0 && r > 1.0 && n >= 2 {
                example_pair(n, n3)
            } else {
                gen_loewner_pair(n, n3, rng)
            };
            Ok(vec![power::check_loewner_heinz(&a, &b, r, &ctx)?])
        }
        TheoremId::HansenPower => {
            let r = match o.r {
                Some(r) => r,
                None if trial.is_multiple_of(2) => rng.choose(&[0.25, 0.5, 0.75, 1.0]),
                None => rng.choose(&[1.25, 1.5, 1.75, 2.0]),
            };
            let q = if literal {
                gen_orthogonal(n, n3, rng)
            } else {
                contraction(n, n3, rng)
            };
            let x = gen_t_psd(n, n3, rng, DEFAULT_DELTA);
            Ok(vec![power::check_hansen_power(&q, &x, r, &ctx)?])
        }
        TheoremId::Furuta => {
            let (r, p, q) = furuta_exponents(o, rng);
            let (a, b) = gen_loewner_pair_shifted(n, n3, rng, FURUTA_DELTA);
            Ok(power::check_furuta(&a, &b, r, p, q, &ctx)?.to_vec())
        }
        TheoremId::YoungCommuting => {
            let p = pick(o.p, rng, &[1.5, 2.0, 4.0]);
            let (a, b) = gen_commuting_psd_pair(n, n3, rng);
            Ok(vec![power::check_young_commuting(&a, &b, p, &ctx)?])
        }
        TheoremId::YoungWitness => {
            let p = pick(o.p, rng, &[1.5, 2.0, 3.0]);
            let a = gen_random([n, n, n3], rng);
            let b = gen_random([n, n, n3], rng);
            Ok(vec![power::check_young_witness(&a, &b, p, &ctx)?])
        }
        TheoremId::ComplexNormA | TheoremId::ComplexNormB | TheoremId::ComplexNormC => {
            let variant = match config.theorem {
                TheoremId::ComplexNormA => ComplexNormVariant::A,
                TheoremId::ComplexNormB => ComplexNormVariant::B,
                _ => ComplexNormVariant::C,
            };
            let (a, b) = if literal && trial == 0 && variant == ComplexNormVariant::B {
                (Tensor3::identity(n, n3), Tensor3::identity(n, n3))
            } else {
                match variant {
                    ComplexNormVariant::A => (gen_symmetric(n, n3, rng), gen_symmetric(n, n3, rng)),
                    ComplexNormVariant::B => (gen_t_psd(n, n3, rng, DEFAULT_DELTA), gen_symmetric(n, n3, rng)),
                    ComplexNormVariant::C => (
                        gen_t_psd(n, n3, rng, DEFAULT_DELTA),
                        gen_t_psd(n, n3, rng, DEFAULT_DELTA),
                    ),
                }
            };
            norms::check_complex_norm_bounds(&a, &b, variant, &ctx)
        }
        TheoremId::AmGm => {
            let (a, x, b) = if literal && trial == 0 {
                let id = Tensor3::identity(n, n3);
                (id.scale(2.0), id.clone(), id)
            } else {
                (
                    gen_random([n, n, n3], rng),
                    gen_random([n, n, n3], rng),
                    gen_random([n, n, n3], rng),
                )
            };
            norms::check_am_gm(&a, &x, &b, &ctx)
        }
        TheoremId::HeinzFamily => {
            let r = pick(o.r, rng, &[0.5, 0.75, 1.0, 1.25, 1.5]);
            let t = pick(o.t, rng, &[-1.0, 0.0, 1.0, 2.0]);
            let a = gen_t_psd(n, n3, rng, DEFAULT_DELTA);
            let x = gen_random([n, n, n3], rng);
            let b = gen_t_psd(n, n3, rng, DEFAULT_DELTA);
            norms::check_heinz_family(&a, &x, &b, r, t, &ctx)
        }
        TheoremId::Holder => {
            let r = pick(o.r, rng, &[0.5, 1.0, 2.0]);
            let p = pick(o.p, rng, &[1.25, 2.0, 5.0]);
            let a = gen_t_psd(n, n3, rng, DEFAULT_DELTA);
            let x = gen_random([n, n, n3], rng);
            let b = gen_t_psd(n, n3, rng, DEFAULT_DELTA);
            norms::check_holder(&a, &x, &b, r, p, &ctx)
        }
        TheoremId::HolderCorollary => {
            let r = pick(o.r, rng, &[0.5, 1.0, 2.0]);
            let p = pick(o.p, rng, &[1.25, 2.0, 5.0]);
            let a = gen_random([n, n, n3], rng);
            let b = gen_random([n, n, n3], rng);
            norms::check_holder_corollary(&a, &b, r, p, &ctx)
        }
        TheoremId::HolderPairs => {
            let p = pick(o.p, rng, &[1.25, 2.0, 5.0]);
            let [a, b, c, d] = [(); 4].map(|_| gen_random([n, n, n3], rng));
            norms::check_holder_pairs(&a, &b, &c, &d, p, &ctx)
        }
        TheoremId::Minkowski => {
            let p = pick(o.p, rng, &[1.0, 1.5, 2.0, 3.0]);
            let [a1, a2, b1, b2] = [(); 4].map(|_| gen_random([n, n, n3], rng));
            norms::check_minkowski(&a1, &a2, &b1, &b2, p, &ctx)
        }
        TheoremId::Schur => {
            let a = gen_random([n, n, n3], rng);
            Ok(vec![localization::schur_bound(&a, &ctx)?])
        }
        TheoremId::Gershgorin => {
            let a = gen_random([n, n, n3], rng);
            Ok(localization::gershgorin_certificates(&a, &ctx)?.to_vec())
        }
        TheoremId::BauerFike => {
            let (a, b, q, s) = bauer_fike_instance(n, n3, rng)?;
            Ok(vec![localization::bauer_fike(&a, &b, &q, &s, &ctx)?])
        }
        TheoremId::HoffmanWielandt => {
            let a = gen_symmetric(n, n3, rng);
            let eps = rng.uniform(1e-2, 1.0);
            let b = &a + &gen_symmetric(n, n3, rng).scale(eps);
            Ok(localization::hoffman_wielandt(&a, &symmetrize(&b), &ctx)?.1)
        }
        TheoremId::DiagSpectrum => {
            let a = gen_symmetric(n, n3, rng);
            let b = gen_symmetric(n, n3, rng);
            Ok(localization::diag_spectrum_bound(&a, &b, &ctx)?.to_vec())
        }
    }
}

/// Runs `config.trials` trials in parallel and aggregates them in trial
/// order; the report is identical for any thread count.
pub fn run_campaign(config: &CampaignConfig) -> CampaignReport {
    let outcomes: Vec<(u64, Result<Vec<InequalityCertificate>>)> = (0..config.trials)
        .into_par_iter()
        .map(|trial| (trial, run_trial(config, trial)))
        .collect();
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    let mut worst: Option<(f64, u64, Params)> = None;
    for (trial, outcome) in outcomes {
        match outcome {
            Ok(certs) => {
                for c in certs {
                    if worst.as_ref().is_none_or(|(m, _, _)| c.margin < *m) {
                        worst = Some((c.margin, trial, c.params.clone()));
                    }
                    certificates.push(c);
                }
            }
            Err(e) => failures.push(TrialFailure {
                trial,
                numerical: e.is_numerical(),
                error: e.to_string(),
            }),
        }
    }
    let summary = CampaignSummary {
        theorem_id: config.theorem,
        mode: config.mode,
        seed: config.seed,
        dims: [config.n, config.n, config.n3],
        trials: config.trials,
        certificates: certificates.len(),
        violations: certificates.iter().filter(|c| !c.holds).count(),
        errors: failures.len(),
        worst_margin: worst.as_ref().map(|w| w.0),
        worst_trial: worst.as_ref().map(|w| w.1),
        worst_params: worst.map(|w| w.2),
    };
    CampaignReport {
        certificates,
        failures,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_is_empty() {
        let report = run_campaign(&CampaignConfig::new(TheoremId::Schur, 3, 2, 0, 1));
        assert!(report.certificates.is_empty());
        assert_eq!(report.summary.violations, 0);
        assert_eq!(report.summary.worst_margin, None);
    }

    #[test]
    fn loewner_heinz_campaign_holds() {
        let report = run_campaign(&CampaignConfig::new(TheoremId::LoewnerHeinz, 3, 4, 100, 7));
        assert_eq!(report.summary.violations, 0);
        assert_eq!(report.summary.errors, 0);
        assert_eq!(report.certificates.len(), 100);
    }

    #[test]
    fn am_gm_literal_finds_counterexample() {
        let config = CampaignConfig::new(TheoremId::AmGm, 2, 3, 100, 1).with_mode(Mode::Literal);
        assert!(run_campaign(&config).summary.violations >= 1);
    }

    #[test]
    fn trial_zero_of_exploratory_square_is_the_example() {
        let config = CampaignConfig::new(TheoremId::LoewnerHeinz, 2, 2, 1, 3)
            .with_mode(Mode::Exploratory)
            .with_overrides(Overrides { r: Some(2.0), ..Overrides::default() });
        let report = run_campaign(&config);
        assert_eq!(report.summary.violations, 1);
        assert!((report.certificates[0].margin - (3.0 - 10f64.sqrt())).abs() < 1e-12);
    }
}
