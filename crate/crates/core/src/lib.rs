//! Third-order tensors under the t-product: Fourier-domain algebra,
//! t-functions, t-eigenvalues, and numerical certificates for operator,
//! norm and eigenvalue inequalities.

pub mod algebra;
pub mod assignment;
pub mod certificate;
pub mod error;
pub mod fourier;
pub mod generate;
pub mod lab;
pub mod localization;
pub mod matrix;
pub mod rng;
pub mod spectral;
pub mod tensor;

pub use algebra::{
    is_f_diagonal, is_normal, is_orthogonal, is_symmetric, is_t_psd, loewner_ge, t_inverse,
    t_product, LoewnerVerdict, Predicate,
};
pub use assignment::{hungarian, match_spectra, SpectrumMatching};
pub use certificate::{InequalityCertificate, NormKind, ParamValue, Params, TheoremId};
pub use error::{Result, TensorError};
pub use fourier::{bcirc, fold, from_fourier, to_fourier, unfold, BlockCirculantMatrix, FourierSlices};
pub use lab::{run_campaign, run_trial, CampaignConfig, CampaignReport, CampaignSummary, CheckContext, Mode, Overrides};
pub use localization::{
    bauer_fike, diag_spectrum_bound, gershgorin_component_count, gershgorin_contains, gershgorin_discs,
    hoffman_wielandt, schur_bound, GershgorinDisc,
};
pub use matrix::{ComplexMatrix, Matrix, RealMatrix};
pub use rng::RngStream;
pub use spectral::{
    general_eig, hermitian_eig, spectral_norm, t_abs, t_eigenvalues, t_power, HermitianEigen,
    TEigenSpectrum,
};
pub use tensor::{ComplexTensor3, Tensor, Tensor3};
