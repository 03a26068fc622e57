//! Eigensolvers, t-eigenvalues, tensor t-functions and the Young witness.

pub mod eig;
pub mod functions;
pub mod orthogonal;
pub mod young;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::is_symmetric;
use crate::error::{Result, TensorError};
use crate::fourier;
use crate::matrix::{ComplexMatrix, Scalar};
use crate::tensor::{ComplexTensor3, Tensor, Tensor3};

pub use eig::{general_eig, hermitian_eig, HermitianEigen};
pub use functions::{abs_power, t_abs, t_power, t_power_detailed};
pub use orthogonal::gen_orthogonal;
pub use young::{young_witness, YoungWitness};

/// Tolerance for deciding that a real tensor is symmetric, so that its
/// slices can go through the Hermitian solver.
const SYMMETRIC_DETECT_TOL: f64 = 1e-12;

/// Largest singular value of a matrix.
pub fn matrix_spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    let gram = if m.rows() <= m.cols() {
        m.matmul(&m.adjoint())
    } else {
        m.adjoint().matmul(m)
    };
    let top = hermitian_eig(&gram)?
        .eigenvalues
        .last()
        .copied()
        .unwrap_or(0.0);
    Ok(top.max(0.0).sqrt())
}

/// `‖A‖₂ = ‖bcirc(A)‖₂`, the largest singular value over all Fourier slices.
pub fn spectral_norm<T: Scalar>(a: &Tensor<T>) -> f64 {
    let slices = fourier::to_fourier_complex(&a.to_complex()).slices;
    slices
        .iter()
        .map(|s| matrix_spectral_norm(s).expect("Gram matrices are Hermitian"))
        .fold(0.0, f64::max)
}

/// The `n·n3` t-eigenvalues of a square tensor, each tagged with the
/// Fourier slice it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TEigenSpectrum {
    pub values: Vec<Complex64>,
    pub slice_index: Vec<usize>,
}

impl TEigenSpectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Real parts, for spectra known to be real.
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    fn push_slice(&mut self, k: usize, values: impl IntoIterator<Item = Complex64>) {
        for v in values {
            self.values.push(v);
            self.slice_index.push(k);
        }
    }
}

fn require_square<T: Scalar>(a: &Tensor<T>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(TensorError::DimensionMismatch(format!(
            "t-eigenvalues need a square tensor, got {:?}",
            a.dims()
        )))
    }
}

/// t-eigenvalues of a real tensor: eigenvalues of every Fourier slice.
///
/// Slices past `⌊n3/2⌋` are conjugates of earlier ones, so their spectra
/// are conjugated rather than recomputed. Symmetric tensors go through the
/// Hermitian solver and yield exactly real values.
pub fn t_eigenvalues(a: &Tensor3) -> Result<TEigenSpectrum> {
    require_square(a)?;
    let n3 = a.n3();
    let symmetric = is_symmetric(a, SYMMETRIC_DETECT_TOL).holds;
    let mut per_slice: Vec<Vec<Complex64>> = Vec::with_capacity(n3);
    for s in fourier::half_spectrum(a) {
        let values = if symmetric {
            hermitian_eig(&s.hermitian_part())?
                .eigenvalues
                .into_iter()
                .map(|l| Complex64::new(l, 0.0))
                .collect()
        } else {
            general_eig(&s)?
        };
        per_slice.push(values);
    }
    for k in per_slice.len()..n3 {
        let mirrored = per_slice[n3 - k].iter().map(|v| v.conj()).collect();
        per_slice.push(mirrored);
    }
    let mut spectrum = TEigenSpectrum {
        values: Vec::with_capacity(a.n1() * n3),
        slice_index: Vec::with_capacity(a.n1() * n3),
    };
    for (k, values) in per_slice.into_iter().enumerate() {
        spectrum.push_slice(k, values);
    }
    Ok(spectrum)
}

/// t-eigenvalues of a complex tensor.
pub fn t_eigenvalues_complex(a: &ComplexTensor3) -> Result<TEigenSpectrum> {
    require_square(a)?;
    let mut spectrum = TEigenSpectrum {
        values: Vec::new(),
        slice_index: Vec::new(),
    };
    for (k, s) in fourier::to_fourier_complex(a).slices.iter().enumerate() {
        spectrum.push_slice(k, general_eig(s)?);
    }
    Ok(spectrum)
}
