//! Real powers and absolute value of tensors, applied slicewise in the
//! Fourier domain.

use crate::algebra::is_symmetric;
use crate::error::{Result, TensorError};
use crate::fourier;
use crate::matrix::ComplexMatrix;
use crate::tensor::Tensor3;

use super::eig::{hermitian_eig, HermitianEigen};

/// Default tolerance for [`t_abs`].
pub const DEFAULT_FUNCTION_TOL: f64 = 1e-9;

/// Applies `λ ↦ λ^r` to Hermitian PSD matrices that jointly describe one
/// tensor. `λmax` is taken over all of them, so the clamping window
/// `[−tol·λmax, 0)` is the same for every slice.
pub(crate) fn power_of_hermitian_slices(
    slices: &[ComplexMatrix],
    r: f64,
    tol: f64,
) -> Result<Vec<ComplexMatrix>> {
    let eigs: Vec<HermitianEigen> = slices
        .iter()
        .map(hermitian_eig)
        .collect::<Result<_>>()?;
    let lambda_max = eigs
        .iter()
        .map(HermitianEigen::max_abs_eigenvalue)
        .fold(0.0, f64::max);
    let floor = tol * lambda_max;
    for (k, e) in eigs.iter().enumerate() {
        let smallest = e.eigenvalues.first().copied().unwrap_or(0.0);
        if smallest < -floor {
            return Err(TensorError::NotPositiveSemidefinite {
                slice: k,
                eigenvalue: smallest,
                threshold: -floor,
            });
        }
        if r < 0.0 && smallest < floor {
            return Err(TensorError::Singular {
                slice: k,
                condition: if smallest > 0.0 {
                    lambda_max / smallest
                } else {
                    f64::INFINITY
                },
            });
        }
    }
    Ok(eigs
        .iter()
        .map(|e| e.reassemble(|l| if l < 0.0 { 0.0 } else { l.powf(r) }))
        .collect())
}

/// `A^r` for a symmetric t-PSD tensor, together with the largest imaginary
/// part discarded by the inverse transform.
pub fn t_power_detailed(a: &Tensor3, r: f64, tol: f64) -> Result<(Tensor3, f64)> {
    if !r.is_finite() {
        return Err(TensorError::InvalidParameter(format!("exponent {r}")));
    }
    let sym = is_symmetric(a, tol);
    if sym.reason.is_some() {
        return Err(TensorError::DimensionMismatch(format!(
            "t_power needs a square tensor, got {:?}",
            a.dims()
        )));
    }
    if !sym.holds {
        return Err(TensorError::NotSymmetric {
            residual: sym.residual,
            tolerance: sym.threshold,
        });
    }
    let half: Vec<ComplexMatrix> = fourier::half_spectrum(a)
        .iter()
        .map(ComplexMatrix::hermitian_part)
        .collect();
    let powered = power_of_hermitian_slices(&half, r, tol)?;
    fourier::real_from_half(a.n3(), powered)
}

/// `A^r` for a symmetric t-PSD tensor.
///
/// Slice eigenvalues in `[−tol·λmax, 0)` count as zero; anything lower is
/// an error. Negative `r` additionally needs every eigenvalue to be at
/// least `tol·λmax`.
pub fn t_power(a: &Tensor3, r: f64, tol: f64) -> Result<Tensor3> {
    t_power_detailed(a, r, tol).map(|(t, _)| t)
}

/// `|A|^p = (Aᵀ∗A)^{p/2}`, formed directly from the Fourier slices.
pub fn abs_power(a: &Tensor3, p: f64, tol: f64) -> Result<Tensor3> {
    if !a.is_square() {
        return Err(TensorError::DimensionMismatch(format!(
            "|A|^p needs a square tensor, got {:?}",
            a.dims()
        )));
    }
    let grams: Vec<ComplexMatrix> = fourier::half_spectrum(a)
        .iter()
        .map(|s| s.adjoint().matmul(s).hermitian_part())
        .collect();
    let powered = power_of_hermitian_slices(&grams, p / 2.0, tol)?;
    fourier::real_from_half(a.n3(), powered).map(|(t, _)| t)
}

/// `|A| = (Aᵀ∗A)^{1/2}`.
pub fn t_abs(a: &Tensor3) -> Result<Tensor3> {
    abs_power(a, 1.0, DEFAULT_FUNCTION_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::t_product;

    fn example_a() -> Tensor3 {
        Tensor3::new(2, 2, 2, vec![2.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn identity_powers() {
        let id = Tensor3::identity(3, 4);
        for r in [-1.0, 0.0, 0.5, 2.0, 3.7] {
            let p = t_power(&id, r, 1e-9).unwrap();
            assert!((&p - &id).max_abs() < 1e-14, "r = {r}");
        }
    }

    #[test]
    fn scalar_square_root() {
        let four = Tensor3::identity(2, 3).scale(4.0);
        let root = t_power(&four, 0.5, 1e-9).unwrap();
        assert!((&root - &Tensor3::identity(2, 3).scale(2.0)).max_abs() < 1e-14);
    }

    #[test]
    fn square_matches_product() {
        let a = example_a();
        let sq = t_power(&a, 2.0, 1e-9).unwrap();
        let prod = t_product(&a, &a).unwrap();
        assert!((&sq - &prod).max_abs() < 1e-12);
    }

    #[test]
    fn negative_definite_rejected() {
        let m = Tensor3::identity(2, 2).scale(-1.0);
        assert!(matches!(
            t_power(&m, 0.5, 1e-9),
            Err(TensorError::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn negative_power_of_singular_rejected() {
        let b = Tensor3::new(2, 2, 1, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(t_power(&b, -1.0, 1e-9), Err(TensorError::Singular { .. })));
        // zero eigenvalues are fine for positive exponents
        let root = t_power(&b, 0.5, 1e-9).unwrap();
        assert!((&root - &b).max_abs() < 1e-14);
    }

    #[test]
    fn abs_of_psd_is_itself() {
        let a = example_a();
        let abs = t_abs(&a).unwrap();
        assert!((&abs - &a).max_abs() < 1e-12);
        let neg = t_abs(&a.scale(-1.0)).unwrap();
        assert!((&neg - &a).max_abs() < 1e-12);
    }
}
