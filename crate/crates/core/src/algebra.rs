//! The t-product, t-inverse, structural predicates and the Löwner order.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TensorError};
use crate::fourier::{self, FourierSlices};
use crate::matrix::{ComplexMatrix, Scalar};
use crate::spectral::eig::hermitian_eig;
use crate::tensor::{ComplexTensor3, Tensor, Tensor3};

/// Default tolerance for the structural predicates.
pub const DEFAULT_PREDICATE_TOL: f64 = 1e-9;
/// Default relative threshold below which a Fourier slice counts as singular.
pub const DEFAULT_INVERSE_TOL: f64 = 1e-12;

fn check_product_dims<T: Scalar>(a: &Tensor<T>, b: &Tensor<T>) -> Result<()> {
    if a.n2() != b.n1() || a.n3() != b.n3() {
        return Err(TensorError::DimensionMismatch(format!(
            "t-product of {:?} and {:?}",
            a.dims(),
            b.dims()
        )));
    }
    Ok(())
}

fn multiply_slices(a: &FourierSlices, b: &FourierSlices) -> Vec<ComplexMatrix> {
    a.slices
        .iter()
        .zip(&b.slices)
        .map(|(x, y)| x.matmul(y))
        .collect()
}

/// `A * B`, computed slicewise in the Fourier domain.
pub fn t_product(a: &Tensor3, b: &Tensor3) -> Result<Tensor3> {
    check_product_dims(a, b)?;
    if a.n3() == 1 {
        return Tensor3::from_slices(&[a.slice(0).matmul(&b.slice(0))]);
    }
    let fa = fourier::to_fourier(a);
    let fb = fourier::to_fourier(b);
    let half = FourierSlices::half_len(a.n3());
    let product: Vec<ComplexMatrix> = fa.slices[..half]
        .iter()
        .zip(&fb.slices[..half])
        .map(|(x, y)| x.matmul(y))
        .collect();
    let s = FourierSlices::from_half_spectrum(a.n3(), product)?;
    fourier::from_fourier(&s)
}

/// `A * B` for complex tensors.
pub fn t_product_complex(a: &ComplexTensor3, b: &ComplexTensor3) -> Result<ComplexTensor3> {
    check_product_dims(a, b)?;
    let fa = fourier::to_fourier_complex(a);
    let fb = fourier::to_fourier_complex(b);
    let s = FourierSlices {
        n1: a.n1(),
        n2: b.n2(),
        n3: a.n3(),
        slices: multiply_slices(&fa, &fb),
        origin_real: false,
    };
    fourier::from_fourier_complex(&s)
}

/// Left-to-right product of a chain of tensors.
pub fn t_product_chain(factors: &[&Tensor3]) -> Result<Tensor3> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| TensorError::ShapeMismatch("empty t-product chain".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, f| t_product(&acc, f))
}

/// Inverse via slicewise inversion in the Fourier domain.
///
/// Every Fourier slice must have smallest singular value above
/// `tol_inv` times its largest; the error names the worst slice.
pub fn t_inverse(a: &Tensor3, tol_inv: f64) -> Result<Tensor3> {
    if !a.is_square() {
        return Err(TensorError::DimensionMismatch(format!(
            "t-inverse of non-square tensor {:?}",
            a.dims()
        )));
    }
    let fa = fourier::to_fourier(a);
    let half = FourierSlices::half_len(a.n3());
    let mut worst: Option<(usize, f64)> = None;
    let mut inverses = Vec::with_capacity(half);
    for (k, s) in fa.slices[..half].iter().enumerate() {
        let gram = hermitian_eig(&s.adjoint().matmul(s))?;
        let smax = gram.eigenvalues.last().copied().unwrap_or(0.0).max(0.0).sqrt();
        let smin = gram.eigenvalues[0].max(0.0).sqrt();
        let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        if smax == 0.0 || smin <= tol_inv * smax {
            if worst.is_none_or(|(_, c)| condition > c) {
                worst = Some((k, condition));
            }
            continue;
        }
        match invert(s) {
            Some(inv) => inverses.push(inv),
            None => {
                return Err(TensorError::Singular {
                    slice: k,
                    condition,
                })
            }
        }
    }
    if let Some((slice, condition)) = worst {
        return Err(TensorError::Singular { slice, condition });
    }
    fourier::from_fourier(&FourierSlices::from_half_spectrum(a.n3(), inverses)?)
}

/// Gauss-Jordan inversion with partial pivoting.
pub(crate) fn invert(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = ComplexMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))?;
        if a[(pivot, col)].norm() == 0.0 {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                let t = a[(col, j)];
                a[(col, j)] = a[(pivot, j)];
                a[(pivot, j)] = t;
                let t = inv[(col, j)];
                inv[(col, j)] = inv[(pivot, j)];
                inv[(pivot, j)] = t;
            }
        }
        let p = Complex64::new(1.0, 0.0) / a[(col, col)];
        for j in 0..n {
            a[(col, j)] *= p;
            inv[(col, j)] *= p;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a[(i, col)];
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                let aj = a[(col, j)];
                let ij = inv[(col, j)];
                a[(i, j)] -= f * aj;
                inv[(i, j)] -= f * ij;
            }
        }
    }
    Some(inv)
}

/// Why a predicate refused to evaluate its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rejection {
    NotSquare,
}

/// Outcome of a residual-based structural predicate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Predicate {
    pub holds: bool,
    pub residual: f64,
    pub threshold: f64,
    pub reason: Option<Rejection>,
}

impl Predicate {
    fn from_residual(residual: f64, threshold: f64) -> Self {
        Self {
            holds: residual <= threshold,
            residual,
            threshold,
            reason: None,
        }
    }

    fn not_square() -> Self {
        Self {
            holds: false,
            residual: f64::INFINITY,
            threshold: 0.0,
            reason: Some(Rejection::NotSquare),
        }
    }
}

/// `‖a − aᵀ‖_F ≤ tol (1 + ‖a‖_F)`.
pub fn is_symmetric(a: &Tensor3, tol: f64) -> Predicate {
    if !a.is_square() {
        return Predicate::not_square();
    }
    let residual = (a - &a.transpose()).frobenius_norm();
    Predicate::from_residual(residual, tol * (1.0 + a.frobenius_norm()))
}

/// `‖qᵀ*q − I‖_F ≤ tol` and `‖q*qᵀ − I‖_F ≤ tol`.
pub fn is_orthogonal(q: &Tensor3, tol: f64) -> Predicate {
    if !q.is_square() {
        return Predicate::not_square();
    }
    let id = Tensor3::identity(q.n1(), q.n3());
    let qt = q.transpose();
    let left = t_product(&qt, q).map(|p| (&p - &id).frobenius_norm());
    let right = t_product(q, &qt).map(|p| (&p - &id).frobenius_norm());
    match (left, right) {
        (Ok(l), Ok(r)) => Predicate::from_residual(l.max(r), tol),
        _ => Predicate::not_square(),
    }
}

/// `‖aᵀ*a − a*aᵀ‖_F ≤ tol (1 + ‖a‖_F²)`.
pub fn is_normal(a: &Tensor3, tol: f64) -> Predicate {
    if !a.is_square() {
        return Predicate::not_square();
    }
    let at = a.transpose();
    match (t_product(&at, a), t_product(a, &at)) {
        (Ok(l), Ok(r)) => {
            let scale = a.frobenius_norm();
            Predicate::from_residual((&l - &r).frobenius_norm(), tol * (1.0 + scale * scale))
        }
        _ => Predicate::not_square(),
    }
}

/// Every frontal slice diagonal: off-diagonal mass `≤ tol (1 + ‖a‖_F)`.
pub fn is_f_diagonal<T: Scalar>(a: &Tensor<T>, tol: f64) -> Predicate {
    if !a.is_square() {
        return Predicate::not_square();
    }
    let mut off = 0.0;
    for k in 0..a.n3() {
        for i in 0..a.n1() {
            for j in 0..a.n2() {
                if i != j {
                    off += a.get(i, j, k).modulus().powi(2);
                }
            }
        }
    }
    Predicate::from_residual(off.sqrt(), tol * (1.0 + a.frobenius_norm()))
}

/// Result of a Löwner-order test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoewnerVerdict {
    pub holds: bool,
    /// Smallest eigenvalue over all Hermitian-symmetrized Fourier slices.
    pub min_gap_eigenvalue: f64,
    /// Absolute threshold applied: holds ⟺ `min_gap_eigenvalue ≥ −tolerance_used`.
    pub tolerance_used: f64,
}

/// Per-slice spectra of the Hermitian parts of the Fourier slices of a
/// symmetric tensor. Fails with `NotSymmetric` when
/// `‖a − aᵀ‖_F > tol (1 + ‖a‖_F)`.
pub fn symmetric_slice_spectra(a: &Tensor3, tol: f64) -> Result<Vec<Vec<f64>>> {
    let sym = is_symmetric(a, tol);
    if sym.reason.is_some() {
        return Err(TensorError::DimensionMismatch(format!(
            "square tensor required, got {:?}",
            a.dims()
        )));
    }
    if !sym.holds {
        return Err(TensorError::NotSymmetric {
            residual: sym.residual,
            tolerance: sym.threshold,
        });
    }
    let fa = fourier::to_fourier(a);
    let half = FourierSlices::half_len(a.n3());
    let mut spectra = Vec::with_capacity(a.n3());
    for s in &fa.slices[..half] {
        spectra.push(hermitian_eig(&s.hermitian_part())?.eigenvalues);
    }
    // conjugate slices share their mirror's spectrum
    for k in half..a.n3() {
        let mirror = spectra[a.n3() - k].clone();
        spectra.push(mirror);
    }
    Ok(spectra)
}

fn verdict_from_spectra(spectra: &[Vec<f64>], tol: f64, reference_scale: Option<f64>) -> LoewnerVerdict {
    let min = spectra
        .iter()
        .flatten()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let own_scale = spectra
        .iter()
        .flatten()
        .map(|l| l.abs())
        .fold(0.0, f64::max);
    let tolerance_used = tol * (1.0 + reference_scale.unwrap_or(own_scale));
    LoewnerVerdict {
        holds: min >= -tolerance_used,
        min_gap_eigenvalue: min,
        tolerance_used,
    }
}

/// Symmetric t-positive semidefiniteness through the Fourier slices.
///
/// Holds iff the smallest slice eigenvalue is at least
/// `−tol (1 + max |eigenvalue|)`.
pub fn is_t_psd(a: &Tensor3, tol: f64) -> Result<LoewnerVerdict> {
    Ok(verdict_from_spectra(&symmetric_slice_spectra(a, tol)?, tol, None))
}

/// Like [`is_t_psd`] but with the tolerance scaled by `reference_scale`
/// instead of the tensor's own spectral radius.
pub fn is_t_psd_scaled(a: &Tensor3, tol: f64, reference_scale: f64) -> Result<LoewnerVerdict> {
    Ok(verdict_from_spectra(
        &symmetric_slice_spectra(a, tol)?,
        tol,
        Some(reference_scale),
    ))
}

/// `a ≥ b` in the Löwner order, i.e. `is_t_psd(a − b)`.
pub fn loewner_ge(a: &Tensor3, b: &Tensor3, tol: f64) -> Result<LoewnerVerdict> {
    is_t_psd(&a.try_sub(b)?, tol)
}

/// Largest eigenvalue magnitude over the Fourier slices of a symmetric
/// tensor (its spectral radius as a t-operator).
pub fn spectral_radius_symmetric(a: &Tensor3, tol: f64) -> Result<f64> {
    Ok(symmetric_slice_spectra(a, tol)?
        .iter()
        .flatten()
        .map(|l| l.abs())
        .fold(0.0, f64::max))
}

/// `(a + aᵀ)/2`.
pub fn symmetrize(a: &Tensor3) -> Tensor3 {
    (a + &a.transpose()).scale(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_pair() -> (Tensor3, Tensor3) {
        let a = Tensor3::new(2, 2, 2, vec![2.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let b = Tensor3::new(2, 2, 2, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        (a, b)
    }

    #[test]
    fn identity_is_neutral() {
        let a = Tensor3::from_fn(3, 3, 4, |i, j, k| (i as f64 - 2.0 * j as f64) * 0.3 + k as f64);
        let id = Tensor3::identity(3, 4);
        let p = t_product(&a, &id).unwrap();
        assert!((&p - &a).max_abs() < 1e-13);
        let p = t_product(&id, &a).unwrap();
        assert!((&p - &a).max_abs() < 1e-13);
    }

    #[test]
    fn example_square_first_slice() {
        let (a, _) = example_pair();
        let sq = t_product(&a, &a).unwrap();
        let expected = [5.0, 3.0, 3.0, 2.0, 0.0, 0.0, 0.0, 0.0];
        for (x, y) in sq.as_slice().iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn product_dimension_mismatch() {
        let a = Tensor3::zeros(2, 3, 2);
        let b = Tensor3::zeros(2, 3, 2);
        assert!(matches!(t_product(&a, &b), Err(TensorError::DimensionMismatch(_))));
        let c = Tensor3::zeros(3, 1, 3);
        assert!(t_product(&a, &c).is_err());
    }

    #[test]
    fn inverse_of_scaled_identity() {
        let id = Tensor3::identity(3, 4);
        let inv = t_inverse(&id.scale(2.0), DEFAULT_INVERSE_TOL).unwrap();
        assert!((&inv - &id.scale(0.5)).max_abs() < 1e-15);
        let inv = t_inverse(&id, DEFAULT_INVERSE_TOL).unwrap();
        assert!((&inv - &id).max_abs() < 1e-15);
    }

    #[test]
    fn singular_tensor_reports_slice() {
        // tube (1, 1): Fourier slices (2, 0)
        let a = Tensor3::new(1, 1, 2, vec![1.0, 1.0]).unwrap();
        match t_inverse(&a, DEFAULT_INVERSE_TOL) {
            Err(TensorError::Singular { slice, condition }) => {
                assert_eq!(slice, 1);
                assert!(condition.is_infinite());
            }
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn identity_passes_all_predicates() {
        let id = Tensor3::identity(3, 5);
        assert!(is_symmetric(&id, 1e-12).holds);
        assert!(is_orthogonal(&id, 1e-12).holds);
        assert!(is_normal(&id, 1e-12).holds);
        assert!(is_f_diagonal(&id, 1e-12).holds);
    }

    #[test]
    fn non_square_rejected_with_reason() {
        let a = Tensor3::zeros(2, 3, 2);
        for p in [
            is_symmetric(&a, 1e-9),
            is_orthogonal(&a, 1e-9),
            is_normal(&a, 1e-9),
            is_f_diagonal(&a, 1e-9),
        ] {
            assert!(!p.holds);
            assert_eq!(p.reason, Some(Rejection::NotSquare));
        }
    }

    #[test]
    fn negative_identity_not_psd() {
        let v = is_t_psd(&Tensor3::identity(2, 3).scale(-1.0), 1e-9).unwrap();
        assert!(!v.holds);
        assert!((v.min_gap_eigenvalue + 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_symmetric_psd_check_errors() {
        let a = Tensor3::new(2, 2, 1, vec![1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(is_t_psd(&a, 1e-9), Err(TensorError::NotSymmetric { .. })));
    }

    #[test]
    fn example_pair_loewner() {
        let (a, b) = example_pair();
        assert!(loewner_ge(&a, &b, 1e-12).unwrap().holds);
        assert!(is_t_psd(&b, 1e-12).unwrap().holds);
        let a2 = t_product(&a, &a).unwrap();
        let b2 = t_product(&b, &b).unwrap();
        let diff = &a2 - &b2;
        let first = [4.0, 3.0, 3.0, 2.0];
        for (x, y) in diff.slice(0).as_slice().iter().zip(first) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(diff.slice(1).max_abs() < 1e-12);
        let v = loewner_ge(&a2, &b2, 1e-12).unwrap();
        assert!(!v.holds);
        // det [[4,3],[3,2]] = −1, so λ_min = 3 − √10
        assert!((v.min_gap_eigenvalue - (3.0 - 10f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn reflexive() {
        let (a, _) = example_pair();
        let v = loewner_ge(&a, &a, 1e-12).unwrap();
        assert!(v.holds);
        assert_eq!(v.min_gap_eigenvalue, 0.0);
    }
}
