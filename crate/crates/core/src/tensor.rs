//! Dense third-order tensors.
//!
//! Entries are stored slice-major: frontal slice `k` is outermost and each
//! slice is row-major, so entry `(i, j, k)` (all zero-based) lives at
//! `(k * n1 + i) * n2 + j`. The CLI file format uses the same order.

use std::ops::{Add, Sub};

use num_complex::Complex64;

use crate::error::{Result, TensorError};
use crate::matrix::{Matrix, Scalar};

/// Dense `n1 × n2 × n3` tensor over a real or complex scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T> {
    n1: usize,
    n2: usize,
    n3: usize,
    data: Vec<T>,
}

/// Real third-order tensor.
pub type Tensor3 = Tensor<f64>;
/// Complex third-order tensor, e.g. `T = A + iB`.
pub type ComplexTensor3 = Tensor<Complex64>;

#[inline]
pub fn flat_index(n1: usize, n2: usize, i: usize, j: usize, k: usize) -> usize {
    (k * n1 + i) * n2 + j
}

fn check_dims(n1: usize, n2: usize, n3: usize) -> Result<()> {
    if n1 == 0 || n2 == 0 || n3 == 0 {
        return Err(TensorError::InvalidDims { n1, n2, n3 });
    }
    Ok(())
}

impl<T: Scalar> Tensor<T> {
    /// Builds a tensor from slice-major data, rejecting non-finite entries.
    pub fn new(n1: usize, n2: usize, n3: usize, data: Vec<T>) -> Result<Self> {
        check_dims(n1, n2, n3)?;
        if data.len() != n1 * n2 * n3 {
            return Err(TensorError::ShapeMismatch(format!(
                "{} entries supplied for a {}x{}x{} tensor",
                data.len(),
                n1,
                n2,
                n3
            )));
        }
        if let Some(index) = data.iter().position(|x| !x.is_finite_scalar()) {
            return Err(TensorError::NonFinite { index });
        }
        Ok(Self { n1, n2, n3, data })
    }

    /// Zero tensor. Panics on a zero dimension.
    pub fn zeros(n1: usize, n2: usize, n3: usize) -> Self {
        check_dims(n1, n2, n3).expect("tensor dimensions must be positive");
        Self {
            n1,
            n2,
            n3,
            data: vec![T::zero(); n1 * n2 * n3],
        }
    }

    pub fn from_fn(
        n1: usize,
        n2: usize,
        n3: usize,
        mut f: impl FnMut(usize, usize, usize) -> T,
    ) -> Self {
        let mut t = Self::zeros(n1, n2, n3);
        for k in 0..n3 {
            for i in 0..n1 {
                for j in 0..n2 {
                    t.data[flat_index(n1, n2, i, j, k)] = f(i, j, k);
                }
            }
        }
        t
    }

    /// Stacks frontal slices; all must share a shape.
    pub fn from_slices(slices: &[Matrix<T>]) -> Result<Self> {
        let first = slices
            .first()
            .ok_or_else(|| TensorError::ShapeMismatch("no frontal slices given".into()))?;
        let (n1, n2) = first.shape();
        check_dims(n1, n2, slices.len())?;
        let mut data = Vec::with_capacity(n1 * n2 * slices.len());
        for (k, s) in slices.iter().enumerate() {
            if s.shape() != (n1, n2) {
                return Err(TensorError::ShapeMismatch(format!(
                    "slice {k} is {}x{}, expected {n1}x{n2}",
                    s.rows(),
                    s.cols()
                )));
            }
            data.extend_from_slice(s.as_slice());
        }
        Self::new(n1, n2, slices.len(), data)
    }

    /// Identity tensor: first frontal slice `I_n`, the rest zero.
    pub fn identity(n: usize, n3: usize) -> Self {
        let mut t = Self::zeros(n, n, n3);
        for i in 0..n {
            t.set(i, i, 0, T::one());
        }
        t
    }

    #[inline]
    pub fn n1(&self) -> usize {
        self.n1
    }

    #[inline]
    pub fn n2(&self) -> usize {
        self.n2
    }

    #[inline]
    pub fn n3(&self) -> usize {
        self.n3
    }

    #[inline]
    pub fn dims(&self) -> [usize; 3] {
        [self.n1, self.n2, self.n3]
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.n1 == self.n2
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        self.data[flat_index(self.n1, self.n2, i, j, k)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: T) {
        let idx = flat_index(self.n1, self.n2, i, j, k);
        self.data[idx] = value;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    /// Frontal slice `k` (zero-based).
    pub fn slice(&self, k: usize) -> Matrix<T> {
        let len = self.n1 * self.n2;
        Matrix::from_vec(self.n1, self.n2, self.data[k * len..(k + 1) * len].to_vec())
    }

    pub fn slices(&self) -> Vec<Matrix<T>> {
        (0..self.n3).map(|k| self.slice(k)).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Tensor<U> {
        Tensor {
            n1: self.n1,
            n2: self.n2,
            n3: self.n3,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.dims() != other.dims() {
            return Err(TensorError::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(Self {
            n1: self.n1,
            n2: self.n2,
            n3: self.n3,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Tensor transpose: transpose every frontal slice, then reverse the
    /// order of slices 2 through `n3`. Complex tensors are not conjugated;
    /// see [`Tensor::conj_transpose`].
    pub fn transpose(&self) -> Self {
        let (n1, n2, n3) = (self.n1, self.n2, self.n3);
        Self::from_fn(n2, n1, n3, |i, j, k| self.get(j, i, (n3 - k) % n3))
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().map(Scalar::conj)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|x| {
                let m = x.modulus();
                m * m
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.modulus()).fold(0.0, f64::max)
    }

    /// Largest singular value of `bcirc(a)`, taken slicewise in the
    /// Fourier domain.
    pub fn spectral_norm(&self) -> f64 {
        crate::spectral::spectral_norm(self)
    }

    pub fn to_complex(&self) -> ComplexTensor3 {
        self.map(Scalar::to_complex)
    }
}

impl Tensor3 {
    /// `Σ x_ijk · y_ijk`.
    pub fn inner_product(&self, other: &Tensor3) -> Result<f64> {
        if self.dims() != other.dims() {
            return Err(TensorError::DimensionMismatch(format!(
                "inner product of {:?} and {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }
}

impl ComplexTensor3 {
    /// `A + iB` from two real tensors of equal dims.
    pub fn from_parts(re: &Tensor3, im: &Tensor3) -> Result<Self> {
        if re.dims() != im.dims() {
            return Err(TensorError::DimensionMismatch(format!(
                "real part {:?} vs imaginary part {:?}",
                re.dims(),
                im.dims()
            )));
        }
        let data = re
            .as_slice()
            .iter()
            .zip(im.as_slice())
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        Self::new(re.n1(), re.n2(), re.n3(), data)
    }

    pub fn re(&self) -> Tensor3 {
        self.map_real(|z| z.re)
    }

    pub fn im(&self) -> Tensor3 {
        self.map_real(|z| z.im)
    }

    fn map_real(&self, f: impl Fn(Complex64) -> f64) -> Tensor3 {
        Tensor {
            n1: self.n1,
            n2: self.n2,
            n3: self.n3,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }
}

impl<T: Scalar> Add for &Tensor<T> {
    type Output = Tensor<T>;
    /// Panics on a dimension mismatch; use [`Tensor::try_add`] otherwise.
    fn add(self, rhs: &Tensor<T>) -> Tensor<T> {
        self.try_add(rhs).expect("tensor add")
    }
}

impl<T: Scalar> Sub for &Tensor<T> {
    type Output = Tensor<T>;
    fn sub(self, rhs: &Tensor<T>) -> Tensor<T> {
        self.try_sub(rhs).expect("tensor sub")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_roundtrip_3x4x5() {
        let mut t = Tensor3::zeros(3, 4, 5);
        for k in 0..5 {
            for i in 0..3 {
                for j in 0..4 {
                    t.set(i, j, k, (100 * k + 10 * i + j) as f64);
                }
            }
        }
        for k in 0..5 {
            for i in 0..3 {
                for j in 0..4 {
                    assert_eq!(t.get(i, j, k), (100 * k + 10 * i + j) as f64);
                    assert_eq!(
                        t.as_slice()[flat_index(3, 4, i, j, k)],
                        (100 * k + 10 * i + j) as f64
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_non_finite_and_bad_length() {
        assert!(matches!(
            Tensor3::new(1, 1, 2, vec![0.0, f64::NAN]),
            Err(TensorError::NonFinite { index: 1 })
        ));
        assert!(matches!(
            Tensor3::new(1, 1, 2, vec![0.0]),
            Err(TensorError::ShapeMismatch(_))
        ));
        assert!(matches!(
            Tensor3::new(0, 1, 2, vec![]),
            Err(TensorError::InvalidDims { .. })
        ));
    }

    #[test]
    fn transpose_with_single_slice_is_matrix_transpose() {
        let t = Tensor3::new(2, 3, 1, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let tt = t.transpose();
        assert_eq!(tt.dims(), [3, 2, 1]);
        assert_eq!(tt.slice(0), t.slice(0).transpose());
    }

    #[test]
    fn transpose_reverses_trailing_slices() {
        let t = Tensor3::from_fn(2, 2, 4, |i, j, k| (10 * k + 2 * i + j) as f64);
        let tt = t.transpose();
        assert_eq!(tt.slice(0), t.slice(0).transpose());
        assert_eq!(tt.slice(1), t.slice(3).transpose());
        assert_eq!(tt.slice(2), t.slice(2).transpose());
        assert_eq!(tt.slice(3), t.slice(1).transpose());
    }

    #[test]
    fn inner_product_by_hand() {
        let x = Tensor3::new(2, 1, 2, vec![1.0; 4]).unwrap();
        let y = Tensor3::new(2, 1, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(x.inner_product(&y).unwrap(), 10.0);
        assert_eq!(x.inner_product(&Tensor3::zeros(2, 1, 2)).unwrap(), 0.0);
        assert!(x.inner_product(&Tensor3::zeros(1, 2, 2)).is_err());
    }

    #[test]
    fn identity_frobenius() {
        let id = Tensor3::identity(3, 4);
        assert!((id.frobenius_norm() - 3f64.sqrt()).abs() < 1e-15);
    }
}
