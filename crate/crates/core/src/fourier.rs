//! Block-circulant unfolding and the tube-wise DFT that block-diagonalizes it.
//!
//! The forward transform multiplies every tube by the dense DFT matrix
//! `F_n` with kernel `ω = exp(-2πi/n)` and no normalization; the inverse
//! divides by `n`. For desk-scale `n3` the O(n3²) dense kernel is cheaper
//! than setting up an FFT, and it is literally `F_n`.
//!
//! Slice indices are zero-based throughout: slice `k` pairs with slice
//! `(n3 - k) % n3` under conjugate symmetry.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, TensorError};
use crate::matrix::{ComplexMatrix, Matrix, RealMatrix, Scalar};
use crate::tensor::{ComplexTensor3, Tensor, Tensor3};

/// Default relative tolerance for the conjugate-symmetry check in
/// [`from_fourier`].
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-9;

/// `ω^m` for `ω = exp(-2πi/n)`.
///
/// Quarter turns are exact, and `ω^(n-m)` is computed as the exact
/// conjugate of `ω^m`, so transforms of real tensors are conjugate
/// symmetric to the last bit.
pub fn twiddle(n: usize, m: usize) -> Complex64 {
    let m = m % n;
    if m == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * m > n {
        return twiddle(n, n - m).conj();
    }
    if 2 * m == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * m == n {
        return Complex64::new(0.0, -1.0);
    }
    let theta = -2.0 * PI * m as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// The dense DFT matrix `F_n`.
pub fn dft_matrix(n: usize) -> ComplexMatrix {
    Matrix::from_fn(n, n, |j, k| twiddle(n, j * k))
}

/// Fourier-domain representation `diag(Ā⁽¹⁾, …, Ā⁽ⁿ³⁾)` of a tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSlices {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub slices: Vec<ComplexMatrix>,
    /// True when the slices came from a real tensor and therefore satisfy
    /// conjugate symmetry.
    pub origin_real: bool,
}

impl FourierSlices {
    /// Number of leading slices that determine a conjugate-symmetric
    /// spectrum: `⌊n3/2⌋ + 1`.
    pub fn half_len(n3: usize) -> usize {
        n3 / 2 + 1
    }

    /// Completes the leading `⌊n3/2⌋ + 1` slices by mirroring conjugates.
    pub fn from_half_spectrum(n3: usize, half: Vec<ComplexMatrix>) -> Result<Self> {
        if half.len() != Self::half_len(n3) {
            return Err(TensorError::ShapeMismatch(format!(
                "{} half-spectrum slices supplied, {} needed for n3 = {n3}",
                half.len(),
                Self::half_len(n3)
            )));
        }
        let (n1, n2) = half[0].shape();
        if half.iter().any(|s| s.shape() != (n1, n2)) {
            return Err(TensorError::ShapeMismatch(
                "half-spectrum slices differ in shape".into(),
            ));
        }
        let mut slices = half;
        for k in slices.len()..n3 {
            let mirrored = slices[n3 - k].conj();
            slices.push(mirrored);
        }
        Ok(Self {
            n1,
            n2,
            n3,
            slices,
            origin_real: true,
        })
    }

    /// Block-diagonal matrix `diag(Ā⁽¹⁾, …, Ā⁽ⁿ³⁾)`.
    pub fn block_diagonal(&self) -> ComplexMatrix {
        let mut m = Matrix::zeros(self.n1 * self.n3, self.n2 * self.n3);
        for (k, s) in self.slices.iter().enumerate() {
            m.set_block(k * self.n1, k * self.n2, s);
        }
        m
    }

    /// Frobenius norm of the stacked slices, `‖Ā‖_F`.
    pub fn frobenius_norm(&self) -> f64 {
        self.slices
            .iter()
            .map(|s| s.frobenius_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Largest conjugate-symmetry residual, normalized as in
    /// [`from_fourier`]; returns the offending pair and the raw residual.
    pub fn symmetry_residual(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        for k in 0..self.n3 {
            let mirror = (self.n3 - k) % self.n3;
            if mirror < k {
                continue;
            }
            let a = &self.slices[k];
            let b = &self.slices[mirror];
            let r = a
                .as_slice()
                .iter()
                .zip(b.as_slice())
                .map(|(x, y)| (x - y.conj()).norm())
                .fold(0.0, f64::max);
            if r > worst.2 {
                worst = (k, mirror, r);
            }
        }
        worst
    }

    fn max_entry(&self) -> f64 {
        self.slices.iter().map(|s| s.max_abs()).fold(0.0, f64::max)
    }
}

/// Tube-wise DFT of a real tensor. Only `⌊n3/2⌋ + 1` slices are computed;
/// the rest are exact conjugate mirrors.
pub fn to_fourier(a: &Tensor3) -> FourierSlices {
    let n3 = a.n3();
    let half = (0..FourierSlices::half_len(n3))
        .map(|k| forward_slice(a, k))
        .collect();
    FourierSlices::from_half_spectrum(n3, half).expect("half spectrum has the right length")
}

/// Tube-wise DFT of a complex tensor (no symmetry to exploit).
pub fn to_fourier_complex(a: &ComplexTensor3) -> FourierSlices {
    FourierSlices {
        n1: a.n1(),
        n2: a.n2(),
        n3: a.n3(),
        slices: (0..a.n3()).map(|k| forward_slice(a, k)).collect(),
        origin_real: false,
    }
}

fn forward_slice<T: Scalar>(a: &Tensor<T>, k: usize) -> ComplexMatrix {
    let (n1, n2, n3) = (a.n1(), a.n2(), a.n3());
    let mut out = ComplexMatrix::zeros(n1, n2);
    for t in 0..n3 {
        let w = twiddle(n3, k * t);
        for i in 0..n1 {
            for j in 0..n2 {
                out[(i, j)] += w * a.get(i, j, t).to_complex();
            }
        }
    }
    out
}

fn inverse_slices(s: &FourierSlices) -> Vec<ComplexMatrix> {
    let (n1, n2, n3) = (s.n1, s.n2, s.n3);
    let inv_n = 1.0 / n3 as f64;
    (0..n3)
        .map(|t| {
            let mut out = ComplexMatrix::zeros(n1, n2);
            for (k, slice) in s.slices.iter().enumerate() {
                let w = twiddle(n3, k * t).conj();
                for i in 0..n1 {
                    for j in 0..n2 {
                        out[(i, j)] += w * slice[(i, j)];
                    }
                }
            }
            out.scale(Complex64::new(inv_n, 0.0))
        })
        .collect()
}

/// Inverse transform back to a real tensor, using [`DEFAULT_SYMMETRY_TOL`].
pub fn from_fourier(s: &FourierSlices) -> Result<Tensor3> {
    from_fourier_with_tol(s, DEFAULT_SYMMETRY_TOL).map(|(t, _)| t)
}

/// Inverse transform to a real tensor.
///
/// The slices must be conjugate symmetric within
/// `tol_sym * (1 + max |entry|)`; otherwise no real preimage exists and a
/// [`TensorError::SymmetryViolation`] names the worst pair. Returns the
/// tensor together with the largest imaginary part discarded.
pub fn from_fourier_with_tol(s: &FourierSlices, tol_sym: f64) -> Result<(Tensor3, f64)> {
    let (slice, mirror, residual) = s.symmetry_residual();
    if residual > tol_sym * (1.0 + s.max_entry()) {
        return Err(TensorError::SymmetryViolation {
            slice,
            mirror,
            residual,
        });
    }
    let spatial = inverse_slices(s);
    let imag = spatial.iter().map(|m| m.max_imag()).fold(0.0, f64::max);
    let real: Vec<RealMatrix> = spatial.iter().map(|m| m.re()).collect();
    Ok((Tensor3::from_slices(&real)?, imag))
}

/// Inverse transform to a complex tensor.
pub fn from_fourier_complex(s: &FourierSlices) -> Result<ComplexTensor3> {
    ComplexTensor3::from_slices(&inverse_slices(s))
}

/// Real tensor whose leading `⌊n3/2⌋ + 1` Fourier slices are `half`; the
/// remaining slices are taken as conjugate mirrors. Returns the tensor and
/// the imaginary residual discarded by the inverse transform.
pub fn real_from_half(n3: usize, half: Vec<ComplexMatrix>) -> Result<(Tensor3, f64)> {
    from_fourier_with_tol(&FourierSlices::from_half_spectrum(n3, half)?, DEFAULT_SYMMETRY_TOL)
}

/// Leading `⌊n3/2⌋ + 1` Fourier slices of a real tensor.
pub fn half_spectrum(a: &Tensor3) -> Vec<ComplexMatrix> {
    (0..FourierSlices::half_len(a.n3()))
        .map(|k| forward_slice(a, k))
        .collect()
}

/// Block-circulant matrix of a tensor together with its block structure.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockCirculant<T> {
    pub matrix: Matrix<T>,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

pub type BlockCirculantMatrix = BlockCirculant<f64>;

/// `bcirc(a)`: block `(r, c)` is frontal slice `(r - c) mod n3`.
pub fn bcirc<T: Scalar>(a: &Tensor<T>) -> BlockCirculant<T> {
    let (n1, n2, n3) = (a.n1(), a.n2(), a.n3());
    let mut m = Matrix::zeros(n1 * n3, n2 * n3);
    let slices = a.slices();
    for r in 0..n3 {
        for c in 0..n3 {
            m.set_block(r * n1, c * n2, &slices[(r + n3 - c) % n3]);
        }
    }
    BlockCirculant {
        matrix: m,
        n1,
        n2,
        n3,
    }
}

/// Stacks the frontal slices vertically into an `n1·n3 × n2` matrix.
pub fn unfold<T: Scalar>(a: &Tensor<T>) -> Matrix<T> {
    Matrix::from_vec(a.n1() * a.n3(), a.n2(), a.as_slice().to_vec())
}

/// Inverse of [`unfold`].
pub fn fold<T: Scalar>(m: &Matrix<T>, n1: usize, n3: usize) -> Result<Tensor<T>> {
    if n1 == 0 || n3 == 0 || m.rows() != n1 * n3 {
        return Err(TensorError::ShapeMismatch(format!(
            "cannot fold a {}x{} matrix into {} slices of {} rows",
            m.rows(),
            m.cols(),
            n3,
            n1
        )));
    }
    Tensor::new(n1, m.cols(), n3, m.as_slice().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tube(values: &[f64]) -> Tensor3 {
        Tensor3::new(1, 1, values.len(), values.to_vec()).unwrap()
    }

    #[test]
    fn two_point_dft_by_hand() {
        let s = to_fourier(&tube(&[0.0, 1.0]));
        assert_eq!(s.slices[0][(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(s.slices[1][(0, 0)], Complex64::new(-1.0, 0.0));
        assert!(s.origin_real);
    }

    #[test]
    fn inverse_two_point_by_hand() {
        let s = FourierSlices {
            n1: 1,
            n2: 1,
            n3: 2,
            slices: vec![
                ComplexMatrix::from_vec(1, 1, vec![Complex64::new(1.0, 0.0)]),
                ComplexMatrix::from_vec(1, 1, vec![Complex64::new(-1.0, 0.0)]),
            ],
            origin_real: true,
        };
        assert_eq!(from_fourier(&s).unwrap(), tube(&[0.0, 1.0]));
    }

    #[test]
    fn non_real_preimage_rejected() {
        let s = FourierSlices {
            n1: 1,
            n2: 1,
            n3: 2,
            slices: vec![
                ComplexMatrix::from_vec(1, 1, vec![Complex64::new(1.0, 0.0)]),
                ComplexMatrix::from_vec(1, 1, vec![Complex64::new(0.0, 1.0)]),
            ],
            origin_real: false,
        };
        match from_fourier(&s) {
            Err(TensorError::SymmetryViolation {
                slice,
                mirror,
                residual,
            }) => {
                assert_eq!((slice, mirror), (1, 1));
                assert!((residual - 2.0).abs() < 1e-15);
            }
            other => panic!("expected symmetry violation, got {other:?}"),
        }
    }

    #[test]
    fn single_slice_is_identity_transform() {
        let a = Tensor3::new(2, 2, 1, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let s = to_fourier(&a);
        assert_eq!(s.slices.len(), 1);
        assert_eq!(s.slices[0], a.slice(0).to_complex());
        assert_eq!(bcirc(&a).matrix, a.slice(0));
    }

    #[test]
    fn twiddles_are_exactly_conjugate_symmetric() {
        for n in 1..=16 {
            for m in 0..n {
                assert_eq!(twiddle(n, n - m), twiddle(n, m).conj());
            }
        }
        assert_eq!(twiddle(4, 1), Complex64::new(0.0, -1.0));
        assert_eq!(twiddle(4, 3), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn bcirc_two_slices_by_hand() {
        let a = Tensor3::new(2, 2, 2, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]).unwrap();
        let b = bcirc(&a).matrix;
        let expected = RealMatrix::from_vec(
            4,
            4,
            vec![
                1.0, 2.0, 5.0, 6.0, //
                3.0, 4.0, 7.0, 8.0, //
                5.0, 6.0, 1.0, 2.0, //
                7.0, 8.0, 3.0, 4.0,
            ],
        );
        assert_eq!(b, expected);
    }

    #[test]
    fn unfold_identity() {
        let u = unfold(&Tensor3::identity(2, 2));
        assert_eq!(
            u,
            RealMatrix::from_vec(4, 2, vec![1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0])
        );
        assert!(fold(&u, 3, 2).is_err());
        assert_eq!(fold(&u, 2, 2).unwrap(), Tensor3::identity(2, 2));
    }

    #[test]
    fn half_spectrum_length_checked() {
        assert!(FourierSlices::from_half_spectrum(4, vec![ComplexMatrix::zeros(1, 1)]).is_err());
    }
}
