//! Random orthogonal tensors.

use num_complex::Complex64;

use crate::fourier;
use crate::generate::gen_random;
use crate::matrix::ComplexMatrix;
use crate::rng::RngStream;
use crate::tensor::Tensor3;

/// Unitary factor of a thin QR of a square matrix, by modified
/// Gram-Schmidt applied twice, with the `R` diagonal made positive.
pub(crate) fn unitary_factor(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut q = m.clone();
    for j in 0..n {
        for _ in 0..2 {
            for i in 0..j {
                let dot: Complex64 = (0..n).map(|r| q[(r, i)].conj() * q[(r, j)]).sum();
                for r in 0..n {
                    let qi = q[(r, i)];
                    q[(r, j)] -= dot * qi;
                }
            }
        }
        let norm = (0..n).map(|r| q[(r, j)].norm_sqr()).sum::<f64>().sqrt();
        for r in 0..n {
            q[(r, j)] /= norm;
        }
    }
    q
}

/// Orthogonal tensor from the QR factors of the Fourier slices of a random
/// tensor: `Qᵀ∗Q = Q∗Qᵀ = I`.
pub fn gen_orthogonal(n: usize, n3: usize, rng: &mut RngStream) -> Tensor3 {
    let r = gen_random([n, n, n3], rng);
    let half = fourier::half_spectrum(&r)
        .iter()
        .map(unitary_factor)
        .collect();
    fourier::real_from_half(n3, half)
        .expect("unitary slices of a real tensor mirror exactly")
        .0
}
