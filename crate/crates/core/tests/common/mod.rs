#![allow(dead_code)]

use num_complex::Complex64;
use ttensor::generate::gen_random;
use ttensor::{ComplexMatrix, RealMatrix, RngStream, Tensor3};

/// Random dims `(n1, n2, n3)` with every entry in `1..=max`.
pub fn random_dims(rng: &mut RngStream, max_n: usize, max_n3: usize) -> (usize, usize, usize) {
    (1 + rng.index(max_n), 1 + rng.index(max_n), 1 + rng.index(max_n3))
}

pub fn random_tensor(rng: &mut RngStream, n1: usize, n2: usize, n3: usize) -> Tensor3 {
    gen_random([n1, n2, n3], rng)
}

pub fn rel_err(x: f64, y: f64) -> f64 {
    (x - y).abs() / (1.0 + x.abs().max(y.abs()))
}

pub fn rel_diff(a: &Tensor3, b: &Tensor3) -> f64 {
    (a - b).frobenius_norm() / (1.0 + a.frobenius_norm().max(b.frobenius_norm()))
}

/// Largest singular value of a real matrix by power iteration on `MᵀM`.
pub fn power_iteration_norm(m: &RealMatrix) -> f64 {
    let cols = m.cols();
    if cols == 0 || m.rows() == 0 {
        return 0.0;
    }
    let gram = &m.transpose() * m;
    let mut v: Vec<f64> = (0..cols).map(|i| 1.0 + 0.1 * i as f64).collect();
    let mut lambda = 0.0;
    for _ in 0..5000 {
        let w: Vec<f64> = (0..cols)
            .map(|i| (0..cols).map(|j| gram[(i, j)] * v[j]).sum())
            .collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v = w.into_iter().map(|x| x / norm).collect();
        if (next - lambda).abs() <= 1e-15 * next {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.sqrt()
}

pub fn complex_matrix(rng: &mut RngStream, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.symmetric_unit(), rng.symmetric_unit())
    })
}

pub fn random_hermitian(rng: &mut RngStream, n: usize) -> ComplexMatrix {
    complex_matrix(rng, n).hermitian_part()
}
