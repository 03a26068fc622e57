//! Dense eigensolvers: cyclic complex Jacobi for Hermitian matrices and
//! Hessenberg + shifted QR for general complex matrices.

use num_complex::Complex64;

use crate::error::{Result, TensorError};
use crate::matrix::ComplexMatrix;

pub const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_THRESHOLD: f64 = 1e-13;
const HERMITIAN_INPUT_TOL: f64 = 1e-9;
const QR_DEFLATION: f64 = 1e-13;

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues ascend; column `k` of `eigenvectors` belongs to
/// `eigenvalues[k]`. Ties keep the column order the sweeps produced.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V · diag(f(λ)) · Vᴴ`.
    pub fn reassemble(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * fl[k])
                .sum()
        })
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }
}

/// Hermitian eigensolver by cyclic complex Jacobi rotations.
///
/// The input is symmetrized as `(M + Mᴴ)/2` after checking that
/// `‖M − Mᴴ‖_F ≤ 1e-9 (1 + ‖M‖_F)`. Sweeps stop once every off-diagonal
/// modulus is at most `1e-13 ‖M‖_F`.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(TensorError::DimensionMismatch(format!(
            "hermitian_eig of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let scale = m.frobenius_norm();
    let residual = m.hermitian_residual();
    let tolerance = HERMITIAN_INPUT_TOL * (1.0 + scale);
    if residual > tolerance {
        return Err(TensorError::NotSymmetric {
            residual,
            tolerance,
        });
    }
    let (eig, converged, off) = jacobi(&m.hermitian_part());
    if !converged {
        return Err(TensorError::NoConvergence {
            solver: "hermitian_eig",
            iterations: JACOBI_MAX_SWEEPS,
            residual: off,
        });
    }
    Ok(eig)
}

/// Jacobi sweeps on an exactly Hermitian matrix. Returns the decomposition,
/// whether the threshold was reached, and the final largest off-diagonal
/// modulus.
pub(crate) fn jacobi(m: &ComplexMatrix) -> (HermitianEigen, bool, f64) {
    let n = m.rows();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_REL_THRESHOLD * m.frobenius_norm();
    let mut converged = false;
    let mut off = max_off_diagonal(&a);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        off = max_off_diagonal(&a);
    }
    if !converged && off <= threshold {
        converged = true;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    // stable: equal eigenvalues keep their column order
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    (
        HermitianEigen {
            eigenvalues,
            eigenvectors,
        },
        converged,
        off,
    )
}

fn max_off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut off: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off = off.max(a[(i, j)].norm());
            }
        }
    }
    off
}

/// One Jacobi rotation annihilating `a[p][q]`.
///
/// With `a_pq = |b| e`, the rotation is `J = diag(1, ē) · [[c, s], [-s, c]]`
/// on coordinates `(p, q)`; `A ← Jᴴ A J`, `V ← V J`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let abs_b = b.norm();
    if abs_b == 0.0 {
        return;
    }
    let e = b / abs_b;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let zeta = (aqq - app) / (2.0 * abs_b);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + zeta.hypot(1.0))
    } else {
        -1.0 / (-zeta + zeta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let e_bar = e.conj();
    let n = a.rows();

    // A ← A J
    for i in 0..n {
        let x = a[(i, p)];
        let y = a[(i, q)];
        a[(i, p)] = x * c - y * e_bar * s;
        a[(i, q)] = x * s + y * e_bar * c;
    }
    // A ← Jᴴ A
    for j in 0..n {
        let x = a[(p, j)];
        let y = a[(q, j)];
        a[(p, j)] = x * c - y * e * s;
        a[(q, j)] = x * s + y * e * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for i in 0..n {
        let x = v[(i, p)];
        let y = v[(i, q)];
        v[(i, p)] = x * c - y * e_bar * s;
        v[(i, q)] = x * s + y * e_bar * c;
    }
}

/// Eigenvalues of a general complex square matrix.
///
/// Householder reduction to upper Hessenberg form followed by single-shift
/// QR iterations (Wilkinson shift, exceptional shifts every tenth stalled
/// step). Order of the returned values is unspecified.
pub fn general_eig(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(TensorError::DimensionMismatch(format!(
            "general_eig of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = hessenberg(m);
    let norm = h.frobenius_norm();
    if norm == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }
    let deflate = QR_DEFLATION * norm;
    let max_iter = 30 * n;
    let mut eigenvalues = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter = 0usize;

    loop {
        if hi == 0 {
            eigenvalues.push(h[(0, 0)]);
            break;
        }
        // locate the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= deflate || sub <= f64::EPSILON * local {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigenvalues.push(h[(hi, hi)]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > max_iter {
            return Err(TensorError::NoConvergence {
                solver: "general_eig",
                iterations: max_iter,
                residual: h[(hi, hi - 1)].norm(),
            });
        }
        let shift = if iter.is_multiple_of(10) {
            let sub = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + Complex64::from_polar(1.5 * sub + 0.5 * deflate, 0.7 * iter as f64)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_step(&mut h, lo, hi, shift);
    }
    Ok(eigenvalues)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let mean = (a + d) * 0.5;
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * c).sqrt();
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Givens rotation `G = [[c, s], [-s̄, c]]` with `G·[x; y] = [r; 0]`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = ax.hypot(ay);
    let c = ax / r;
    let s = (x / ax) * y.conj() / r;
    (c, s)
}

/// One explicitly shifted QR step on the Hessenberg window `lo..=hi`.
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        for i in lo..=(k + 1).min(hi) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

/// Householder reduction to upper Hessenberg form (similarity transform).
pub fn hessenberg(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut h = m.clone();
    if n < 3 {
        return h;
    }
    for k in 0..n - 2 {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let alpha = (x[0].norm_sqr() + tail).sqrt();
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut v = x;
        v[0] += phase * alpha;
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vv;

        // H ← (I − β v vᴴ) H
        for j in 0..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(l, vl)| vl.conj() * h[(k + 1 + l, j)])
                .sum();
            for (l, vl) in v.iter().enumerate() {
                h[(k + 1 + l, j)] -= vl * s * beta;
            }
        }
        // H ← H (I − β v vᴴ)
        for i in 0..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(l, vl)| h[(i, k + 1 + l)] * vl)
                .sum();
            for (l, vl) in v.iter().enumerate() {
                h[(i, k + 1 + l)] -= s * vl.conj() * beta;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RealMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_sorted() {
        let m = RealMatrix::diagonal(&[3.0, 1.0, 2.0]).to_complex();
        let e = hermitian_eig(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn two_by_two_characteristic_polynomial() {
        // λ² − 3λ + 1 = 0
        let m = RealMatrix::from_vec(2, 2, vec![2.0, 1.0, 1.0, 1.0]).to_complex();
        let e = hermitian_eig(&m).unwrap();
        let s5 = 5f64.sqrt();
        assert!((e.eigenvalues[0] - (3.0 - s5) / 2.0).abs() < 1e-12);
        assert!((e.eigenvalues[1] - (3.0 + s5) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn complex_hermitian_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let m = ComplexMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)]);
        let e = hermitian_eig(&m).unwrap();
        assert!(e.eigenvalues[0].abs() < 1e-14);
        assert!((e.eigenvalues[1] - 2.0).abs() < 1e-14);
        let back = e.reassemble(|l| l);
        assert!((&back - &m).frobenius_norm() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(hermitian_eig(&m), Err(TensorError::NotSymmetric { .. })));
    }

    #[test]
    fn upper_triangular_gives_diagonal() {
        let m = ComplexMatrix::from_vec(
            3,
            3,
            vec![
                c(1.0, 1.0),
                c(2.0, 0.0),
                c(3.0, 0.0),
                c(0.0, 0.0),
                c(-2.0, 0.0),
                c(5.0, -1.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.5, 0.0),
            ],
        );
        let mut got = general_eig(&m).unwrap();
        got.sort_by(|a, b| a.re.total_cmp(&b.re));
        let expected = [c(-2.0, 0.0), c(0.5, 0.0), c(1.0, 1.0)];
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).norm() < 1e-14, "{g} vs {e}");
        }
    }

    #[test]
    fn reflection_spectrum() {
        let m = RealMatrix::from_vec(2, 2, vec![0.0, 1.0, 1.0, 0.0]).to_complex();
        let mut got = general_eig(&m).unwrap();
        got.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((got[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((got[1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn cube_roots_of_unity_from_companion() {
        // companion matrix of z³ − 1
        let m = RealMatrix::from_vec(3, 3, vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0])
            .to_complex();
        let got = general_eig(&m).unwrap();
        let h = 3f64.sqrt() / 2.0;
        for root in [c(1.0, 0.0), c(-0.5, h), c(-0.5, -h)] {
            let best = got.iter().map(|z| (z - root).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "root {root} missed by {best}");
        }
    }

    #[test]
    fn hessenberg_is_similarity() {
        let m = ComplexMatrix::from_fn(5, 5, |i, j| c((i * 3 + j) as f64 % 7.0 - 3.0, (i as f64 - j as f64) * 0.25));
        let h = hessenberg(&m);
        for i in 0..5 {
            for j in 0..5 {
                if i > j + 1 {
                    assert_eq!(h[(i, j)], c(0.0, 0.0));
                }
            }
        }
        let tr_m: Complex64 = (0..5).map(|i| m[(i, i)]).sum();
        let tr_h: Complex64 = (0..5).map(|i| h[(i, i)]).sum();
        assert!((tr_m - tr_h).norm() < 1e-12);
        assert!((m.frobenius_norm() - h.frobenius_norm()).abs() < 1e-12);
    }
}
