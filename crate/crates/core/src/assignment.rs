//! Optimal assignment (Hungarian algorithm) and spectrum matching.

use num_complex::Complex64;

/// Minimum-cost perfect matching for a square cost matrix given row-major.
///
/// Returns `perm` with row `i` assigned to column `perm[i]`.
pub fn hungarian(n: usize, cost: &[f64]) -> Vec<usize> {
    assert_eq!(cost.len(), n * n, "cost matrix must be n x n");
    if n == 0 {
        return Vec::new();
    }
    // potentials and matching use 1-based indices with 0 as a sentinel
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut col_owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        col_owner[0] = row;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = col_owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if col_owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_owner[j0] = col_owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0; n];
    for j in 1..=n {
        perm[col_owner[j] - 1] = j - 1;
    }
    perm
}

/// Optimal pairing of two equally sized multisets of complex numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumMatching {
    /// `lhs[i]` is paired with `rhs[permutation[i]]`.
    pub permutation: Vec<usize>,
    /// `sqrt(Σ |lhs[i] − rhs[π(i)]|²)`.
    pub distance: f64,
    /// `max_i |lhs[i] − rhs[π(i)]|`.
    pub max_distance: f64,
}

/// Pairs `lhs` with `rhs` minimizing the sum of squared distances.
pub fn match_spectra(lhs: &[Complex64], rhs: &[Complex64]) -> SpectrumMatching {
    assert_eq!(lhs.len(), rhs.len(), "spectra must have equal size");
    let n = lhs.len();
    let cost: Vec<f64> = lhs
        .iter()
        .flat_map(|x| rhs.iter().map(move |y| (x - y).norm_sqr()))
        .collect();
    let permutation = hungarian(n, &cost);
    let (sum, max) = permutation
        .iter()
        .enumerate()
        .map(|(i, &j)| (lhs[i] - rhs[j]).norm())
        .fold((0.0, 0.0_f64), |(s, m), d| (s + d * d, m.max(d)));
    SpectrumMatching {
        permutation,
        distance: sum.sqrt(),
        max_distance: max,
    }
}
