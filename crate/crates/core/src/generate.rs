//! Seeded random instances for theorem hypotheses.

use crate::algebra::{symmetrize, t_product};
use crate::rng::RngStream;
use crate::tensor::Tensor3;

/// Diagonal shift that keeps generated t-PSD tensors strictly definite.
pub const DEFAULT_DELTA: f64 = 1e-3;

/// Entries i.i.d. uniform on `[-1, 1]`, drawn in storage order.
pub fn gen_random(dims: [usize; 3], rng: &mut RngStream) -> Tensor3 {
    let [n1, n2, n3] = dims;
    let data = (0..n1 * n2 * n3).map(|_| rng.symmetric_unit()).collect();
    Tensor3::new(n1, n2, n3, data).expect("generated entries are finite")
}

/// `(R + Rᵀ)/2`, exactly symmetric.
pub fn gen_symmetric(n: usize, n3: usize, rng: &mut RngStream) -> Tensor3 {
    symmetrize(&gen_random([n, n, n3], rng))
}

/// `Rᵀ∗R + δ·I`.
pub fn gen_t_psd(n: usize, n3: usize, rng: &mut RngStream, delta: f64) -> Tensor3 {
    let r = gen_random([n, n, n3], rng);
    let gram = t_product(&r.transpose(), &r).expect("square factors");
    &symmetrize(&gram) + &Tensor3::identity(n, n3).scale(delta)
}

/// `(B + P, B)` with `B`, `P` independent t-PSD, so `A ≥ B ≥ 0`.
pub fn gen_loewner_pair(n: usize, n3: usize, rng: &mut RngStream) -> (Tensor3, Tensor3) {
    gen_loewner_pair_shifted(n, n3, rng, DEFAULT_DELTA)
}

/// [`gen_loewner_pair`] with both summands shifted by `delta·I`.
pub fn gen_loewner_pair_shifted(
    n: usize,
    n3: usize,
    rng: &mut RngStream,
    delta: f64,
) -> (Tensor3, Tensor3) {
    let b = gen_t_psd(n, n3, rng, delta);
    let p = gen_t_psd(n, n3, rng, delta);
    (&b + &p, b)
}

/// Random polynomial with nonnegative coefficients in `[0, 1]` and degree
/// `1..=3`, evaluated at `c` with the t-product.
fn random_polynomial(c: &Tensor3, powers: &[Tensor3], rng: &mut RngStream) -> Tensor3 {
    let degree = 1 + rng.index(3);
    let mut acc = Tensor3::identity(c.n1(), c.n3()).scale(rng.uniform(0.0, 1.0));
    for power in &powers[..degree] {
        acc = &acc + &power.scale(rng.uniform(0.0, 1.0));
    }
    acc
}

/// `(p₁(C), p₂(C))` for a random t-PSD `C`. Both are polynomials in the
/// same tensor, so they commute and their product is t-PSD.
pub fn gen_commuting_psd_pair(n: usize, n3: usize, rng: &mut RngStream) -> (Tensor3, Tensor3) {
    let c = gen_t_psd(n, n3, rng, DEFAULT_DELTA);
    let c2 = symmetrize(&t_product(&c, &c).expect("square"));
    let c3 = symmetrize(&t_product(&c2, &c).expect("square"));
    let powers = [c.clone(), c2, c3];
    let a = random_polynomial(&c, &powers, rng);
    let b = random_polynomial(&c, &powers, rng);
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_t_psd;

    #[test]
    fn symmetric_is_exact() {
        let mut rng = RngStream::new(1, 0);
        let a = gen_symmetric(3, 4, &mut rng);
        assert_eq!((&a - &a.transpose()).frobenius_norm(), 0.0);
    }

    #[test]
    fn psd_by_construction() {
        let mut rng = RngStream::new(2, 0);
        let a = gen_t_psd(3, 3, &mut rng, DEFAULT_DELTA);
        assert!(is_t_psd(&a, 1e-10).unwrap().holds);
    }

    #[test]
    fn deterministic() {
        let a = gen_random([2, 3, 4], &mut RngStream::new(9, 5));
        let b = gen_random([2, 3, 4], &mut RngStream::new(9, 5));
        assert_eq!(a, b);
    }
}
