//! Löwner-order certifiers: Löwner-Heinz, Hansen-type, Furuta-type and
//! Young inequalities.

use crate::algebra::{loewner_ge, symmetrize, t_product, t_product_chain};
use crate::certificate::{InequalityCertificate, TheoremId};
use crate::error::Result;
use crate::spectral::{spectral_norm, t_power, young_witness};
use crate::tensor::Tensor3;

use super::{
    conjugate_exponent, hypothesis, loewner_certificate, require_psd, require_same_square,
    require_symmetric, CheckContext, Mode,
};

fn require_loewner_pair(a: &Tensor3, b: &Tensor3, tol: f64) -> Result<()> {
    require_same_square(&[a, b])?;
    require_psd(b, "B", tol)?;
    let v = loewner_ge(a, b, tol)?;
    if !v.holds {
        return Err(hypothesis(format!(
            "A >= B fails (smallest gap eigenvalue {:e})",
            v.min_gap_eigenvalue
        )));
    }
    Ok(())
}

/// `A ≥ B ≥ 0 ⇒ A^r ≥ B^r` for `0 ≤ r ≤ 1`.
///
/// Exploratory mode accepts any `r ≥ 0`, which is how the failure for
/// `r > 1` is exhibited.
pub fn check_loewner_heinz(
    a: &Tensor3,
    b: &Tensor3,
    r: f64,
    ctx: &CheckContext,
) -> Result<InequalityCertificate> {
    if !(r >= 0.0 && r.is_finite()) || (ctx.enforce_ranges() && r > 1.0) {
        return Err(hypothesis(format!("exponent r = {r} outside [0, 1]")));
    }
    require_loewner_pair(a, b, ctx.tol)?;
    let inst = ctx.instance(TheoremId::LoewnerHeinz, a.dims()).with("r", r);
    let ar = t_power(a, r, ctx.tol)?;
    let br = t_power(b, r, ctx.tol)?;
    loewner_certificate(&inst, "A^r >= B^r", &ar, &br, ctx.tol)
}

/// Hansen-type power inequalities
/// `Qᵀ∗X^r∗Q ≤ (Qᵀ∗X∗Q)^r` for `0 < r ≤ 1` and `≥` for `1 ≤ r ≤ 2`.
///
/// In corrected and exploratory modes `Q` is any contraction
/// (`‖Q‖₂ ≤ 1`) and the left factor is transposed. Literal mode takes the
/// statement as printed: `Q` orthogonal and both factors untransposed,
/// so the middle products are usually not symmetric; that is reported as
/// a hypothesis failure rather than symmetrized away.
pub fn check_hansen_power(
    q: &Tensor3,
    x: &Tensor3,
    r: f64,
    ctx: &CheckContext,
) -> Result<InequalityCertificate> {
    require_same_square(&[q, x])?;
    if !(r > 0.0 && r.is_finite()) || (ctx.enforce_ranges() && r > 2.0) {
        return Err(hypothesis(format!("exponent r = {r} outside (0, 2]")));
    }
    require_psd(x, "X", ctx.tol)?;
    let lower = r <= 1.0;
    let inst = ctx
        .instance(TheoremId::HansenPower, q.dims())
        .with("r", r)
        .with("direction", if lower { "le" } else { "ge" });
    let xr = t_power(x, r, ctx.tol)?;
    let (left, middle) = if ctx.mode == Mode::Literal {
        let orth = crate::algebra::is_orthogonal(q, ctx.tol);
        if !orth.holds {
            return Err(hypothesis(format!(
                "Q is not orthogonal (residual {:e})",
                orth.residual
            )));
        }
        (t_product_chain(&[q, &xr, q])?, t_product_chain(&[q, x, q])?)
    } else {
        let norm = spectral_norm(q);
        if norm > 1.0 + ctx.tol {
            return Err(hypothesis(format!("Q is not a contraction (‖Q‖₂ = {norm})")));
        }
        let qt = q.transpose();
        (t_product_chain(&[&qt, &xr, q])?, t_product_chain(&[&qt, x, q])?)
    };
    require_symmetric(&left, "Q*X^r*Q", ctx.tol)?;
    require_symmetric(&middle, "Q*X*Q", ctx.tol)?;
    let right = t_power(&symmetrize(&middle), r, ctx.tol)?;
    if lower {
        loewner_certificate(&inst, "Q'*X^r*Q <= (Q'*X*Q)^r", &right, &left, ctx.tol)
    } else {
        loewner_certificate(&inst, "Q'*X^r*Q >= (Q'*X*Q)^r", &left, &right, ctx.tol)
    }
}

/// Whether `(r, p, q)` satisfies `r ≥ 0, p ≥ 0, q ≥ 1, (1+2r)q ≥ p+2r`.
pub fn furuta_admissible(r: f64, p: f64, q: f64) -> bool {
    r >= 0.0 && p >= 0.0 && q >= 1.0 && (1.0 + 2.0 * r) * q >= p + 2.0 * r
}

/// Furuta-type inequalities for `A ≥ B ≥ 0`:
/// `(B^r∗A^p∗B^r)^{1/q} ≥ B^{(p+2r)/q}` and
/// `A^{(p+2r)/q} ≥ (A^r∗B^p∗A^r)^{1/q}`.
pub fn check_furuta(
    a: &Tensor3,
    b: &Tensor3,
    r: f64,
    p: f64,
    q: f64,
    ctx: &CheckContext,
) -> Result<[InequalityCertificate; 2]> {
    if ![r, p, q].iter().all(|x| x.is_finite()) || q <= 0.0 {
        return Err(hypothesis(format!("exponents (r, p, q) = ({r}, {p}, {q}) not usable")));
    }
    if ctx.enforce_ranges() && !furuta_admissible(r, p, q) {
        return Err(hypothesis(format!(
            "(r, p, q) = ({r}, {p}, {q}) violates r, p >= 0, q >= 1, (1+2r)q >= p+2r"
        )));
    }
    require_loewner_pair(a, b, ctx.tol)?;
    let inst = ctx
        .instance(TheoremId::Furuta, a.dims())
        .with("r", r)
        .with("p", p)
        .with("q", q);
    let tol = ctx.tol;
    let combined = (p + 2.0 * r) / q;

    let br = t_power(b, r, tol)?;
    let ap = t_power(a, p, tol)?;
    let inner_b = symmetrize(&t_product_chain(&[&br, &ap, &br])?);
    let lhs5 = t_power(&inner_b, 1.0 / q, tol)?;
    let rhs5 = t_power(b, combined, tol)?;
    let first = loewner_certificate(&inst, "(B^r*A^p*B^r)^(1/q) >= B^((p+2r)/q)", &lhs5, &rhs5, tol)?;

    let ar = t_power(a, r, tol)?;
    let bp = t_power(b, p, tol)?;
    let inner_a = symmetrize(&t_product_chain(&[&ar, &bp, &ar])?);
    let lhs6 = t_power(a, combined, tol)?;
    let rhs6 = t_power(&inner_a, 1.0 / q, tol)?;
    let second = loewner_certificate(&inst, "A^((p+2r)/q) >= (A^r*B^p*A^r)^(1/q)", &lhs6, &rhs6, tol)?;
    Ok([first, second])
}

/// `A∗B ≤ A^p/p + B^q/q` for commuting t-PSD `A`, `B` with `A∗B ≥ 0`.
pub fn check_young_commuting(
    a: &Tensor3,
    b: &Tensor3,
    p: f64,
    ctx: &CheckContext,
) -> Result<InequalityCertificate> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(hypothesis(format!("exponent p = {p} must exceed 1")));
    }
    require_same_square(&[a, b])?;
    let tol = ctx.tol;
    require_psd(a, "A", tol)?;
    require_psd(b, "B", tol)?;
    let ab = t_product(a, b)?;
    let ba = t_product(b, a)?;
    let commutator = (&ab - &ba).frobenius_norm();
    let allowed = tol * (1.0 + a.frobenius_norm() * b.frobenius_norm());
    if commutator > allowed {
        return Err(hypothesis(format!(
            "A and B do not commute (‖A*B − B*A‖_F = {commutator:e})"
        )));
    }
    require_symmetric(&ab, "A*B", tol)?;
    let ab = symmetrize(&ab);
    require_psd(&ab, "A*B", tol)?;
    let q = conjugate_exponent(p);
    let inst = ctx
        .instance(TheoremId::YoungCommuting, a.dims())
        .with("p", p)
        .with("q", q);
    let sum = &t_power(a, p, tol)?.scale(1.0 / p) + &t_power(b, q, tol)?.scale(1.0 / q);
    loewner_certificate(&inst, "A*B <= A^p/p + B^q/q", &sum, &ab, tol)
}

/// Generalized Young inequality through the constructed orthogonal
/// witness `U`: `Uᵀ∗|A∗Bᵀ|∗U ≤ |A|^p/p + |B|^q/q`.
pub fn check_young_witness(
    a: &Tensor3,
    b: &Tensor3,
    p: f64,
    ctx: &CheckContext,
) -> Result<InequalityCertificate> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(hypothesis(format!("exponent p = {p} must exceed 1")));
    }
    let q = conjugate_exponent(p);
    let w = young_witness(a, b, p, q, ctx.tol)?;
    let inst = ctx
        .instance(TheoremId::YoungWitness, a.dims())
        .with("p", p)
        .with("q", q);
    Ok(InequalityCertificate::loewner(
        &inst,
        "U'*|A*B'|*U <= |A|^p/p + |B|^q/q",
        &w.verdict,
    ))
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
    fn example_pair_square_root_holds() {
        let (a, b) = example_pair();
        let c = check_loewner_heinz(&a, &b, 0.5, &CheckContext::default()).unwrap();
        assert!(c.holds);
    }

    #[test]
    fn example_pair_square_fails_in_exploratory_mode() {
        let (a, b) = example_pair();
        let ctx = CheckContext::default();
        assert!(check_loewner_heinz(&a, &b, 2.0, &ctx).is_err());
        let c = check_loewner_heinz(&a, &b, 2.0, &ctx.with_mode(Mode::Exploratory)).unwrap();
        assert!(!c.holds);
        assert!((c.margin - (3.0 - 10f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn hansen_scalar_contraction() {
        let q = Tensor3::identity(2, 2).scale(0.5);
        let x = Tensor3::identity(2, 2).scale(4.0);
        let c = check_hansen_power(&q, &x, 0.5, &CheckContext::default()).unwrap();
        assert!(c.holds);
        // (0.25·4)^{1/2} − 0.25·2 = 0.5
        assert!((c.margin - 0.5).abs() < 1e-12);
    }

    #[test]
    fn furuta_degenerate_parameters() {
        let (a, b) = example_pair();
        let [e5, e6] = check_furuta(&a, &b, 0.0, 1.0, 1.0, &CheckContext::default()).unwrap();
        assert!(e5.holds && e6.holds);
        let [e5, e6] = check_furuta(&a, &b, 1.0, 2.0, 2.0, &CheckContext::default()).unwrap();
        assert!(e5.holds && e6.holds);
        assert!(check_furuta(&a, &b, 0.0, 3.0, 1.0, &CheckContext::default()).is_err());
    }

    #[test]
    fn young_scalar_cases() {
        let ctx = CheckContext::default();
        let id = Tensor3::identity(2, 3);
        let c = check_young_commuting(&id, &id, 2.0, &ctx).unwrap();
        assert!(c.holds && c.margin.abs() < 1e-12);
        let c = check_young_commuting(&id.scale(2.0), &id.scale(3.0), 2.0, &ctx).unwrap();
        // 2 + 4.5 − 6
        assert!((c.margin - 0.5).abs() < 1e-12);
    }
}
