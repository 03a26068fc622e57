//! Norm inequality certifiers: complex decomposition bounds, AM-GM,
//! Heinz-type, Hölder-type and Minkowski inequalities. Every certifier
//! reports the Frobenius and the spectral form separately.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{symmetrize, t_product, t_product_chain};
use crate::certificate::{InequalityCertificate, NormKind, TheoremId};
use crate::error::{Result, TensorError};
use crate::spectral::{abs_power, spectral_norm, t_power};
use crate::tensor::{ComplexTensor3, Tensor3};

use super::{
    conjugate_exponent, hypothesis, require_psd, require_same_square, require_symmetric,
    CheckContext, Mode,
};

const KINDS: [NormKind; 2] = [NormKind::Frobenius, NormKind::Spectral];

fn norm_of(t: &Tensor3, kind: NormKind) -> f64 {
    match kind {
        NormKind::Frobenius => t.frobenius_norm(),
        _ => spectral_norm(t),
    }
}

/// Hypotheses selecting the statement for `T = A + iB`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexNormVariant {
    /// `A`, `B` symmetric.
    A,
    /// `A` symmetric t-PSD, `B` symmetric.
    B,
    /// `A`, `B` symmetric t-PSD.
    C,
}

impl ComplexNormVariant {
    pub fn theorem(self) -> TheoremId {
        match self {
            ComplexNormVariant::A => TheoremId::ComplexNormA,
            ComplexNormVariant::B => TheoremId::ComplexNormB,
            ComplexNormVariant::C => TheoremId::ComplexNormC,
        }
    }
}

impl fmt::Display for ComplexNormVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexNormVariant::A => "a",
            ComplexNormVariant::B => "b",
            ComplexNormVariant::C => "c",
        })
    }
}

impl FromStr for ComplexNormVariant {
    type Err = TensorError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(ComplexNormVariant::A),
            "b" => Ok(ComplexNormVariant::B),
            "c" => Ok(ComplexNormVariant::C),
            other => Err(TensorError::InvalidParameter(format!("unknown variant `{other}`"))),
        }
    }
}

/// Norm bounds for `T = A + iB`.
///
/// Variant (a): `½(‖A‖₂² + ‖B‖₂²) ≤ ‖T‖₂² ≤ 2(‖A‖₂² + ‖B‖₂²)` (literal mode
/// drops the ½, which is false in general), the Frobenius sandwich with
/// factor 4, `‖(A²+B²)^{1/2}‖₂ ≤ ‖T‖₂ ≤ √2‖(A²+B²)^{1/2}‖₂` and the
/// two-sided `‖(A²+B²)^{1/2}‖_F = ‖T‖_F`.
/// Variant (b): `‖T‖₂² ≤ ‖A‖₂² + 2‖B‖₂²`; literal mode adds the printed
/// `‖T‖_F² ≥ ‖A‖_F² + 2‖B‖_F²`, which fails whenever `B ≠ 0`.
/// Variant (c): `‖T‖² ≤ ‖A‖² + ‖B‖²` in both norms.
pub fn check_complex_norm_bounds(
    a: &Tensor3,
    b: &Tensor3,
    variant: ComplexNormVariant,
    ctx: &CheckContext,
) -> Result<Vec<InequalityCertificate>> {
    require_same_square(&[a, b])?;
    let tol = ctx.tol;
    match variant {
        ComplexNormVariant::A => {
            require_symmetric(a, "A", tol)?;
            require_symmetric(b, "B", tol)?;
        }
        ComplexNormVariant::B => {
            require_psd(a, "A", tol)?;
            require_symmetric(b, "B", tol)?;
        }
        ComplexNormVariant::C => {
            require_psd(a, "A", tol)?;
            require_psd(b, "B", tol)?;
        }
    }
    let inst = ctx.instance(variant.theorem(), a.dims());
    let t = ComplexTensor3::from_parts(a, b)?;
    let t2 = spectral_norm(&t).powi(2);
    let tf2 = t.frobenius_norm().powi(2);
    let a2 = spectral_norm(a).powi(2);
    let b2 = spectral_norm(b).powi(2);
    let af2 = a.frobenius_norm().powi(2);
    let bf2 = b.frobenius_norm().powi(2);
    let literal = ctx.mode == Mode::Literal;
    let f = NormKind::Frobenius;
    let s = NormKind::Spectral;
    let cert = |form: &str, kind, lhs, rhs| InequalityCertificate::norm(&inst, form, kind, lhs, rhs, tol);

    let mut out = Vec::new();
    match variant {
        ComplexNormVariant::A => {
            if literal {
                out.push(cert("||A||_2^2+||B||_2^2 <= ||T||_2^2", s, a2 + b2, t2));
            } else {
                out.push(cert("(||A||_2^2+||B||_2^2)/2 <= ||T||_2^2", s, 0.5 * (a2 + b2), t2));
            }
            out.push(cert("||T||_2^2 <= 2(||A||_2^2+||B||_2^2)", s, t2, 2.0 * (a2 + b2)));
            out.push(cert("||T||_F^2 <= 4(||A||_F^2+||B||_F^2)", f, tf2, 4.0 * (af2 + bf2)));
            out.push(cert("||A||_F^2+||B||_F^2 <= ||T||_F^2", f, af2 + bf2, tf2));
            let sum_sq = symmetrize(&(&t_product(a, a)? + &t_product(b, b)?));
            let root = t_power(&sum_sq, 0.5, tol)?;
            let root2 = spectral_norm(&root);
            let rootf = root.frobenius_norm();
            let tn2 = t2.sqrt();
            let tnf = tf2.sqrt();
            out.push(cert("||(A^2+B^2)^(1/2)||_2 <= ||T||_2", s, root2, tn2));
            out.push(cert("||T||_2 <= sqrt2 ||(A^2+B^2)^(1/2)||_2", s, tn2, 2f64.sqrt() * root2));
            out.push(cert("||(A^2+B^2)^(1/2)||_F <= ||T||_F", f, rootf, tnf));
            out.push(cert("||T||_F <= ||(A^2+B^2)^(1/2)||_F", f, tnf, rootf));
        }
        ComplexNormVariant::B => {
            out.push(cert("||T||_2^2 <= ||A||_2^2+2||B||_2^2", s, t2, a2 + 2.0 * b2));
            if literal {
                out.push(cert("||A||_F^2+2||B||_F^2 <= ||T||_F^2", f, af2 + 2.0 * bf2, tf2));
            }
        }
        ComplexNormVariant::C => {
            out.push(cert("||T||_2^2 <= ||A||_2^2+||B||_2^2", s, t2, a2 + b2));
            out.push(cert("||T||_F^2 <= ||A||_F^2+||B||_F^2", f, tf2, af2 + bf2));
        }
    }
    Ok(out)
}

/// `‖A∗X∗Bᵀ‖ ≤ ½‖Aᵀ∗A∗X + X∗Bᵀ∗B‖` in both norms.
///
/// Literal mode evaluates the printed right-hand side
/// `½‖Aᵀ∗X + X∗Bᵀ∗B‖`, which fails already for scalars.
pub fn check_am_gm(
    a: &Tensor3,
    x: &Tensor3,
    b: &Tensor3,
    ctx: &CheckContext,
) -> Result<Vec<InequalityCertificate>> {
    let at = a.transpose();
    let bt = b.transpose();
    let lhs_t = t_product_chain(&[a, x, &bt])?;
    let (form, rhs_t) = if ctx.mode == Mode::Literal {
        (
            "||A*X*B'|| <= 1/2 ||A'*X + X*B'*B||",
            &t_product(&at, x)? + &t_product_chain(&[x, &bt, b])?,
        )
    } else {
        (
            "||A*X*B'|| <= 1/2 ||A'*A*X + X*B'*B||",
            &t_product_chain(&[&at, a, x])? + &t_product_chain(&[x, &bt, b])?,
        )
    };
    let inst = ctx.instance(TheoremId::AmGm, lhs_t.dims());
    Ok(KINDS
        .iter()
        .map(|&k| {
            InequalityCertificate::norm(
                &inst,
                form,
                k,
                norm_of(&lhs_t, k),
                0.5 * norm_of(&rhs_t, k),
                ctx.tol,
            )
        })
        .collect())
}

/// Heinz-type inequalities for t-PSD `A`, `B`:
/// `(2+t)‖A^r∗X∗B^{2−r} + A^{2−r}∗X∗B^r‖ ≤ 2‖A²∗X + t A∗X∗B + X∗B²‖`
/// for `1 ≤ 2r ≤ 3`, `−2 < t ≤ 2`, and `4‖A∗B‖ ≤ ‖(A+B)²‖`.
pub fn check_heinz_family(
    a: &Tensor3,
    x: &Tensor3,
    b: &Tensor3,
    r: f64,
    t: f64,
    ctx: &CheckContext,
) -> Result<Vec<InequalityCertificate>> {
    require_same_square(&[a, x, b])?;
    if ctx.enforce_ranges() && !((1.0..=3.0).contains(&(2.0 * r)) && t > -2.0 && t <= 2.0) {
        return Err(hypothesis(format!(
            "(r, t) = ({r}, {t}) outside 1 <= 2r <= 3, -2 < t <= 2"
        )));
    }
    let tol = ctx.tol;
    require_psd(a, "A", tol)?;
    require_psd(b, "B", tol)?;
    let inst = ctx
        .instance(TheoremId::HeinzFamily, a.dims())
        .with("r", r)
        .with("t", t);

    let mixed = &t_product_chain(&[&t_power(a, r, tol)?, x, &t_power(b, 2.0 - r, tol)?])?
        + &t_product_chain(&[&t_power(a, 2.0 - r, tol)?, x, &t_power(b, r, tol)?])?;
    let quadratic = &(&t_product_chain(&[a, a, x])? + &t_product_chain(&[a, x, b])?.scale(t))
        + &t_product_chain(&[x, b, b])?;
    let ab = t_product(a, b)?;
    let s = a + b;
    let sum_sq = t_product(&s, &s)?;

    let mut out = Vec::with_capacity(4);
    for k in KINDS {
        out.push(InequalityCertificate::norm(
            &inst,
            "(2+t)||A^r X B^(2-r) + A^(2-r) X B^r|| <= 2||A^2 X + t A X B + X B^2||",
            k,
            (2.0 + t) * norm_of(&mixed, k),
            2.0 * norm_of(&quadratic, k),
            tol,
        ));
    }
    for k in KINDS {
        out.push(InequalityCertificate::norm(
            &inst,
            "4||A*B|| <= ||(A+B)^2||",
            k,
            4.0 * norm_of(&ab, k),
            norm_of(&sum_sq, k),
            tol,
        ));
    }
    Ok(out)
}

/// Exponent of the `n3` prefactor in the Frobenius Hölder bounds,
/// `1/(2p) + 1/(2q) − 1/2 = ½(1/p + 1/q − 1)`, which vanishes for
/// conjugate exponents.
pub fn holder_n3_exponent(p: f64, q: f64) -> f64 {
    0.5 * (1.0 / p + 1.0 / q - 1.0)
}

fn holder_exponents(p: f64) -> Result<(f64, f64)> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(hypothesis(format!(
            "Hölder exponent p = {p} must lie in (1, ∞); infinite exponents are out of numeric scope"
        )));
    }
    let q = conjugate_exponent(p);
    if holder_n3_exponent(p, q).abs() > 1e-15 {
        return Err(TensorError::InvalidParameter(format!(
            "p = {p}, q = {q} are not conjugate"
        )));
    }
    Ok((p, q))
}

fn n3_prefactor(n3: usize, kind: NormKind, p: f64, q: f64) -> f64 {
    match kind {
        NormKind::Frobenius => (n3 as f64).powf(holder_n3_exponent(p, q)),
        _ => 1.0,
    }
}

/// `‖ |A∗X∗B|^r ‖ ≤ ‖ |A^p∗X|^r ‖^{1/p} · ‖ |X∗B^q|^r ‖^{1/q}` for t-PSD
/// `A`, `B` and conjugate `p`, `q`; the Frobenius form carries the
/// (identically 1) `n3` prefactor.
///
/// Literal mode evaluates the printed left side `‖ |A∗X∗B| ‖`, without
/// the power `r`, which fails for scalars once `r ≠ 1`.
pub fn check_holder(
    a: &Tensor3,
    x: &Tensor3,
    b: &Tensor3,
    r: f64,
    p: f64,
    ctx: &CheckContext,
) -> Result<Vec<InequalityCertificate>> {
    require_same_square(&[a, x, b])?;
    let (p, q) = holder_exponents(p)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(hypothesis(format!("r = {r} must be positive")));
    }
    let tol = ctx.tol;
    require_psd(a, "A", tol)?;
    require_psd(b, "B", tol)?;
    let inst = ctx
        .instance(TheoremId::Holder, a.dims())
        .with("r", r)
        .with("p", p)
        .with("q", q);
    let axb = t_product_chain(&[a, x, b])?;
    let (form, lhs_t) = if ctx.mode == Mode::Literal {
        ("|| |A*X*B| || <= || |A^p*X|^r ||^(1/p) || |X*B^q|^r ||^(1/q)", abs_power(&axb, 1.0, tol)?)
    } else {
        ("|| |A*X*B|^r || <= || |A^p*X|^r ||^(1/p) || |X*B^q|^r ||^(1/q)", abs_power(&axb, r, tol)?)
    };
    let left_factor = abs_power(&t_product(&t_power(a, p, tol)?, x)?, r, tol)?;
    let right_factor = abs_power(&t_product(x, &t_power(b, q, tol)?)?, r, tol)?;
    Ok(KINDS
        .iter()
        .map(|&k| {
            let rhs = n3_prefactor(a.n3(), k, p, q)
                * norm_of(&left_factor, k).powf(1.0 / p)
                * norm_of(&right_factor, k).powf(1.0 / q);
            InequalityCertificate::norm(&inst, form, k, norm_of(&lhs_t, k), rhs, tol)
        })
        .collect())
}

/// `‖ |A∗B|^r ‖ ≤ ‖ |A|^{pr} ‖^{1/p} · ‖ |B|^{qr} ‖^{1/q}`.
pub fn check_holder_corollary(
    a: &Tensor3,
    b: &Tensor3,
    r: f64,
    p: f64,
    ctx: &CheckContext,
) -> Result<Vec<InequalityCertificate>> {
    require_same_square(&[a, b])?;
    let (p, q) = holder_exponents(p)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(hypothesis(format!("r = {r} must be positive")));
    }
    let tol = ctx.tol;
    let inst = ctx
        .instance(TheoremId::HolderCorollary, a.dims())
        .with("r", r)
        .with("p", p)
        .with("q", q);
    let lhs_t = abs_power(&t_product(a, b)?, r, tol)?;
    let abs_a = abs_power(a, p * r, tol)?;
    let abs_b = abs_power(b, q * r, tol)?;
    Ok(KINDS
        .iter()
        .map(|&k| {
            let rhs = n3_prefactor(a.n3(), k, p, q)
                * norm_of(&abs_a, k).powf(1.0 / p)
                * norm_of(&abs_b, k).powf(1.0 / q);
            InequalityCertificate::norm(
                &inst,
                "|| |A*B|^r || <= || |A|^(pr) ||^(1/p) || |B|^(qr) ||^(1/q)",
                k,
                norm_of(&lhs_t, k),
                rhs,
                tol,
            )
        })
        .collect())
}

/// `2^{−|1/p−1/2|}‖Cᵀ∗A + Dᵀ∗B‖ ≤ ‖ |A|^p + |B|^p ‖^{1/p} · ‖ |C|^q + |D|^q ‖^{1/q}`
/// for conjugate `1 < p, q < ∞`.
pub fn check_holder_pairs(
    a: &Tensor3,
    b: &Tensor3,
    c: &Tensor3,
    d: &Tensor3,
    p: f64,
    ctx: &CheckContext,
) -> Result<Vec<InequalityCertificate>> {
    require_same_square(&[a, b, c, d])?;
    let (p, q) = holder_exponents(p)?;
    let tol = ctx.tol;
    let inst = ctx
        .instance(TheoremId::HolderPairs, a.dims())
        .with("p", p)
        .with("q", q);
    let prefactor = 2f64.powf(-(1.0 / p - 0.5).abs());
    let lhs_t = &t_product(&c.transpose(), a)? + &t_product(&d.transpose(), b)?;
    let ab = &abs_power(a, p, tol)? + &abs_power(b, p, tol)?;
    let cd = &abs_power(c, q, tol)? + &abs_power(d, q, tol)?;
    Ok(KINDS
        .iter()
        .map(|&k| {
            let rhs = n3_prefactor(a.n3(), k, p, q)
                * norm_of(&ab, k).powf(1.0 / p)
                * norm_of(&cd, k).powf(1.0 / q);
            InequalityCertificate::norm(
                &inst,
                "2^-|1/p-1/2| ||C'*A + D'*B|| <= || |A|^p+|B|^p ||^(1/p) || |C|^q+|D|^q ||^(1/q)",
                k,
                prefactor * norm_of(&lhs_t, k),
                rhs,
                tol,
            )
        })
        .collect())
}

/// `2^{−|1/p−1/2|} ‖ |A1+A2|^p + |B1+B2|^p ‖^{1/p}
///   ≤ ‖ |A1|^p + |B1|^p ‖^{1/p} + ‖ |A2|^p + |B2|^p ‖^{1/p}` for `1 ≤ p < ∞`.
pub fn check_minkowski(
    a1: &Tensor3,
    a2: &Tensor3,
    b1: &Tensor3,
    b2: &Tensor3,
    p: f64,
    ctx: &CheckContext,
) -> Result<Vec<InequalityCertificate>> {
    require_same_square(&[a1, a2, b1, b2])?;
    if !(p >= 1.0 && p.is_finite()) {
        return Err(hypothesis(format!("Minkowski exponent p = {p} must lie in [1, ∞)")));
    }
    let tol = ctx.tol;
    let inst = ctx.instance(TheoremId::Minkowski, a1.dims()).with("p", p);
    let prefactor = 2f64.powf(-(1.0 / p - 0.5).abs());
    let sum_term = &abs_power(&(a1 + a2), p, tol)? + &abs_power(&(b1 + b2), p, tol)?;
    let first = &abs_power(a1, p, tol)? + &abs_power(b1, p, tol)?;
    let second = &abs_power(a2, p, tol)? + &abs_power(b2, p, tol)?;
    Ok(KINDS
        .iter()
        .map(|&k| {
            InequalityCertificate::norm(
                &inst,
                "2^-|1/p-1/2| || |A1+A2|^p+|B1+B2|^p ||^(1/p) <= || |A1|^p+|B1|^p ||^(1/p) + || |A2|^p+|B2|^p ||^(1/p)",
                k,
                prefactor * norm_of(&sum_term, k).powf(1.0 / p),
                norm_of(&first, k).powf(1.0 / p) + norm_of(&second, k).powf(1.0 / p),
                tol,
            )
        })
        .collect())
}
