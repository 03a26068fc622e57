//! t-eigenvalue inequalities: Schur bound, Gershgorin discs with
//! component counting, Bauer-Fike perturbation bound, Hoffman-Wielandt
//! matching bound and the diagonal-spectrum bound for `T = A + iB`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_f_diagonal, is_normal, t_inverse, t_product_chain, DEFAULT_INVERSE_TOL};
use crate::assignment::match_spectra;
use crate::certificate::{InequalityCertificate, NormKind, TheoremId};
use crate::error::{Result, TensorError};
use crate::lab::{hypothesis, require_same_square, require_symmetric, CheckContext};
use crate::matrix::Scalar;
use crate::spectral::{spectral_norm, t_eigenvalues, TEigenSpectrum};
use crate::tensor::{ComplexTensor3, Tensor, Tensor3};

/// `Σ|λ_i|² ≤ n3‖A‖_F²` over all `n·n3` t-eigenvalues.
pub fn schur_bound(a: &Tensor3, ctx: &CheckContext) -> Result<InequalityCertificate> {
    let spectrum = t_eigenvalues(a)?;
    let lhs: f64 = spectrum.values.iter().map(|v| v.norm_sqr()).sum();
    let rhs = a.n3() as f64 * a.frobenius_norm().powi(2);
    let inst = ctx.instance(TheoremId::Schur, a.dims());
    Ok(InequalityCertificate::norm(
        &inst,
        "sum |lambda|^2 <= n3 ||A||_F^2",
        NormKind::Frobenius,
        lhs,
        rhs,
        ctx.tol,
    ))
}

/// Disc `{z : |z − center| ≤ radius}` in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GershgorinDisc {
    pub center: Complex64,
    pub radius: f64,
}

impl Serialize for GershgorinDisc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GershgorinDisc", 3)?;
        st.serialize_field("center_re", &self.center.re)?;
        st.serialize_field("center_im", &self.center.im)?;
        st.serialize_field("radius", &self.radius)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GershgorinDisc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            center_re: f64,
            center_im: f64,
            radius: f64,
        }
        let raw = Raw::deserialize(d)?;
        Ok(GershgorinDisc {
            center: Complex64::new(raw.center_re, raw.center_im),
            radius: raw.radius,
        })
    }
}

impl GershgorinDisc {
    /// `|z − center| − radius`: nonpositive inside the disc.
    pub fn excess(&self, z: Complex64) -> f64 {
        (z - self.center).norm() - self.radius
    }

    pub fn overlaps(&self, other: &GershgorinDisc) -> bool {
        (self.center - other.center).norm() <= self.radius + other.radius
    }
}

/// One disc per row `i`: center `a_{ii1}`, radius the sum of `|a_{ijk}|`
/// over all `(j, k)` except `(i, 1)`. This is exactly the off-diagonal
/// absolute row sum of every row of `bcirc(A)` belonging to row `i`.
pub fn gershgorin_discs<T: Scalar>(a: &Tensor<T>) -> Result<Vec<GershgorinDisc>> {
    if !a.is_square() {
        return Err(TensorError::DimensionMismatch(format!(
            "Gershgorin discs need a square tensor, got {:?}",
            a.dims()
        )));
    }
    let n = a.n1();
    Ok((0..n)
        .map(|i| {
            let mut total = 0.0;
            for k in 0..a.n3() {
                for j in 0..n {
                    if !(j == i && k == 0) {
                        total += a.get(i, j, k).modulus();
                    }
                }
            }
            GershgorinDisc {
                center: a.get(i, i, 0).to_complex(),
                radius: total,
            }
        })
        .collect())
}

fn disc_scale(discs: &[GershgorinDisc]) -> f64 {
    discs
        .iter()
        .map(|d| d.center.norm() + d.radius)
        .fold(0.0, f64::max)
}

/// Smallest excess of `z` over all discs.
pub fn gershgorin_excess(discs: &[GershgorinDisc], z: Complex64) -> f64 {
    discs
        .iter()
        .map(|d| d.excess(z))
        .fold(f64::INFINITY, f64::min)
}

/// Whether every value lies in the union of the discs, up to
/// `tol·(1 + max(|center| + radius))`.
pub fn gershgorin_contains(discs: &[GershgorinDisc], spectrum: &TEigenSpectrum, tol: f64) -> bool {
    let allowed = tol * (1.0 + disc_scale(discs));
    spectrum
        .values
        .iter()
        .all(|&z| gershgorin_excess(discs, z) <= allowed)
}

/// A connected component of the disc union.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentCount {
    /// Row indices of the discs in this component.
    pub discs: Vec<usize>,
    pub disc_count: usize,
    /// t-eigenvalues in the component, counted with multiplicity.
    pub eigenvalue_count: usize,
    /// `eigenvalue_count / n3`, comparable with `disc_count`.
    pub normalized_count: f64,
    /// `eigenvalue_count == disc_count · n3`.
    pub consistent: bool,
}

/// Groups discs into connected components (discs overlap when
/// `|c₁ − c₂| ≤ r₁ + r₂`) and counts the t-eigenvalues in each. Every
/// tensor disc stands for `n3` rows of `bcirc(A)`, so a component of `k`
/// discs should hold `k·n3` t-eigenvalues. Each value is assigned to the
/// component of the disc it exceeds least.
pub fn gershgorin_component_count(
    discs: &[GershgorinDisc],
    spectrum: &TEigenSpectrum,
    n3: usize,
) -> Vec<ComponentCount> {
    let n = discs.len();
    let mut component = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut members = vec![start];
        component[start] = id;
        let mut head = 0;
        while head < members.len() {
            let i = members[head];
            head += 1;
            for j in 0..n {
                if component[j] == usize::MAX && discs[i].overlaps(&discs[j]) {
                    component[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }
    let mut counts = vec![0usize; groups.len()];
    for &z in &spectrum.values {
        let nearest = (0..n)
            .min_by(|&x, &y| discs[x].excess(z).total_cmp(&discs[y].excess(z)))
            .expect("at least one disc");
        counts[component[nearest]] += 1;
    }
    groups
        .into_iter()
        .zip(counts)
        .map(|(discs, eigenvalue_count)| ComponentCount {
            disc_count: discs.len(),
            normalized_count: eigenvalue_count as f64 / n3 as f64,
            consistent: eigenvalue_count == discs.len() * n3,
            discs,
            eigenvalue_count,
        })
        .collect()
}

/// Containment and component-counting certificates for one tensor.
pub fn gershgorin_certificates(a: &Tensor3, ctx: &CheckContext) -> Result<[InequalityCertificate; 2]> {
    let discs = gershgorin_discs(a)?;
    let spectrum = t_eigenvalues(a)?;
    let inst = ctx.instance(TheoremId::Gershgorin, a.dims());
    let worst = spectrum
        .values
        .iter()
        .map(|&z| gershgorin_excess(&discs, z))
        .fold(f64::NEG_INFINITY, f64::max);
    let containment = InequalityCertificate::bound(
        &inst,
        "t-eigenvalues lie in the union of discs",
        NormKind::NotApplicable,
        worst,
        0.0,
        ctx.tol * (1.0 + disc_scale(&discs)),
    );
    let mismatched = gershgorin_component_count(&discs, &spectrum, a.n3())
        .iter()
        .filter(|c| !c.consistent)
        .count();
    let counting = InequalityCertificate::bound(
        &inst,
        "component of k discs holds k*n3 t-eigenvalues",
        NormKind::NotApplicable,
        mismatched as f64,
        0.0,
        0.0,
    );
    Ok([containment, counting])
}

/// Bauer-Fike bound for `A = Q⁻¹∗S∗Q` with `S` f-diagonal: every
/// t-eigenvalue `λ` of `A` has a t-eigenvalue `μ` of `B` with
/// `|λ − μ| ≤ ‖Q⁻¹‖₂‖Q‖₂‖A − B‖₂`.
///
/// The certificate compares `max_λ min_μ |λ − μ|` with the bound; the
/// threshold is `tol·(1 + bound + ‖A‖₂)` since eigenvalue roundoff scales
/// with `‖A‖₂`.
pub fn bauer_fike(
    a: &Tensor3,
    b: &Tensor3,
    q: &Tensor3,
    s: &Tensor3,
    ctx: &CheckContext,
) -> Result<InequalityCertificate> {
    require_same_square(&[a, b, q, s])?;
    let diag = is_f_diagonal(s, ctx.tol);
    if !diag.holds {
        return Err(hypothesis(format!("S is not f-diagonal (residual {:e})", diag.residual)));
    }
    let q_inv = t_inverse(q, DEFAULT_INVERSE_TOL)?;
    let rebuilt = t_product_chain(&[&q_inv, s, q])?;
    let residual = (&rebuilt - a).frobenius_norm();
    if residual > 1e-8 * (1.0 + a.frobenius_norm()) {
        return Err(hypothesis(format!(
            "A is not reproduced by Q^-1*S*Q (residual {residual:e})"
        )));
    }
    let lambda = t_eigenvalues(a)?;
    let mu = t_eigenvalues(b)?;
    let lhs = lambda
        .values
        .iter()
        .map(|l| mu.values.iter().map(|m| (l - m).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let rhs = spectral_norm(&q_inv) * spectral_norm(q) * spectral_norm(&(a - b));
    let inst = ctx.instance(TheoremId::BauerFike, a.dims());
    Ok(InequalityCertificate::bound(
        &inst,
        "max |lambda - nearest mu| <= ||Q^-1||_2 ||Q||_2 ||A-B||_2",
        NormKind::Spectral,
        lhs,
        rhs,
        ctx.tol * (1.0 + rhs + spectral_norm(a)),
    ))
}

/// Optimal pairing of two t-spectra with the Hoffman-Wielandt bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingReport {
    /// t-eigenvalue `i` of `A` is paired with t-eigenvalue
    /// `permutation[i]` of `B`.
    pub permutation: Vec<usize>,
    pub matched_distance: f64,
    /// `√n3·‖B − A‖_F`, from `‖bcirc(X)‖_F = √n3·‖X‖_F`.
    pub bound_sqrt: f64,
    /// `n3·‖B − A‖_F`, the constant as printed.
    pub bound_n3: f64,
}

/// Hoffman-Wielandt for normal `A`, `B`: the optimally matched spectra
/// satisfy `(Σ|μ_{π(i)} − λ_i|²)^{1/2} ≤ √n3‖B − A‖_F ≤ n3‖B − A‖_F`.
/// For symmetric inputs the ascending pairing is certified as well.
pub fn hoffman_wielandt(
    a: &Tensor3,
    b: &Tensor3,
    ctx: &CheckContext,
) -> Result<(MatchingReport, Vec<InequalityCertificate>)> {
    require_same_square(&[a, b])?;
    for (t, name) in [(a, "A"), (b, "B")] {
        let p = is_normal(t, ctx.tol);
        if !p.holds {
            return Err(hypothesis(format!("{name} is not normal (residual {:e})", p.residual)));
        }
    }
    let lambda = t_eigenvalues(a)?;
    let mu = t_eigenvalues(b)?;
    let matching = match_spectra(&lambda.values, &mu.values);
    let diff = (b - a).frobenius_norm();
    let n3 = a.n3() as f64;
    let report = MatchingReport {
        permutation: matching.permutation,
        matched_distance: matching.distance,
        bound_sqrt: n3.sqrt() * diff,
        bound_n3: n3 * diff,
    };
    let inst = ctx.instance(TheoremId::HoffmanWielandt, a.dims());
    let f = NormKind::Frobenius;
    let mut certs = vec![
        InequalityCertificate::norm(&inst, "optimal matching <= sqrt(n3) ||B-A||_F", f, report.matched_distance, report.bound_sqrt, ctx.tol),
        InequalityCertificate::norm(&inst, "optimal matching <= n3 ||B-A||_F", f, report.matched_distance, report.bound_n3, ctx.tol),
    ];
    let symmetric = crate::algebra::is_symmetric(a, ctx.tol).holds && crate::algebra::is_symmetric(b, ctx.tol).holds;
    if symmetric {
        let mut l = lambda.real_values();
        let mut m = mu.real_values();
        l.sort_by(f64::total_cmp);
        m.sort_by(f64::total_cmp);
        let sorted = l
            .iter()
            .zip(&m)
            .map(|(x, y)| (x - y).powi(2))
            .sum::<f64>()
            .sqrt();
        certs.push(InequalityCertificate::norm(&inst, "ascending pairing <= sqrt(n3) ||B-A||_F", f, sorted, report.bound_sqrt, ctx.tol));
        certs.push(InequalityCertificate::norm(&inst, "ascending pairing <= n3 ||B-A||_F", f, sorted, report.bound_n3, ctx.tol));
    }
    Ok((report, certs))
}

/// Real t-eigenvalues of a symmetric tensor ordered by descending modulus
/// (ties by descending value).
fn by_descending_modulus(a: &Tensor3) -> Result<Vec<f64>> {
    let mut values = t_eigenvalues(a)?.real_values();
    values.sort_by(|x, y| y.abs().total_cmp(&x.abs()).then(y.total_cmp(x)));
    Ok(values)
}

/// Spectrum bounds for `T = A + iB` with symmetric `A`, `B`; `α`, `β` are
/// the t-eigenvalues of `A`, `B` by descending modulus.
///
/// Emits `(1/n3)(Σ α_k² + β_k²)^{1/2} ≤ √2‖T‖_F` (printed constant), the
/// tighter `(1/√n3)(…)^{1/2} ≤ √2‖T‖_F`, and
/// `max_k (α_k² + β_k²)^{1/2} ≤ √2‖T‖₂`.
pub fn diag_spectrum_bound(
    a: &Tensor3,
    b: &Tensor3,
    ctx: &CheckContext,
) -> Result<[InequalityCertificate; 3]> {
    require_same_square(&[a, b])?;
    require_symmetric(a, "A", ctx.tol)?;
    require_symmetric(b, "B", ctx.tol)?;
    let alpha = by_descending_modulus(a)?;
    let beta = by_descending_modulus(b)?;
    let t = ComplexTensor3::from_parts(a, b)?;
    let n3 = a.n3() as f64;
    let sum: f64 = alpha.iter().zip(&beta).map(|(x, y)| x * x + y * y).sum();
    let largest = alpha
        .iter()
        .zip(&beta)
        .map(|(x, y)| x.hypot(*y))
        .fold(0.0, f64::max);
    let frob = 2f64.sqrt() * t.frobenius_norm();
    let spec = 2f64.sqrt() * spectral_norm(&t);
    let inst = ctx.instance(TheoremId::DiagSpectrum, a.dims());
    Ok([
        InequalityCertificate::norm(&inst, "(1/n3)||diag(alpha+i beta)||_F <= sqrt2 ||T||_F", NormKind::Frobenius, sum.sqrt() / n3, frob, ctx.tol),
        InequalityCertificate::norm(&inst, "(1/sqrt(n3))||diag(alpha+i beta)||_F <= sqrt2 ||T||_F", NormKind::Frobenius, sum.sqrt() / n3.sqrt(), frob, ctx.tol),
        InequalityCertificate::norm(&inst, "||diag(alpha+i beta)||_2 <= sqrt2 ||T||_2", NormKind::Spectral, largest, spec, ctx.tol),
    ])
}
