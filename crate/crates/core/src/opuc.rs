//! Orthogonal polynomials on the unit circle: Szegő recursion, CD kernels,
//! the Christoffel transformation at a point and its quasi variant.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{horner, linear_combine, MonicPoly, COEFF_DEGREE_LIMIT};
use crate::zeros::general_roots;

/// Default band around |z| = 1 for [`classify_unit_disc`].
pub const CIRCLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerblunskyClosedForm {
    /// Normalized arc length: all alpha_n = 0.
    Lebesgue,
    /// Lebesgue measure times |z - 1|^2: alpha_n = -1/(n+2).
    ChristoffelAtOne,
    /// Lebesgue measure times |z - i|^2: alpha_n = (-1)^n i^(n+1)/(n+2).
    ChristoffelAtI,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "id")]
pub enum VerblunskySource {
    ExplicitTable,
    ClosedForm(VerblunskyClosedForm),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerblunskySequence {
    alphas: Vec<Complex64>,
    pub source: VerblunskySource,
}

impl VerblunskySequence {
    pub fn new(alphas: Vec<Complex64>) -> Result<Self> {
        Self::with_source(alphas, VerblunskySource::ExplicitTable)
    }

    fn with_source(alphas: Vec<Complex64>, source: VerblunskySource) -> Result<Self> {
        if let Some(k) = alphas.iter().position(|a| !(a.norm() < 1.0)) {
            return Err(Error::Domain(format!("|alpha_{k}| = {} is not below 1", alphas[k].norm())));
        }
        Ok(Self { alphas, source })
    }

    /// alpha_0..alpha_{len-1} of a closed-form sequence.
    pub fn closed_form(id: VerblunskyClosedForm, len: usize) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let alphas = (0..len)
            .map(|n| {
                let d = (n + 2) as f64;
                match id {
                    VerblunskyClosedForm::Lebesgue => Complex64::new(0.0, 0.0),
                    VerblunskyClosedForm::ChristoffelAtOne => Complex64::new(-1.0 / d, 0.0),
                    VerblunskyClosedForm::ChristoffelAtI => {
                        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                        i.powu(n as u32 + 1) * (sign / d)
                    }
                }
            })
            .collect();
        Self {
            alphas,
            source: VerblunskySource::ClosedForm(id),
        }
    }

    pub fn alphas(&self) -> &[Complex64] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    fn need(&self, n: usize) -> Result<()> {
        if n > self.alphas.len() {
            return Err(Error::MissingCoefficient {
                name: "alpha",
                index: n - 1,
            });
        }
        if n > COEFF_DEGREE_LIMIT {
            return Err(Error::DegreeLimit {
                requested: n,
                limit: COEFF_DEGREE_LIMIT,
            });
        }
        Ok(())
    }
}

/// Coefficients of the reversed polynomial p*(z) = z^n conj(p(1/conj z)).
pub fn reversed(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().rev().map(|c| c.conj()).collect()
}

/// Phi_0..Phi_n from Phi_{k+1}(z) = z Phi_k(z) - conj(alpha_k) Phi_k*(z).
pub fn szego_sequence(v: &VerblunskySequence, n: usize) -> Result<Vec<MonicPoly<Complex64>>> {
    v.need(n)?;
    let mut out = vec![MonicPoly::<Complex64>::one()];
    for k in 0..n {
        let phi = &out[k];
        let star = reversed(phi.coeffs());
        let a = v.alphas[k].conj();
        let mut next = phi.mul_x().into_coeffs();
        for (j, s) in star.iter().enumerate() {
            next[j] -= a * s;
        }
        let next = MonicPoly::new(next)?;
        let back = -next.coeffs()[0].conj();
        if (back - v.alphas[k]).norm() > 1e-13 {
            return Err(Error::NumericFailure {
                message: format!("alpha_{k} not recovered from Phi_{}(0)", k + 1),
                residuals: vec![(back - v.alphas[k]).norm()],
            });
        }
        out.push(next);
    }
    Ok(out)
}

/// ||Phi_k||^2 = mass * prod_{j<k} (1 - |alpha_j|^2) for k = 0..=n.
pub fn squared_norms(v: &VerblunskySequence, n: usize, mass: f64) -> Result<Vec<f64>> {
    v.need(n)?;
    let mut out = vec![mass];
    for k in 0..n {
        out.push(out[k] * (1.0 - v.alphas[k].norm_sqr()));
    }
    Ok(out)
}

fn check_kernel_inputs(phis: &[MonicPoly<Complex64>], norms: &[f64], n: usize) -> Result<()> {
    if phis.len() <= n || norms.len() <= n {
        return Err(Error::Shape(format!(
            "kernel of order {n} needs {} polynomials and norms, got {} and {}",
            n + 1,
            phis.len(),
            norms.len()
        )));
    }
    Ok(())
}

/// K_n(z, w) = sum_{k<=n} Phi_k(z) conj(Phi_k(w)) / ||Phi_k||^2.
pub fn cd_kernel(phis: &[MonicPoly<Complex64>], norms: &[f64], n: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
    check_kernel_inputs(phis, norms, n)?;
    Ok((0..=n).map(|k| phis[k].eval(z) * phis[k].eval(w).conj() / norms[k]).sum())
}

/// Coefficients of z -> K_n(z, w).
fn kernel_coeffs(phis: &[MonicPoly<Complex64>], norms: &[f64], n: usize, w: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in 0..=n {
        let weight = phis[k].eval(w).conj() / norms[k];
        for (j, c) in phis[k].coeffs().iter().enumerate() {
            out[j] += c * weight;
        }
    }
    out
}

/// Phi_{n-1}(z; g) for the base measure times |z - g|^2:
/// (Phi_n(z) - Phi_n(g) K_{n-1}(z, g) / K_{n-1}(g, g)) / (z - g),
/// formed in coefficient space so z = g needs no special case.
pub fn christoffel_opuc_poly(v: &VerblunskySequence, g: Complex64, n: usize) -> Result<MonicPoly<Complex64>> {
    if n == 0 {
        return Err(Error::Domain("circle Christoffel polynomial needs n >= 1".into()));
    }
    let phis = szego_sequence(v, n)?;
    let norms = squared_norms(v, n, 1.0)?;
    let kgg = cd_kernel(&phis, &norms, n - 1, g, g)?;
    if !(kgg.re > 0.0) {
        return Err(Error::ExistenceViolation {
            index: n - 1,
            reason: format!("K_{}(g, g) = {kgg} is not positive", n - 1),
        });
    }
    let ratio = phis[n].eval(g) / kgg.re;
    let kernel = kernel_coeffs(&phis, &norms, n - 1, g);
    let mut bracket = phis[n].coeffs().to_vec();
    for (j, k) in kernel.iter().enumerate() {
        bracket[j] -= ratio * k;
    }
    let scale = phis[n].max_coeff() + ratio.norm() * kernel.iter().map(|k| k.norm()).fold(0.0, f64::max);
    let bracket = MonicPoly::new(bracket)?;
    Ok(bracket.deflate_with_tol(g, 1e-10 * scale.max(1.0))?.quotient)
}

pub fn christoffel_opuc(v: &VerblunskySequence, g: Complex64, n: usize, z: Complex64) -> Result<Complex64> {
    Ok(christoffel_opuc_poly(v, g, n)?.eval(z))
}

/// Phi_n(z; g, a) = Phi_n(z; g) - a Phi_{n-1}(z; g).
pub fn quasi_christoffel_opuc_poly(v: &VerblunskySequence, g: Complex64, a: Complex64, n: usize) -> Result<MonicPoly<Complex64>> {
    if n == 0 {
        return Err(Error::Domain("quasi circle polynomial needs n >= 1".into()));
    }
    let top = christoffel_opuc_poly(v, g, n + 1)?;
    let below = christoffel_opuc_poly(v, g, n)?;
    linear_combine(&top, &below, -a)
}

pub fn quasi_christoffel_opuc(v: &VerblunskySequence, g: Complex64, a: Complex64, n: usize, z: Complex64) -> Result<Complex64> {
    Ok(quasi_christoffel_opuc_poly(v, g, a, n)?.eval(z))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitCircleZeroReport {
    pub roots: Vec<Complex64>,
    pub inside_disc: usize,
    pub on_circle: usize,
    pub outside_disc: usize,
}

/// Roots of p classed by modulus against 1 with an on-circle band of `tol`.
pub fn classify_unit_disc(p: &MonicPoly<Complex64>, tol: f64) -> Result<UnitCircleZeroReport> {
    let zs = general_roots(p)?;
    let mut report = UnitCircleZeroReport {
        roots: zs.roots.clone(),
        inside_disc: 0,
        on_circle: 0,
        outside_disc: 0,
    };
    for r in &zs.roots {
        let m = r.norm();
        if (m - 1.0).abs() <= tol {
            report.on_circle += 1;
        } else if m < 1.0 {
            report.inside_disc += 1;
        } else {
            report.outside_disc += 1;
        }
    }
    Ok(report)
}

/// Value of a coefficient vector, for callers holding non-monic data such
/// as reversed polynomials.
pub fn eval_coeffs(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    horner(coeffs, z)
}
