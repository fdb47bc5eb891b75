//! Zeros of orthogonal and quasi-orthogonal polynomials, interlacing and
//! support classification.

use std::cmp::Ordering;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{eval_scale, horner, MonicPoly, Scalar};
use crate::recurrence::{build_sequence, eval_recurrence, is_positive_through, Recurrence};

/// Roots are treated as real when |Im| is below this.
pub const REAL_TOL: f64 = 1e-9;
/// Default band for classing a root as sitting on an endpoint.
pub const BOUNDARY_TOL: f64 = 1e-6;

const MAX_SWEEPS: usize = 200;
const START_PHASE: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootMethod {
    TridiagonalEig,
    GeneralIteration,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroSet {
    /// Sorted by real part, then imaginary part.
    pub roots: Vec<Complex64>,
    /// |p(root)| for each root.
    pub residuals: Vec<f64>,
    pub method: RootMethod,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.roots.iter().all(|z| z.im.abs() < REAL_TOL)
    }

    /// Real parts, failing if any root has a visible imaginary part.
    pub fn real_roots(&self) -> Result<Vec<f64>> {
        if !self.is_real() {
            return Err(Error::Domain("zero set has complex roots".into()));
        }
        Ok(self.roots.iter().map(|z| z.re).collect())
    }
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Zeros of P_n. Positive-definite recurrences go through the eigenvalues
/// of the symmetrized Jacobi matrix; anything else falls back to
/// [`general_roots`] on the coefficient vector.
pub fn ops_zeros<R: Recurrence>(rc: &R, n: usize) -> Result<ZeroSet> {
    if n == 0 {
        return Ok(ZeroSet {
            roots: vec![],
            residuals: vec![],
            method: RootMethod::TridiagonalEig,
        });
    }
    if !is_positive_through(rc, n)? {
        let seq = build_sequence(rc, n)?;
        return general_roots(&seq[n]);
    }
    let mut m = DMatrix::zeros(n, n);
    for k in 0..n {
        m[(k, k)] = rc.c(k + 1)?;
        if k + 1 < n {
            let off = rc.lambda(k + 2)?.sqrt();
            m[(k, k + 1)] = off;
            m[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 1000).ok_or_else(|| Error::NumericFailure {
        message: "symmetric tridiagonal eigenvalues did not converge".into(),
        residuals: vec![],
    })?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let residuals = values
        .iter()
        .map(|&x| eval_recurrence(rc, n, x).map(f64::abs))
        .collect::<Result<_>>()?;
    Ok(ZeroSet {
        roots: values.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
        residuals,
        method: RootMethod::TridiagonalEig,
    })
}

fn newton_step(coeffs: &[Complex64], deriv: &[Complex64], z: Complex64) -> Complex64 {
    let d = horner(deriv, z);
    if d.norm() == 0.0 {
        return z;
    }
    z - horner(coeffs, z) / d
}

/// Aberth simultaneous iteration on the reduced polynomial (no zero roots).
fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = coeffs.len() - 1;
    if m == 1 {
        return Ok(vec![-coeffs[0]]);
    }
    let deriv: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect();
    let radius = 1.0 + coeffs[..m].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..m)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64 + START_PHASE;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut max_step: f64 = 0.0;
        for k in 0..m {
            let p = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / horner(&deriv, z[k]);
            let repulsion: Complex64 = (0..m)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm());
            }
        }
        if max_step < 1e-13 * radius {
            converged = true;
            break;
        }
    }
    for root in z.iter_mut() {
        for _ in 0..2 {
            let next = newton_step(coeffs, &deriv, *root);
            if next.re.is_finite() && next.im.is_finite() {
                *root = next;
            }
        }
    }
    let residuals: Vec<f64> = z.iter().map(|&r| horner(coeffs, r).norm()).collect();
    let ok = z
        .iter()
        .zip(&residuals)
        .all(|(&r, &res)| res <= 1e-8 * eval_scale(coeffs, r).max(f64::MIN_POSITIVE));
    if !ok {
        return Err(Error::NumericFailure {
            message: format!(
                "simultaneous iteration {} after {MAX_SWEEPS} sweeps",
                if converged { "left large residuals" } else { "did not converge" }
            ),
            residuals,
        });
    }
    Ok(z)
}

/// Make a root set of a real polynomial conjugate-symmetric: nearly real
/// roots become real and each upper root's partner becomes its exact
/// conjugate.
fn pair_conjugates(roots: &mut [Complex64]) {
    for r in roots.iter_mut() {
        if r.im.abs() <= 1e-10 * (1.0 + r.norm()) {
            r.im = 0.0;
        }
    }
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if roots[i].im <= 0.0 || used[i] {
            continue;
        }
        let target = roots[i].conj();
        let partner = (0..roots.len())
            .filter(|&j| !used[j] && roots[j].im < 0.0)
            .min_by(|&a, &b| (roots[a] - target).norm().total_cmp(&(roots[b] - target).norm()));
        if let Some(j) = partner {
            used[i] = true;
            used[j] = true;
            roots[j] = target;
        }
    }
}

/// All complex roots of a monic polynomial by Aberth iteration from a
/// rotated circle of radius 1 + max|a_k|, followed by two Newton steps per
/// root. Exact zero low-order coefficients are split off as roots at 0.
pub fn general_roots<T: Scalar>(p: &MonicPoly<T>) -> Result<ZeroSet> {
    let coeffs: Vec<Complex64> = p.coeffs().iter().map(|c| c.to_complex()).collect();
    if p.degree() == 0 {
        return Err(Error::Domain("constant polynomial has no roots".into()));
    }
    let real_input = coeffs.iter().all(|c| c.im == 0.0);
    let zeros_at_origin = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    let reduced = &coeffs[zeros_at_origin..];
    if reduced.len() > 1 {
        roots.extend(aberth(reduced)?);
    }
    if real_input {
        pair_conjugates(&mut roots);
    }
    sort_roots(&mut roots);
    let residuals = roots.iter().map(|&r| horner(&coeffs, r).norm()).collect();
    Ok(ZeroSet {
        roots,
        residuals,
        method: RootMethod::GeneralIteration,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterlacingReport {
    pub strict: bool,
    /// Labels of the merged sorted sequence, 'a' or 'b' per root.
    pub pattern: String,
    /// Adjacent positions in the merged sequence that break alternation.
    pub violations: Vec<(usize, usize)>,
    /// Roots dropped before the test, from either input.
    pub removed: Vec<f64>,
}

/// Strict alternation test of two real zero sets.
pub fn interlace(a: &ZeroSet, b: &ZeroSet) -> Result<InterlacingReport> {
    interlace_values(a.real_roots()?, b.real_roots()?, vec![])
}

/// As [`interlace`], after dropping roots within `tol` of `point` from
/// whichever sets contain them; a shared boundary root cannot take part in
/// strict alternation.
pub fn interlace_excluding(a: &ZeroSet, b: &ZeroSet, point: f64, tol: f64) -> Result<InterlacingReport> {
    let (mut xs, mut ys) = (a.real_roots()?, b.real_roots()?);
    if xs.len().abs_diff(ys.len()) > 1 {
        return Err(Error::Shape(format!("degrees {} and {} differ by more than one", xs.len(), ys.len())));
    }
    let mut removed = vec![];
    for set in [&mut xs, &mut ys] {
        set.retain(|&x| {
            let near = (x - point).abs() < tol;
            if near {
                removed.push(x);
            }
            !near
        });
    }
    interlace_values(xs, ys, removed)
}

fn interlace_values(xs: Vec<f64>, ys: Vec<f64>, removed: Vec<f64>) -> Result<InterlacingReport> {
    if xs.len().abs_diff(ys.len()) > 1 {
        return Err(Error::Shape(format!("degrees {} and {} differ by more than one", xs.len(), ys.len())));
    }
    let mut merged: Vec<(f64, char)> = xs
        .into_iter()
        .map(|x| (x, 'a'))
        .chain(ys.into_iter().map(|y| (y, 'b')))
        .collect();
    merged.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
    let violations: Vec<(usize, usize)> = merged
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].1 == w[1].1 || (w[1].0 - w[0].0).abs() <= 1e-12 * (1.0 + w[0].0.abs()))
        .map(|(i, _)| (i, i + 1))
        .collect();
    Ok(InterlacingReport {
        strict: violations.is_empty(),
        pattern: merged.iter().map(|p| p.1).collect(),
        violations,
        removed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SupportCounts {
    pub inside: usize,
    pub left_outside: usize,
    pub right_outside: usize,
    pub on_boundary: usize,
}

/// Counts real roots relative to the interval [lo, hi]; `hi` may be
/// infinite.
pub fn classify_support(z: &ZeroSet, lo: f64, hi: f64, boundary_tol: f64) -> Result<SupportCounts> {
    let mut counts = SupportCounts::default();
    for x in z.real_roots()? {
        if (x - lo).abs() < boundary_tol || (hi.is_finite() && (x - hi).abs() < boundary_tol) {
            counts.on_boundary += 1;
        } else if x < lo {
            counts.left_outside += 1;
        } else if x > hi {
            counts.right_outside += 1;
        } else {
            counts.inside += 1;
        }
    }
    Ok(counts)
}

/// Ordering helper for callers that sort mixed root lists.
pub fn root_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}
