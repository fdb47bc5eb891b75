//! Quasi-Christoffel and quasi-Geronimus polynomials of order one.
//!
//! Q_n(x) = C_n(x) + gamma_n C_{n-1}(x) where C is a transformed family given
//! by its recurrence. The same routines serve both transforms: only the base
//! recurrence differs.

use serde::{Deserialize, Serialize};

use crate::classical::{Classical, JacobiParams, LaguerreParams};
use crate::error::{nonzero, Error, Result};
use crate::poly::{linear_combine, MonicPoly, Scalar};
use crate::recurrence::{build_sequence, eval_recurrence, eval_sequence, Recurrence, RecurrenceTable};
use crate::spectral::ChristoffelFamily;

/// Default tolerance on the orthogonality residual before a quasi recurrence
/// is emitted.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuasiKind {
    QcJacobi,
    QcLaguerre,
    QgJacobi,
}

impl QuasiKind {
    pub fn solutions(self) -> u8 {
        match self {
            QuasiKind::QcLaguerre => 2,
            _ => 4,
        }
    }

    pub fn all() -> [QuasiKind; 3] {
        [QuasiKind::QcJacobi, QuasiKind::QcLaguerre, QuasiKind::QgJacobi]
    }

    pub fn is_jacobi(self) -> bool {
        !matches!(self, QuasiKind::QcLaguerre)
    }
}

impl std::str::FromStr for QuasiKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qc-jacobi" => Ok(QuasiKind::QcJacobi),
            "qc-laguerre" => Ok(QuasiKind::QcLaguerre),
            "qg-jacobi" => Ok(QuasiKind::QgJacobi),
            other => Err(Error::Domain(format!("unknown quasi family '{other}'"))),
        }
    }
}

impl std::fmt::Display for QuasiKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            QuasiKind::QcJacobi => "qc-jacobi",
            QuasiKind::QcLaguerre => "qc-laguerre",
            QuasiKind::QgJacobi => "qg-jacobi",
        })
    }
}

/// One of the ten closed-form solutions of the orthogonality difference
/// equation. Solutions are numbered per family, 1..=4 for Jacobi and
/// 1..=2 for Laguerre. `beta` is ignored for Laguerre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub kind: QuasiKind,
    pub solution: u8,
    pub alpha: f64,
    pub beta: f64,
}

impl ClosedForm {
    pub fn new(kind: QuasiKind, solution: u8, alpha: f64, beta: f64) -> Result<Self> {
        if solution == 0 || solution > kind.solutions() {
            return Err(Error::Domain(format!("{kind} has no solution {solution}")));
        }
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::Domain("non-finite parameters".into()));
        }
        let beta = if kind.is_jacobi() { beta } else { 0.0 };
        Ok(Self {
            kind,
            solution,
            alpha,
            beta,
        })
    }

    pub fn gamma(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Ok(0.0);
        }
        let (a, b, m) = (self.alpha, self.beta, n as f64);
        let (num, den) = match self.kind {
            QuasiKind::QcJacobi => {
                let den = (2.0 * m + a + b + 1.0) * (2.0 * m + a + b);
                let num = match self.solution {
                    1 => -2.0 * (a + m) * (m + a + b + 1.0),
                    2 => 2.0 * (b + m + 1.0) * (m + a + b + 1.0),
                    3 => 2.0 * m * (a + m),
                    _ => -2.0 * m * (b + m + 1.0),
                };
                (num, den)
            }
            QuasiKind::QcLaguerre => match self.solution {
                1 => (m + a + 1.0, 1.0),
                _ => (m, 1.0),
            },
            QuasiKind::QgJacobi => {
                let den = (2.0 * m + a + b - 1.0) * (2.0 * m + a + b - 2.0);
                let num = match self.solution {
                    1 => -2.0 * (a + m) * (m + a + b - 1.0),
                    2 => 2.0 * m * (a + m),
                    3 => -2.0 * m * (b + m - 1.0),
                    _ => 2.0 * (b + m - 1.0) * (m + a + b - 1.0),
                };
                (num, den)
            }
        };
        if den == 0.0 {
            return Err(Error::DegenerateParameter {
                index: n,
                reason: format!("{} solution {} denominator vanishes", self.kind, self.solution),
            });
        }
        Ok(num / den)
    }

    /// The untransformed family: Jacobi(alpha, beta) or Laguerre(alpha).
    pub fn original(&self) -> Classical {
        if self.kind.is_jacobi() {
            Classical::Jacobi(JacobiParams {
                alpha: self.alpha,
                beta: self.beta,
            })
        } else {
            Classical::Laguerre(LaguerreParams { alpha: self.alpha })
        }
    }

    /// Closed form of the transformed family the quasi polynomial is built on:
    /// Jacobi(alpha, beta + 1), Laguerre(alpha + 1) or Jacobi(alpha, beta - 1).
    pub fn base(&self) -> Classical {
        match self.kind {
            QuasiKind::QcJacobi => Classical::Jacobi(JacobiParams {
                alpha: self.alpha,
                beta: self.beta + 1.0,
            }),
            QuasiKind::QcLaguerre => Classical::Laguerre(LaguerreParams {
                alpha: self.alpha + 1.0,
            }),
            QuasiKind::QgJacobi => Classical::Jacobi(JacobiParams {
                alpha: self.alpha,
                beta: self.beta - 1.0,
            }),
        }
    }

    /// Transformation point: -1 for Jacobi, 0 for Laguerre.
    pub fn transform_point(&self) -> f64 {
        if self.kind.is_jacobi() {
            -1.0
        } else {
            0.0
        }
    }

    /// Root shared by every member of the family, if the compact form has a
    /// linear factor.
    pub fn common_root(&self) -> Option<f64> {
        match (self.kind, self.solution) {
            (QuasiKind::QcJacobi, 1) | (QuasiKind::QgJacobi, 1) => Some(1.0),
            (QuasiKind::QcJacobi, 2) | (QuasiKind::QgJacobi, 4) => Some(-1.0),
            (QuasiKind::QcLaguerre, 1) => Some(0.0),
            _ => None,
        }
    }

    /// Evaluates both sides of the compact form at x: the factored or
    /// connection form on the left, C_n + gamma_n C_{n-1} on the right.
    pub fn compact_form(&self, n: usize, x: f64) -> Result<FormComparison> {
        if n == 0 {
            return Err(Error::Domain("compact forms need n >= 1".into()));
        }
        let (a, b) = (self.alpha, self.beta);
        let jac = |aa: f64, bb: f64, k: usize| -> Result<f64> {
            eval_recurrence(&JacobiParams::new(aa, bb)?, k, x)
        };
        let lag = |aa: f64, k: usize| -> Result<f64> { eval_recurrence(&LaguerreParams::new(aa)?, k, x) };
        let lhs = match (self.kind, self.solution) {
            (QuasiKind::QcJacobi, 1) => (x - 1.0) * jac(a + 1.0, b + 1.0, n - 1)?,
            (QuasiKind::QcJacobi, 2) => (x + 1.0) * jac(a, b + 2.0, n - 1)?,
            (QuasiKind::QcJacobi, 3) => jac(a, b, n)?,
            (QuasiKind::QcJacobi, _) => jac(a - 1.0, b + 1.0, n)?,
            (QuasiKind::QcLaguerre, 1) => x * lag(a + 2.0, n - 1)?,
            (QuasiKind::QcLaguerre, _) => lag(a, n)?,
            (QuasiKind::QgJacobi, 1) => (x - 1.0) * jac(a + 1.0, b - 1.0, n - 1)?,
            (QuasiKind::QgJacobi, 2) => jac(a, b - 2.0, n)?,
            (QuasiKind::QgJacobi, 3) => jac(a - 1.0, b - 1.0, n)?,
            (QuasiKind::QgJacobi, _) => (x + 1.0) * jac(a, b, n - 1)?,
        };
        let base = self.base();
        let vals = eval_sequence(&base, n, x)?;
        let g = self.gamma(n)?;
        Ok(FormComparison {
            lhs,
            rhs: vals[n] + g * vals[n - 1],
            scale: vals[n].abs() + (g * vals[n - 1]).abs(),
        })
    }
}

/// Two evaluations of the same quantity and the size of the terms that went
/// into the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormComparison {
    pub lhs: f64,
    pub rhs: f64,
    pub scale: f64,
}

impl FormComparison {
    pub fn abs(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn relative(&self) -> f64 {
        self.abs() / self.scale.max(f64::MIN_POSITIVE)
    }
}

/// |LHS - RHS| of the compact form at x.
pub fn compact_form_residual(form: &ClosedForm, n: usize, x: f64) -> Result<f64> {
    Ok(form.compact_form(n, x)?.abs())
}

/// gamma_n as a function of n, with gamma_0 = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QuasiCoefficients {
    ClosedForm(ClosedForm),
    Constant { value: f64 },
    /// gamma_1, gamma_2, ... in order.
    Table { values: Vec<f64> },
}

impl QuasiCoefficients {
    pub fn constant(value: f64) -> Self {
        QuasiCoefficients::Constant { value }
    }

    pub fn table(values: Vec<f64>) -> Self {
        QuasiCoefficients::Table { values }
    }

    pub fn gamma(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Ok(0.0);
        }
        let value = match self {
            QuasiCoefficients::ClosedForm(cf) => cf.gamma(n)?,
            QuasiCoefficients::Constant { value } => *value,
            QuasiCoefficients::Table { values } => *values.get(n - 1).ok_or(Error::MissingCoefficient {
                name: "gamma",
                index: n,
            })?,
        };
        if !value.is_finite() {
            return Err(Error::Domain(format!("gamma_{n} is not finite")));
        }
        Ok(value)
    }
}

impl From<ClosedForm> for QuasiCoefficients {
    fn from(cf: ClosedForm) -> Self {
        QuasiCoefficients::ClosedForm(cf)
    }
}

/// C_n(x) + gamma_n C_{n-1}(x) with C generated by `base`.
pub fn quasi_eval<R: Recurrence, T: Scalar>(base: &R, gamma: &QuasiCoefficients, n: usize, x: T) -> Result<T> {
    let vals = eval_sequence(base, n, x)?;
    if n == 0 {
        return Ok(vals[0]);
    }
    Ok(vals[n] + T::from_f64(gamma.gamma(n)?) * vals[n - 1])
}

/// Coefficient vector of the quasi polynomial of degree n.
pub fn quasi_polynomial<R: Recurrence>(base: &R, gamma: &QuasiCoefficients, n: usize) -> Result<MonicPoly<f64>> {
    let seq = build_sequence(base, n)?;
    if n == 0 {
        return Ok(MonicPoly::one());
    }
    linear_combine(&seq[n], &seq[n - 1], gamma.gamma(n)?)
}

/// gamma_n (c_{n+1} - c_n + gamma_n - gamma_{n+1}) + (gamma_n / gamma_{n-1}) lambda_n - lambda_{n+1},
/// with c, lambda read from `base`. Zero for every n >= 2 exactly when the
/// quasi family satisfies a three-term recurrence.
pub fn orthogonality_residual<R: Recurrence>(base: &R, gamma: &QuasiCoefficients, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain("orthogonality residual needs n >= 2".into()));
    }
    let g_prev = nonzero(gamma.gamma(n - 1)?, || format!("gamma_{} = 0", n - 1))?;
    let g = nonzero(gamma.gamma(n)?, || format!("gamma_{n} = 0"))?;
    let g_next = gamma.gamma(n + 1)?;
    Ok(g * (base.c(n + 1)? - base.c(n)? + g - g_next) + g / g_prev * base.lambda(n)? - base.lambda(n + 1)?)
}

/// Recurrence of an orthogonalizable quasi family together with sign flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasiRecurrence {
    pub table: RecurrenceTable,
    /// lambda_k > 0 for k = 2..=N.
    pub positive: Vec<bool>,
    /// lambda_2 = 0: the family shares a root with Q_1 and is orthogonal
    /// only from degree one onward.
    pub lambda2_vanishes: bool,
}

impl QuasiRecurrence {
    pub fn is_positive_definite(&self) -> bool {
        self.positive.iter().all(|&p| p)
    }
}

/// c^{qc}_{n+1} = c_{n+1} + gamma_n - gamma_{n+1}, lambda^{qc}_{n+1} = (gamma_n / gamma_{n-1}) lambda_n,
/// lambda^{qc}_2 = lambda_2 + gamma_1 (c_1 - c^{qc}_2). The orthogonality
/// residual is checked against `tol` for 2 <= n <= N - 1, which covers every
/// index the emitted coefficients depend on.
pub fn quasi_recurrence<R: Recurrence>(
    base: &R,
    gamma: &QuasiCoefficients,
    n_max: usize,
    tol: f64,
) -> Result<QuasiRecurrence> {
    for n in 2..n_max {
        let r = orthogonality_residual(base, gamma, n)?;
        if !(r.abs() <= tol) {
            return Err(Error::NotOrthogonalizable { index: n, residual: r });
        }
    }
    let g: Vec<f64> = (0..=n_max).map(|n| gamma.gamma(n)).collect::<Result<_>>()?;
    let mut c = Vec::with_capacity(n_max);
    for n in 0..n_max {
        c.push(base.c(n + 1)? + g[n] - g[n + 1]);
    }
    let mut lambda = Vec::with_capacity(n_max.saturating_sub(1));
    let mut lambda2_vanishes = false;
    for n in 1..n_max {
        let value = if n == 1 {
            let (l2, shift) = (base.lambda(2)?, g[1] * (base.c(1)? - c[1]));
            let v = l2 + shift;
            if v.abs() <= 1e-13 * (l2.abs() + shift.abs()) {
                lambda2_vanishes = true;
                0.0
            } else {
                v
            }
        } else {
            let g_prev = nonzero(g[n - 1], || format!("gamma_{} = 0", n - 1))?;
            let v = g[n] / g_prev * base.lambda(n)?;
            if v == 0.0 {
                return Err(Error::DegenerateRecurrence { index: n + 1 });
            }
            v
        };
        lambda.push(value);
    }
    let positive = lambda.iter().map(|&l| l > 0.0).collect();
    Ok(QuasiRecurrence {
        table: RecurrenceTable::new(c, lambda)?,
        positive,
        lambda2_vanishes,
    })
}

/// Coefficients of the order-two representation
/// (x - a) Q_n(x) = P_{n+1}(x) + d_n P_n(x) + e_n P_{n-1}(x)
/// of a quasi-Christoffel polynomial in terms of the untransformed family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasiOrderTwoForm {
    pub d: f64,
    pub e: f64,
}

/// d_n = gamma_n - P_{n+1}(a)/P_n(a), e_n = -gamma_n P_n(a)/P_{n-1}(a).
pub fn quasi_order_two_form<R: Recurrence>(
    base: &R,
    a: f64,
    gamma: &QuasiCoefficients,
    n: usize,
) -> Result<QuasiOrderTwoForm> {
    if n == 0 {
        return Err(Error::Domain("order-two form needs n >= 1".into()));
    }
    let p = eval_sequence(base, n + 1, a)?;
    for k in [n - 1, n] {
        if p[k] == 0.0 {
            return Err(Error::ExistenceViolation {
                index: k,
                reason: format!("P_{k} vanishes at a = {a}"),
            });
        }
    }
    let g = gamma.gamma(n)?;
    Ok(QuasiOrderTwoForm {
        d: g - p[n + 1] / p[n],
        e: -g * p[n] / p[n - 1],
    })
}

/// Both sides of the order-two identity at x; the left side is built from
/// the Christoffel family of `base` at a.
pub fn order_two_comparison<R: Recurrence + Clone>(
    base: &R,
    a: f64,
    gamma: &QuasiCoefficients,
    n: usize,
    x: f64,
) -> Result<FormComparison> {
    let form = quasi_order_two_form(base, a, gamma, n)?;
    let kernel = ChristoffelFamily::new(base.clone(), a);
    let g = gamma.gamma(n)?;
    let (cn, cm) = (kernel.eval(n, x)?, kernel.eval(n - 1, x)?);
    let p = eval_sequence(base, n + 1, x)?;
    Ok(FormComparison {
        lhs: (x - a) * (cn + g * cm),
        rhs: p[n + 1] + form.d * p[n] + form.e * p[n - 1],
        scale: p[n + 1].abs() + (form.d * p[n]).abs() + (form.e * p[n - 1]).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Whether the quasi polynomial C_n + gamma C_{n-1} has exactly one zero
/// beyond `endpoint` on the given side of a positive-definite family:
/// right: gamma < -C_n(d)/C_{n-1}(d) < 0; left: gamma > -C_n(c)/C_{n-1}(c) > 0.
pub fn outside_zero_condition<R: Recurrence>(base: &R, gamma: f64, n: usize, endpoint: f64, side: Side) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("outside-zero test needs n >= 1".into()));
    }
    for k in 2..=n {
        if base.lambda(k)? <= 0.0 {
            return Err(Error::Domain(format!("base is not positive definite: lambda_{k} <= 0")));
        }
    }
    let vals = eval_sequence(base, n, endpoint)?;
    let den = nonzero(vals[n - 1], || format!("C_{}({endpoint}) = 0", n - 1))?;
    let bound = -vals[n] / den;
    Ok(match side {
        Side::Right => gamma < bound && bound < 0.0,
        Side::Left => gamma > bound && bound > 0.0,
    })
}
