//! Canonical Christoffel and Geronimus transformations at a real point.

use statrs::function::beta::ln_beta;

use crate::classical::JacobiParams;
use crate::error::{Error, Result};
use crate::poly::{MonicPoly, COEFF_DEGREE_LIMIT};
use crate::recurrence::{
    build_sequence, eval_sequence, Recurrence, RecurrenceTable, Shifted,
};

fn existence(index: usize, reason: impl Into<String>) -> Error {
    Error::ExistenceViolation {
        index,
        reason: reason.into(),
    }
}

/// Kernel polynomials C_n(x; a) of a base family: the monic OPS for the
/// functional multiplied by (x - a).
#[derive(Debug, Clone)]
pub struct ChristoffelFamily<R> {
    pub base: R,
    pub a: f64,
}

impl<R: Recurrence> ChristoffelFamily<R> {
    pub fn new(base: R, a: f64) -> Self {
        Self { base, a }
    }

    /// P_0(a), ..., P_n(a), failing if any of P_0..P_limit vanish.
    fn values_at_point(&self, n: usize, limit: usize) -> Result<Vec<f64>> {
        let vals = eval_sequence(&self.base, n, self.a)?;
        if let Some(k) = vals.iter().take(limit + 1).position(|&v| v == 0.0 || !v.is_finite()) {
            return Err(existence(k, format!("P_{k} vanishes at a = {}", self.a)));
        }
        Ok(vals)
    }

    /// Coefficients of C_n(x; a), by deflating the bracket
    /// P_{n+1} - (P_{n+1}(a)/P_n(a)) P_n by (x - a).
    pub fn polynomial(&self, n: usize) -> Result<MonicPoly<f64>> {
        if n + 1 > COEFF_DEGREE_LIMIT {
            return Err(Error::DegreeLimit {
                requested: n + 1,
                limit: COEFF_DEGREE_LIMIT,
            });
        }
        let vals = self.values_at_point(n + 1, n)?;
        let seq = build_sequence(&self.base, n + 1)?;
        let ratio = vals[n + 1] / vals[n];
        let mut bracket = seq[n + 1].coeffs().to_vec();
        for (k, &q) in seq[n].coeffs().iter().enumerate() {
            bracket[k] -= ratio * q;
        }
        let bracket = MonicPoly::new(bracket)?;
        let scale = seq[n + 1].max_coeff() + ratio.abs() * seq[n].max_coeff();
        Ok(bracket.deflate_with_tol(self.a, 1e-9 * scale.max(1.0))?.quotient)
    }

    /// C_n(x; a). Near x = a the quotient form cancels badly, so the
    /// coefficient path is used there.
    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        let near = (x - self.a).abs() <= 1e-4 * (1.0 + self.a.abs());
        if near && n < COEFF_DEGREE_LIMIT {
            return Ok(self.polynomial(n)?.eval(x));
        }
        if x == self.a {
            return Err(Error::DegreeLimit {
                requested: n + 1,
                limit: COEFF_DEGREE_LIMIT,
            });
        }
        let at_a = self.values_at_point(n + 1, n)?;
        let at_x = eval_sequence(&self.base, n + 1, x)?;
        Ok((at_x[n + 1] - at_a[n + 1] / at_a[n] * at_x[n]) / (x - self.a))
    }

    /// c^c_1..c^c_N and lambda^c_2..lambda^c_N.
    pub fn recurrence(&self, n_max: usize) -> Result<RecurrenceTable> {
        let p = self.values_at_point(n_max + 1, n_max)?;
        let mut c = Vec::with_capacity(n_max);
        let mut lambda = Vec::with_capacity(n_max.saturating_sub(1));
        for n in 1..=n_max {
            let num = p[n] * p[n] - p[n - 1] * p[n + 1];
            c.push(self.base.c(n + 1)? - num / (p[n - 1] * p[n]));
            if n >= 2 {
                lambda.push(self.base.lambda(n)? * p[n] * p[n - 2] / (p[n - 1] * p[n - 1]));
            }
        }
        RecurrenceTable::new(c, lambda)
    }
}

/// Geronimus polynomials G_n(x; a) = P_n(x) + t_n(a) P_{n-1}(x) for the
/// functional divided by (x - a) plus a point mass `mass` at a.
/// `mu0` is the total mass of the base functional.
#[derive(Debug, Clone)]
pub struct GeronimusFamily<R> {
    pub base: R,
    pub a: f64,
    pub mass: f64,
    pub mu0: f64,
}

impl<R: Recurrence> GeronimusFamily<R> {
    pub fn new(base: R, a: f64, mass: f64, mu0: f64) -> Self {
        Self { base, a, mass, mu0 }
    }

    /// t_0(a) = 0, t_1(a), ..., t_{n_max}(a).
    ///
    /// t_n = -(mu0 P1_n(a) + N P_n(a)) / (mu0 P1_{n-1}(a) + N P_{n-1}(a)),
    /// with P1_n the first associated polynomial of degree n - 1.
    pub fn coefficients(&self, n_max: usize) -> Result<Vec<f64>> {
        let p = eval_sequence(&self.base, n_max, self.a)?;
        let mut p1 = vec![0.0];
        if n_max >= 1 {
            p1.extend(eval_sequence(&Shifted(&self.base), n_max - 1, self.a)?);
        }
        let mut t = vec![0.0];
        for n in 1..=n_max {
            let num = self.mu0 * p1[n] + self.mass * p[n];
            let den = self.mu0 * p1[n - 1] + self.mass * p[n - 1];
            if den == 0.0 || !den.is_finite() {
                return Err(existence(n, "Geronimus denominator vanishes"));
            }
            t.push(-num / den);
        }
        Ok(t)
    }

    pub fn coefficient(&self, n: usize) -> Result<f64> {
        Ok(self.coefficients(n)?[n])
    }

    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        if n == 0 {
            return Ok(1.0);
        }
        let t = self.coefficient(n)?;
        let vals = eval_sequence(&self.base, n, x)?;
        Ok(vals[n] + t * vals[n - 1])
    }

    pub fn polynomial(&self, n: usize) -> Result<MonicPoly<f64>> {
        let seq = build_sequence(&self.base, n)?;
        if n == 0 {
            return Ok(MonicPoly::one());
        }
        crate::poly::linear_combine(&seq[n], &seq[n - 1], self.coefficient(n)?)
    }

    /// c^g_{n+1} = c_{n+1} + t_n - t_{n+1} (n >= 0),
    /// lambda^g_{n+1} = lambda_n t_n / t_{n-1} (n >= 2),
    /// lambda^g_2 = lambda_2 + t_1 (c_1 - c^g_2).
    pub fn recurrence(&self, n_max: usize) -> Result<RecurrenceTable> {
        let t = self.coefficients(n_max)?;
        let mut c = Vec::with_capacity(n_max);
        for n in 0..n_max {
            c.push(self.base.c(n + 1)? + t[n] - t[n + 1]);
        }
        let mut lambda = Vec::with_capacity(n_max.saturating_sub(1));
        for n in 1..n_max {
            let value = if n == 1 {
                self.base.lambda(2)? + t[1] * (self.base.c(1)? - c[1])
            } else {
                if t[n - 1] == 0.0 {
                    return Err(Error::Division(format!("t_{} vanishes", n - 1)));
                }
                self.base.lambda(n)? * t[n] / t[n - 1]
            };
            lambda.push(value);
        }
        RecurrenceTable::new(c, lambda)
    }
}

impl GeronimusFamily<JacobiParams> {
    /// Geronimus transform of the Jacobi weight at a = -1 with
    /// N = 2^(a+b) B(a+1, b) and mu0 = 2^(a+b+1) B(a+1, b+1); the result is
    /// Jacobi with parameters (alpha, beta - 1).
    pub fn jacobi_calibrated(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > 0.0) {
            return Err(Error::Domain(format!(
                "calibrated Geronimus needs alpha > -1 and beta > 0, got ({alpha}, {beta})"
            )));
        }
        let ln2 = std::f64::consts::LN_2;
        let mass = ((alpha + beta) * ln2 + ln_beta(alpha + 1.0, beta)).exp();
        let mu0 = ((alpha + beta + 1.0) * ln2 + ln_beta(alpha + 1.0, beta + 1.0)).exp();
        Ok(Self::new(JacobiParams::new(alpha, beta)?, -1.0, mass, mu0))
    }
}

/// Residual of the three-term recurrence for an explicitly evaluated family:
/// |x Q_n - Q_{n+1} - c_{n+1} Q_n - lambda_{n+1} Q_{n-1}|.
pub fn ttrr_residual<R, F>(rc: &R, n: usize, x: f64, family: F) -> Result<f64>
where
    R: Recurrence,
    F: Fn(usize, f64) -> Result<f64>,
{
    let (q_next, q) = (family(n + 1, x)?, family(n, x)?);
    let mut r = x * q - q_next - rc.c(n + 1)? * q;
    if n >= 1 {
        r -= rc.lambda(n + 1)? * family(n - 1, x)?;
    }
    Ok(r.abs())
}
