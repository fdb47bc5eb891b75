//! Monic Jacobi and Laguerre recurrences and a few classical identities.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::recurrence::{eval_recurrence, eval_with_derivative, Recurrence};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaguerreParams {
    pub alpha: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::Domain(format!("non-finite Jacobi parameters ({alpha}, {beta})")));
        }
        Ok(Self { alpha, beta })
    }

    /// alpha, beta > -1: the weight (1-x)^alpha (1+x)^beta is integrable.
    pub fn is_classical(&self) -> bool {
        self.alpha > -1.0 && self.beta > -1.0
    }
}

impl LaguerreParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("non-finite Laguerre parameter {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn is_classical(&self) -> bool {
        self.alpha > -1.0
    }
}

fn degenerate(index: usize, reason: &str) -> Error {
    Error::DegenerateParameter {
        index,
        reason: reason.to_string(),
    }
}

impl Recurrence for JacobiParams {
    fn c(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::MissingCoefficient { name: "c", index: 0 });
        }
        let (a, b) = (self.alpha, self.beta);
        let m = (n - 1) as f64;
        let (num, den) = if n == 1 {
            // the common factor a + b cancels at the bottom index
            (b - a, a + b + 2.0)
        } else {
            let s = 2.0 * m + a + b;
            (b * b - a * a, s * (s + 2.0))
        };
        if den == 0.0 {
            return Err(degenerate(n - 1, "zero denominator in c"));
        }
        Ok(num / den)
    }

    fn lambda(&self, n: usize) -> Result<f64> {
        if n < 2 {
            return Err(Error::MissingCoefficient { name: "lambda", index: n });
        }
        let (a, b) = (self.alpha, self.beta);
        let m = (n - 1) as f64;
        let (num, den) = if n == 2 {
            // (m + a + b) / (s - 1) cancels at m = 1
            let s = 2.0 + a + b;
            (4.0 * (1.0 + a) * (1.0 + b), s * s * (s + 1.0))
        } else {
            let s = 2.0 * m + a + b;
            (
                4.0 * m * (m + a) * (m + b) * (m + a + b),
                s * s * (s + 1.0) * (s - 1.0),
            )
        };
        if den == 0.0 {
            return Err(degenerate(n - 1, "zero denominator in lambda"));
        }
        Ok(num / den)
    }
}

impl Recurrence for LaguerreParams {
    fn c(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::MissingCoefficient { name: "c", index: 0 });
        }
        Ok(2.0 * (n - 1) as f64 + self.alpha + 1.0)
    }

    fn lambda(&self, n: usize) -> Result<f64> {
        if n < 2 {
            return Err(Error::MissingCoefficient { name: "lambda", index: n });
        }
        let m = (n - 1) as f64;
        Ok(m * (m + self.alpha))
    }
}

/// Either classical family, for places that pick one at run time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Classical {
    Jacobi(JacobiParams),
    Laguerre(LaguerreParams),
}

impl Recurrence for Classical {
    fn c(&self, n: usize) -> Result<f64> {
        match self {
            Classical::Jacobi(p) => p.c(n),
            Classical::Laguerre(p) => p.c(n),
        }
    }
    fn lambda(&self, n: usize) -> Result<f64> {
        match self {
            Classical::Jacobi(p) => p.lambda(n),
            Classical::Laguerre(p) => p.lambda(n),
        }
    }
}

/// Leading coefficient of the standard Jacobi polynomial P_n^(a,b),
/// Gamma(2n+a+b+1) / (2^n n! Gamma(n+a+b+1)).
pub fn jacobi_leading_coefficient(n: usize, a: f64, b: f64) -> Result<f64> {
    if n == 0 {
        return Ok(1.0);
    }
    let nf = n as f64;
    let (top, bottom) = (2.0 * nf + a + b + 1.0, nf + a + b + 1.0);
    if top <= 0.0 || bottom <= 0.0 {
        return Err(degenerate(n, "leading coefficient needs positive gamma arguments"));
    }
    Ok((ln_gamma(top) - ln_gamma(bottom) - ln_gamma(nf + 1.0) - nf * std::f64::consts::LN_2).exp())
}

/// Leading coefficient of the standard Laguerre polynomial, (-1)^n / n!.
pub fn laguerre_leading_coefficient(n: usize) -> f64 {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign * (-ln_gamma(n as f64 + 1.0)).exp()
}

fn check_order(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    Ok(())
}

/// Residual of
/// P_n^(-k,b)(x) = 2^-k Gamma(n+b+1) Gamma(n-k+1) / (Gamma(n+b+1-k) Gamma(n+1)) (x-1)^k P_{n-k}^(k,b)(x)
/// in the standard normalization. Both sides are evaluated as leading
/// coefficient times the monic value, the left one through the Jacobi
/// recurrence run at alpha = -k.
pub fn jacobi_negative_parameter_identity(k: usize, beta: f64, n: usize, x: f64) -> Result<f64> {
    check_order(k, n)?;
    if beta <= -1.0 {
        return Err(Error::Domain(format!("beta = {beta} must exceed -1")));
    }
    let kf = k as f64;
    let nf = n as f64;
    let lhs_params = JacobiParams::new(-kf, beta)?;
    let rhs_params = JacobiParams::new(kf, beta)?;
    let lhs = jacobi_leading_coefficient(n, -kf, beta)? * eval_recurrence(&lhs_params, n, x)?;
    let rhs_poly = jacobi_leading_coefficient(n - k, kf, beta)? * eval_recurrence(&rhs_params, n - k, x)?;
    let log_factor = ln_gamma(nf + beta + 1.0) + ln_gamma(nf - kf + 1.0)
        - ln_gamma(nf + beta + 1.0 - kf)
        - ln_gamma(nf + 1.0)
        - kf * std::f64::consts::LN_2;
    let rhs = log_factor.exp() * (x - 1.0).powi(k as i32) * rhs_poly;
    Ok((lhs - rhs).abs())
}

/// Residual of L_n^(-m)(x) = (-1)^m x^m Gamma(n-m+1)/Gamma(n+1) L_{n-m}^(m)(x),
/// standard normalization.
pub fn laguerre_negative_parameter_identity(m: usize, n: usize, x: f64) -> Result<f64> {
    check_order(m, n)?;
    let lhs = laguerre_leading_coefficient(n) * eval_recurrence(&LaguerreParams::new(-(m as f64))?, n, x)?;
    let rhs_poly = laguerre_leading_coefficient(n - m) * eval_recurrence(&LaguerreParams::new(m as f64)?, n - m, x)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let factor = (ln_gamma((n - m) as f64 + 1.0) - ln_gamma(n as f64 + 1.0)).exp();
    let rhs = sign * x.powi(m as i32) * factor * rhs_poly;
    Ok((lhs - rhs).abs())
}

/// Residual of d/dx L_n^(a) = n L_{n-1}^(a+1), both sides monic.
pub fn laguerre_derivative_identity(alpha: f64, n: usize, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("derivative identity needs n >= 1".into()));
    }
    let (_, d) = eval_with_derivative(&LaguerreParams::new(alpha)?, n, x)?;
    let rhs = n as f64 * eval_recurrence(&LaguerreParams::new(alpha + 1.0)?, n - 1, x)?;
    Ok((d - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::build_sequence;
    use proptest::prelude::*;

    /// Explicit sum for standard P_n^(a,b):
    /// sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s).
    fn jacobi_explicit(n: usize, a: f64, b: f64, x: f64) -> f64 {
        fn binom(top: f64, k: usize) -> f64 {
            (0..k).fold(1.0, |acc, j| acc * (top - j as f64) / (j + 1) as f64)
        }
        (0..=n)
            .map(|s| {
                binom(n as f64 + a, n - s)
                    * binom(n as f64 + b, s)
                    * ((x - 1.0) / 2.0).powi(s as i32)
                    * ((x + 1.0) / 2.0).powi((n - s) as i32)
            })
            .sum()
    }

    /// Explicit sum for standard L_n^(a): sum_k (-1)^k C(n+a, n-k) x^k / k!.
    fn laguerre_explicit(n: usize, a: f64, x: f64) -> f64 {
        let mut total = 0.0;
        for k in 0..=n {
            let mut binom = 1.0;
            for j in 0..(n - k) {
                binom *= (n as f64 + a - j as f64) / (j + 1) as f64;
            }
            let fact: f64 = (1..=k).map(|j| j as f64).product();
            total += if k % 2 == 0 { 1.0 } else { -1.0 } * binom * x.powi(k as i32) / fact;
        }
        total
    }

    #[test]
    fn legendre_bottom_coefficients() {
        let p = JacobiParams::new(0.0, 0.0).unwrap();
        assert_eq!(p.c(1).unwrap(), 0.0);
        assert!((p.lambda(2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn laguerre_examples() {
        let l = LaguerreParams::new(0.0).unwrap();
        assert_eq!((l.c(1).unwrap(), l.c(2).unwrap(), l.lambda(2).unwrap()), (1.0, 3.0, 1.0));
        assert_eq!(LaguerreParams::new(-1.0).unwrap().lambda(2).unwrap(), 0.0);
        assert_eq!(LaguerreParams::new(2.0).unwrap().c(3).unwrap(), 7.0);
    }

    #[test]
    fn chebyshev_first_kind_bottom() {
        // a = b = -1/2 hits a + b + 1 = 0 at the bottom; cancelled forms give lambda_2 = 1/2.
        let p = JacobiParams::new(-0.5, -0.5).unwrap();
        assert!((p.lambda(2).unwrap() - 0.5).abs() < 1e-15);
        assert!((p.lambda(3).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(p.c(1).unwrap(), 0.0);
    }

    #[test]
    fn degenerate_denominator_is_reported() {
        let p = JacobiParams::new(-1.5, -1.5).unwrap();
        assert!(matches!(p.lambda(3), Err(Error::DegenerateParameter { .. })));
    }

    #[test]
    fn jacobi_matches_explicit_sum() {
        for &(a, b) in &[(0.5, -0.3), (1.3, 0.4), (-0.7, 2.0)] {
            let p = JacobiParams::new(a, b).unwrap();
            for n in 0..10 {
                let lead = jacobi_leading_coefficient(n, a, b).unwrap();
                for &x in &[-0.9, -0.2, 0.35, 0.8] {
                    let expected = jacobi_explicit(n, a, b, x);
                    let got = lead * eval_recurrence(&p, n, x).unwrap();
                    assert!((got - expected).abs() < 1e-11 * (1.0 + expected.abs()), "{a} {b} {n} {x}");
                }
            }
        }
    }

    #[test]
    fn laguerre_matches_explicit_sum() {
        for &a in &[-0.5, 0.0, 2.5] {
            let l = LaguerreParams::new(a).unwrap();
            for n in 0..10 {
                for &x in &[0.1, 1.7, 6.0] {
                    let expected = laguerre_explicit(n, a, x);
                    let got = laguerre_leading_coefficient(n) * eval_recurrence(&l, n, x).unwrap();
                    assert!((got - expected).abs() < 1e-11 * (1.0 + expected.abs()));
                }
            }
        }
    }

    #[test]
    fn identity_examples() {
        assert!(jacobi_negative_parameter_identity(1, 0.0, 3, 1.0).unwrap() < 1e-14);
        assert!(jacobi_negative_parameter_identity(1, 0.5, 4, 0.3).unwrap() < 1e-10);
        assert!(jacobi_negative_parameter_identity(2, 0.1, 5, -0.7).unwrap() < 1e-10);
        assert!(laguerre_negative_parameter_identity(1, 3, 0.0).unwrap() < 1e-14);
        assert!(laguerre_negative_parameter_identity(1, 4, 2.5).unwrap() < 1e-10);
        assert!(laguerre_negative_parameter_identity(2, 5, 1.0).unwrap() < 1e-10);
        assert_eq!(laguerre_derivative_identity(0.0, 1, 4.2).unwrap(), 0.0);
        assert!(laguerre_derivative_identity(0.5, 4, 3.0).unwrap() < 1e-9);
        assert!(laguerre_derivative_identity(-0.5, 6, 10.0).unwrap() < 1e-9);
        assert!(jacobi_negative_parameter_identity(3, 0.2, 2, 0.0).is_err());
    }

    #[test]
    fn derivative_oracle_finite_difference() {
        let l = LaguerreParams::new(0.5).unwrap();
        let x = 3.0;
        let h = 1e-5;
        let fd = (eval_recurrence(&l, 4, x + h).unwrap() - eval_recurrence(&l, 4, x - h).unwrap()) / (2.0 * h);
        let rhs = 4.0 * eval_recurrence(&LaguerreParams::new(1.5).unwrap(), 3, x).unwrap();
        assert!((fd - rhs).abs() < 1e-6 * rhs.abs().max(1.0));
    }

    #[test]
    fn asymptotics() {
        for &(a, b) in &[(-0.9, 3.0), (0.5, 0.5), (2.0, -0.5)] {
            let p = JacobiParams::new(a, b).unwrap();
            assert!(p.c(1001).unwrap().abs() < 1e-4);
            assert!((p.lambda(1001).unwrap() - 0.25).abs() < 1e-4);
        }
    }

    #[test]
    fn negative_parameter_monic_form_has_power_factor() {
        // in monic form the relation is L_n^(-m) = x^m L_{n-m}^(m)
        let seq = build_sequence(&LaguerreParams::new(-2.0).unwrap(), 5).unwrap();
        assert_eq!(&seq[5].coeffs()[..2], &[0.0, 0.0]);
    }

    proptest! {
        #[test]
        fn positive_lambda_on_classical_grid(a in -0.99f64..4.0, b in -0.99f64..4.0, n in 2usize..50) {
            prop_assert!(JacobiParams::new(a, b).unwrap().lambda(n).unwrap() > 0.0);
            prop_assert!(LaguerreParams::new(a).unwrap().lambda(n).unwrap() > 0.0);
        }

        #[test]
        fn c_antisymmetric_under_swap(a in -0.99f64..4.0, b in -0.99f64..4.0, n in 1usize..40) {
            let lhs = JacobiParams::new(a, b).unwrap().c(n).unwrap();
            let rhs = JacobiParams::new(b, a).unwrap().c(n).unwrap();
            prop_assert!((lhs + rhs).abs() < 1e-14);
        }
    }
}
