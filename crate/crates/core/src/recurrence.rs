//! Three-term recurrences for monic orthogonal polynomials.
//!
//! Convention: x P_n = P_{n+1} + c_{n+1} P_n + lambda_{n+1} P_{n-1},
//! with P_{-1} = 0 and P_0 = 1. `c(n)` is defined for n >= 1 and
//! `lambda(n)` for n >= 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MonicPoly, Scalar, COEFF_DEGREE_LIMIT};

pub trait Recurrence {
    fn c(&self, n: usize) -> Result<f64>;
    fn lambda(&self, n: usize) -> Result<f64>;
}

impl<R: Recurrence + ?Sized> Recurrence for &R {
    fn c(&self, n: usize) -> Result<f64> {
        (**self).c(n)
    }
    fn lambda(&self, n: usize) -> Result<f64> {
        (**self).lambda(n)
    }
}

impl<R: Recurrence + ?Sized> Recurrence for Box<R> {
    fn c(&self, n: usize) -> Result<f64> {
        (**self).c(n)
    }
    fn lambda(&self, n: usize) -> Result<f64> {
        (**self).lambda(n)
    }
}

/// Finite table of coefficients c_1..c_N and lambda_2..lambda_N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceTable {
    c: Vec<f64>,
    lambda: Vec<f64>,
}

impl RecurrenceTable {
    /// `c` holds c_1..c_N, `lambda` holds lambda_2..lambda_N (length N - 1).
    pub fn new(c: Vec<f64>, lambda: Vec<f64>) -> Result<Self> {
        if c.len() != lambda.len() + 1 {
            return Err(Error::Shape(format!(
                "expected {} lambda entries for {} c entries, got {}",
                c.len().saturating_sub(1),
                c.len(),
                lambda.len()
            )));
        }
        Ok(Self { c, lambda })
    }

    /// Copies the first `n_max` coefficients of any recurrence.
    pub fn from_recurrence<R: Recurrence>(rc: &R, n_max: usize) -> Result<Self> {
        let c = (1..=n_max).map(|n| rc.c(n)).collect::<Result<Vec<_>>>()?;
        let lambda = (2..=n_max).map(|n| rc.lambda(n)).collect::<Result<Vec<_>>>()?;
        Ok(Self { c, lambda })
    }

    /// Largest index N covered by the table.
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn c_values(&self) -> &[f64] {
        &self.c
    }

    pub fn lambda_values(&self) -> &[f64] {
        &self.lambda
    }

    /// lambda_n > 0 for every tabulated n.
    pub fn is_positive_definite(&self) -> bool {
        self.lambda.iter().all(|&l| l > 0.0)
    }
}

impl Recurrence for RecurrenceTable {
    fn c(&self, n: usize) -> Result<f64> {
        n.checked_sub(1)
            .and_then(|i| self.c.get(i).copied())
            .ok_or(Error::MissingCoefficient { name: "c", index: n })
    }

    fn lambda(&self, n: usize) -> Result<f64> {
        n.checked_sub(2)
            .and_then(|i| self.lambda.get(i).copied())
            .ok_or(Error::MissingCoefficient {
                name: "lambda",
                index: n,
            })
    }
}

/// The recurrence with every index moved up by one:
/// c'_k = c_{k+1}, lambda'_k = lambda_{k+1}.
#[derive(Debug, Clone, Copy)]
pub struct Shifted<R>(pub R);

impl<R: Recurrence> Recurrence for Shifted<R> {
    fn c(&self, n: usize) -> Result<f64> {
        self.0.c(n + 1)
    }
    fn lambda(&self, n: usize) -> Result<f64> {
        self.0.lambda(n + 1)
    }
}

/// lambda_k > 0 for 2 <= k <= n.
pub fn is_positive_through<R: Recurrence>(rc: &R, n: usize) -> Result<bool> {
    for k in 2..=n {
        if rc.lambda(k)? <= 0.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// P_0(x), ..., P_n(x) by forward recurrence.
pub fn eval_sequence<R: Recurrence, T: Scalar>(rc: &R, n: usize, x: T) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    let mut prev = T::zero();
    for k in 0..n {
        let cur = out[k];
        let mut next = (x - T::from_f64(rc.c(k + 1)?)) * cur;
        if k >= 1 {
            next = next - T::from_f64(rc.lambda(k + 1)?) * prev;
        }
        prev = cur;
        out.push(next);
    }
    Ok(out)
}

/// P_n(x) by forward recurrence.
pub fn eval_recurrence<R: Recurrence, T: Scalar>(rc: &R, n: usize, x: T) -> Result<T> {
    let mut prev = T::zero();
    let mut cur = T::one();
    for k in 0..n {
        let mut next = (x - T::from_f64(rc.c(k + 1)?)) * cur;
        if k >= 1 {
            next = next - T::from_f64(rc.lambda(k + 1)?) * prev;
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// (P_n(x), P_n'(x)) from the differentiated recurrence.
pub fn eval_with_derivative<R: Recurrence>(rc: &R, n: usize, x: f64) -> Result<(f64, f64)> {
    let (p, d) = derivative_sequence(rc, n, x)?;
    Ok((p[n], d[n]))
}

/// P_k(x) and P_k'(x) for k = 0..=n.
pub fn derivative_sequence<R: Recurrence>(rc: &R, n: usize, x: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut p = vec![1.0];
    let mut d = vec![0.0];
    for k in 0..n {
        let c = rc.c(k + 1)?;
        let (l, p_prev, d_prev) = if k >= 1 {
            (rc.lambda(k + 1)?, p[k - 1], d[k - 1])
        } else {
            (0.0, 0.0, 0.0)
        };
        p.push((x - c) * p[k] - l * p_prev);
        d.push(p[k] + (x - c) * d[k] - l * d_prev);
    }
    Ok((p, d))
}

fn check_limit(n: usize) -> Result<()> {
    if n > COEFF_DEGREE_LIMIT {
        Err(Error::DegreeLimit {
            requested: n,
            limit: COEFF_DEGREE_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Coefficient vectors of P_0..P_n.
pub fn build_sequence<R: Recurrence>(rc: &R, n: usize) -> Result<Vec<MonicPoly<f64>>> {
    check_limit(n)?;
    let mut out: Vec<MonicPoly<f64>> = Vec::with_capacity(n + 1);
    out.push(MonicPoly::one());
    for k in 0..n {
        let mut next = out[k].mul_linear(rc.c(k + 1)?).into_coeffs();
        if k >= 1 {
            let l = rc.lambda(k + 1)?;
            for (j, &q) in out[k - 1].coeffs().iter().enumerate() {
                next[j] -= l * q;
            }
        }
        out.push(MonicPoly::new(next)?);
    }
    Ok(out)
}

/// Associated polynomials of the first kind P^(1)_0..P^(1)_n.
///
/// P^(1)_0 is identically zero and is returned as `None`; for n >= 1,
/// P^(1)_n has degree n - 1 and obeys the same recurrence as P_n with
/// initial values P^(1)_0 = 0, P^(1)_1 = 1.
pub fn associated_first_kind<R: Recurrence>(rc: &R, n: usize) -> Result<Vec<Option<MonicPoly<f64>>>> {
    if n == 0 {
        return Ok(vec![None]);
    }
    let shifted = build_sequence(&Shifted(rc), n - 1)?;
    Ok(std::iter::once(None).chain(shifted.into_iter().map(Some)).collect())
}

/// P^(1)_n(x), with P^(1)_0 = 0.
pub fn eval_associated<R: Recurrence, T: Scalar>(rc: &R, n: usize, x: T) -> Result<T> {
    if n == 0 {
        Ok(T::zero())
    } else {
        eval_recurrence(&Shifted(rc), n - 1, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Laguerre alpha = 0: c_n = 2n - 1, lambda_n = (n - 1)^2.
    fn laguerre0(n: usize) -> RecurrenceTable {
        RecurrenceTable::new(
            (1..=n).map(|k| (2 * k - 1) as f64).collect(),
            (2..=n).map(|k| ((k - 1) * (k - 1)) as f64).collect(),
        )
        .unwrap()
    }

    #[test]
    fn laguerre_coefficients() {
        let seq = build_sequence(&laguerre0(3), 2).unwrap();
        assert_eq!(seq[1].coeffs(), &[-1.0, 1.0]);
        assert_eq!(seq[2].coeffs(), &[2.0, -4.0, 1.0]);
    }

    #[test]
    fn associated_laguerre() {
        let a = associated_first_kind(&laguerre0(3), 2).unwrap();
        assert!(a[0].is_none());
        assert_eq!(a[1].as_ref().unwrap().coeffs(), &[1.0]);
        assert_eq!(a[2].as_ref().unwrap().coeffs(), &[-3.0, 1.0]);
        assert_eq!(eval_associated(&laguerre0(3), 2, 5.0).unwrap(), 2.0);
    }

    #[test]
    fn missing_coefficient_reported() {
        let err = eval_recurrence(&laguerre0(2), 5, 0.0).unwrap_err();
        assert!(matches!(err, Error::MissingCoefficient { .. }));
        assert!(RecurrenceTable::new(vec![1.0, 2.0], vec![]).is_err());
    }

    #[test]
    fn degree_guard() {
        let rc = RecurrenceTable::new(vec![0.0; 70], vec![0.25; 69]).unwrap();
        assert!(matches!(build_sequence(&rc, 65), Err(Error::DegreeLimit { .. })));
        assert!(build_sequence(&rc, 64).is_ok());
    }

    #[test]
    fn chebyshev_second_kind_closed_form() {
        // Monic U_n: c = 0, lambda = 1/4; U_n(cos t) = sin((n+1)t) / (2^n sin t).
        let rc = RecurrenceTable::new(vec![0.0; 12], vec![0.25; 11]).unwrap();
        let t: f64 = 0.7;
        for n in 0..12 {
            let expected = ((n + 1) as f64 * t).sin() / (2f64.powi(n as i32) * t.sin());
            let got = eval_recurrence(&rc, n, t.cos()).unwrap();
            assert!((got - expected).abs() < 1e-14, "n = {n}");
        }
    }

    proptest! {
        #[test]
        fn coefficient_and_recurrence_agree(x in -3.0f64..3.0, n in 0usize..12) {
            let rc = laguerre0(13);
            let by_coeff = build_sequence(&rc, n).unwrap()[n].eval(x);
            let by_rec = eval_recurrence(&rc, n, x).unwrap();
            prop_assert!((by_coeff - by_rec).abs() <= 1e-8 * (1.0 + by_rec.abs()));
        }

        #[test]
        fn derivative_matches_finite_difference(x in 0.5f64..4.0, n in 1usize..8) {
            let rc = laguerre0(9);
            let (_, d) = eval_with_derivative(&rc, n, x).unwrap();
            let h = 1e-5;
            let fd = (eval_recurrence(&rc, n, x + h).unwrap() - eval_recurrence(&rc, n, x - h).unwrap()) / (2.0 * h);
            prop_assert!((d - fd).abs() <= 1e-5 * (1.0 + d.abs()));
        }
    }
}
