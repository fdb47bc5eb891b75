//! Chain sequences and minimal parameter sequences at a point below the
//! support.

use serde::Serialize;

use crate::error::{nonzero, Error, Result};
use crate::quasi::{quasi_eval, quasi_recurrence, QuasiCoefficients, ORTHOGONALITY_TOL};
use crate::recurrence::{derivative_sequence, eval_sequence, Recurrence};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainData {
    pub t: f64,
    /// Index of the first stored s value.
    pub s_start: usize,
    pub s: Vec<f64>,
    /// Index of the first stored m value; m there is zero.
    pub start_index: usize,
    pub m: Vec<f64>,
}

impl ChainData {
    pub fn s(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.s_start).and_then(|i| self.s.get(i).copied())
    }

    pub fn m(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.start_index).and_then(|i| self.m.get(i).copied())
    }

    /// Largest |s_n - (1 - m_{n-1}) m_n| over the indices where both sides exist.
    pub fn reconstruction_residual(&self) -> f64 {
        let last = self.s_start + self.s.len();
        (self.s_start..last)
            .filter_map(|n| {
                let (s, mp, m) = (self.s(n)?, self.m(n.checked_sub(1)?)?, self.m(n)?);
                Some((s - (1.0 - mp) * m).abs())
            })
            .fold(0.0, f64::max)
    }
}

/// s_n(t) = lambda_{n+1} / ((c_n - t)(c_{n+1} - t)) for n = 1..=N and the
/// minimal parameter sequence m_0 = 0, m_n = 1 - P_{n+1}(t) / ((t - c_{n+1}) P_n(t)).
pub fn chain_sequence<R: Recurrence>(rc: &R, t: f64, n_max: usize) -> Result<ChainData> {
    let p = eval_sequence(rc, n_max + 1, t)?;
    let mut s = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let d0 = nonzero(rc.c(n)? - t, || format!("c_{n} = t"))?;
        let d1 = nonzero(rc.c(n + 1)? - t, || format!("c_{} = t", n + 1))?;
        s.push(rc.lambda(n + 1)? / (d0 * d1));
    }
    let mut m = vec![0.0];
    for n in 1..=n_max {
        let pn = nonzero(p[n], || format!("P_{n}({t}) = 0"))?;
        let d = nonzero(t - rc.c(n + 1)?, || format!("c_{} = t", n + 1))?;
        m.push(1.0 - p[n + 1] / (d * pn));
    }
    Ok(ChainData {
        t,
        s_start: 1,
        s,
        start_index: 0,
        m,
    })
}

/// Chain data of a quasi family C_n + gamma_n C_{n-1}.
///
/// s_n for n = 2..=N from the gamma form of the quasi recurrence; m starts
/// at index 1 with m_1 = 0. When t is a root of the whole family (t is a
/// root of Q_1), the factor (x - t) is divided out of Q_n and Q_{n+1} before
/// their ratio is taken.
pub fn quasi_chain_sequence<R: Recurrence>(
    base: &R,
    gamma: &QuasiCoefficients,
    t: f64,
    n_max: usize,
) -> Result<ChainData> {
    if n_max < 2 {
        return Err(Error::Domain("quasi chain sequence needs N >= 2".into()));
    }
    let q = quasi_recurrence(base, gamma, n_max + 1, ORTHOGONALITY_TOL)?;
    let g: Vec<f64> = (0..=n_max + 1).map(|k| gamma.gamma(k)).collect::<Result<_>>()?;
    let mut s = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let gp = nonzero(g[n - 1], || format!("gamma_{} = 0", n - 1))?;
        let d0 = nonzero(base.c(n + 1)? + g[n] - g[n + 1] - t, || format!("c^qc_{} = t", n + 1))?;
        let d1 = nonzero(base.c(n)? + g[n - 1] - g[n] - t, || format!("c^qc_{n} = t"))?;
        s.push(g[n] * base.lambda(n)? / (gp * d0 * d1));
    }

    let q1 = quasi_eval(base, gamma, 1, t)?;
    let q1_scale = t.abs() + base.c(1)?.abs() + g[1].abs();
    let common_root = q1.abs() <= 1e-12 * q1_scale.max(f64::MIN_POSITIVE);

    let values: Vec<f64> = if common_root {
        // Q_k = (x - t) R_k with R_k(t) = Q_k'(t); the differentiated
        // recurrence gives R_k(t) without forming coefficients
        let (_, d) = derivative_sequence(base, n_max + 1, t)?;
        (1..=n_max + 1).map(|k| Ok(d[k] + gamma.gamma(k)? * d[k - 1])).collect::<Result<_>>()?
    } else {
        (1..=n_max + 1).map(|k| quasi_eval(base, gamma, k, t)).collect::<Result<_>>()?
    };

    let mut m = vec![0.0];
    for n in 2..=n_max {
        let qn = nonzero(values[n - 1], || format!("Q_{n}({t}) = 0"))?;
        let d = nonzero(t - q.table.c(n + 1)?, || format!("c^qc_{} = t", n + 1))?;
        m.push(1.0 - values[n] / (d * qn));
    }
    Ok(ChainData {
        t,
        s_start: 2,
        s,
        start_index: 1,
        m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{JacobiParams, LaguerreParams};
    use crate::quasi::{ClosedForm, QuasiKind};

    #[test]
    fn laguerre_base_chain() {
        let ch = chain_sequence(&LaguerreParams::new(0.0).unwrap(), 0.0, 30).unwrap();
        assert!((ch.s(1).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(ch.m(0), Some(0.0));
        assert!(ch.reconstruction_residual() < 1e-12);
    }

    #[test]
    fn jacobi_base_chain_below_support() {
        let ch = chain_sequence(&JacobiParams::new(0.3, 1.2).unwrap(), -1.0, 30).unwrap();
        assert!(ch.reconstruction_residual() < 1e-12);
        assert!(ch.m.iter().skip(1).all(|&m| m > 0.0 && m < 1.0));
    }

    #[test]
    fn division_errors() {
        // c_1 = 1 for Laguerre alpha = 0
        assert!(matches!(
            chain_sequence(&LaguerreParams::new(0.0).unwrap(), 1.0, 3),
            Err(Error::Division(_))
        ));
    }

    #[test]
    fn laguerre_sol1_closed_forms() {
        for &alpha in &[-0.5, 0.0, 1.3, 4.0] {
            let form = ClosedForm::new(QuasiKind::QcLaguerre, 1, alpha, 0.0).unwrap();
            let ch = quasi_chain_sequence(&form.base(), &form.into(), 0.0, 40).unwrap();
            assert_eq!(ch.m(1), Some(0.0));
            for n in 2..=40 {
                let nf = n as f64;
                let s = (nf - 1.0) * (nf + alpha + 1.0) / ((2.0 * nf + alpha + 1.0) * (2.0 * nf + alpha - 1.0));
                let m = (nf - 1.0) / (2.0 * nf + alpha + 1.0);
                assert!((ch.s(n).unwrap() - s).abs() < 1e-12, "s_{n}");
                assert!((ch.m(n).unwrap() - m).abs() < 1e-12, "m_{n}");
                assert!(ch.m(n).unwrap() < 0.5);
            }
            assert!(ch.reconstruction_residual() < 1e-12);
        }
    }

    #[test]
    fn deflated_values_match_coefficient_division() {
        let form = ClosedForm::new(QuasiKind::QcLaguerre, 1, 0.4, 0.0).unwrap();
        let g: QuasiCoefficients = form.into();
        let (_, d) = derivative_sequence(&form.base(), 8, 0.0).unwrap();
        for k in 1..=8 {
            let poly = crate::quasi::quasi_polynomial(&form.base(), &g, k).unwrap();
            let want = poly.deflate(0.0).unwrap().quotient.eval(0.0);
            let got = d[k] + g.gamma(k).unwrap() * d[k - 1];
            assert!((got - want).abs() < 1e-10 * want.abs().max(1.0));
        }
    }

    #[test]
    fn jacobi_sol1_at_boundary() {
        let form = ClosedForm::new(QuasiKind::QcJacobi, 1, 0.5, 0.2).unwrap();
        let ch = quasi_chain_sequence(&form.base(), &form.into(), 1.0, 30).unwrap();
        assert!(ch.reconstruction_residual() < 1e-12);
    }
}
