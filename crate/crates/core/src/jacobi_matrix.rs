//! Truncated monic Jacobi matrices and the bidiagonal intertwiner.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quasi::QuasiCoefficients;
use crate::recurrence::Recurrence;

/// N x N tridiagonal matrix with c_1..c_N on the diagonal, lambda_2..lambda_N
/// below it and ones above it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TridiagonalOperator {
    pub diag: Vec<f64>,
    pub sub: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diag: Vec<f64>, sub: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || sub.len() + 1 != diag.len() {
            return Err(Error::Shape(format!(
                "tridiagonal needs len(sub) = len(diag) - 1, got {} and {}",
                sub.len(),
                diag.len()
            )));
        }
        Ok(Self { diag, sub })
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.size();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if j == i + 1 {
                1.0
            } else if i == j + 1 {
                self.sub[j]
            } else {
                0.0
            }
        })
    }
}

/// Leading N x N block of the Jacobi matrix of `rc`.
pub fn truncate<R: Recurrence>(rc: &R, n: usize) -> Result<TridiagonalOperator> {
    let diag = (1..=n).map(|k| rc.c(k)).collect::<Result<Vec<_>>>()?;
    let sub = (2..=n).map(|k| rc.lambda(k)).collect::<Result<Vec<_>>>()?;
    TridiagonalOperator::new(diag, sub)
}

/// Unit lower-bidiagonal matrix with gamma_1..gamma_{N-1} below the diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntertwinerM {
    pub gammas: Vec<f64>,
}

impl IntertwinerM {
    pub fn new(gammas: Vec<f64>) -> Self {
        Self { gammas }
    }

    pub fn from_quasi(gamma: &QuasiCoefficients, n: usize) -> Result<Self> {
        Ok(Self::new((1..n).map(|k| gamma.gamma(k)).collect::<Result<_>>()?))
    }

    pub fn size(&self) -> usize {
        self.gammas.len() + 1
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.size();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                1.0
            } else if i == j + 1 {
                self.gammas[j]
            } else {
                0.0
            }
        })
    }
}

/// Largest entry of J_qc M - M J_c on the leading (N-1) x (N-1) block; the
/// last row and column feel the truncation.
pub fn commutation_residual(jqc: &TridiagonalOperator, jc: &TridiagonalOperator, m: &IntertwinerM) -> Result<f64> {
    let n = jqc.size();
    if jc.size() != n || m.size() != n {
        return Err(Error::Shape(format!(
            "commutation needs equal sizes, got {}, {}, {}",
            n,
            jc.size(),
            m.size()
        )));
    }
    let md = m.to_dense();
    let diff = jqc.to_dense() * &md - &md * jc.to_dense();
    let k = n.saturating_sub(1);
    Ok(diff.view((0, 0), (k, k)).iter().fold(0.0, |acc: f64, v| acc.max(v.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{JacobiParams, LaguerreParams};
    use crate::quasi::{quasi_recurrence, ClosedForm, QuasiKind, ORTHOGONALITY_TOL};

    #[test]
    fn truncation_examples() {
        let leg = truncate(&JacobiParams::new(0.0, 0.0).unwrap(), 2).unwrap();
        assert_eq!(leg.diag, vec![0.0, 0.0]);
        assert!((leg.sub[0] - 1.0 / 3.0).abs() < 1e-15);
        let lag = truncate(&LaguerreParams::new(0.0).unwrap(), 3).unwrap();
        assert_eq!((lag.diag.clone(), lag.sub.clone()), (vec![1.0, 3.0, 5.0], vec![1.0, 4.0]));
        let one = truncate(&LaguerreParams::new(0.0).unwrap(), 1).unwrap();
        assert_eq!(one.to_dense(), DMatrix::from_element(1, 1, 1.0));
    }

    fn sol1_residual(form: ClosedForm, n: usize, perturb: Option<usize>) -> f64 {
        let g = QuasiCoefficients::from(form);
        let q = quasi_recurrence(&form.base(), &g, n, ORTHOGONALITY_TOL).unwrap();
        let mut m = IntertwinerM::from_quasi(&g, n).unwrap();
        if let Some(i) = perturb {
            m.gammas[i] += 0.1;
        }
        commutation_residual(&truncate(&q.table, n).unwrap(), &truncate(&form.base(), n).unwrap(), &m).unwrap()
    }

    #[test]
    fn commutation_for_sol1() {
        let jac = ClosedForm::new(QuasiKind::QcJacobi, 1, 1.3, 0.4).unwrap();
        let lag = ClosedForm::new(QuasiKind::QcLaguerre, 1, 0.0, 0.0).unwrap();
        assert!(sol1_residual(jac, 12, None) < 1e-12);
        assert!(sol1_residual(lag, 12, None) < 1e-12);
        assert!(sol1_residual(jac, 12, Some(4)) > 1e-3);
    }

    #[test]
    fn size_mismatch() {
        let a = truncate(&LaguerreParams::new(0.0).unwrap(), 3).unwrap();
        let b = truncate(&LaguerreParams::new(0.0).unwrap(), 4).unwrap();
        assert!(matches!(
            commutation_residual(&a, &b, &IntertwinerM::new(vec![0.0; 2])),
            Err(Error::Shape(_))
        ));
    }
}
