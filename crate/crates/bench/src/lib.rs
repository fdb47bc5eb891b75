//! Workloads shared by the criterion benches.

use num_complex::Complex64;
use qspec_core::opuc::{christoffel_opuc_poly, VerblunskyClosedForm, VerblunskySequence};
use qspec_core::quasi::{quasi_polynomial, quasi_recurrence, ORTHOGONALITY_TOL};
use qspec_core::tables::{compare_table, TABLE_IDS, TABLE_TOL};
use qspec_core::zeros::{general_roots, ops_zeros};
use qspec_core::{ClosedForm, QuasiCoefficients, QuasiKind, Recurrence};

/// lambda_n of the QC-Jacobi Sol-1 recurrence of length n.
pub fn quasi_workload(n: usize) -> f64 {
    let form = ClosedForm::new(QuasiKind::QcJacobi, 1, 0.5, 0.2).expect("valid parameters");
    let q = quasi_recurrence(&form.base(), &form.into(), n, ORTHOGONALITY_TOL).expect("orthogonalizable");
    q.table.lambda(n).expect("tabulated")
}

/// Sum of roots from both root paths at degree n.
pub fn zeros_workload(n: usize) -> f64 {
    let form = ClosedForm::new(QuasiKind::QcJacobi, 1, 1.3, 0.4).expect("valid parameters");
    let base = form.base();
    let eig = ops_zeros(&base, n).expect("positive definite");
    let g = QuasiCoefficients::from(form);
    let it = general_roots(&quasi_polynomial(&base, &g, n).expect("small degree")).expect("converges");
    eig.roots.iter().chain(&it.roots).map(|z| z.re).sum()
}

/// Largest cell delta over all ten tables.
pub fn table_workload() -> f64 {
    TABLE_IDS
        .map(|id| compare_table(id, TABLE_TOL).expect("table computes").max_delta)
        .fold(0.0, f64::max)
}

/// Constant coefficient of the degree n circle Christoffel polynomial at i.
pub fn circle_workload(n: usize) -> Complex64 {
    let v = VerblunskySequence::closed_form(VerblunskyClosedForm::Lebesgue, n + 2);
    christoffel_opuc_poly(&v, Complex64::new(0.0, 1.0), n + 1).expect("kernel positive").coeffs()[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_run() {
        assert!((quasi_workload(1000) - 0.25).abs() < 1e-4);
        assert!(zeros_workload(6).is_finite());
        assert!(table_workload().is_finite());
        // alpha_{n-1} = -conj(Phi_n(0)) for the weight |z - i|^2
        let n = 20;
        let alpha = -circle_workload(n).conj();
        let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
        let want = Complex64::new(0.0, 1.0).powu(n as u32) * (sign / (n + 1) as f64);
        assert!((alpha - want).norm() < 1e-12);
    }
}
