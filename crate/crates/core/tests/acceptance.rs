//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use qspec_core::chain::{chain_sequence, quasi_chain_sequence};
use qspec_core::jacobi_matrix::{commutation_residual, truncate, IntertwinerM};
use qspec_core::opuc::{szego_sequence, VerblunskyClosedForm, VerblunskySequence};
use qspec_core::quasi::{orthogonality_residual, quasi_eval, quasi_polynomial, quasi_recurrence, ORTHOGONALITY_TOL};
use qspec_core::recurrence::{eval_recurrence, eval_sequence};
use qspec_core::spectral::{ChristoffelFamily, GeronimusFamily};
use qspec_core::tables::{compare_table, TABLE_IDS, TABLE_TOL};
use qspec_core::zeros::{general_roots, interlace, interlace_excluding, ops_zeros, ZeroSet};
use qspec_core::{ClosedForm, JacobiParams, LaguerreParams, QuasiCoefficients, QuasiKind, Recurrence, Result};

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn all_forms(alpha: f64, beta: f64) -> Vec<ClosedForm> {
    QuasiKind::all()
        .into_iter()
        .flat_map(|k| (1..=k.solutions()).map(move |s| ClosedForm::new(k, s, alpha, beta).unwrap()))
        .collect()
}

const GRID: [f64; 5] = [-0.85, -0.3, 0.45, 1.3, 2.95];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut failing = Vec::new();
    for id in TABLE_IDS {
        let report = compare_table(id, TABLE_TOL)?;
        for c in report.failures() {
            failing.push(format!("T{id} r{}c{} |d|={:.3e}", c.row, c.col, c.delta));
        }
        if !report.unmatched.is_empty() {
            failing.push(format!("T{id} {} unmatched roots", report.unmatched.len()));
        }
    }
    let t2 = compare_table(2, TABLE_TOL)?;
    let boundary = t2
        .cells
        .iter()
        .filter(|c| c.reference.re == 1.0)
        .map(|c| c.computed.map_or(f64::INFINITY, |z| (z - 1.0).norm()))
        .fold(0.0, f64::max);
    if boundary > 1e-10 {
        failing.push(format!("T2 boundary zero off 1 by {boundary:.1e}"));
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed > 5.0 {
        failing.push(format!("runtime {elapsed:.2} s"));
    }
    let detail = if failing.is_empty() {
        format!("10 tables within {TABLE_TOL:e}, boundary |x-1| {boundary:.1e}, {elapsed:.2} s")
    } else {
        format!("{} problems: {}", failing.len(), failing.join("; "))
    };
    Ok((failing.is_empty(), detail))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &a in &GRID {
        for &b in &GRID {
            for form in all_forms(a, b) {
                let base = form.base();
                let g = QuasiCoefficients::from(form);
                for n in 2..=50 {
                    worst = worst.max(orthogonality_residual(&base, &g, n)?.abs());
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Ok((
        worst < 1e-11 && elapsed < 1.0,
        format!("max |residual| {worst:.2e} over 10 families, 25 parameter pairs, n = 2..50 ({elapsed:.3} s)"),
    ))
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for form in all_forms(0.7, 0.35).into_iter().chain(all_forms(-0.4, 1.6)) {
        for n in 1..=15 {
            for k in 0..20 {
                let x = if form.kind.is_jacobi() {
                    -0.97 + 1.94 * k as f64 / 19.0
                } else {
                    0.1 + 1.5 * k as f64
                };
                worst = worst.max(form.compact_form(n, x)?.relative());
            }
        }
    }
    Ok((worst < 1e-9, format!("max relative mismatch {worst:.2e} (10 forms, 2 parameter pairs, n <= 15, 20 points)")))
}

fn criterion_4() -> Outcome {
    let n = 20;
    let mut parts = Vec::new();
    let mut worst = 0.0f64;
    for form in [
        ClosedForm::new(QuasiKind::QcJacobi, 1, 1.3, 0.4)?,
        ClosedForm::new(QuasiKind::QcLaguerre, 1, 0.5, 0.0)?,
    ] {
        let g = QuasiCoefficients::from(form);
        let q = quasi_recurrence(&form.base(), &g, n, ORTHOGONALITY_TOL)?;
        let r = commutation_residual(&truncate(&q.table, n)?, &truncate(&form.base(), n)?, &IntertwinerM::from_quasi(&g, n)?)?;
        parts.push(format!("{} {r:.2e}", form.kind));
        worst = worst.max(r);
    }
    Ok((worst < 1e-11, format!("interior residual N = 20: {}", parts.join(", "))))
}

fn criterion_5() -> Outcome {
    let n = 1000;
    let mut parts = Vec::new();
    let mut ok = true;
    for kind in [QuasiKind::QcJacobi, QuasiKind::QgJacobi] {
        let form = ClosedForm::new(kind, 1, 0.5, 0.2)?;
        let q = quasi_recurrence(&form.base(), &form.into(), n, ORTHOGONALITY_TOL)?;
        let (c, l) = (q.table.c(n)?, q.table.lambda(n)?);
        ok &= (l - 0.25).abs() < 1e-4 && c.abs() < 1e-4;
        parts.push(format!("{kind}: |lambda-1/4| {:.1e}, |c| {:.1e}", (l - 0.25).abs(), c.abs()));
    }
    Ok((ok, format!("n = 1000, {}", parts.join("; "))))
}

fn criterion_6() -> Outcome {
    let mut worst_s = 0.0f64;
    let mut worst_m = 0.0f64;
    let mut worst_rec = 0.0f64;
    let mut bound = true;
    for &alpha in &GRID {
        let form = ClosedForm::new(QuasiKind::QcLaguerre, 1, alpha, 0.0)?;
        let ch = quasi_chain_sequence(&form.base(), &form.into(), 0.0, 40)?;
        for n in 2..=40 {
            let nf = n as f64;
            let s = (nf - 1.0) * (nf + alpha + 1.0) / ((2.0 * nf + alpha + 1.0) * (2.0 * nf + alpha - 1.0));
            let m = (nf - 1.0) / (2.0 * nf + alpha + 1.0);
            let got_m = ch.m(n).unwrap_or(f64::NAN);
            worst_s = worst_s.max((ch.s(n).unwrap_or(f64::NAN) - s).abs());
            worst_m = worst_m.max((got_m - m).abs());
            bound &= got_m < 0.5;
        }
        worst_rec = worst_rec.max(ch.reconstruction_residual());
        if alpha > -1.0 {
            worst_rec = worst_rec.max(chain_sequence(&LaguerreParams::new(alpha)?, -0.5, 40)?.reconstruction_residual());
        }
    }
    let jac = ClosedForm::new(QuasiKind::QcJacobi, 1, 0.5, 0.2)?;
    worst_rec = worst_rec.max(quasi_chain_sequence(&jac.base(), &jac.into(), 1.0, 40)?.reconstruction_residual());
    let ok = worst_s < 1e-12 && worst_m < 1e-12 && worst_rec < 1e-12 && bound && !worst_s.is_nan() && !worst_m.is_nan();
    Ok((
        ok,
        format!("|ds| {worst_s:.1e}, |dm| {worst_m:.1e}, m < 1/2: {bound}, reconstruction {worst_rec:.1e}"),
    ))
}

fn qc_sol1_zeros(n: usize, a: f64, b: f64) -> Result<ZeroSet> {
    let form = ClosedForm::new(QuasiKind::QcJacobi, 1, a, b)?;
    let base = ChristoffelFamily::new(JacobiParams::new(a, b)?, -1.0).recurrence(n + 1)?;
    general_roots(&quasi_polynomial(&base, &form.into(), n)?)
}

fn qg_sol1_zeros(n: usize, a: f64, b: f64) -> Result<ZeroSet> {
    let form = ClosedForm::new(QuasiKind::QgJacobi, 1, a, b)?;
    let base = GeronimusFamily::jacobi_calibrated(a, b)?.recurrence(n + 1)?;
    general_roots(&quasi_polynomial(&base, &form.into(), n)?)
}

fn criterion_7() -> Outcome {
    let tol = 1e-8;
    let mut verdicts = Vec::new();
    for (n, a, b) in [(7, 1.3, -0.6), (8, -0.3, 0.1)] {
        let p = JacobiParams::new(a, b)?;
        let pz = ops_zeros(&p, n)?;
        let cz = ops_zeros(&ChristoffelFamily::new(p, -1.0).recurrence(n)?, n)?;
        let qz = qc_sol1_zeros(n, a, b)?;
        verdicts.push((format!("triple n={n}: P/C"), interlace(&pz, &cz)?.strict));
        verdicts.push((format!("triple n={n}: C/QC"), interlace_excluding(&cz, &qz, 1.0, tol)?.strict));
        verdicts.push((format!("triple n={n}: P/QC"), interlace_excluding(&pz, &qz, 1.0, tol)?.strict));
    }
    for (n, a, b) in [(6, 1.0, 0.5), (5, 2.0, 1.0)] {
        let r = interlace_excluding(&qg_sol1_zeros(n, a, b)?, &qc_sol1_zeros(n, a, b)?, 1.0, tol)?;
        verdicts.push((format!("QG/QC n={n} a={a} b={b}"), r.strict && r.removed.len() == 2));
    }
    let failed: Vec<&str> = verdicts.iter().filter(|v| !v.1).map(|v| v.0.as_str()).collect();
    let detail = if failed.is_empty() {
        format!("{} pairings strict", verdicts.len())
    } else {
        format!("not strict: {}", failed.join(", "))
    };
    Ok((failed.is_empty(), detail))
}

fn criterion_8() -> Outcome {
    let mut worst = 0.0f64;
    for (a, b) in [(0.7, 0.35), (-0.4, 1.6), (2.2, -0.3)] {
        for form in all_forms(a, b) {
            let base = form.base();
            let g = QuasiCoefficients::from(form);
            let q = quasi_recurrence(&base, &g, 13, ORTHOGONALITY_TOL)?;
            for n in 1..=12 {
                let poly = quasi_polynomial(&base, &g, n)?;
                for k in 0..7 {
                    let x = if form.kind.is_jacobi() { -0.9 + 0.3 * k as f64 } else { 0.3 + 2.0 * k as f64 };
                    let direct: f64 = quasi_eval(&base, &g, n, x)?;
                    let by_rec: f64 = eval_recurrence(&q.table, n, x)?;
                    let by_coeff = poly.eval(x);
                    // term sizes of C_n + gamma_n C_{n-1}, as in the compact-form check
                    let c = eval_sequence(&base, n, x)?;
                    let scale = (c[n].abs() + (g.gamma(n)? * c[n - 1]).abs()).max(f64::MIN_POSITIVE);
                    let spread = (direct - by_rec).abs().max((direct - by_coeff).abs());
                    worst = worst.max(spread / scale);
                }
            }
        }
    }
    Ok((worst < 1e-9, format!("max spread / term size {worst:.2e} across 3 evaluation routes, n <= 12")))
}

/// (z^(n+1) - (g^(n+1)/(n+1)) sum_{k<=n} conj(g)^k z^k) / (z - g).
fn circle_closed_form(g: Complex64, n: usize, z: Complex64) -> Complex64 {
    let sum: Complex64 = (0..=n).map(|k| g.conj().powu(k as u32) * z.powu(k as u32)).sum();
    (z.powu(n as u32 + 1) - g.powu(n as u32 + 1) / (n + 1) as f64 * sum) / (z - g)
}

fn criterion_9() -> Outcome {
    let points: Vec<Complex64> = (0..20)
        .map(|k| Complex64::from_polar(0.05 + 0.9 * (k as f64 / 19.0), 0.37 + 2.1 * k as f64))
        .collect();
    let mut worst = 0.0f64;
    let mut round_trip = 0.0f64;
    for (id, g) in [
        (VerblunskyClosedForm::ChristoffelAtOne, Complex64::new(1.0, 0.0)),
        (VerblunskyClosedForm::ChristoffelAtI, Complex64::new(0.0, 1.0)),
    ] {
        let v = VerblunskySequence::closed_form(id, 9);
        let phis = szego_sequence(&v, 9)?;
        for n in 0..=8 {
            for &z in &points {
                worst = worst.max((phis[n].eval(z) - circle_closed_form(g, n, z)).norm());
            }
            round_trip = round_trip.max((v.alphas()[n] + phis[n + 1].coeffs()[0].conj()).norm());
        }
    }
    Ok((
        worst < 1e-11 && round_trip < 1e-13,
        format!("closed-form mismatch {worst:.2e} (n <= 8, 20 points), Verblunsky round trip {round_trip:.1e}"),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("table reproduction", criterion_1),
        ("difference-equation residuals", criterion_2),
        ("compact-form identities", criterion_3),
        ("Jacobi-matrix commutation", criterion_4),
        ("Nevai limits", criterion_5),
        ("chain sequences", criterion_6),
        ("interlacing", criterion_7),
        ("oracle equivalence", criterion_8),
        ("unit-circle pipeline", criterion_9),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        all &= ok;
        println!("{} criterion {}: {name}: {detail}", if ok { "PASS" } else { "FAIL" }, k + 1);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
