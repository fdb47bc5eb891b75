use std::fs;

use num_complex::Complex64;
use qspec_core::chain::{chain_sequence, quasi_chain_sequence, ChainData};
use qspec_core::jacobi_matrix::{commutation_residual, truncate, IntertwinerM};
use qspec_core::opuc::{christoffel_opuc_poly, classify_unit_disc, quasi_christoffel_opuc_poly, CIRCLE_TOL};
use qspec_core::quasi::{orthogonality_residual, quasi_polynomial, quasi_recurrence, ORTHOGONALITY_TOL};
use qspec_core::tables::{compare_table, parse_complex};
use qspec_core::zeros::{classify_support, general_roots, interlace, interlace_excluding, ops_zeros, BOUNDARY_TOL};
use qspec_core::{
    ChristoffelFamily, ClosedForm, GeronimusFamily, JacobiParams, LaguerreParams, MonicPoly,
    QuasiCoefficients, QuasiKind, Recurrence, RecurrenceTable, VerblunskyClosedForm, VerblunskySequence, ZeroSet,
};

use crate::args::{Command, FamilyArgs, FamilyKind, Pairing, Transform};
use crate::error::CliError;
use crate::output::{fmt_complex, summary, Report, Section, Value};

pub struct Outcome {
    pub report: Report,
    /// 0 on success, 2 when a verification misses its tolerance, 3 on a
    /// table mismatch.
    pub status: u8,
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Table { id, tol } => cmd_table(*id, *tol),
        Command::Verify { family, solution, n, tol } => cmd_verify(*family, *solution, *n, *tol),
        Command::Zeros(a) => ok(cmd_zeros(a)?),
        Command::Interlace { family, pair, tol } => ok(cmd_interlace(family, *pair, *tol)?),
        Command::Chain(a) => ok(cmd_chain(a)?),
        Command::Jacobimatrix(a) => ok(cmd_jacobimatrix(a)?),
        Command::Opuc(a) => ok(cmd_opuc(a)?),
    }
}

fn ok(report: Report) -> Result<Outcome, CliError> {
    Ok(Outcome { report, status: 0 })
}

// ---- family plumbing ----

fn original(a: &FamilyArgs) -> Result<Box<dyn Recurrence>, CliError> {
    match a.family {
        FamilyKind::Jacobi => Ok(Box::new(JacobiParams::new(a.alpha, a.beta)?)),
        FamilyKind::Laguerre => Ok(Box::new(LaguerreParams::new(a.alpha)?)),
        FamilyKind::Custom => {
            let path = a.coeffs.as_ref().ok_or_else(|| config("--family custom needs --coeffs <path>"))?;
            let text = fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
            let t: RecurrenceTable =
                serde_json::from_str(&text).map_err(|e| config(format!("{}: {e}", path.display())))?;
            Ok(Box::new(RecurrenceTable::new(t.c_values().to_vec(), t.lambda_values().to_vec())?))
        }
        FamilyKind::Opuc => Err(config("this command needs a real-line family")),
    }
}

fn quasi_kind(a: &FamilyArgs) -> Result<QuasiKind, CliError> {
    match (a.family, a.kind) {
        (FamilyKind::Jacobi, Transform::Qc) => Ok(QuasiKind::QcJacobi),
        (FamilyKind::Laguerre, Transform::Qc) => Ok(QuasiKind::QcLaguerre),
        (FamilyKind::Jacobi, Transform::Qg) => Ok(QuasiKind::QgJacobi),
        (f, k) => Err(config(format!("no closed forms for {f:?} with --kind {k:?}"))),
    }
}

fn default_point(a: &FamilyArgs) -> Option<f64> {
    match a.family {
        FamilyKind::Jacobi => Some(-1.0),
        FamilyKind::Laguerre => Some(0.0),
        _ => None,
    }
}

fn real_point(a: &FamilyArgs) -> Result<Option<f64>, CliError> {
    match &a.point {
        None => Ok(default_point(a)),
        Some(s) => {
            let z = parse_complex(s)?;
            if z.im != 0.0 {
                return Err(config(format!("--point {s} must be real for {:?}", a.family)));
            }
            Ok(Some(z.re))
        }
    }
}

fn transform_point(a: &FamilyArgs) -> Result<f64, CliError> {
    real_point(a)?.ok_or_else(|| config("--point is required for a custom family"))
}

fn gamma_spec(a: &FamilyArgs) -> Result<Option<QuasiCoefficients>, CliError> {
    let spec = match (&a.gamma, a.solution) {
        (Some(_), Some(_)) => return Err(config("give either --gamma or --solution")),
        (Some(g), None) => g.clone(),
        (None, Some(s)) => format!("sol:{s}"),
        (None, None) => return Ok(None),
    };
    let (tag, body) = spec.split_once(':').ok_or_else(|| config(format!("bad --gamma {spec:?}")))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| config(format!("bad number {t:?} in --gamma")));
    let g = match tag {
        "const" => QuasiCoefficients::constant(parse(body)?),
        "sol" => {
            let id: u8 = body.parse().map_err(|_| config(format!("bad solution id {body:?}")))?;
            QuasiCoefficients::from(ClosedForm::new(quasi_kind(a)?, id, a.alpha, a.beta)?)
        }
        "file" => {
            let text = fs::read_to_string(body).map_err(|e| config(format!("{body}: {e}")))?;
            let values = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(parse)
                .collect::<Result<Vec<_>, _>>()?;
            QuasiCoefficients::table(values)
        }
        _ => return Err(config(format!("unknown --gamma kind {tag:?}; use const, sol or file"))),
    };
    Ok(Some(g))
}

fn common_root(g: &QuasiCoefficients) -> Option<f64> {
    match g {
        QuasiCoefficients::ClosedForm(cf) => cf.common_root(),
        _ => None,
    }
}

/// Recurrence of the transformed family, tabulated through `n_max`.
fn transformed(a: &FamilyArgs, n_max: usize) -> Result<RecurrenceTable, CliError> {
    let point = transform_point(a)?;
    match a.kind {
        Transform::Qc => Ok(ChristoffelFamily::new(original(a)?, point).recurrence(n_max)?),
        Transform::Qg => {
            if a.family != FamilyKind::Jacobi || point != -1.0 {
                return Err(config("--kind qg is available for the Jacobi family at --point -1"));
            }
            Ok(GeronimusFamily::jacobi_calibrated(a.alpha, a.beta)?.recurrence(n_max)?)
        }
    }
}

fn check_closed_form_point(a: &FamilyArgs, g: &QuasiCoefficients) -> Result<(), CliError> {
    if let QuasiCoefficients::ClosedForm(cf) = g {
        if transform_point(a)? != cf.transform_point() {
            return Err(config(format!("{} closed forms belong to --point {}", cf.kind, cf.transform_point())));
        }
    }
    Ok(())
}

fn quasi_zeros(a: &FamilyArgs, g: &QuasiCoefficients) -> Result<ZeroSet, CliError> {
    check_closed_form_point(a, g)?;
    let base = transformed(a, a.n + 1)?;
    Ok(general_roots(&quasi_polynomial(&base, g, a.n)?)?)
}

fn support(a: &FamilyArgs) -> Option<(f64, f64)> {
    match a.family {
        FamilyKind::Jacobi => Some((-1.0, 1.0)),
        FamilyKind::Laguerre => Some((0.0, f64::INFINITY)),
        _ => None,
    }
}

fn zero_section(z: &ZeroSet) -> Section {
    let mut s = Section::new("zeros", &["k", "re", "im", "residual"]);
    for (k, (r, res)) in z.roots.iter().zip(&z.residuals).enumerate() {
        s.push(vec![(k + 1).into(), r.re.into(), r.im.into(), (*res).into()]);
    }
    s
}

fn method_name(z: &ZeroSet) -> &'static str {
    match z.method {
        qspec_core::RootMethod::TridiagonalEig => "tridiagonal-eig",
        qspec_core::RootMethod::GeneralIteration => "general-iteration",
    }
}

// ---- commands ----

fn cmd_table(id: u8, tol: f64) -> Result<Outcome, CliError> {
    let r = compare_table(id, tol)?;
    let mut cells = Section::new(
        "cells",
        &["table", "row", "col", "label", "reference", "computed", "delta", "status", "source"],
    );
    for c in &r.cells {
        cells.push(vec![
            (id as usize).into(),
            c.row.into(),
            c.col.into(),
            r.labels[c.col - 1].clone().into(),
            fmt_complex(c.reference).into(),
            c.computed.map_or(Value::Null, |z| fmt_complex(z).into()),
            c.delta.into(),
            if c.passes(tol) { "ok" } else { "MISMATCH" }.into(),
            c.source.clone().into(),
        ]);
    }
    let mut sections = vec![cells];
    if !r.unmatched.is_empty() {
        let mut s = Section::new("unmatched", &["col", "computed"]);
        for (col, z) in &r.unmatched {
            s.push(vec![(*col).into(), fmt_complex(*z).into()]);
        }
        sections.push(s);
    }
    let failures = r.failures().count();
    sections.push(summary(vec![
        ("table", (id as usize).into()),
        ("cells", r.cells.len().into()),
        ("mismatches", failures.into()),
        ("max_delta", r.max_delta.into()),
        ("tol", tol.into()),
        ("pass", r.passes().into()),
    ]));
    Ok(Outcome {
        report: Report {
            command: format!("table {id}"),
            sections,
        },
        status: if r.passes() { 0 } else { 3 },
    })
}

// every alpha + beta sits 1/4 away from the integers where closed-form
// and shifted-Jacobi denominators vanish
const VERIFY_GRID: [f64; 4] = [-0.375, 0.125, 1.125, 2.625];

fn cmd_verify(kind: QuasiKind, solution: u8, n: usize, tol: f64) -> Result<Outcome, CliError> {
    if n < 3 {
        return Err(config("--n must be at least 3"));
    }
    ClosedForm::new(kind, solution, 0.0, 0.0)?;
    let betas: &[f64] = if kind.is_jacobi() { &VERIFY_GRID } else { &[0.0] };
    let (mut residual, mut compact, mut commutation) = (0.0f64, 0.0f64, 0.0f64);
    let mut rows = Section::new("grid", &["alpha", "beta", "residual", "compact", "commutation"]);
    for &alpha in &VERIFY_GRID {
        for &beta in betas {
            let form = ClosedForm::new(kind, solution, alpha, beta)?;
            let base = form.base();
            let g = QuasiCoefficients::from(form);
            let mut r = 0.0f64;
            for k in 2..=n {
                r = r.max(orthogonality_residual(&base, &g, k)?.abs());
            }
            let mut c = 0.0f64;
            for k in 1..=n.min(15) {
                for j in 0..11 {
                    let x = if kind.is_jacobi() {
                        -0.95 + 0.19 * j as f64
                    } else {
                        0.1 + 2.0 * j as f64
                    };
                    c = c.max(form.compact_form(k, x)?.relative());
                }
            }
            let size = n.min(20);
            let q = quasi_recurrence(&base, &g, size, ORTHOGONALITY_TOL)?;
            let m = commutation_residual(
                &truncate(&q.table, size)?,
                &truncate(&base, size)?,
                &IntertwinerM::from_quasi(&g, size)?,
            )?;
            rows.push(vec![alpha.into(), beta.into(), r.into(), c.into(), m.into()]);
            residual = residual.max(r);
            compact = compact.max(c);
            commutation = commutation.max(m);
        }
    }
    let pass = residual < tol && compact < tol && commutation < tol;
    Ok(Outcome {
        report: Report {
            command: format!("verify {kind} {solution}"),
            sections: vec![
                rows,
                summary(vec![
                    ("family", kind.to_string().into()),
                    ("solution", (solution as usize).into()),
                    ("max_residual", residual.into()),
                    ("max_compact", compact.into()),
                    ("max_commutation", commutation.into()),
                    ("tol", tol.into()),
                    ("pass", pass.into()),
                ]),
            ],
        },
        status: if pass { 0 } else { 2 },
    })
}

fn cmd_zeros(a: &FamilyArgs) -> Result<Report, CliError> {
    if a.n == 0 {
        return Err(config("--n must be at least 1"));
    }
    if a.family == FamilyKind::Opuc {
        let (poly, label) = circle_poly(a)?;
        let mut sections = circle_zero_sections(&poly)?;
        sections.insert(0, summary(vec![("polynomial", label.into())]));
        return Ok(Report {
            command: "zeros".into(),
            sections,
        });
    }
    let (z, what) = match gamma_spec(a)? {
        Some(g) => (quasi_zeros(a, &g)?, "quasi"),
        None if a.point.is_some() => (ops_zeros(&transformed(a, a.n)?, a.n)?, "transformed"),
        None => (ops_zeros(&original(a)?, a.n)?, "orthogonal"),
    };
    let mut info = vec![
        ("polynomial", what.into()),
        ("degree", a.n.into()),
        ("method", method_name(&z).into()),
    ];
    if let (Some((lo, hi)), true) = (support(a), z.is_real()) {
        let c = classify_support(&z, lo, hi, BOUNDARY_TOL)?;
        info.extend([
            ("inside", c.inside.into()),
            ("on_boundary", c.on_boundary.into()),
            ("left_outside", c.left_outside.into()),
            ("right_outside", c.right_outside.into()),
        ]);
    }
    Ok(Report {
        command: "zeros".into(),
        sections: vec![zero_section(&z), summary(info)],
    })
}

fn cmd_interlace(a: &FamilyArgs, pair: Pairing, tol: f64) -> Result<Report, CliError> {
    let g = gamma_spec(a)?.ok_or_else(|| config("interlace needs --gamma or --solution"))?;
    let mut pairs: Vec<(String, ZeroSet, ZeroSet, Option<f64>)> = vec![];
    match pair {
        Pairing::Triple => {
            let p = ops_zeros(&original(a)?, a.n)?;
            let t = ops_zeros(&transformed(a, a.n)?, a.n)?;
            let q = quasi_zeros(a, &g)?;
            let root = common_root(&g);
            pairs.push(("original/transformed".into(), p.clone(), t.clone(), None));
            pairs.push(("transformed/quasi".into(), t, q.clone(), root));
            pairs.push(("original/quasi".into(), p, q, root));
        }
        Pairing::QcQg => {
            let QuasiCoefficients::ClosedForm(cf) = g else {
                return Err(config("--pair qc-qg needs a closed-form solution"));
            };
            if a.family != FamilyKind::Jacobi {
                return Err(config("--pair qc-qg is defined for the Jacobi family"));
            }
            let qc_args = FamilyArgs {
                kind: Transform::Qc,
                ..a.clone()
            };
            let qg_args = FamilyArgs {
                kind: Transform::Qg,
                ..a.clone()
            };
            let qc = ClosedForm::new(QuasiKind::QcJacobi, cf.solution, a.alpha, a.beta)?;
            let qg = ClosedForm::new(QuasiKind::QgJacobi, cf.solution, a.alpha, a.beta)?;
            let root = match (qc.common_root(), qg.common_root()) {
                (Some(x), Some(y)) if x == y => Some(x),
                _ => None,
            };
            pairs.push((
                "quasi-geronimus/quasi-christoffel".into(),
                quasi_zeros(&qg_args, &qg.into())?,
                quasi_zeros(&qc_args, &qc.into())?,
                root,
            ));
        }
    }
    let mut s = Section::new("pairs", &["pair", "strict", "pattern", "removed"]);
    for (name, x, y, root) in pairs {
        let r = match root {
            Some(pt) => interlace_excluding(&x, &y, pt, tol)?,
            None => interlace(&x, &y)?,
        };
        let removed: Vec<String> = r.removed.iter().map(|v| crate::output::fmt_num(*v)).collect();
        s.push(vec![name.into(), r.strict.into(), r.pattern.into(), removed.join(" ").into()]);
    }
    Ok(Report {
        command: "interlace".into(),
        sections: vec![s],
    })
}

fn chain_section(ch: &ChainData, n_max: usize) -> Section {
    let mut s = Section::new("chain", &["n", "s", "m"]);
    for n in ch.start_index..=n_max {
        s.push(vec![n.into(), ch.s(n).into(), ch.m(n).into()]);
    }
    s
}

fn cmd_chain(a: &FamilyArgs) -> Result<Report, CliError> {
    let t = real_point(a)?.ok_or_else(|| config("chain needs --point t for a custom family"))?;
    let ch = match gamma_spec(a)? {
        Some(g) => {
            let args = FamilyArgs {
                point: None,
                ..a.clone()
            };
            if a.family == FamilyKind::Custom {
                return Err(config("quasi chains need a classical family"));
            }
            check_closed_form_point(&args, &g)?;
            quasi_chain_sequence(&transformed(&args, a.n + 2)?, &g, t, a.n)?
        }
        None => chain_sequence(&original(a)?, t, a.n)?,
    };
    let residual = ch.reconstruction_residual();
    Ok(Report {
        command: "chain".into(),
        sections: vec![
            chain_section(&ch, a.n),
            summary(vec![("t", t.into()), ("reconstruction_residual", residual.into())]),
        ],
    })
}

fn cmd_jacobimatrix(a: &FamilyArgs) -> Result<Report, CliError> {
    let n = a.n;
    if n == 0 {
        return Err(config("--n must be at least 1"));
    }
    let base = transformed(a, n + 1)?;
    let jc = truncate(&base, n)?;
    let Some(g) = gamma_spec(a)? else {
        let mut s = Section::new("matrix", &["k", "c", "lambda"]);
        for k in 1..=n {
            let l = if k >= 2 { Some(jc.sub[k - 2]) } else { None };
            s.push(vec![k.into(), jc.diag[k - 1].into(), l.into()]);
        }
        return Ok(Report {
            command: "jacobimatrix".into(),
            sections: vec![s],
        });
    };
    check_closed_form_point(a, &g)?;
    let q = quasi_recurrence(&base, &g, n, ORTHOGONALITY_TOL)?;
    let jqc = truncate(&q.table, n)?;
    let m = IntertwinerM::from_quasi(&g, n)?;
    let mut s = Section::new("matrix", &["k", "c", "lambda", "c_qc", "lambda_qc", "gamma"]);
    for k in 1..=n {
        let sub = |v: &[f64]| if k >= 2 { Some(v[k - 2]) } else { None };
        let gk = if k < n { Some(m.gammas[k - 1]) } else { None };
        s.push(vec![
            k.into(),
            jc.diag[k - 1].into(),
            sub(&jc.sub).into(),
            jqc.diag[k - 1].into(),
            sub(&jqc.sub).into(),
            gk.into(),
        ]);
    }
    let residual = commutation_residual(&jqc, &jc, &m)?;
    Ok(Report {
        command: "jacobimatrix".into(),
        sections: vec![
            s,
            summary(vec![
                ("size", n.into()),
                ("commutation_residual", residual.into()),
                ("positive_definite", q.is_positive_definite().into()),
                ("lambda2_vanishes", q.lambda2_vanishes.into()),
            ]),
        ],
    })
}

fn circle_point(a: &FamilyArgs) -> Result<Complex64, CliError> {
    Ok(parse_complex(a.point.as_deref().unwrap_or("1"))?)
}

fn lebesgue(n: usize) -> VerblunskySequence {
    VerblunskySequence::closed_form(VerblunskyClosedForm::Lebesgue, n + 2)
}

fn circle_poly(a: &FamilyArgs) -> Result<(MonicPoly<Complex64>, String), CliError> {
    if a.n == 0 {
        return Err(config("--n must be at least 1"));
    }
    let g = circle_point(a)?;
    let v = lebesgue(a.n);
    match &a.an {
        None => Ok((
            christoffel_opuc_poly(&v, g, a.n + 1)?,
            format!("Phi_{}(z;{})", a.n, fmt_complex(g)),
        )),
        Some(s) => {
            let an = parse_complex(s)?;
            Ok((
                quasi_christoffel_opuc_poly(&v, g, an, a.n)?,
                format!("Phi_{}(z;{},{})", a.n, fmt_complex(g), fmt_complex(an)),
            ))
        }
    }
}

fn circle_zero_sections(p: &MonicPoly<Complex64>) -> Result<Vec<Section>, CliError> {
    let r = classify_unit_disc(p, CIRCLE_TOL)?;
    let mut s = Section::new("zeros", &["k", "re", "im", "modulus", "location"]);
    for (k, z) in r.roots.iter().enumerate() {
        let m = z.norm();
        let loc = if (m - 1.0).abs() <= CIRCLE_TOL {
            "circle"
        } else if m < 1.0 {
            "inside"
        } else {
            "outside"
        };
        s.push(vec![(k + 1).into(), z.re.into(), z.im.into(), m.into(), loc.into()]);
    }
    let counts = summary(vec![
        ("inside", r.inside_disc.into()),
        ("on_circle", r.on_circle.into()),
        ("outside", r.outside_disc.into()),
    ]);
    Ok(vec![s, counts])
}

fn cmd_opuc(a: &FamilyArgs) -> Result<Report, CliError> {
    if !matches!(a.family, FamilyKind::Opuc | FamilyKind::Jacobi) {
        return Err(config("opuc works on the unit circle; omit --family or use --family opuc"));
    }
    let g = circle_point(a)?;
    let (poly, label) = circle_poly(a)?;
    let v = lebesgue(a.n);
    let mut alphas = Section::new("verblunsky", &["k", "re", "im"]);
    for k in 0..a.n {
        let phi = christoffel_opuc_poly(&v, g, k + 2)?;
        let alpha = -phi.coeffs()[0].conj();
        alphas.push(vec![k.into(), alpha.re.into(), alpha.im.into()]);
    }
    let mut sections = vec![summary(vec![("polynomial", label.into())]), alphas];
    sections.extend(circle_zero_sections(&poly)?);
    Ok(Report {
        command: "opuc".into(),
        sections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(family: FamilyKind) -> FamilyArgs {
        FamilyArgs {
            family,
            alpha: 0.0,
            beta: 0.0,
            n: 5,
            solution: None,
            gamma: None,
            kind: Transform::Qc,
            point: None,
            an: None,
            coeffs: None,
        }
    }

    #[test]
    fn gamma_specs() {
        let mut a = fam(FamilyKind::Jacobi);
        a.gamma = Some("const:-2".into());
        assert_eq!(gamma_spec(&a).unwrap(), Some(QuasiCoefficients::constant(-2.0)));
        a.gamma = Some("sol:3".into());
        assert!(matches!(gamma_spec(&a).unwrap(), Some(QuasiCoefficients::ClosedForm(_))));
        a.solution = Some(1);
        assert!(matches!(gamma_spec(&a), Err(CliError::Config(_))));
        a.solution = None;
        a.gamma = Some("nope:1".into());
        assert!(gamma_spec(&a).is_err());
        let mut l = fam(FamilyKind::Laguerre);
        l.solution = Some(3);
        assert!(gamma_spec(&l).is_err());
    }

    #[test]
    fn geronimus_needs_jacobi_at_minus_one() {
        let mut a = fam(FamilyKind::Laguerre);
        a.kind = Transform::Qg;
        assert!(matches!(transformed(&a, 4), Err(CliError::Config(_))));
        let mut j = fam(FamilyKind::Jacobi);
        j.kind = Transform::Qg;
        j.beta = 0.5;
        assert!(transformed(&j, 4).is_ok());
    }

    #[test]
    fn closed_forms_pin_the_point() {
        let mut a = fam(FamilyKind::Jacobi);
        a.solution = Some(1);
        a.point = Some("1".into());
        let g = gamma_spec(&a).unwrap().unwrap();
        assert!(check_closed_form_point(&a, &g).is_err());
    }
}
