//! Recomputation of the ten reference zero tables and comparison against the
//! embedded fixture.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classical::{JacobiParams, LaguerreParams};
use crate::error::{Error, Result};
use crate::opuc::{christoffel_opuc_poly, quasi_christoffel_opuc_poly, VerblunskyClosedForm, VerblunskySequence};
use crate::poly::MonicPoly;
use crate::quasi::{quasi_polynomial, ClosedForm, QuasiCoefficients, QuasiKind};
use crate::recurrence::Recurrence;
use crate::spectral::{ChristoffelFamily, GeronimusFamily};
use crate::zeros::{general_roots, ops_zeros};

/// Absolute per-cell tolerance; the fixture carries 5 to 7 digits.
pub const TABLE_TOL: f64 = 1e-4;

pub const TABLE_IDS: std::ops::RangeInclusive<u8> = 1..=10;

const FIXTURE: &str = include_str!("../data/paper_tables.csv");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceCell {
    pub table: u8,
    pub row: usize,
    pub col: usize,
    pub value: Complex64,
    pub source: String,
}

/// Parses "1.5", "-0.3+0.2i", "0.4-1e-3i", "-2i".
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let bad = || Error::Domain(format!("cannot parse complex value {s:?}"));
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(num(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => num(t)?,
    };
    Ok(Complex64::new(re, im))
}

#[derive(Deserialize)]
struct FixtureRecord {
    table_id: u8,
    row: usize,
    col: usize,
    value: String,
    source: String,
}

/// Every cell of the embedded fixture.
pub fn reference_cells() -> Result<Vec<ReferenceCell>> {
    let mut reader = csv::Reader::from_reader(FIXTURE.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Domain(format!("fixture: {e}")))?;
    if headers != vec!["table_id", "row", "col", "value", "source"] {
        return Err(Error::Domain("fixture header mismatch".into()));
    }
    reader
        .deserialize::<FixtureRecord>()
        .map(|rec| {
            let rec = rec.map_err(|e| Error::Domain(format!("fixture: {e}")))?;
            Ok(ReferenceCell {
                table: rec.table_id,
                row: rec.row,
                col: rec.col,
                value: parse_complex(&rec.value)?,
                source: rec.source,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableColumn {
    pub label: String,
    pub roots: Vec<Complex64>,
}

fn column(label: impl Into<String>, roots: Vec<Complex64>) -> TableColumn {
    TableColumn {
        label: label.into(),
        roots,
    }
}

fn roots_of<T: crate::poly::Scalar>(p: &MonicPoly<T>) -> Result<Vec<Complex64>> {
    Ok(general_roots(p)?.roots)
}

fn orthogonal_roots<R: Recurrence>(rc: &R, n: usize) -> Result<Vec<Complex64>> {
    Ok(ops_zeros(rc, n)?.roots)
}

/// Christoffel transform at a of a classical recurrence, tabulated far
/// enough for degree n quasi polynomials.
fn christoffel_base<R: Recurrence>(base: R, a: f64, n: usize) -> Result<crate::RecurrenceTable> {
    ChristoffelFamily::new(base, a).recurrence(n + 1)
}

fn qc_jacobi_constant(n: usize, alpha: f64, beta: f64, gamma: f64) -> Result<TableColumn> {
    let base = christoffel_base(JacobiParams::new(alpha, beta)?, -1.0, n)?;
    let p = quasi_polynomial(&base, &QuasiCoefficients::constant(gamma), n)?;
    Ok(column(format!("JQC_{n} a={alpha} b={beta} gamma={gamma}"), roots_of(&p)?))
}

fn qc_jacobi_sol1(n: usize, alpha: f64, beta: f64) -> Result<TableColumn> {
    let form = ClosedForm::new(QuasiKind::QcJacobi, 1, alpha, beta)?;
    let base = christoffel_base(JacobiParams::new(alpha, beta)?, -1.0, n)?;
    let p = quasi_polynomial(&base, &form.into(), n)?;
    Ok(column(format!("JQC_{n} sol1 a={alpha} b={beta}"), roots_of(&p)?))
}

fn qg_jacobi_sol1(n: usize, alpha: f64, beta: f64) -> Result<TableColumn> {
    let form = ClosedForm::new(QuasiKind::QgJacobi, 1, alpha, beta)?;
    let base = GeronimusFamily::jacobi_calibrated(alpha, beta)?.recurrence(n + 1)?;
    let p = quasi_polynomial(&base, &form.into(), n)?;
    Ok(column(format!("PQG_{n} sol1 a={alpha} b={beta}"), roots_of(&p)?))
}

fn jacobi_triple(n: usize, alpha: f64, beta: f64) -> Result<Vec<TableColumn>> {
    let p = JacobiParams::new(alpha, beta)?;
    let c = christoffel_base(p, -1.0, n)?;
    Ok(vec![
        column(format!("P_{n} a={alpha} b={beta}"), orthogonal_roots(&p, n)?),
        column(format!("C_{n} a={alpha} b={beta}"), orthogonal_roots(&c, n)?),
        qc_jacobi_sol1(n, alpha, beta)?,
    ])
}

fn qc_laguerre(n: usize, alpha: f64, gamma: QuasiCoefficients, label: String) -> Result<TableColumn> {
    let base = christoffel_base(LaguerreParams::new(alpha)?, 0.0, n)?;
    Ok(column(label, roots_of(&quasi_polynomial(&base, &gamma, n)?)?))
}

fn qc_laguerre_constant(n: usize, alpha: f64, gamma: f64) -> Result<TableColumn> {
    qc_laguerre(
        n,
        alpha,
        QuasiCoefficients::constant(gamma),
        format!("LQC_{n} a={alpha} gamma={gamma}"),
    )
}

fn qc_laguerre_sol1(n: usize, alpha: f64) -> Result<TableColumn> {
    let form = ClosedForm::new(QuasiKind::QcLaguerre, 1, alpha, 0.0)?;
    qc_laguerre(n, alpha, form.into(), format!("LQC_{n} sol1 a={alpha}"))
}

fn circle_column(g: Complex64, n: usize, a: Option<Complex64>, label: &str) -> Result<TableColumn> {
    let lebesgue = VerblunskySequence::closed_form(VerblunskyClosedForm::Lebesgue, n + 2);
    let p = match a {
        None => christoffel_opuc_poly(&lebesgue, g, n + 1)?,
        Some(a) => quasi_christoffel_opuc_poly(&lebesgue, g, a, n)?,
    };
    Ok(column(label, roots_of(&p)?))
}

/// Computed columns of table `id`, in fixture column order.
pub fn compute_table(id: u8) -> Result<Vec<TableColumn>> {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match id {
        1 => [(5, -0.5, 0.0, 3.0), (5, 0.0, 0.5, 2.0), (6, 1.0, -0.5, -1.0), (6, 0.5, 1.0, -2.0)]
            .into_iter()
            .map(|(n, a, b, g)| qc_jacobi_constant(n, a, b, g))
            .collect(),
        2 => [(7, 0.1, -0.4), (8, 0.1, -0.4), (9, 1.3, 0.4), (10, 1.3, 0.4)]
            .into_iter()
            .map(|(n, a, b)| qc_jacobi_sol1(n, a, b))
            .collect(),
        3 => jacobi_triple(7, 1.3, -0.6),
        4 => Ok(vec![qc_laguerre_constant(5, 0.0, 7.0)?, qc_laguerre_constant(6, 1.5, 9.0)?]),
        5 => Ok(vec![qc_laguerre_sol1(5, -0.5)?, qc_laguerre_sol1(6, -0.5)?]),
        6 => {
            let l = LaguerreParams::new(-0.5)?;
            let c = christoffel_base(l, 0.0, 5)?;
            Ok(vec![
                column("L_5 a=-0.5", orthogonal_roots(&l, 5)?),
                column("C_5 a=-0.5", orthogonal_roots(&c, 5)?),
                qc_laguerre_sol1(5, 2.0)?,
            ])
        }
        7 => Ok(vec![
            qc_jacobi_sol1(6, 1.0, 0.5)?,
            qc_jacobi_sol1(5, 2.0, 1.0)?,
            qg_jacobi_sol1(6, 1.0, 0.5)?,
            qg_jacobi_sol1(5, 2.0, 1.0)?,
        ]),
        8 => jacobi_triple(8, -0.3, 0.1),
        9 => Ok(vec![
            circle_column(one, 5, None, "Phi_5(z;1)")?,
            circle_column(one, 6, None, "Phi_6(z;1)")?,
            circle_column(one, 5, Some(Complex64::new(1.0 / 6.0, -1.0)), "Phi_5(z;1,1/6-i)")?,
            circle_column(one, 6, Some(Complex64::new(-1.16, 0.0)), "Phi_6(z;1,-1.16)")?,
            circle_column(one, 5, Some(Complex64::new(5.0 / 6.0, 0.0)), "Phi_5(z;1,5/6)")?,
        ]),
        10 => Ok(vec![
            circle_column(i, 4, None, "Phi_4(z;i)")?,
            circle_column(i, 5, None, "Phi_5(z;i)")?,
            circle_column(i, 4, Some(Complex64::new(0.0, 1.25)), "Phi_4(z;i,1.25i)")?,
            circle_column(i, 5, Some(Complex64::new(1.1, 0.0)), "Phi_5(z;i,1.1)")?,
            circle_column(i, 4, Some(Complex64::new(0.0, 0.8)), "Phi_4(z;i,0.8i)")?,
        ]),
        _ => Err(Error::Domain(format!("no table {id}; ids run 1 to 10"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellComparison {
    pub row: usize,
    pub col: usize,
    pub reference: Complex64,
    pub computed: Option<Complex64>,
    pub delta: f64,
    pub source: String,
}

impl CellComparison {
    pub fn passes(&self, tol: f64) -> bool {
        self.delta <= tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReport {
    pub table: u8,
    pub labels: Vec<String>,
    pub cells: Vec<CellComparison>,
    /// Computed roots left over after matching, per column.
    pub unmatched: Vec<(usize, Complex64)>,
    pub max_delta: f64,
    pub tol: f64,
}

impl TableReport {
    pub fn passes(&self) -> bool {
        self.unmatched.is_empty() && self.cells.iter().all(|c| c.passes(self.tol))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellComparison> {
        self.cells.iter().filter(move |c| !c.passes(self.tol))
    }
}

/// Pairs reference and computed values by repeatedly taking the closest
/// remaining pair, so printing order in the fixture does not matter.
fn greedy_match(reference: &[Complex64], computed: &[Complex64]) -> Vec<Option<usize>> {
    let mut pairs: Vec<(f64, usize, usize)> = reference
        .iter()
        .enumerate()
        .flat_map(|(r, a)| computed.iter().enumerate().map(move |(c, b)| ((a - b).norm(), r, c)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut out = vec![None; reference.len()];
    let mut used = vec![false; computed.len()];
    for (_, r, c) in pairs {
        if out[r].is_none() && !used[c] {
            out[r] = Some(c);
            used[c] = true;
        }
    }
    out
}

pub fn compare_table(id: u8, tol: f64) -> Result<TableReport> {
    let columns = compute_table(id)?;
    let reference: Vec<ReferenceCell> = reference_cells()?.into_iter().filter(|c| c.table == id).collect();
    let mut cells = Vec::new();
    let mut unmatched = Vec::new();
    for (k, col) in columns.iter().enumerate() {
        let mut refs: Vec<&ReferenceCell> = reference.iter().filter(|c| c.col == k + 1).collect();
        refs.sort_by_key(|c| c.row);
        let values: Vec<Complex64> = refs.iter().map(|c| c.value).collect();
        let matched = greedy_match(&values, &col.roots);
        for (cell, m) in refs.iter().zip(&matched) {
            let computed = m.map(|j| col.roots[j]);
            cells.push(CellComparison {
                row: cell.row,
                col: cell.col,
                reference: cell.value,
                computed,
                delta: computed.map_or(f64::INFINITY, |z| (z - cell.value).norm()),
                source: cell.source.clone(),
            });
        }
        for (j, z) in col.roots.iter().enumerate() {
            if !matched.contains(&Some(j)) {
                unmatched.push((k + 1, *z));
            }
        }
    }
    if reference.iter().any(|c| c.col == 0 || c.col > columns.len()) {
        return Err(Error::Shape(format!("fixture table {id} has columns beyond the computed {}", columns.len())));
    }
    let max_delta = cells.iter().map(|c| c.delta).fold(0.0, f64::max);
    Ok(TableReport {
        table: id,
        labels: columns.into_iter().map(|c| c.label).collect(),
        cells,
        unmatched,
        max_delta,
        tol,
    })
}
