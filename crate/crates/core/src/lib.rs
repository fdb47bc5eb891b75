//! Christoffel, Geronimus and quasi-type transformations of orthogonal
//! polynomials on the real line and the unit circle.

// `!(x <= tol)` rejects NaN alongside out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod classical;
pub mod error;
pub mod jacobi_matrix;
pub mod opuc;
pub mod poly;
pub mod quasi;
pub mod recurrence;
pub mod spectral;
pub mod tables;
pub mod zeros;

pub use classical::{Classical, JacobiParams, LaguerreParams};
pub use error::{Error, Result};
pub use poly::{linear_combine, MonicPoly, Scalar};
pub use quasi::{ClosedForm, QuasiCoefficients, QuasiKind, QuasiRecurrence};
pub use recurrence::{Recurrence, RecurrenceTable};
pub use spectral::{ChristoffelFamily, GeronimusFamily};
pub use zeros::{InterlacingReport, RootMethod, SupportCounts, ZeroSet};
pub use jacobi_matrix::{IntertwinerM, TridiagonalOperator};
pub use chain::ChainData;
pub use opuc::{UnitCircleZeroReport, VerblunskyClosedForm, VerblunskySequence, VerblunskySource};
pub use tables::{CellComparison, TableColumn, TableReport};
