//! Dense monic polynomials over real or complex scalars.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest degree for which coefficient vectors are formed.
///
/// Monomial coefficients of orthogonal polynomials grow quickly, so the dense
/// form is only trusted for small degrees. Evaluation always goes through the
/// recurrence instead.
pub const COEFF_DEGREE_LIMIT: usize = 64;

/// Default relative tolerance for [`MonicPoly::deflate`].
pub const DEFLATION_TOL: f64 = 1e-9;

/// Scalar field the polynomial routines run over: `f64` on the real line,
/// `Complex64` on the unit circle.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    fn modulus(self) -> f64;
    fn conj(self) -> Self;
    fn to_complex(self) -> Complex64;
    fn is_finite(self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn conj(self) -> Self {
        self
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Horner evaluation of a coefficient slice (index k holds the x^k term).
pub fn horner<T: Scalar>(coeffs: &[T], x: T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, &c| acc * x + c)
}

/// Sum of |a_k| |x|^k, the natural magnitude against which a computed value
/// of the polynomial at `x` should be judged.
pub fn eval_scale<T: Scalar>(coeffs: &[T], x: T) -> f64 {
    let r = x.modulus();
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc * r + c.modulus())
}

/// A polynomial with leading coefficient exactly one.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly<T: Scalar> {
    coeffs: Vec<T>,
}

/// Quotient and remainder of dividing by a linear factor.
#[derive(Debug, Clone, PartialEq)]
pub struct Deflation<T: Scalar> {
    pub quotient: MonicPoly<T>,
    /// |p(a)|, the synthetic-division remainder.
    pub residual: f64,
}

impl<T: Scalar> MonicPoly<T> {
    /// Wraps a coefficient vector. The last entry must be exactly one.
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::Shape("empty coefficient vector".into())),
            Some(&lead) if lead != T::one() => Err(Error::Shape(format!(
                "leading coefficient {lead:?} is not one"
            ))),
            Some(_) if coeffs.iter().any(|c| !c.is_finite()) => {
                Err(Error::Shape("non-finite coefficient".into()))
            }
            Some(_) => Ok(Self { coeffs }),
        }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![T::one()],
        }
    }

    /// The monomial x^n.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        Self { coeffs }
    }

    /// The linear factor x - a.
    pub fn linear(a: T) -> Self {
        Self {
            coeffs: vec![-a, T::one()],
        }
    }

    /// Product of the linear factors (x - r) over `roots`.
    pub fn from_roots(roots: &[T]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| acc.mul_linear(r))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn eval(&self, x: T) -> T {
        horner(&self.coeffs, x)
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.modulus()).fold(0.0, f64::max)
    }

    /// x * p(x)
    pub fn mul_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// (x - a) * p(x)
    pub fn mul_linear(&self, a: T) -> Self {
        let mut coeffs = self.mul_x().coeffs;
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k] = coeffs[k] - a * c;
        }
        Self { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Coefficients of p'(x), which is not monic.
    pub fn derivative(&self) -> Vec<T> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| T::from_f64(k as f64) * c)
            .collect()
    }

    /// Synthetic division by (x - a) with the default tolerance
    /// `DEFLATION_TOL * max|coeff|` on the remainder.
    pub fn deflate(&self, a: T) -> Result<Deflation<T>> {
        self.deflate_with_tol(a, DEFLATION_TOL * self.max_coeff().max(1.0))
    }

    /// Synthetic division by (x - a); fails when |p(a)| exceeds `tol`.
    pub fn deflate_with_tol(&self, a: T, tol: f64) -> Result<Deflation<T>> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::Shape("cannot deflate a constant".into()));
        }
        let mut quotient = vec![T::zero(); n];
        let mut carry = T::zero();
        for k in (0..=n).rev() {
            carry = carry * a + self.coeffs[k];
            if k > 0 {
                quotient[k - 1] = carry;
            }
        }
        let residual = carry.modulus();
        if !(residual <= tol) {
            return Err(Error::NotARoot {
                value: format!("{a:?}"),
                residual,
                tolerance: tol,
            });
        }
        Ok(Deflation {
            quotient: Self { coeffs: quotient },
            residual,
        })
    }
}

/// p + t q for deg p = deg q + 1; the result stays monic.
///
/// A coefficient whose two contributions cancel to within a few ulps of their
/// size is set to exactly zero, so that identities such as
/// Phi_5 - (5/6) Phi_4 = z^5 come out with exact roots at the origin.
pub fn linear_combine<T: Scalar>(p: &MonicPoly<T>, q: &MonicPoly<T>, t: T) -> Result<MonicPoly<T>> {
    if p.degree() != q.degree() + 1 {
        return Err(Error::Shape(format!(
            "linear_combine needs deg p = deg q + 1, got {} and {}",
            p.degree(),
            q.degree()
        )));
    }
    let mut coeffs = p.coeffs.clone();
    for (k, &qk) in q.coeffs.iter().enumerate() {
        let term = t * qk;
        let sum = coeffs[k] + term;
        let size = coeffs[k].modulus() + term.modulus();
        coeffs[k] = if sum.modulus() <= 32.0 * f64::EPSILON * size {
            T::zero()
        } else {
            sum
        };
    }
    Ok(MonicPoly { coeffs })
}
