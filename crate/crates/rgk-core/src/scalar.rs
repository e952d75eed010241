//! Scalar arithmetic with two backends: exact arbitrary-precision
//! rationals and approximate `f64`.
//!
//! Every ring operation (`+`, `-`, `*`, `/`) on exact inputs stays exact.
//! The only lossy operation is [`Scalar::sqrt`]: the square root of a
//! rational that is not a perfect square downgrades the result to an
//! approximate float, and the [`Scalar::Approx`] variant itself is the
//! record that a downgrade happened somewhere upstream. Any operation
//! that mixes an exact and an approximate operand produces an
//! approximate result, so exactness loss propagates automatically.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Which arithmetic backend a context runs on.
///
/// `Exact` keeps every value rational for as long as the operations
/// allow; `Float` coerces everything to `f64` up front and compares with
/// a tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithmeticMode {
    Exact,
    Float,
}

impl fmt::Display for ArithmeticMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithmeticMode::Exact => write!(f, "exact"),
            ArithmeticMode::Float => write!(f, "float"),
        }
    }
}

/// A number that is either an exact big rational or an `f64`.
///
/// `Exact` values print as `numer/denom` (or just `numer` when the
/// denominator is one); `Approx` values print with Rust's shortest
/// round-trip float formatting.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact fraction `numer/denom`.
    ///
    /// # Panics
    /// Panics if `denom` is zero.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "scalar ratio with zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn approx(x: f64) -> Self {
        Scalar::Approx(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// True only for a representationally exact zero: the rational `0`,
    /// or the float `0.0`. Tolerance-based zero tests belong to the
    /// comparison helpers on `MetricContext`.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx(x) => *x == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Approx(x) => *x < 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Approx(x) => *x > 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Approx(x) => Scalar::Approx(x.abs()),
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics on zero; callers guard divisions that can legitimately
    /// degenerate and report a typed error instead.
    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                assert!(!r.is_zero(), "reciprocal of exact zero");
                Scalar::Exact(r.recip())
            }
            Scalar::Approx(x) => {
                assert!(*x != 0.0, "reciprocal of float zero");
                Scalar::Approx(1.0 / x)
            }
        }
    }

    /// Square root. Exact input with a perfect-square numerator and
    /// denominator stays exact; any other exact input downgrades to an
    /// approximate float. Approximate input stays approximate.
    ///
    /// # Panics
    /// Panics on an exact negative input. A slightly negative float
    /// (rounding noise from a quantity that is non-negative in exact
    /// arithmetic) is clamped to zero.
    pub fn sqrt(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                assert!(!r.is_negative(), "square root of negative exact scalar {r}");
                match rational_sqrt(r) {
                    Some(root) => Scalar::Exact(root),
                    None => Scalar::Approx(r.to_f64().unwrap_or(f64::NAN).sqrt()),
                }
            }
            Scalar::Approx(x) => {
                debug_assert!(*x > -1e-6, "square root of negative float {x}");
                Scalar::Approx(if *x <= 0.0 { 0.0 } else { x.sqrt() })
            }
        }
    }

    /// `|self - other| <= tol * max(1, |self|, |other|)` in `f64`.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        let a = self.to_f64();
        let b = other.to_f64();
        if a == b {
            return true;
        }
        let scale = 1f64.max(a.abs()).max(b.abs());
        (a - b).abs() <= tol * scale
    }

    /// Coerce into the given arithmetic mode. `Float` mode flattens to
    /// `f64`; `Exact` mode leaves the value as it is (an already
    /// downgraded float is not re-promoted).
    pub fn in_mode(&self, mode: ArithmeticMode) -> Scalar {
        match mode {
            ArithmeticMode::Exact => self.clone(),
            ArithmeticMode::Float => Scalar::Approx(self.to_f64()),
        }
    }

    /// Exact rational payload, if this scalar has one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }
}

/// Rational square root when both numerator and denominator are perfect
/// squares (input must be canonical and non-negative).
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let numer = r.numer();
    let denom = r.denom();
    let sn = numer.sqrt();
    if &(&sn * &sn) != numer {
        return None;
    }
    let sd = denom.sqrt();
    if &(&sd * &sd) != denom {
        return None;
    }
    Some(BigRational::new(sn, sd))
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Approx(self.to_f64() $op rhs.to_f64()),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            _ => Scalar::Approx(self.to_f64() / rhs.to_f64()),
        }
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        &self / rhs
    }
}

impl Div<Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Failure to read a scalar from text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("empty scalar literal")]
    Empty,
    #[error("invalid scalar literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    /// Accepts `a/b` (exact rational), a plain integer (exact), or a
    /// decimal / scientific literal (approximate float).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        if let Some((n, d)) = s.split_once('/') {
            let numer =
                BigInt::from_str(n.trim()).map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
            let denom =
                BigInt::from_str(d.trim()).map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
            if denom.is_zero() {
                return Err(ScalarParseError::ZeroDenominator(s.to_string()));
            }
            return Ok(Scalar::Exact(BigRational::new(numer, denom)));
        }
        if s.contains(['.', 'e', 'E']) {
            let x = f64::from_str(s).map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
            if !x.is_finite() {
                return Err(ScalarParseError::Invalid(s.to_string()));
            }
            return Ok(Scalar::Approx(x));
        }
        let n = BigInt::from_str(s).map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
        Ok(Scalar::Exact(BigRational::from_integer(n)))
    }
}
