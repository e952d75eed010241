//! Flat Lorentzian vector space: four-vectors, covectors, bivectors,
//! endomorphisms, and the [`MetricContext`] that carries the metric,
//! the speed parameter `c`, the arithmetic mode, and the comparison
//! tolerance.
//!
//! Index conventions used throughout the crate:
//! * coordinates are numbered `0..4` with slot `0` the time coordinate;
//! * the default metric is `diag(-1, +1, +1, +1)` (signature: one
//!   negative, three positive directions);
//! * time orientation is fixed by the first coordinate, so a timelike
//!   vector is future-pointing when its `0` component is positive.

use crate::linalg;
use crate::scalar::{ArithmeticMode, Scalar};
use std::fmt;
use std::ops::Index;

/// Errors from metric construction and metric-dependent vector operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MinkowskiError {
    #[error("metric matrix is not symmetric")]
    NonSymmetricMetric,
    #[error("metric matrix is singular")]
    SingularMetric,
    #[error("metric signature is ({neg} negative, {pos} positive, {zero} null); need (1, 3, 0)")]
    WrongSignature { neg: usize, pos: usize, zero: usize },
    #[error("speed parameter c must be positive, got {0}")]
    NonPositiveLightSpeed(Scalar),
    #[error("vector is {found:?}, expected a future-pointing timelike vector")]
    NotTimelikeFuture { found: CausalClass },
}

/// A contravariant four-vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector4([Scalar; 4]);

impl Vector4 {
    pub fn new(components: [Scalar; 4]) -> Self {
        Vector4(components)
    }

    pub fn from_ints(components: [i64; 4]) -> Self {
        Vector4(components.map(Scalar::from_int))
    }

    pub fn zero() -> Self {
        Vector4(std::array::from_fn(|_| Scalar::zero()))
    }

    pub fn components(&self) -> &[Scalar; 4] {
        &self.0
    }

    pub fn add(&self, other: &Vector4) -> Vector4 {
        Vector4(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    pub fn sub(&self, other: &Vector4) -> Vector4 {
        Vector4(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    pub fn neg(&self) -> Vector4 {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, factor: &Scalar) -> Vector4 {
        Vector4(std::array::from_fn(|i| &self.0[i] * factor))
    }

    /// Representationally zero (every component an exact or bitwise zero).
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().all(Scalar::is_exact)
    }

    pub fn in_mode(&self, mode: ArithmeticMode) -> Vector4 {
        Vector4(std::array::from_fn(|i| self.0[i].in_mode(mode)))
    }

    /// Largest absolute component, for residual reports.
    pub fn max_abs_component(&self) -> Scalar {
        max_abs(self.0.iter())
    }
}

impl Index<usize> for Vector4 {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl fmt::Display for Vector4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

/// A covariant four-vector (linear form on [`Vector4`]).
#[derive(Clone, Debug, PartialEq)]
pub struct Covector4([Scalar; 4]);

impl Covector4 {
    pub fn new(components: [Scalar; 4]) -> Self {
        Covector4(components)
    }

    pub fn components(&self) -> &[Scalar; 4] {
        &self.0
    }

    /// Evaluate the form on a vector.
    pub fn apply(&self, v: &Vector4) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..4 {
            acc = &acc + &(&self.0[i] * &v[i]);
        }
        acc
    }

    pub fn scale(&self, factor: &Scalar) -> Covector4 {
        Covector4(std::array::from_fn(|i| &self.0[i] * factor))
    }

    pub fn neg(&self) -> Covector4 {
        self.scale(&-Scalar::one())
    }
}

impl Index<usize> for Covector4 {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl fmt::Display for Covector4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}]",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

/// Index pairs of the six independent bivector components, in storage order.
const BIVECTOR_SLOTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// An antisymmetric rank-2 contravariant tensor, stored as the six
/// strictly upper components `B^{ij}` for `(i, j)` in
/// `(0,1), (0,2), (0,3), (1,2), (1,3), (2,3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector([Scalar; 6]);

impl Bivector {
    pub fn from_upper_components(components: [Scalar; 6]) -> Self {
        Bivector(components)
    }

    pub fn zero() -> Self {
        Bivector(std::array::from_fn(|_| Scalar::zero()))
    }

    /// Exterior product `x ∧ y`, with `(x ∧ y)^{ij} = x^i y^j - x^j y^i`.
    pub fn wedge(x: &Vector4, y: &Vector4) -> Bivector {
        Bivector(std::array::from_fn(|k| {
            let (i, j) = BIVECTOR_SLOTS[k];
            &(&x[i] * &y[j]) - &(&x[j] * &y[i])
        }))
    }

    /// Component `B^{ij}` for any index pair, antisymmetry included.
    pub fn component(&self, i: usize, j: usize) -> Scalar {
        assert!(i < 4 && j < 4, "bivector index out of range");
        if i == j {
            return Scalar::zero();
        }
        let slot = BIVECTOR_SLOTS
            .iter()
            .position(|&(a, b)| (a, b) == (i.min(j), i.max(j)));
        let value = self.0[slot.expect("every unequal pair is a slot")].clone();
        if i < j {
            value
        } else {
            -value
        }
    }

    pub fn upper_components(&self) -> &[Scalar; 6] {
        &self.0
    }

    pub fn scale(&self, factor: &Scalar) -> Bivector {
        Bivector(std::array::from_fn(|k| &self.0[k] * factor))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

impl fmt::Display for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, (i, j)) in BIVECTOR_SLOTS.iter().enumerate() {
            if self.0[k].is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*e{}^e{}", self.0[k], i, j)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Interior product of a covector with a bivector:
/// `(i_a B)^m = a_n B^{nm}`.
pub fn interior_bivector(alpha: &Covector4, b: &Bivector) -> Vector4 {
    Vector4::new(std::array::from_fn(|m| {
        let mut acc = Scalar::zero();
        for n in 0..4 {
            acc = &acc + &(&alpha[n] * &b.component(n, m));
        }
        acc
    }))
}

/// A linear endomorphism of the four-dimensional vector space, stored
/// as a row-major matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Endo4([[Scalar; 4]; 4]);

impl Endo4 {
    pub fn from_rows(rows: [[Scalar; 4]; 4]) -> Self {
        Endo4(rows)
    }

    pub fn zero() -> Self {
        Endo4(std::array::from_fn(|_| {
            std::array::from_fn(|_| Scalar::zero())
        }))
    }

    pub fn identity() -> Self {
        Endo4(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
        }))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.0[i][j]
    }

    pub fn rows(&self) -> &[[Scalar; 4]; 4] {
        &self.0
    }

    /// Rows as growable vectors, for the generic elimination helpers.
    pub fn to_row_vecs(&self) -> Vec<Vec<Scalar>> {
        self.0.iter().map(|r| r.to_vec()).collect()
    }

    pub fn from_row_vecs(rows: Vec<Vec<Scalar>>) -> Self {
        assert!(rows.len() == 4 && rows.iter().all(|r| r.len() == 4));
        Endo4(std::array::from_fn(|i| {
            std::array::from_fn(|j| rows[i][j].clone())
        }))
    }

    pub fn add(&self, other: &Endo4) -> Endo4 {
        Endo4(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] + &other.0[i][j])
        }))
    }

    pub fn sub(&self, other: &Endo4) -> Endo4 {
        Endo4(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] - &other.0[i][j])
        }))
    }

    pub fn scale(&self, factor: &Scalar) -> Endo4 {
        Endo4(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] * factor)
        }))
    }

    pub fn neg(&self) -> Endo4 {
        self.scale(&-Scalar::one())
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn mul(&self, other: &Endo4) -> Endo4 {
        Endo4(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = Scalar::zero();
                for k in 0..4 {
                    acc = &acc + &(&self.0[i][k] * &other.0[k][j]);
                }
                acc
            })
        }))
    }

    pub fn apply(&self, v: &Vector4) -> Vector4 {
        Vector4::new(std::array::from_fn(|i| {
            let mut acc = Scalar::zero();
            for k in 0..4 {
                acc = &acc + &(&self.0[i][k] * &v[k]);
            }
            acc
        }))
    }

    pub fn transpose(&self) -> Endo4 {
        Endo4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i].clone())
        }))
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..4 {
            acc = &acc + &self.0[i][i];
        }
        acc
    }

    /// Rank-one operator `v ⊗ a`, acting as `x ↦ a(x) v`.
    pub fn outer(v: &Vector4, a: &Covector4) -> Endo4 {
        Endo4(std::array::from_fn(|i| {
            std::array::from_fn(|j| &v[i] * &a[j])
        }))
    }

    pub fn rank(&self, tol: f64) -> usize {
        linalg::rank(self.to_row_vecs(), tol)
    }

    pub fn inverse(&self, tol: f64) -> Option<Endo4> {
        linalg::invert(&self.to_row_vecs(), tol).map(Endo4::from_row_vecs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_zero)
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_exact)
    }

    pub fn in_mode(&self, mode: ArithmeticMode) -> Endo4 {
        Endo4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j].in_mode(mode))
        }))
    }

    /// Largest absolute entry, for residual reports.
    pub fn max_abs_entry(&self) -> Scalar {
        max_abs(self.0.iter().flatten())
    }
}

impl fmt::Display for Endo4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}, {}, {}, {}]", row[0], row[1], row[2], row[3])?;
        }
        Ok(())
    }
}

fn max_abs<'a>(values: impl Iterator<Item = &'a Scalar>) -> Scalar {
    let mut best = Scalar::zero();
    for v in values {
        let a = v.abs();
        if a > best {
            best = a;
        }
    }
    best
}

/// How a four-vector sits relative to the light cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalClass {
    /// The zero vector.
    Zero,
    /// Negative norm, positive time component.
    TimelikeFuture,
    /// Negative norm, non-positive time component.
    TimelikePast,
    /// Vanishing norm, nonzero vector.
    Null,
    /// Positive norm.
    Spacelike,
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CausalClass::Zero => "zero",
            CausalClass::TimelikeFuture => "timelike-future",
            CausalClass::TimelikePast => "timelike-past",
            CausalClass::Null => "null",
            CausalClass::Spacelike => "spacelike",
        };
        write!(f, "{name}")
    }
}

/// The ambient structure every geometric computation needs: a Lorentzian
/// metric of signature (1, 3), its inverse, the speed parameter `c`,
/// the arithmetic mode, and the float-comparison tolerance.
///
/// Constructed once and passed by reference; all validation happens in
/// the constructor so downstream code can rely on the invariants.
#[derive(Clone, Debug)]
pub struct MetricContext {
    g: Endo4,
    g_inv: Endo4,
    c: Scalar,
    mode: ArithmeticMode,
    tolerance: f64,
}

impl MetricContext {
    /// Default context: metric `diag(-1, 1, 1, 1)`, `c = 1`, exact
    /// arithmetic, tolerance `1e-9` for any values that degrade to floats.
    pub fn minkowski() -> Self {
        Self::new(
            Self::default_metric(),
            Scalar::one(),
            ArithmeticMode::Exact,
            1e-9,
        )
        .expect("default metric is valid")
    }

    /// Default metric with a custom speed parameter, exact arithmetic.
    pub fn exact_with_c(c: Scalar) -> Result<Self, MinkowskiError> {
        Self::new(Self::default_metric(), c, ArithmeticMode::Exact, 1e-9)
    }

    /// Default metric, float arithmetic with the given `c` and tolerance.
    pub fn float_with_c(c: f64, tolerance: f64) -> Result<Self, MinkowskiError> {
        Self::new(
            Self::default_metric(),
            Scalar::approx(c),
            ArithmeticMode::Float,
            tolerance,
        )
    }

    /// Rows of the default metric `diag(-1, 1, 1, 1)`.
    pub fn default_metric() -> Endo4 {
        let diag = [-1i64, 1, 1, 1];
        Endo4::from_rows(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if i == j {
                    Scalar::from_int(diag[i])
                } else {
                    Scalar::zero()
                }
            })
        }))
    }

    /// Validates and builds a context. The metric must be symmetric,
    /// invertible, and of signature (1 negative, 3 positive); `c` must
    /// be positive; `tolerance` must be non-negative and finite.
    pub fn new(
        g: Endo4,
        c: Scalar,
        mode: ArithmeticMode,
        tolerance: f64,
    ) -> Result<Self, MinkowskiError> {
        assert!(
            tolerance.is_finite() && tolerance >= 0.0,
            "tolerance must be a non-negative finite float"
        );
        let g = g.in_mode(mode);
        let c = c.in_mode(mode);
        let zero_tol = match mode {
            ArithmeticMode::Exact => 0.0,
            ArithmeticMode::Float => tolerance,
        };
        for i in 0..4 {
            for j in (i + 1)..4 {
                let diff = g.entry(i, j) - g.entry(j, i);
                if !linalg::is_zeroish(&diff, zero_tol) {
                    return Err(MinkowskiError::NonSymmetricMetric);
                }
            }
        }
        let (neg, pos, zero) = linalg::symmetric_signature(g.to_row_vecs(), zero_tol);
        if (neg, pos, zero) != (1, 3, 0) {
            return Err(MinkowskiError::WrongSignature { neg, pos, zero });
        }
        let g_inv = g.inverse(zero_tol).ok_or(MinkowskiError::SingularMetric)?;
        if !c.is_positive() {
            return Err(MinkowskiError::NonPositiveLightSpeed(c));
        }
        Ok(MetricContext {
            g,
            g_inv,
            c,
            mode,
            tolerance,
        })
    }

    pub fn g(&self) -> &Endo4 {
        &self.g
    }

    pub fn g_inv(&self) -> &Endo4 {
        &self.g_inv
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn c_squared(&self) -> Scalar {
        self.c.square()
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Zero threshold for pivoting: exact mode eliminates only exact
    /// zeros, float mode uses the configured tolerance.
    pub fn zero_tolerance(&self) -> f64 {
        match self.mode {
            ArithmeticMode::Exact => 0.0,
            ArithmeticMode::Float => self.tolerance,
        }
    }

    /// Metric pairing `g(x, y)`.
    pub fn dot(&self, x: &Vector4, y: &Vector4) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..4 {
            for j in 0..4 {
                acc = &acc + &(&(self.g.entry(i, j) * &x[i]) * &y[j]);
            }
        }
        acc
    }

    pub fn norm_sq(&self, x: &Vector4) -> Scalar {
        self.dot(x, x)
    }

    /// Lower an index: the covector `g(x, ·)`.
    pub fn lower(&self, x: &Vector4) -> Covector4 {
        Covector4::new(std::array::from_fn(|j| {
            let mut acc = Scalar::zero();
            for i in 0..4 {
                acc = &acc + &(self.g.entry(i, j) * &x[i]);
            }
            acc
        }))
    }

    /// Raise an index with the inverse metric.
    pub fn raise(&self, a: &Covector4) -> Vector4 {
        Vector4::new(std::array::from_fn(|i| {
            let mut acc = Scalar::zero();
            for j in 0..4 {
                acc = &acc + &(self.g_inv.entry(i, j) * &a[j]);
            }
            acc
        }))
    }

    /// Causal classification of a vector. In float mode the norm is
    /// compared to zero with the context tolerance, so vectors very
    /// close to the light cone classify as null.
    pub fn causal_class(&self, x: &Vector4) -> CausalClass {
        let zero_vec = x
            .components()
            .iter()
            .all(|s| s.approx_eq(&Scalar::zero(), self.zero_tolerance()));
        if zero_vec {
            return CausalClass::Zero;
        }
        let norm = self.norm_sq(x);
        let zeroish = match (&norm, self.mode) {
            (Scalar::Exact(_), ArithmeticMode::Exact) => norm.is_zero(),
            _ => norm.approx_eq(&Scalar::zero(), self.tolerance),
        };
        if zeroish {
            CausalClass::Null
        } else if norm.is_negative() {
            if x[0].is_positive() {
                CausalClass::TimelikeFuture
            } else {
                CausalClass::TimelikePast
            }
        } else {
            CausalClass::Spacelike
        }
    }

    /// Scale a future-pointing timelike vector to unit norm, so that
    /// `g(x, x) = -1`. The scaling factor is a square root, so exact
    /// inputs whose norm is not a perfect rational square downgrade to
    /// floats; see [`Scalar::sqrt`].
    pub fn normalize_timelike(&self, x: &Vector4) -> Result<Vector4, MinkowskiError> {
        let class = self.causal_class(x);
        if class != CausalClass::TimelikeFuture {
            return Err(MinkowskiError::NotTimelikeFuture { found: class });
        }
        let scale = (-self.norm_sq(x)).sqrt();
        Ok(x.scale(&scale.recip()))
    }

    /// Mode-aware scalar equality: exact when both values are exact,
    /// tolerance-based otherwise.
    pub fn scalar_eq(&self, a: &Scalar, b: &Scalar) -> bool {
        if self.mode == ArithmeticMode::Exact && a.is_exact() && b.is_exact() {
            a == b
        } else {
            a.approx_eq(b, self.tolerance)
        }
    }

    pub fn scalar_is_zero(&self, a: &Scalar) -> bool {
        self.scalar_eq(a, &Scalar::zero())
    }

    pub fn vec_eq(&self, x: &Vector4, y: &Vector4) -> bool {
        (0..4).all(|i| self.scalar_eq(&x[i], &y[i]))
    }

    pub fn endo_eq(&self, a: &Endo4, b: &Endo4) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.scalar_eq(a.entry(i, j), b.entry(i, j))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> MetricContext {
        MetricContext::minkowski()
    }

    #[test]
    fn default_metric_dots() {
        let c = ctx();
        let t = Vector4::from_ints([1, 0, 0, 0]);
        let x = Vector4::from_ints([0, 1, 0, 0]);
        assert_eq!(c.dot(&t, &t), Scalar::from_int(-1));
        assert_eq!(c.dot(&x, &x), Scalar::one());
        assert_eq!(c.dot(&t, &x), Scalar::zero());
    }

    #[test]
    fn lower_then_raise_is_identity() {
        let c = ctx();
        let v = Vector4::new([
            Scalar::ratio(5, 4),
            Scalar::ratio(3, 4),
            Scalar::from_int(-2),
            Scalar::ratio(1, 3),
        ]);
        let back = c.raise(&c.lower(&v));
        assert_eq!(back, v);
    }

    #[test]
    fn causal_classification() {
        let c = ctx();
        assert_eq!(c.causal_class(&Vector4::zero()), CausalClass::Zero);
        assert_eq!(
            c.causal_class(&Vector4::from_ints([2, 1, 0, 0])),
            CausalClass::TimelikeFuture
        );
        assert_eq!(
            c.causal_class(&Vector4::from_ints([-2, 1, 0, 0])),
            CausalClass::TimelikePast
        );
        assert_eq!(
            c.causal_class(&Vector4::from_ints([1, 1, 0, 0])),
            CausalClass::Null
        );
        assert_eq!(
            c.causal_class(&Vector4::from_ints([1, 2, 0, 0])),
            CausalClass::Spacelike
        );
    }

    #[test]
    fn normalize_timelike_exact_when_norm_is_square() {
        let c = ctx();
        // Norm is -(25/16 - 9/16) = -1 after scaling by 4/... pick (5,3,0,0)/4.
        let v = Vector4::new([
            Scalar::ratio(5, 4),
            Scalar::ratio(3, 4),
            Scalar::zero(),
            Scalar::zero(),
        ]);
        let n = c.normalize_timelike(&v).unwrap();
        assert_eq!(n, v, "already unit");
        assert!(n.is_exact());

        let w = v.scale(&Scalar::from_int(3));
        let nw = c.normalize_timelike(&w).unwrap();
        assert_eq!(nw, v);
    }

    #[test]
    fn normalize_timelike_rejects_spacelike() {
        let c = ctx();
        let err = c.normalize_timelike(&Vector4::from_ints([1, 2, 0, 0]));
        assert!(matches!(
            err,
            Err(MinkowskiError::NotTimelikeFuture {
                found: CausalClass::Spacelike
            })
        ));
    }

    #[test]
    fn wedge_and_interior() {
        let c = ctx();
        let p = Vector4::from_ints([1, 0, 0, 0]);
        let q = Vector4::new([
            Scalar::ratio(5, 4),
            Scalar::ratio(3, 4),
            Scalar::zero(),
            Scalar::zero(),
        ]);
        let b = Bivector::wedge(&p, &q);
        assert_eq!(b.component(0, 1), Scalar::ratio(3, 4));
        assert_eq!(b.component(1, 0), Scalar::ratio(-3, 4));
        assert_eq!(b.component(2, 3), Scalar::zero());

        // Contract with g(p, .): picks out minus the 0-row of the bivector.
        let alpha = c.lower(&p);
        let v = interior_bivector(&alpha, &b);
        assert_eq!(
            v,
            Vector4::new([
                Scalar::zero(),
                Scalar::ratio(-3, 4),
                Scalar::zero(),
                Scalar::zero()
            ])
        );
    }

    #[test]
    fn metric_validation_rejects_bad_inputs() {
        let mut rows = MetricContext::default_metric().rows().clone();
        rows[0][1] = Scalar::one();
        let asym = Endo4::from_rows(rows);
        assert!(matches!(
            MetricContext::new(asym, Scalar::one(), ArithmeticMode::Exact, 1e-9),
            Err(MinkowskiError::NonSymmetricMetric)
        ));

        let euclid = Endo4::identity();
        assert!(matches!(
            MetricContext::new(euclid, Scalar::one(), ArithmeticMode::Exact, 1e-9),
            Err(MinkowskiError::WrongSignature {
                neg: 0,
                pos: 4,
                zero: 0
            })
        ));

        assert!(matches!(
            MetricContext::new(
                MetricContext::default_metric(),
                Scalar::zero(),
                ArithmeticMode::Exact,
                1e-9
            ),
            Err(MinkowskiError::NonPositiveLightSpeed(_))
        ));
    }

    #[test]
    fn non_diagonal_metric_accepted() {
        // Off-diagonal but still signature (1,3): boost-sheared metric.
        let mut rows = MetricContext::default_metric().rows().clone();
        rows[0][1] = Scalar::ratio(1, 4);
        rows[1][0] = Scalar::ratio(1, 4);
        let g = Endo4::from_rows(rows);
        let ctx = MetricContext::new(g, Scalar::one(), ArithmeticMode::Exact, 1e-9).unwrap();
        // g * g_inv == id, exactly.
        let prod = ctx.g().mul(ctx.g_inv());
        assert_eq!(prod, Endo4::identity());
    }

    #[test]
    fn outer_product_acts_as_expected() {
        let v = Vector4::from_ints([1, 2, 0, 0]);
        let a = Covector4::new([
            Scalar::from_int(3),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
        ]);
        let op = Endo4::outer(&v, &a);
        let x = Vector4::from_ints([2, 5, 7, 9]);
        // a(x) = 6, so op(x) = 6 v.
        assert_eq!(op.apply(&x), v.scale(&Scalar::from_int(6)));
        assert_eq!(op.trace(), Scalar::from_int(3));
        assert_eq!(op.rank(0.0), 1);
    }
}
