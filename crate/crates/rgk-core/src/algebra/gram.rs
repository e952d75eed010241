//! The trace table ("Gram table") that determines the algebra.
//!
//! For observers `a`, `b` the invariant `t(a, b) = tr(ab)` is symmetric,
//! equals 1 on the diagonal, and is at least 1 for any pair of timelike
//! directions (it is the squared Lorentz factor between them). Every
//! structure constant of the operator algebra is a polynomial in these
//! pair traces and their square roots, so the table is all the data the
//! symbolic side of the crate needs.

use super::AlgebraError;
use crate::linalg;
use crate::minkowski::MetricContext;
use crate::observer::Observer;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Symmetric table of pair traces over a finite set of object ids.
///
/// Ids are kept sorted, so iteration order — and everything derived
/// from it, like basis enumeration — is deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct GramTable {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    /// Row-major `n x n` cells; `None` marks a pair that was never set.
    /// Kept symmetric by construction; the diagonal is always 1.
    cells: Vec<Option<Scalar>>,
}

impl GramTable {
    pub fn new() -> Self {
        GramTable {
            ids: Vec::new(),
            index: BTreeMap::new(),
            cells: Vec::new(),
        }
    }

    /// Table over the given ids with only the diagonal filled in.
    pub fn with_objects<I, S>(ids: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = GramTable::new();
        for id in ids {
            table.add_object(id.into())?;
        }
        Ok(table)
    }

    /// Insert a new object id, growing the table.
    pub fn add_object(&mut self, id: impl Into<String>) -> Result<(), AlgebraError> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(AlgebraError::DuplicateObject(id));
        }
        let mut ids = self.ids.clone();
        ids.push(id);
        ids.sort();
        let old_cells = std::mem::take(&mut self.cells);
        let old_index = std::mem::take(&mut self.index);
        let n = ids.len();
        let mut cells = vec![None; n * n];
        for (new_i, id_i) in ids.iter().enumerate() {
            for (new_j, id_j) in ids.iter().enumerate() {
                if new_i == new_j {
                    cells[new_i * n + new_j] = Some(Scalar::one());
                } else if let (Some(&oi), Some(&oj)) = (old_index.get(id_i), old_index.get(id_j)) {
                    cells[new_i * n + new_j] = old_cells[oi * (n - 1) + oj].clone();
                }
            }
        }
        self.index = ids.iter().cloned().zip(0..).collect();
        self.ids = ids;
        self.cells = cells;
        Ok(())
    }

    /// Set the symmetric pair trace `t(a, b) = t(b, a)`.
    ///
    /// Rejects unknown ids, attempts to override the diagonal, and
    /// values below 1 (no pair of timelike directions realizes those).
    pub fn set_trace(&mut self, a: &str, b: &str, value: Scalar) -> Result<(), AlgebraError> {
        let i = self.lookup(a)?;
        let j = self.lookup(b)?;
        if i == j {
            return Err(AlgebraError::DiagonalTraceNotOne(a.to_string()));
        }
        let below = match &value {
            Scalar::Exact(r) => r < &num::rational::BigRational::from_integer(1.into()),
            // Leave a little room for float noise around exactly 1.
            Scalar::Approx(x) => *x < 1.0 - 1e-12,
        };
        if below {
            return Err(AlgebraError::TraceBelowOne {
                a: a.to_string(),
                b: b.to_string(),
                value,
            });
        }
        let n = self.ids.len();
        self.cells[i * n + j] = Some(value.clone());
        self.cells[j * n + i] = Some(value);
        Ok(())
    }

    /// The pair trace `t(a, b)`, with the diagonal implicitly 1.
    pub fn trace(&self, a: &str, b: &str) -> Result<Scalar, AlgebraError> {
        let i = self.lookup(a)?;
        let j = self.lookup(b)?;
        self.cells[i * self.ids.len() + j]
            .clone()
            .ok_or_else(|| AlgebraError::MissingTrace(a.to_string(), b.to_string()))
    }

    /// Object ids in canonical (sorted) order.
    pub fn objects(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// Whether every pair has an entry.
    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    fn lookup(&self, id: &str) -> Result<usize, AlgebraError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownObject(id.to_string()))
    }

    /// Build the table realized by concrete observers: each cell is the
    /// matrix trace of the product of the two projection operators.
    /// This keeps every entry exact whenever the operators are exact,
    /// even when unit monads are not.
    pub fn from_observers<'a, I>(observers: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = &'a Observer>,
    {
        let observers: Vec<&Observer> = observers.into_iter().collect();
        let mut table = GramTable::with_objects(observers.iter().map(|o| o.id().to_string()))?;
        for (k, a) in observers.iter().enumerate() {
            for b in observers.iter().skip(k + 1) {
                let t = a.op().mul(b.op()).trace();
                table.set_trace(a.id(), b.id(), t)?;
            }
        }
        Ok(table)
    }

    /// Inertia of the would-be monad Gram matrix `[-sqrt(t(a, b))]`.
    ///
    /// A table that comes from actual timelike directions in a
    /// four-dimensional Lorentzian space must show exactly one negative
    /// direction and at most three positive ones; a symbolic table that
    /// fails this is still a perfectly good algebra, it just has no
    /// four-dimensional geometric realization.
    pub fn signature_diagnostic(&self, ctx: &MetricContext) -> Result<GramSignature, AlgebraError> {
        let n = self.ids.len();
        let mut rows = Vec::with_capacity(n);
        let mut exact = true;
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let t = self.trace(&self.ids[i], &self.ids[j])?;
                let entry = -t.sqrt();
                exact &= entry.is_exact();
                row.push(entry);
            }
            rows.push(row);
        }
        let (neg, pos, zero) = linalg::symmetric_signature(rows, ctx.tolerance());
        Ok(GramSignature {
            negative: neg,
            positive: pos,
            null: zero,
            realizable_in_dim4: neg == 1 && pos <= 3,
            exact,
        })
    }
}

impl Default for GramTable {
    fn default() -> Self {
        GramTable::new()
    }
}

/// Outcome of [`GramTable::signature_diagnostic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramSignature {
    pub negative: usize,
    pub positive: usize,
    pub null: usize,
    /// One negative direction and at most three positive ones: the
    /// necessary condition for the table to come from unit timelike
    /// vectors in signature (1, 3).
    pub realizable_in_dim4: bool,
    /// Whether the diagnostic ran in exact arithmetic throughout (the
    /// entries involve square roots, so symbolic tables often cannot).
    pub exact: bool,
}

/// Trace of the cyclic word `w[0] w[1] ... w[k-1]` of observer
/// idempotents, from pair traces alone: its square is the product of
/// the pair traces of cyclically adjacent letters, and the positive
/// root is the one realized by future-pointing timelike directions.
///
/// Stays exact when every adjacent-pair product is a perfect rational
/// square (always true for tables built from rational observers, where
/// each cell is itself a square).
pub fn word_trace<S: AsRef<str>>(word: &[S], gram: &GramTable) -> Result<Scalar, AlgebraError> {
    if word.is_empty() {
        return Err(AlgebraError::EmptyWord);
    }
    let mut square = Scalar::one();
    for k in 0..word.len() {
        let a = word[k].as_ref();
        let b = word[(k + 1) % word.len()].as_ref();
        square = &square * &gram.trace(a, b)?;
    }
    Ok(square.sqrt())
}
