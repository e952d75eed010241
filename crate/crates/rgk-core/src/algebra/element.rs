//! Basis elements and formal linear combinations for the observer
//! algebra.
//!
//! For `n` objects the algebra is spanned by the `n` object idempotents
//! and the `n(n-1)` arrows between distinct objects, `n^2` elements in
//! all, plus an optional formal unit used by the bilinear-form
//! diagnostics. An arrow with equal endpoints is not a basis element:
//! it is the zero of the algebra, and the constructors here fold it
//! away so no degenerate term can enter an element.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// One basis element. The derived ordering (objects, then arrows by
/// endpoint pair, then the unit) is the canonical basis enumeration
/// used everywhere a matrix of the algebra is built.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisElement {
    /// An object: the idempotent of a named observer.
    Obj(String),
    /// An arrow from the first id (source) to the second (target).
    Arrow(String, String),
    /// The formal multiplicative unit.
    Unit,
}

impl BasisElement {
    /// Ids this element mentions.
    pub fn ids(&self) -> Vec<&str> {
        match self {
            BasisElement::Obj(a) => vec![a],
            BasisElement::Arrow(a, b) => vec![a, b],
            BasisElement::Unit => vec![],
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Obj(a) => write!(f, "{a}"),
            BasisElement::Arrow(a, b) => write!(f, "w({a},{b})"),
            BasisElement::Unit => write!(f, "1"),
        }
    }
}

/// A finite linear combination of basis elements with [`Scalar`]
/// coefficients, stored sparsely with a deterministic term order.
/// Terms whose coefficient is representationally zero are never stored.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<BasisElement, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn unit() -> Self {
        AlgebraElement::from_basis(BasisElement::Unit)
    }

    pub fn obj(id: impl Into<String>) -> Self {
        AlgebraElement::from_basis(BasisElement::Obj(id.into()))
    }

    /// The arrow `source -> target`; equal endpoints give the zero
    /// element rather than a degenerate basis term.
    pub fn arrow(source: impl Into<String>, target: impl Into<String>) -> Self {
        let source = source.into();
        let target = target.into();
        if source == target {
            return AlgebraElement::zero();
        }
        AlgebraElement::from_basis(BasisElement::Arrow(source, target))
    }

    pub fn from_basis(b: BasisElement) -> Self {
        let mut e = AlgebraElement::zero();
        e.add_term(b, Scalar::one());
        e
    }

    /// Add `coeff * b` into this element, folding away degenerate
    /// arrows and dropping terms that cancel to a representational zero.
    pub fn add_term(&mut self, b: BasisElement, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        if let BasisElement::Arrow(s, t) = &b {
            if s == t {
                return;
            }
        }
        let entry = self.terms.entry(b);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (b, coeff) in &other.terms {
            out.add_term(b.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, factor: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (b, coeff) in &self.terms {
            out.add_term(b.clone(), coeff * factor);
        }
        out
    }

    /// Coefficient of a basis element (zero when absent).
    pub fn coeff(&self, b: &BasisElement) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in canonical basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &Scalar)> {
        self.terms.iter()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Scalar::is_exact)
    }

    /// Every id mentioned by any term, deduplicated, sorted.
    pub fn ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .terms
            .keys()
            .flat_map(|b| b.ids().into_iter().map(str::to_string))
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }

    /// Largest absolute coefficient; zero for the zero element.
    pub fn max_abs_coeff(&self) -> Scalar {
        let mut best = Scalar::zero();
        for coeff in self.terms.values() {
            let a = coeff.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    /// Largest absolute coefficient of `self - other`: the residual
    /// used by every law check on elements.
    pub fn residual(&self, other: &AlgebraElement) -> Scalar {
        self.sub(other).max_abs_coeff()
    }

    /// Coefficient-wise comparison within `tol` (absolute-plus-relative,
    /// as in [`Scalar::approx_eq`]).
    pub fn approx_eq(&self, other: &AlgebraElement, tol: f64) -> bool {
        let keys: std::collections::BTreeSet<&BasisElement> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .all(|b| self.coeff(b).approx_eq(&other.coeff(b), tol))
    }
}

impl From<BasisElement> for AlgebraElement {
    fn from(b: BasisElement) -> Self {
        AlgebraElement::from_basis(b)
    }
}

impl fmt::Display for AlgebraElement {
    /// Deterministic rendering in canonical term order, e.g.
    /// `25/16*p + 25/16*w(p,q)`. Unit terms print as the bare
    /// coefficient; unit coefficients print as the bare basis element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = magnitude == Scalar::one();
            match (b, coeff_is_one) {
                (BasisElement::Unit, _) => write!(f, "{magnitude}")?,
                (_, true) => write!(f, "{b}")?,
                (_, false) => write!(f, "{magnitude}*{b}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_ordering_is_objects_arrows_unit() {
        let mut items = vec![
            BasisElement::Unit,
            BasisElement::Arrow("p".into(), "q".into()),
            BasisElement::Obj("q".into()),
            BasisElement::Arrow("p".into(), "a".into()),
            BasisElement::Obj("p".into()),
        ];
        items.sort();
        assert_eq!(
            items,
            vec![
                BasisElement::Obj("p".into()),
                BasisElement::Obj("q".into()),
                BasisElement::Arrow("p".into(), "a".into()),
                BasisElement::Arrow("p".into(), "q".into()),
                BasisElement::Unit,
            ]
        );
    }

    #[test]
    fn degenerate_arrow_is_zero() {
        assert!(AlgebraElement::arrow("p", "p").is_zero());
        let mut e = AlgebraElement::zero();
        e.add_term(
            BasisElement::Arrow("p".into(), "p".into()),
            Scalar::from_int(5),
        );
        assert!(e.is_zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let e = AlgebraElement::obj("p").scale(&Scalar::ratio(2, 3));
        let diff = e.sub(&e);
        assert!(diff.is_zero());
        assert_eq!(diff.support_size(), 0);
    }

    #[test]
    fn coefficients_accumulate() {
        let a = AlgebraElement::obj("p");
        let b = AlgebraElement::obj("p").scale(&Scalar::ratio(1, 2));
        let sum = a.add(&b);
        assert_eq!(
            sum.coeff(&BasisElement::Obj("p".into())),
            Scalar::ratio(3, 2)
        );
        assert_eq!(sum.support_size(), 1);
    }

    #[test]
    fn display_is_canonical() {
        let mut e = AlgebraElement::zero();
        e.add_term(BasisElement::Obj("p".into()), Scalar::ratio(25, 16));
        e.add_term(
            BasisElement::Arrow("p".into(), "q".into()),
            Scalar::ratio(25, 16),
        );
        assert_eq!(e.to_string(), "25/16*p + 25/16*w(p,q)");

        let mut f = AlgebraElement::zero();
        f.add_term(BasisElement::Obj("q".into()), -Scalar::one());
        f.add_term(BasisElement::Unit, Scalar::ratio(1, 2));
        assert_eq!(f.to_string(), "-q + 1/2");

        assert_eq!(AlgebraElement::zero().to_string(), "0");
    }

    #[test]
    fn residual_measures_worst_coefficient() {
        let a = AlgebraElement::obj("p");
        let mut b = AlgebraElement::obj("p");
        b.add_term(
            BasisElement::Arrow("p".into(), "q".into()),
            Scalar::ratio(-3, 7),
        );
        assert_eq!(a.residual(&b), Scalar::ratio(3, 7));
        assert_eq!(a.residual(&a), Scalar::zero());
    }
}
