//! The product of the observer algebra, its trace functional, and the
//! sandwich normal form.
//!
//! The product of two basis elements is again a short combination of
//! basis elements whose coefficients are rational functions of pair
//! traces and cyclic word traces. Everything follows from four cases
//! (object x object, object x arrow, arrow x object, arrow x arrow);
//! the formal unit multiplies trivially. Degenerate arrows produced by
//! coincident ids vanish inside [`AlgebraElement::add_term`], which is
//! what makes identities like `q * w(p, q) * p = 0` come out as exact
//! cancellations instead of special cases.
//!
//! Arrows scale with the speed parameter: the arrow basis element is
//! `c` times the dimensionless operator the structure table is stated
//! for. The `c` bookkeeping below restores general units from the
//! `c = 1` table by weighting each product with `c` per arrow factor
//! and converting dimensionless arrows back via `1/c`.

use super::element::{AlgebraElement, BasisElement};
use super::gram::{word_trace, GramTable};
use super::AlgebraError;
use crate::minkowski::MetricContext;
use crate::scalar::Scalar;

/// Bilinear product of two elements over a trace table.
pub fn multiply(
    a: &AlgebraElement,
    b: &AlgebraElement,
    gram: &GramTable,
    ctx: &MetricContext,
) -> Result<AlgebraElement, AlgebraError> {
    let mut out = AlgebraElement::zero();
    for (x, x_coeff) in a.terms() {
        for (y, y_coeff) in b.terms() {
            let product = basis_mul(x, y, gram, ctx)?;
            let weight = x_coeff * y_coeff;
            for (basis, coeff) in product.terms() {
                out.add_term(basis.clone(), coeff * &weight);
            }
        }
    }
    Ok(out)
}

/// Product of two basis elements.
fn basis_mul(
    x: &BasisElement,
    y: &BasisElement,
    gram: &GramTable,
    ctx: &MetricContext,
) -> Result<AlgebraElement, AlgebraError> {
    let c = ctx.c();
    match (x, y) {
        (BasisElement::Unit, _) => Ok(AlgebraElement::from_basis(y.clone())),
        (_, BasisElement::Unit) => Ok(AlgebraElement::from_basis(x.clone())),

        // a * b = t(a,b) * (b + (1/c) w(b,a)): the product of two
        // projections is a weighted projection-plus-arrow based at the
        // right factor, pointing back at the left one.
        (BasisElement::Obj(a), BasisElement::Obj(b)) => {
            if a == b {
                return Ok(AlgebraElement::obj(a.clone()));
            }
            let t = gram.trace(a, b)?;
            let mut out = AlgebraElement::zero();
            out.add_term(BasisElement::Obj(b.clone()), t.clone());
            out.add_term(BasisElement::Arrow(b.clone(), a.clone()), &t / c);
            Ok(out)
        }

        // a * w(p, r) = lambda * (c p + w(p, a)) with
        // lambda = tr(arp)/t(r,p) - t(p,a).
        (BasisElement::Obj(a), BasisElement::Arrow(p, r)) => {
            let lambda = word_trace(&[a, r, p], gram)? / gram.trace(r, p)? - gram.trace(p, a)?;
            let mut out = AlgebraElement::zero();
            out.add_term(BasisElement::Obj(p.clone()), c * &lambda);
            out.add_term(BasisElement::Arrow(p.clone(), a.clone()), lambda);
            Ok(out)
        }

        // w(q, r) * b = (tr(rqb)/t(r,q)) (c b + w(b, r))
        //             - t(q,b) (c b + w(b, q)).
        (BasisElement::Arrow(q, r), BasisElement::Obj(b)) => {
            let lead = word_trace(&[r, q, b], gram)? / gram.trace(r, q)?;
            let t_qb = gram.trace(q, b)?;
            let mut out = AlgebraElement::zero();
            out.add_term(BasisElement::Obj(b.clone()), c * &(&lead - &t_qb));
            out.add_term(BasisElement::Arrow(b.clone(), r.clone()), lead);
            out.add_term(BasisElement::Arrow(b.clone(), q.clone()), -t_qb);
            Ok(out)
        }

        // w(p, q) * w(r, s) =
        //   alpha (c^2 r + c w(r, q)) + beta (c^2 r + c w(r, p)),
        // alpha = (tr(qpsr)/t(s,r) - tr(qpr)) / t(q,p),
        // beta  = t(p,r) - tr(psr)/t(s,r).
        (BasisElement::Arrow(p, q), BasisElement::Arrow(r, s)) => {
            let t_sr = gram.trace(s, r)?;
            let alpha = (word_trace(&[q, p, s, r], gram)? / &t_sr - word_trace(&[q, p, r], gram)?)
                / gram.trace(q, p)?;
            let beta = gram.trace(p, r)? - word_trace(&[p, s, r], gram)? / &t_sr;
            let c2 = ctx.c_squared();
            let mut out = AlgebraElement::zero();
            out.add_term(BasisElement::Obj(r.clone()), &c2 * &(&alpha + &beta));
            out.add_term(BasisElement::Arrow(r.clone(), q.clone()), c * &alpha);
            out.add_term(BasisElement::Arrow(r.clone(), p.clone()), c * &beta);
            Ok(out)
        }
    }
}

/// The trace functional: objects have trace 1, arrows trace 0, and the
/// formal unit a caller-chosen trace (`None` makes elements involving
/// the unit an error, since no canonical value exists).
pub fn trace_element(
    a: &AlgebraElement,
    unit_trace: Option<&Scalar>,
) -> Result<Scalar, AlgebraError> {
    let mut acc = Scalar::zero();
    for (basis, coeff) in a.terms() {
        match basis {
            BasisElement::Obj(_) => acc = &acc + coeff,
            BasisElement::Arrow(_, _) => {}
            BasisElement::Unit => match unit_trace {
                Some(tau) => acc = &acc + &(coeff * tau),
                None => return Err(AlgebraError::UnitTraceUndefined),
            },
        }
    }
    Ok(acc)
}

/// Factor the sandwich `q * a * p` through its normal form: every such
/// product is `factor * (p + (1/c) w(p, q))` (just `factor * p` when
/// `p == q`), and the factor equals the trace of the product.
///
/// Returns `(factor, normal_form)` with
/// `q * a * p == factor * normal_form`. In exact arithmetic the
/// factorization is checked exactly; an element that fails it (only
/// possible through float degradation) reports `NotFactorable`.
pub fn sandwich_normal_form(
    q: &str,
    a: &AlgebraElement,
    p: &str,
    gram: &GramTable,
    ctx: &MetricContext,
) -> Result<(Scalar, AlgebraElement), AlgebraError> {
    // Surface unknown ids even when `a` has no terms for `multiply`
    // to trip over.
    for id in [q, p] {
        if !gram.contains(id) {
            return Err(AlgebraError::UnknownObject(id.to_string()));
        }
    }
    let right = multiply(a, &AlgebraElement::obj(p), gram, ctx)?;
    let product = multiply(&AlgebraElement::obj(q), &right, gram, ctx)?;

    let mut form = AlgebraElement::obj(p);
    if p != q {
        form.add_term(
            BasisElement::Arrow(p.to_string(), q.to_string()),
            ctx.c().recip(),
        );
    }
    let factor = product.coeff(&BasisElement::Obj(p.to_string()));
    let expected = form.scale(&factor);
    if !elements_eq(&product, &expected, ctx) {
        return Err(AlgebraError::NotFactorable {
            detail: format!("{q} * ({a}) * {p} = {product}, not a multiple of {form}"),
        });
    }
    Ok((factor, form))
}

/// Mode-aware element comparison: exact coefficient equality when the
/// context is exact and both elements are, tolerance-based otherwise.
pub fn elements_eq(a: &AlgebraElement, b: &AlgebraElement, ctx: &MetricContext) -> bool {
    use crate::scalar::ArithmeticMode;
    if ctx.mode() == ArithmeticMode::Exact && a.is_exact() && b.is_exact() {
        a == b
    } else {
        a.approx_eq(b, ctx.tolerance())
    }
}
