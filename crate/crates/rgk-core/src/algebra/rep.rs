//! Concrete matrix realization of algebra elements.
//!
//! Given an embedding of the object ids into actual observers, every
//! basis element has a 4x4 matrix: the observer projection for an
//! object, the velocity operator for an arrow, the identity for the
//! formal unit. Extending linearly gives a homomorphism from the
//! symbolic algebra into matrices — provided the trace table actually
//! matches the embedded geometry, which is checked up front.

use super::element::{AlgebraElement, BasisElement};
use super::gram::GramTable;
use super::AlgebraError;
use crate::minkowski::{Endo4, MetricContext};
use crate::observer::Observer;
use crate::velocity::binary_velocity_vector;
use std::collections::BTreeMap;

/// Evaluate an element as a 4x4 matrix through embedded observers.
///
/// Errors if the element mentions an id with no embedded observer, or
/// if the table's pair trace disagrees (mode-aware) with the trace
/// realized by the embedding — a mismatch would silently break the
/// homomorphism property, so it is refused instead.
pub fn matrix_rep(
    a: &AlgebraElement,
    embedding: &BTreeMap<String, Observer>,
    gram: &GramTable,
    ctx: &MetricContext,
) -> Result<Endo4, AlgebraError> {
    let used = a.ids();
    for id in &used {
        if !embedding.contains_key(id) {
            return Err(AlgebraError::MissingEmbedding(id.clone()));
        }
    }
    for (i, id_a) in used.iter().enumerate() {
        for id_b in used.iter().skip(i + 1) {
            let table = gram.trace(id_a, id_b)?;
            let geometric = embedding[id_a].op().mul(embedding[id_b].op()).trace();
            if !ctx.scalar_eq(&table, &geometric) {
                return Err(AlgebraError::GramMismatch {
                    a: id_a.clone(),
                    b: id_b.clone(),
                    table,
                    geometric,
                });
            }
        }
    }

    let mut out = Endo4::zero();
    for (basis, coeff) in a.terms() {
        let m = match basis {
            BasisElement::Obj(id) => embedding[id].op().clone(),
            BasisElement::Arrow(s, t) => binary_velocity_vector(&embedding[s], &embedding[t], ctx)
                .op()
                .clone(),
            BasisElement::Unit => Endo4::identity(),
        };
        out = out.add(&m.scale(coeff));
    }
    Ok(out)
}
