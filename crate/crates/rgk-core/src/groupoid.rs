//! Head-to-tail composition of velocity arrows.
//!
//! Arrows between a fixed family of observers compose like groupoid
//! morphisms: `compose(v, u)` is defined only when `u`'s target is
//! `v`'s source, every observer carries an identity (zero) arrow, and
//! every arrow has an inverse. Composition is evaluated through the
//! operator algebra:
//!
//! ```text
//! w(p, r) = k (w(p, q) + w(q, r) p / t(p, q)) + c (k - 1) p,
//! k = tr(pqr) / t(p, r)
//! ```
//!
//! which is associative and path-independent — the composite of
//! `p -> q -> r` is the direct arrow `p -> r`, no matter the chain.
//! The price of associativity is that arrows keep their base observer:
//! there is no composing two velocities "measured in the same frame"
//! here, and that restriction is exactly what the one-chart comparator
//! in [`crate::einstein`] relaxes, losing associativity in return.

use crate::algebra::{word_trace, AlgebraError, GramTable};
use crate::minkowski::MetricContext;
use crate::observer::{Observer, ObserverError};
use crate::scalar::Scalar;
use crate::velocity::{binary_velocity_vector, VelocityArrow, VelocityError};
use std::collections::BTreeMap;

/// Errors from groupoid operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupoidError {
    #[error("no observer named `{0}` in this family")]
    UnknownObserver(String),
    #[error(
        "arrows do not chain: first ends at `{first_target}`, second starts at `{second_source}`"
    )]
    NotComposable {
        first_target: String,
        second_source: String,
    },
    #[error("a composition chain needs at least 2 observers, got {0}")]
    ChainTooShort(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Velocity(#[from] VelocityError),
    #[error(transparent)]
    Observer(#[from] ObserverError),
}

/// A finite family of observers with the derived trace table: the
/// object set of the groupoid, with arrows constructed on demand.
#[derive(Clone, Debug)]
pub struct GroupoidContext {
    observers: BTreeMap<String, Observer>,
    gram: GramTable,
    ctx: MetricContext,
}

impl GroupoidContext {
    pub fn new(observers: Vec<Observer>, ctx: MetricContext) -> Result<Self, GroupoidError> {
        let gram = GramTable::from_observers(observers.iter())?;
        let observers = observers
            .into_iter()
            .map(|o| (o.id().to_string(), o))
            .collect();
        Ok(GroupoidContext {
            observers,
            gram,
            ctx,
        })
    }

    pub fn ctx(&self) -> &MetricContext {
        &self.ctx
    }

    /// The pair-trace table realized by this family.
    pub fn gram(&self) -> &GramTable {
        &self.gram
    }

    pub fn observer(&self, id: &str) -> Result<&Observer, GroupoidError> {
        self.observers
            .get(id)
            .ok_or_else(|| GroupoidError::UnknownObserver(id.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.observers.keys().map(String::as_str)
    }

    pub fn observers(&self) -> impl Iterator<Item = &Observer> {
        self.observers.values()
    }

    pub fn len(&self) -> usize {
        self.observers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observers.is_empty()
    }

    /// The arrow from `p` to `q`, built directly from the two monads.
    pub fn arrow(&self, p: &str, q: &str) -> Result<VelocityArrow, GroupoidError> {
        let p = self.observer(p)?;
        let q = self.observer(q)?;
        Ok(binary_velocity_vector(p, q, &self.ctx))
    }

    /// The identity arrow at `p`.
    pub fn zero_arrow(&self, p: &str) -> Result<VelocityArrow, GroupoidError> {
        Ok(VelocityArrow::zero_at(self.observer(p)?))
    }

    /// The star of arrows leaving `p`: one per observer in the family,
    /// keyed by target id (the `p` entry is the identity arrow).
    pub fn velocities_from(
        &self,
        p: &str,
    ) -> Result<BTreeMap<String, VelocityArrow>, GroupoidError> {
        self.observer(p)?;
        self.ids()
            .map(|q| Ok((q.to_string(), self.arrow(p, q)?)))
            .collect()
    }

    /// Composite `v` after `u`: for `u: p -> q` and `v: q -> r` the
    /// result is the arrow `p -> r`. Written multiplicatively,
    /// `compose(v, u) = v ∘ u` — the right factor acts first.
    ///
    /// The composite operator is evaluated exactly and, because the
    /// family's trace table is the geometric one, it coincides with the
    /// direct arrow `p -> r`; composing `u` with its own inverse lands
    /// on the identity arrow by exact cancellation.
    pub fn compose(
        &self,
        v: &VelocityArrow,
        u: &VelocityArrow,
    ) -> Result<VelocityArrow, GroupoidError> {
        if u.target() != v.source() {
            return Err(GroupoidError::NotComposable {
                first_target: u.target().to_string(),
                second_source: v.source().to_string(),
            });
        }
        let p = self.observer(u.source())?;
        let q_id = u.target();
        let r = self.observer(v.target())?;
        self.observer(q_id)?;

        let t_pq = self.gram.trace(u.source(), q_id)?;
        let t_pr = self.gram.trace(u.source(), v.target())?;
        let t_word = word_trace(&[u.source(), q_id, v.target()], &self.gram)?;
        let k = &t_word / &t_pr;

        let p_op = p.op();
        let through_base = v.op().mul(p_op).scale(&t_pq.recip());
        let op = u
            .op()
            .add(&through_base)
            .scale(&k)
            .add(&p_op.scale(&(self.ctx.c() * &(&k - &Scalar::one()))));
        Ok(VelocityArrow::from_operator(p, r, op, &self.ctx))
    }

    /// The inverse arrow: for `u: p -> q`, the arrow `q -> p`,
    /// evaluated through the algebra as
    /// `w(q, p) = -w(p, q) q / t(p, q) - c (1 - 1/t(p, q)) q`.
    pub fn inverse(&self, u: &VelocityArrow) -> Result<VelocityArrow, GroupoidError> {
        let p = self.observer(u.source())?;
        let q = self.observer(u.target())?;
        let t = self.gram.trace(u.source(), u.target())?;
        let q_op = q.op();
        let through_target = u.op().mul(q_op).scale(&t.recip()).neg();
        let correction = q_op.scale(&(self.ctx.c() * &(Scalar::one() - t.recip())));
        let op = through_target.sub(&correction);
        Ok(VelocityArrow::from_operator(q, p, op, &self.ctx))
    }

    /// Fold a chain of observer ids into the composite arrow from the
    /// first to the last: `[p, q, r, s]` composes `p -> q`, `q -> r`,
    /// `r -> s` head-to-tail.
    pub fn compose_chain<S: AsRef<str>>(&self, ids: &[S]) -> Result<VelocityArrow, GroupoidError> {
        if ids.len() < 2 {
            return Err(GroupoidError::ChainTooShort(ids.len()));
        }
        let mut acc = self.arrow(ids[0].as_ref(), ids[1].as_ref())?;
        for pair in ids[1..].windows(2) {
            let next = self.arrow(pair[0].as_ref(), pair[1].as_ref())?;
            acc = self.compose(&next, &acc)?;
        }
        Ok(acc)
    }

    /// Residual of the explicit composition law
    ///
    /// ```text
    /// (1 - v.u⁻¹/c²) (v ∘ u) = u + (1 - u²/c²) v p + (1/c)(v.u⁻¹) p
    /// ```
    ///
    /// as the largest matrix entry of left minus right. Zero in exact
    /// arithmetic; the law packages the composite, the inverse, and the
    /// arrow pairing into one identity, so it cross-checks all three.
    pub fn composition_law_residual(
        &self,
        v: &VelocityArrow,
        u: &VelocityArrow,
    ) -> Result<Scalar, GroupoidError> {
        let composite = self.compose(v, u)?;
        let u_inv = self.inverse(u)?;
        let p = self.observer(u.source())?;
        let c_sq = self.ctx.c_squared();

        // v and u⁻¹ are both based at u's target, so their metric
        // pairing is a plain dot of vectors.
        let v_dot_uinv = self.ctx.dot(v.vec(), u_inv.vec());
        let left_factor = Scalar::one() - &v_dot_uinv / &c_sq;
        let left = composite.op().scale(&left_factor);

        let vp = v.op().mul(p.op());
        let right = u
            .op()
            .add(&vp.scale(&(Scalar::one() - u.speed_sq() / &c_sq)))
            .add(&p.op().scale(&(&v_dot_uinv / self.ctx.c())));
        Ok(left.sub(&right).max_abs_entry())
    }

    /// Residual of the inverse-cancellation identity
    ///
    /// ```text
    /// t(p,q) w(p,q) + w(q,p) p + c (t(p,q) - 1) p = 0
    /// ```
    ///
    /// as the largest matrix entry of the left side. Zero in exact
    /// arithmetic: composing an arrow with its inverse annihilates.
    pub fn inverse_cancellation_residual(
        &self,
        u: &VelocityArrow,
    ) -> Result<Scalar, GroupoidError> {
        let u_inv = self.inverse(u)?;
        let p = self.observer(u.source())?;
        let t = self.gram.trace(u.source(), u.target())?;
        let m = u
            .op()
            .scale(&t)
            .add(&u_inv.op().mul(p.op()))
            .add(&p.op().scale(&(self.ctx.c() * &(&t - &Scalar::one()))));
        Ok(m.max_abs_entry())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::Vector4;
    use crate::observer::observer_from_monad;

    /// p at rest, q at 3/5 c, r at the relativistic double of that.
    fn family() -> GroupoidContext {
        let ctx = MetricContext::minkowski();
        let observers = vec![
            observer_from_monad("p", &Vector4::from_ints([1, 0, 0, 0]), &ctx).unwrap(),
            observer_from_monad(
                "q",
                &Vector4::new([
                    Scalar::ratio(5, 4),
                    Scalar::ratio(3, 4),
                    Scalar::zero(),
                    Scalar::zero(),
                ]),
                &ctx,
            )
            .unwrap(),
            observer_from_monad(
                "r",
                &Vector4::new([
                    Scalar::ratio(17, 8),
                    Scalar::ratio(15, 8),
                    Scalar::zero(),
                    Scalar::zero(),
                ]),
                &ctx,
            )
            .unwrap(),
        ];
        GroupoidContext::new(observers, ctx).unwrap()
    }

    #[test]
    fn families_reject_duplicate_observer_ids() {
        let ctx = MetricContext::minkowski();
        let twin = || observer_from_monad("p", &Vector4::from_ints([1, 0, 0, 0]), &ctx).unwrap();
        assert!(GroupoidContext::new(vec![twin(), twin()], ctx.clone()).is_err());
    }

    #[test]
    fn collinear_composition_matches_velocity_addition_formula() {
        let g = family();
        let u = g.arrow("p", "q").unwrap();
        let v = g.arrow("q", "r").unwrap();
        let w = g.compose(&v, &u).unwrap();
        assert_eq!(w.source(), "p");
        assert_eq!(w.target(), "r");
        // (3/5 + 3/5) / (1 + 9/25) = 15/17, exactly.
        assert_eq!(
            *w.vec(),
            Vector4::new([
                Scalar::zero(),
                Scalar::ratio(15, 17),
                Scalar::zero(),
                Scalar::zero()
            ])
        );
        assert!(w.vec().is_exact());
    }

    #[test]
    fn composite_equals_direct_arrow() {
        let g = family();
        let u = g.arrow("p", "q").unwrap();
        let v = g.arrow("q", "r").unwrap();
        let w = g.compose(&v, &u).unwrap();
        let direct = g.arrow("p", "r").unwrap();
        assert_eq!(w.vec(), direct.vec());
        assert_eq!(w.op(), direct.op());
    }

    #[test]
    fn identity_arrows_are_neutral() {
        let g = family();
        let u = g.arrow("p", "q").unwrap();
        let id_p = g.zero_arrow("p").unwrap();
        let id_q = g.zero_arrow("q").unwrap();
        let right = g.compose(&u, &id_p).unwrap();
        assert_eq!(right.vec(), u.vec());
        assert_eq!(right.op(), u.op());
        let left = g.compose(&id_q, &u).unwrap();
        assert_eq!(left.vec(), u.vec());
        assert_eq!(left.op(), u.op());
    }

    #[test]
    fn inverse_matches_direct_reverse_arrow() {
        let g = family();
        let u = g.arrow("p", "q").unwrap();
        let inv = g.inverse(&u).unwrap();
        assert_eq!(inv.source(), "q");
        assert_eq!(inv.target(), "p");
        assert_eq!(
            *inv.vec(),
            Vector4::new([
                Scalar::ratio(-9, 20),
                Scalar::ratio(-3, 4),
                Scalar::zero(),
                Scalar::zero()
            ])
        );
        let direct = g.arrow("q", "p").unwrap();
        assert_eq!(inv.vec(), direct.vec());
        assert_eq!(inv.op(), direct.op());
    }

    #[test]
    fn composing_with_inverse_gives_identity_arrow() {
        let g = family();
        for (a, b) in [("p", "q"), ("q", "r"), ("p", "r")] {
            let u = g.arrow(a, b).unwrap();
            let inv = g.inverse(&u).unwrap();
            let round = g.compose(&inv, &u).unwrap();
            assert_eq!(round.source(), a);
            assert_eq!(round.target(), a);
            assert!(round.vec().is_zero(), "{a} -> {b} -> {a}");
            assert!(round.op().is_zero());
            let other = g.compose(&u, &inv).unwrap();
            assert!(other.op().is_zero());
        }
    }

    #[test]
    fn chain_fold_matches_pairwise_composition() {
        let g = family();
        let chained = g.compose_chain(&["p", "q", "r"]).unwrap();
        let direct = g.arrow("p", "r").unwrap();
        assert_eq!(chained.vec(), direct.vec());
        // Longer chain with backtracking still lands on the direct arrow.
        let longer = g.compose_chain(&["p", "r", "q", "r"]).unwrap();
        assert_eq!(longer.vec(), direct.vec());
        assert_eq!(longer.op(), direct.op());
    }

    #[test]
    fn composition_requires_chaining_endpoints() {
        let g = family();
        let u = g.arrow("p", "q").unwrap();
        let w = g.arrow("p", "r").unwrap();
        assert!(matches!(
            g.compose(&w, &u),
            Err(GroupoidError::NotComposable { .. })
        ));
        assert!(matches!(
            g.compose_chain(&["p"]),
            Err(GroupoidError::ChainTooShort(1))
        ));
        assert!(matches!(
            g.arrow("p", "nobody"),
            Err(GroupoidError::UnknownObserver(_))
        ));
    }

    #[test]
    fn velocity_star_is_complete_and_deterministic() {
        let g = family();
        let star = g.velocities_from("q").unwrap();
        let keys: Vec<&String> = star.keys().collect();
        assert_eq!(keys, ["p", "q", "r"]);
        assert!(star["q"].is_zero());
        assert_eq!(star["p"].vec(), g.arrow("q", "p").unwrap().vec());
    }

    #[test]
    fn law_residuals_vanish_exactly() {
        let g = family();
        let u = g.arrow("p", "q").unwrap();
        let v = g.arrow("q", "r").unwrap();
        let law = g.composition_law_residual(&v, &u).unwrap();
        assert_eq!(law, Scalar::zero());
        assert!(law.is_exact());
        let cancel = g.inverse_cancellation_residual(&u).unwrap();
        assert_eq!(cancel, Scalar::zero());
    }
}
