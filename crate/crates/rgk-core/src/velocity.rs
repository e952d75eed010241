//! Binary relative velocities.
//!
//! The velocity of observer `q` as measured by observer `p` is not a
//! difference of coordinate velocities: it is the arrow `w(p, q)`,
//! realized equivalently as
//!
//! * a space-like four-vector in `p`'s simultaneity subspace (the
//!   value of the operator on `p`'s monad),
//! * a traceless nilpotent rank-one operator `c * (qp / tr(qp) - p)`,
//! * a bivector `(P ∧ Q) / g(P, Q)` contracted with `g(P, ·)`.
//!
//! All three carry the same data and the constructors here keep them
//! in exact agreement. Arrows remember their endpoints, because the
//! groupoid composition defined in [`crate::groupoid`] is only allowed
//! head-to-tail.

use crate::algebra::{word_trace, AlgebraError, GramTable};
use crate::minkowski::{Bivector, Endo4, MetricContext, Vector4};
use crate::observer::Observer;
use crate::scalar::Scalar;

/// Errors from velocity construction and pairings.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VelocityError {
    #[error("trace of the product of `{a}` and `{b}` vanished; the pair is degenerate")]
    DegenerateTrace { a: String, b: String },
    #[error("arrows are based at different observers: `{left}` vs `{right}`")]
    SourceMismatch { left: String, right: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A binary relative velocity: an arrow from `source` (the measuring
/// observer) to `target` (the measured one), carried in all of its
/// interchangeable forms.
#[derive(Clone, Debug)]
pub struct VelocityArrow {
    source: String,
    target: String,
    /// Space-like four-vector in the source's simultaneity subspace.
    vec: Vector4,
    /// The same arrow as a traceless nilpotent operator.
    op: Endo4,
    /// Cached metric square of `vec` (non-negative, `< c^2`).
    speed_sq: Scalar,
}

impl VelocityArrow {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn vec(&self) -> &Vector4 {
        &self.vec
    }

    pub fn op(&self) -> &Endo4 {
        &self.op
    }

    /// Metric square of the velocity vector.
    pub fn speed_sq(&self) -> &Scalar {
        &self.speed_sq
    }

    /// The identity arrow at an observer: zero vector, zero operator.
    pub fn zero_at(p: &Observer) -> VelocityArrow {
        VelocityArrow {
            source: p.id().to_string(),
            target: p.id().to_string(),
            vec: Vector4::zero(),
            op: Endo4::zero(),
            speed_sq: Scalar::zero(),
        }
    }

    /// Whether this is an identity arrow (zero relative velocity).
    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.op.is_zero()
    }

    /// Assemble an arrow from endpoint ids and an already-computed
    /// operator, reading the vector off the source monad. Used by the
    /// groupoid layer, which produces composite operators directly.
    pub(crate) fn from_operator(
        source: &Observer,
        target: &Observer,
        op: Endo4,
        ctx: &MetricContext,
    ) -> VelocityArrow {
        let vec = op.apply(source.monad());
        let speed_sq = ctx.norm_sq(&vec);
        VelocityArrow {
            source: source.id().to_string(),
            target: target.id().to_string(),
            vec,
            op,
            speed_sq,
        }
    }
}

/// The velocity arrow from `p` to `q`, built from the unit monads:
/// `vec = c * (-Q / g(P, Q) - P)` and `op = vec ⊗ (-g(P, ·))`.
///
/// Total on valid observers: the monad pairing `g(P, Q)` is at most -1,
/// so nothing degenerates; observers in the same motion give the zero
/// arrow at `p`.
pub fn binary_velocity_vector(p: &Observer, q: &Observer, ctx: &MetricContext) -> VelocityArrow {
    let d = ctx.dot(p.monad(), q.monad());
    let vec = q.monad().scale(&(-d.recip())).sub(p.monad()).scale(ctx.c());
    let op = Endo4::outer(&vec, &ctx.lower(p.monad()).neg());
    let speed_sq = ctx.norm_sq(&vec);
    VelocityArrow {
        source: p.id().to_string(),
        target: q.id().to_string(),
        vec,
        op,
        speed_sq,
    }
}

/// The same arrow as an operator, via the projection product:
/// `c * (qp / tr(qp) - p)`. Kept as an independent construction so the
/// two routes can be checked against each other; the trace of `qp` is
/// a squared Lorentz factor and only a numerically degenerate input
/// can make it vanish.
pub fn velocity_operator(
    p: &Observer,
    q: &Observer,
    ctx: &MetricContext,
) -> Result<Endo4, VelocityError> {
    let qp = q.op().mul(p.op());
    let t = qp.trace();
    if ctx.scalar_is_zero(&t) {
        return Err(VelocityError::DegenerateTrace {
            a: p.id().to_string(),
            b: q.id().to_string(),
        });
    }
    Ok(qp.scale(&t.recip()).sub(p.op()).scale(ctx.c()))
}

/// The bivector form `(P ∧ Q) / g(P, Q)`: contracting it with the
/// source's lowered monad recovers the velocity vector, up to the
/// factor `c`.
pub fn hestenes_bivector(p: &Observer, q: &Observer, ctx: &MetricContext) -> Bivector {
    let d = ctx.dot(p.monad(), q.monad());
    Bivector::wedge(p.monad(), q.monad()).scale(&d.recip())
}

/// Metric square of an arrow from the trace table alone:
/// `c^2 (1 - 1 / t(source, target))`.
pub fn magnitude_sq(
    w: &VelocityArrow,
    gram: &GramTable,
    ctx: &MetricContext,
) -> Result<Scalar, VelocityError> {
    let t = gram.trace(&w.source, &w.target)?;
    Ok(ctx.c_squared() * (Scalar::one() - t.recip()))
}

/// Metric pairing of two arrows based at the same observer, from the
/// trace table alone: `c^2 (1 - t(a, b) / tr(asb))` for arrows
/// `s -> a` and `s -> b`.
pub fn dot_arrows(
    w1: &VelocityArrow,
    w2: &VelocityArrow,
    gram: &GramTable,
    ctx: &MetricContext,
) -> Result<Scalar, VelocityError> {
    if w1.source != w2.source {
        return Err(VelocityError::SourceMismatch {
            left: w1.source.clone(),
            right: w2.source.clone(),
        });
    }
    let t_ab = gram.trace(&w1.target, &w2.target)?;
    let t_word = word_trace(&[&w1.target, &w1.source, &w2.target], gram)?;
    Ok(ctx.c_squared() * (Scalar::one() - t_ab / t_word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observer::observer_from_monad;

    fn ctx() -> MetricContext {
        MetricContext::minkowski()
    }

    fn obs(id: &str, components: [Scalar; 4]) -> Observer {
        observer_from_monad(id, &Vector4::new(components), &ctx()).unwrap()
    }

    fn p() -> Observer {
        obs(
            "p",
            [
                Scalar::one(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
            ],
        )
    }

    fn q() -> Observer {
        obs(
            "q",
            [
                Scalar::ratio(5, 4),
                Scalar::ratio(3, 4),
                Scalar::zero(),
                Scalar::zero(),
            ],
        )
    }

    fn r() -> Observer {
        obs(
            "r",
            [
                Scalar::ratio(17, 8),
                Scalar::ratio(15, 8),
                Scalar::zero(),
                Scalar::zero(),
            ],
        )
    }

    #[test]
    fn rest_frame_measures_plain_velocity() {
        let c = ctx();
        let w = binary_velocity_vector(&p(), &q(), &c);
        assert_eq!(
            *w.vec(),
            Vector4::new([
                Scalar::zero(),
                Scalar::ratio(3, 5),
                Scalar::zero(),
                Scalar::zero()
            ])
        );
        assert_eq!(*w.speed_sq(), Scalar::ratio(9, 25));
    }

    #[test]
    fn reverse_arrow_has_equal_speed_different_vector() {
        let c = ctx();
        let w = binary_velocity_vector(&q(), &p(), &c);
        assert_eq!(
            *w.vec(),
            Vector4::new([
                Scalar::ratio(-9, 20),
                Scalar::ratio(-3, 4),
                Scalar::zero(),
                Scalar::zero()
            ])
        );
        // Same speed as the forward arrow: reciprocity of magnitudes.
        assert_eq!(*w.speed_sq(), Scalar::ratio(9, 25));
        // But the vector lives in q's simultaneity space, not p's.
        assert_eq!(c.dot(w.vec(), q().monad()), Scalar::zero());
        assert!(c.dot(w.vec(), p().monad()) != Scalar::zero());
    }

    #[test]
    fn operator_routes_agree() {
        let c = ctx();
        for (a, b) in [(p(), q()), (q(), p()), (p(), r()), (q(), r())] {
            let w = binary_velocity_vector(&a, &b, &c);
            let via_traces = velocity_operator(&a, &b, &c).unwrap();
            assert_eq!(*w.op(), via_traces, "{} -> {}", a.id(), b.id());
        }
    }

    #[test]
    fn operator_is_nilpotent_and_traceless() {
        let c = ctx();
        let w = binary_velocity_vector(&q(), &r(), &c);
        assert!(w.op().mul(w.op()).is_zero());
        assert_eq!(w.op().trace(), Scalar::zero());
        assert_eq!(w.op().rank(c.zero_tolerance()), 1);
    }

    #[test]
    fn operator_reads_vector_on_source_monad() {
        let c = ctx();
        let w = binary_velocity_vector(&q(), &r(), &c);
        assert_eq!(w.op().apply(q().monad()), *w.vec());
        // The source's simultaneity subspace is the kernel.
        let (_, space) = q().split(&Vector4::from_ints([0, 0, 5, 7]));
        assert_eq!(w.op().apply(&space), Vector4::zero());
    }

    #[test]
    fn vector_is_spacelike_and_source_orthogonal() {
        let c = ctx();
        let w = binary_velocity_vector(&q(), &r(), &c);
        assert_eq!(c.dot(w.vec(), q().monad()), Scalar::zero());
        assert!(w.speed_sq().is_positive());
        assert!(*w.speed_sq() < c.c_squared());
    }

    #[test]
    fn bivector_route_reconstructs_vector() {
        let c = ctx();
        let b = hestenes_bivector(&p(), &q(), &c);
        assert_eq!(b.component(0, 1), Scalar::ratio(-3, 5));
        let w = binary_velocity_vector(&p(), &q(), &c);
        let alpha = c.lower(p().monad());
        let rebuilt = crate::minkowski::interior_bivector(&alpha, &b).scale(c.c());
        assert_eq!(rebuilt, *w.vec());
    }

    #[test]
    fn same_motion_gives_zero_arrow() {
        let c = ctx();
        let q2 = obs(
            "q2",
            [
                Scalar::ratio(5, 2),
                Scalar::ratio(3, 2),
                Scalar::zero(),
                Scalar::zero(),
            ],
        );
        let w = binary_velocity_vector(&q(), &q2, &c);
        assert!(w.vec().is_zero());
        assert!(w.op().is_zero());
        // The endpoints keep their distinct names even though the
        // relative velocity vanishes.
        assert_ne!(w.source(), w.target());
    }

    #[test]
    fn table_magnitude_matches_geometry() {
        let c = ctx();
        let family = [p(), q(), r()];
        let gram = GramTable::from_observers(family.iter()).unwrap();
        for a in &family {
            for b in &family {
                let w = binary_velocity_vector(a, b, &c);
                let from_table = magnitude_sq(&w, &gram, &c).unwrap();
                assert_eq!(from_table, *w.speed_sq(), "{} -> {}", a.id(), b.id());
            }
        }
    }

    #[test]
    fn table_dot_matches_geometry() {
        let c = ctx();
        let family = [p(), q(), r()];
        let gram = GramTable::from_observers(family.iter()).unwrap();
        for s in &family {
            for a in &family {
                for b in &family {
                    let w1 = binary_velocity_vector(s, a, &c);
                    let w2 = binary_velocity_vector(s, b, &c);
                    let from_table = dot_arrows(&w1, &w2, &gram, &c).unwrap();
                    assert_eq!(
                        from_table,
                        c.dot(w1.vec(), w2.vec()),
                        "base {} targets {} {}",
                        s.id(),
                        a.id(),
                        b.id()
                    );
                }
            }
        }
    }

    #[test]
    fn dot_requires_common_base() {
        let c = ctx();
        let gram = GramTable::from_observers([&p(), &q(), &r()]).unwrap();
        let w1 = binary_velocity_vector(&p(), &q(), &c);
        let w2 = binary_velocity_vector(&q(), &r(), &c);
        assert!(matches!(
            dot_arrows(&w1, &w2, &gram, &c),
            Err(VelocityError::SourceMismatch { .. })
        ));
    }

    #[test]
    fn zero_arrow_shape() {
        let c = ctx();
        let z = VelocityArrow::zero_at(&q());
        assert!(z.is_zero());
        assert_eq!(z.source(), z.target());
        let gram = GramTable::from_observers([&p(), &q()]).unwrap();
        assert_eq!(magnitude_sq(&z, &gram, &c).unwrap(), Scalar::zero());
        let w = binary_velocity_vector(&q(), &p(), &c);
        assert_eq!(dot_arrows(&z, &w, &gram, &c).unwrap(), Scalar::zero());
    }
}
