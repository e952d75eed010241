//! Observers as rank-one idempotent operators.
//!
//! An observer is the projection onto its own world-direction along the
//! metric-orthogonal complement. For a future-pointing timelike vector
//! `X` the operator is `p = X ⊗ g(X,·) / g(X,X)`; it depends only on
//! the ray of `X`, satisfies `p² = p`, `tr p = 1`, `dim im p = 1`, and
//! is self-adjoint with respect to the metric. Two observers are the
//! same motion exactly when their operators coincide, which makes the
//! operator (not the vector) the identity-carrying object.

use crate::minkowski::{Covector4, Endo4, MetricContext, MinkowskiError, Vector4};

/// Errors from observer construction.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ObserverError {
    #[error("observer id must be a non-empty identifier, got `{0}`")]
    BadId(String),
    #[error("observer `{id}`: {source}")]
    BadMonad {
        id: String,
        #[source]
        source: MinkowskiError,
    },
}

/// A named observer: its unit monad (future-pointing, `g`-norm -1) and
/// the rank-one idempotent projecting onto it.
///
/// The operator is computed from the raw input vector, so it stays
/// exact even when normalizing the monad requires an irrational square
/// root and downgrades the stored unit vector to floats.
#[derive(Clone, Debug)]
pub struct Observer {
    id: String,
    monad: Vector4,
    op: Endo4,
}

/// Build an observer from any future-pointing timelike vector.
pub fn observer_from_monad(
    id: &str,
    x: &Vector4,
    ctx: &MetricContext,
) -> Result<Observer, ObserverError> {
    if id.is_empty() || !id.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_') {
        return Err(ObserverError::BadId(id.to_string()));
    }
    let monad = ctx
        .normalize_timelike(x)
        .map_err(|source| ObserverError::BadMonad {
            id: id.to_string(),
            source,
        })?;
    let norm = ctx.norm_sq(x);
    let op = Endo4::outer(x, &ctx.lower(x)).scale(&norm.recip());
    Ok(Observer {
        id: id.to_string(),
        monad,
        op,
    })
}

impl Observer {
    pub fn id(&self) -> &str {
        &self.id
    }

    /// The unit monad: future-pointing with `g(u, u) = -1`.
    pub fn monad(&self) -> &Vector4 {
        &self.monad
    }

    /// The rank-one idempotent projecting onto the monad's line.
    pub fn op(&self) -> &Endo4 {
        &self.op
    }

    /// Decompose `x = time + space` with `time` along the monad and
    /// `space` in the observer's simultaneity subspace (the kernel of
    /// the operator).
    pub fn split(&self, x: &Vector4) -> (Vector4, Vector4) {
        let time = self.op.apply(x);
        let space = x.sub(&time);
        (time, space)
    }

    /// The covector cutting out the simultaneity subspace as its kernel,
    /// normalized so it evaluates to 1 on the monad: `-g(u, ·)`.
    pub fn simultaneity_form(&self, ctx: &MetricContext) -> Covector4 {
        ctx.lower(&self.monad).neg()
    }

    /// Whether another observer describes the same motion (their
    /// projection operators agree, mode-aware). Ids play no role.
    pub fn same_motion(&self, other: &Observer, ctx: &MetricContext) -> bool {
        ctx.endo_eq(&self.op, &other.op)
    }
}

/// Metric compatibility of an operator: `a` commutes with index
/// lowering, i.e. `g ∘ a = aᵀ ∘ g` as matrices. Observer idempotents
/// satisfy this; it is what makes their kernels `g`-orthogonal to
/// their images.
pub fn is_g_compatible(a: &Endo4, ctx: &MetricContext) -> bool {
    let left = ctx.g().mul(a);
    let right = a.transpose().mul(ctx.g());
    ctx.endo_eq(&left, &right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn ctx() -> MetricContext {
        MetricContext::minkowski()
    }

    fn rest_observer() -> Observer {
        observer_from_monad("p", &Vector4::from_ints([1, 0, 0, 0]), &ctx()).unwrap()
    }

    fn moving_observer() -> Observer {
        // Unit monad of a boost at 3/5 of c along x.
        let q = Vector4::new([
            Scalar::ratio(5, 4),
            Scalar::ratio(3, 4),
            Scalar::zero(),
            Scalar::zero(),
        ]);
        observer_from_monad("q", &q, &ctx()).unwrap()
    }

    #[test]
    fn operator_is_idempotent_rank_one_trace_one() {
        let c = ctx();
        for obs in [rest_observer(), moving_observer()] {
            let p = obs.op();
            assert_eq!(p.mul(p), *p, "p^2 = p for {}", obs.id());
            assert_eq!(p.trace(), Scalar::one());
            assert_eq!(p.rank(c.zero_tolerance()), 1);
            assert!(is_g_compatible(p, &c));
        }
    }

    #[test]
    fn operator_fixes_monad() {
        let obs = moving_observer();
        assert_eq!(obs.op().apply(obs.monad()), *obs.monad());
    }

    #[test]
    fn operator_ignores_scaling_of_input() {
        let c = ctx();
        let x = Vector4::new([
            Scalar::ratio(5, 4),
            Scalar::ratio(3, 4),
            Scalar::zero(),
            Scalar::zero(),
        ]);
        let a = observer_from_monad("a", &x, &c).unwrap();
        let b = observer_from_monad("b", &x.scale(&Scalar::from_int(7)), &c).unwrap();
        assert_eq!(a.op(), b.op());
        assert!(a.same_motion(&b, &c));
    }

    #[test]
    fn operator_stays_exact_when_normalization_cannot() {
        let c = ctx();
        // Norm -(4 - 1 - 1) = -2: not a perfect square, so the unit
        // monad is irrational, but the projector is still rational.
        let x = Vector4::from_ints([2, 1, 1, 0]);
        let obs = observer_from_monad("o", &x, &c).unwrap();
        assert!(obs.op().is_exact());
        assert!(!obs.monad().is_exact());
        assert_eq!(obs.op().mul(obs.op()), *obs.op());
    }

    #[test]
    fn split_reassembles_and_is_orthogonal() {
        let c = ctx();
        let obs = moving_observer();
        let x = Vector4::from_ints([3, -1, 4, 2]);
        let (time, space) = obs.split(&x);
        assert_eq!(time.add(&space), x);
        // Time part is along the monad, space part is g-orthogonal to it.
        assert_eq!(c.dot(&space, obs.monad()), Scalar::zero());
        assert_eq!(obs.op().apply(&space), Vector4::zero());
        assert_eq!(obs.op().apply(&time), time);
    }

    #[test]
    fn simultaneity_form_kernel_is_split_space() {
        let c = ctx();
        let obs = moving_observer();
        let form = obs.simultaneity_form(&c);
        assert_eq!(form.apply(obs.monad()), Scalar::one());
        let (_, space) = obs.split(&Vector4::from_ints([3, -1, 4, 2]));
        assert_eq!(form.apply(&space), Scalar::zero());
    }

    #[test]
    fn rejects_non_timelike_monads() {
        let c = ctx();
        for bad in [
            Vector4::from_ints([1, 1, 0, 0]),
            Vector4::from_ints([1, 2, 0, 0]),
            Vector4::from_ints([-2, 0, 0, 0]),
            Vector4::zero(),
        ] {
            assert!(
                observer_from_monad("x", &bad, &c).is_err(),
                "accepted {bad}"
            );
        }
    }

    #[test]
    fn rejects_bad_ids() {
        let c = ctx();
        let x = Vector4::from_ints([1, 0, 0, 0]);
        assert!(observer_from_monad("", &x, &c).is_err());
        assert!(observer_from_monad("a b", &x, &c).is_err());
        assert!(observer_from_monad("w(p,q)", &x, &c).is_err());
    }
}
