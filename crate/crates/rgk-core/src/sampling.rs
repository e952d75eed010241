//! Seeded random generation of exact test data: unit future monads and
//! subluminal velocities whose Lorentz factors are rational, so that
//! property checks over random configurations can still demand exact
//! equality.
//!
//! The trick is to draw a rational three-vector `u` with `s = |u|² < 1`
//! and push it through the rational parametrization of the unit
//! hyperboloid: `((1+s)/(1-s), 2u/(1-s))` has squared norm exactly `-1`,
//! and `v = 2uc/(1+s)` has Lorentz factor exactly `(1+s)/(1-s)`.

use crate::einstein::ThreeVelocity;
use crate::groupoid::{GroupoidContext, GroupoidError};
use crate::minkowski::{MetricContext, Vector4};
use crate::observer::observer_from_monad;
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A reproducible generator for a given seed. All sampling in this
/// crate is deterministic given the seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small random rational with numerator in `-3..=3` and denominator
/// in `4..=9`, so squared norms of three of them stay below one often
/// enough for rejection sampling to be cheap.
fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let numer = rng.gen_range(-3i64..=3);
    let denom = rng.gen_range(4i64..=9);
    Scalar::ratio(numer, denom)
}

/// A rational three-vector with squared Euclidean norm strictly below
/// one.
fn sub_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> ([Scalar; 3], Scalar) {
    loop {
        let u: [Scalar; 3] = std::array::from_fn(|_| small_rational(rng));
        let s = u.iter().fold(Scalar::zero(), |acc, x| &acc + &x.square());
        if (Scalar::one() - &s).is_positive() {
            return (u, s);
        }
    }
}

/// A random exact point on the future unit hyperboloid: squared norm
/// exactly `-1` under the default metric, positive time component.
pub fn unit_monad<R: Rng + ?Sized>(rng: &mut R) -> Vector4 {
    let (u, s) = sub_unit_vector(rng);
    let stretch = (Scalar::one() - &s).recip();
    Vector4::new([
        &(Scalar::one() + &s) * &stretch,
        &(&u[0] + &u[0]) * &stretch,
        &(&u[1] + &u[1]) * &stretch,
        &(&u[2] + &u[2]) * &stretch,
    ])
}

/// A random subluminal coordinate velocity whose Lorentz factor is
/// rational: `|v| < c` holds exactly, and `1 - |v|²/c²` is the square
/// of a rational number.
pub fn subluminal_velocity<R: Rng + ?Sized>(rng: &mut R, ctx: &MetricContext) -> ThreeVelocity {
    let (u, s) = sub_unit_vector(rng);
    let weight = &(ctx.c() + ctx.c()) / &(Scalar::one() + &s);
    ThreeVelocity::new(std::array::from_fn(|i| &u[i] * &weight))
}

/// A family of observers with pairwise distinct monads, labeled by the
/// given ids, all exactly on the unit hyperboloid of `ctx`.
pub fn observer_family<R: Rng + ?Sized>(
    rng: &mut R,
    ids: &[&str],
    ctx: &MetricContext,
) -> Result<GroupoidContext, GroupoidError> {
    let mut monads: Vec<Vector4> = Vec::with_capacity(ids.len());
    let mut observers = Vec::with_capacity(ids.len());
    for id in ids {
        let mut guard = 0;
        let monad = loop {
            let candidate = unit_monad(rng);
            if !monads.iter().any(|m| ctx.vec_eq(m, &candidate)) {
                break candidate;
            }
            guard += 1;
            assert!(
                guard < 10_000,
                "sampling space exhausted for distinct monads"
            );
        };
        observers.push(observer_from_monad(id, &monad, ctx)?);
        monads.push(monad);
    }
    GroupoidContext::new(observers, ctx.clone())
}
