//! The degenerate flat-time kinematics: every pair trace equals one, so
//! arrows lose their operator content and composition collapses to plain
//! vector addition. Provided as its own exact code path rather than as a
//! numerical limit, plus a sweep ([`galilean_limit_check`]) demonstrating
//! that the relativistic composition converges to it at second order as
//! the speed of light grows.

use crate::einstein::{boost, monad_from_velocity, EinsteinError, ThreeVelocity};
use crate::groupoid::{GroupoidContext, GroupoidError};
use crate::minkowski::{MetricContext, MinkowskiError, Vector4};
use crate::observer::{observer_from_monad, ObserverError};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GalileanError {
    #[error("no observer named {0:?} in this family")]
    UnknownObserver(String),
    #[error("observer id {0:?} appears twice")]
    DuplicateObserver(String),
    #[error(
        "arrows do not chain: first ends at {first_target:?}, second starts at {second_source:?}"
    )]
    NotComposable {
        first_target: String,
        second_source: String,
    },
    #[error(transparent)]
    Einstein(#[from] EinsteinError),
    #[error(transparent)]
    Minkowski(#[from] MinkowskiError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Observer(#[from] ObserverError),
}

/// Degenerate composition: plain component-wise addition, read in the
/// same right-to-left order as the relativistic composition — `u`
/// first, then `v`. Total, exact, associative, and commutative.
pub fn galilean_compose(v: &ThreeVelocity, u: &ThreeVelocity) -> ThreeVelocity {
    u.add(v)
}

/// A relative velocity between two labeled bodies in the degenerate
/// kinematics. The labels carry the groupoid typing that the vector
/// itself no longer can.
#[derive(Clone, Debug, PartialEq)]
pub struct GalileanArrow {
    source: String,
    target: String,
    relative: ThreeVelocity,
}

impl GalileanArrow {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn relative(&self) -> &ThreeVelocity {
        &self.relative
    }
}

/// A family of labeled bodies with absolute velocities in a common
/// chart. Relative velocities are differences of labels, so the arrow
/// `p -> q` is exactly the negative of `q -> p`.
#[derive(Clone, Debug)]
pub struct GalileanFamily {
    velocities: BTreeMap<String, ThreeVelocity>,
}

impl GalileanFamily {
    pub fn new(
        bodies: impl IntoIterator<Item = (String, ThreeVelocity)>,
    ) -> Result<Self, GalileanError> {
        let mut velocities = BTreeMap::new();
        for (id, velocity) in bodies {
            if velocities.insert(id.clone(), velocity).is_some() {
                return Err(GalileanError::DuplicateObserver(id));
            }
        }
        Ok(GalileanFamily { velocities })
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.velocities.keys().map(String::as_str)
    }

    pub fn velocity(&self, id: &str) -> Result<&ThreeVelocity, GalileanError> {
        self.velocities
            .get(id)
            .ok_or_else(|| GalileanError::UnknownObserver(id.to_owned()))
    }

    /// The arrow `p -> q`: the velocity of `q` minus the velocity of
    /// `p`, independent of which chart the labels were given in.
    pub fn arrow(&self, p: &str, q: &str) -> Result<GalileanArrow, GalileanError> {
        let vp = self.velocity(p)?;
        let vq = self.velocity(q)?;
        Ok(GalileanArrow {
            source: p.to_owned(),
            target: q.to_owned(),
            relative: vq.sub(vp),
        })
    }

    /// Typed composition: requires the chain `u.source -> u.target =
    /// v.source -> v.target` and returns the end-to-end arrow, whose
    /// vector is just the sum.
    pub fn compose(
        &self,
        v: &GalileanArrow,
        u: &GalileanArrow,
    ) -> Result<GalileanArrow, GalileanError> {
        if u.target != v.source {
            return Err(GalileanError::NotComposable {
                first_target: u.target.clone(),
                second_source: v.source.clone(),
            });
        }
        Ok(GalileanArrow {
            source: u.source.clone(),
            target: v.target.clone(),
            relative: galilean_compose(&v.relative, &u.relative),
        })
    }

    pub fn inverse(&self, u: &GalileanArrow) -> GalileanArrow {
        GalileanArrow {
            source: u.target.clone(),
            target: u.source.clone(),
            relative: u.relative.neg(),
        }
    }
}

/// One row of the convergence sweep: the light speed used and how far
/// the relativistic composite landed from the plain vector sum.
#[derive(Clone, Debug)]
pub struct GalileanLimitEntry {
    pub c: f64,
    pub deviation: f64,
}

/// Result of [`galilean_limit_check`].
#[derive(Clone, Debug)]
pub struct GalileanLimitReport {
    pub u: ThreeVelocity,
    pub v: ThreeVelocity,
    /// The degenerate composite `u + v` every row is compared against.
    pub galilean_sum: ThreeVelocity,
    pub entries: Vec<GalileanLimitEntry>,
    /// `deviation[i] / deviation[i+1]` for consecutive rows; near 4
    /// when the light speeds double, since the defect is second order.
    pub ratios: Vec<f64>,
    pub monotone_decreasing: bool,
}

/// Sweep over light speeds: for each `c`, build three observers — one
/// at rest, one moving at `u`, one moving at `v` relative to the second
/// — compose the relativistic arrows along the chain, and measure the
/// Euclidean distance between the composite's spatial velocity and the
/// plain sum `u + v`. The deviation shrinks by about 4 each time `c`
/// doubles.
pub fn galilean_limit_check(
    u: &ThreeVelocity,
    v: &ThreeVelocity,
    c_values: &[f64],
) -> Result<GalileanLimitReport, GalileanError> {
    let galilean_sum = galilean_compose(v, u);
    let mut entries = Vec::with_capacity(c_values.len());
    for &c in c_values {
        let ctx = MetricContext::float_with_c(c, 1e-9)?;
        let rest = observer_from_monad("p", &Vector4::from_ints([1, 0, 0, 0]), &ctx)?;
        let q_monad = monad_from_velocity(&in_float(u), &ctx)?;
        let q = observer_from_monad("q", &q_monad, &ctx)?;
        // Third body: moving at v relative to q, i.e. q's boost applied
        // to the monad of v.
        let r_monad = boost(&in_float(u), &ctx)?.apply(&monad_from_velocity(&in_float(v), &ctx)?);
        let r = observer_from_monad("r", &r_monad, &ctx)?;
        let family = GroupoidContext::new(vec![rest, q, r], ctx)?;
        let composite = family.compose_chain(&["p", "q", "r"])?;
        let deviation_sq: f64 = (0..3)
            .map(|i| {
                let diff = composite.vec()[i + 1].to_f64() - galilean_sum.components()[i].to_f64();
                diff * diff
            })
            .sum();
        entries.push(GalileanLimitEntry {
            c,
            deviation: deviation_sq.sqrt(),
        });
    }
    let ratios = entries
        .windows(2)
        .map(|pair| {
            if pair[1].deviation == 0.0 {
                f64::INFINITY
            } else {
                pair[0].deviation / pair[1].deviation
            }
        })
        .collect();
    let monotone_decreasing = entries
        .windows(2)
        .all(|pair| pair[1].deviation < pair[0].deviation);
    Ok(GalileanLimitReport {
        u: u.clone(),
        v: v.clone(),
        galilean_sum,
        entries,
        ratios,
        monotone_decreasing,
    })
}

fn in_float(v: &ThreeVelocity) -> ThreeVelocity {
    ThreeVelocity::new(std::array::from_fn(|i| {
        Scalar::approx(v.components()[i].to_f64())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v3(x: f64, y: f64, z: f64) -> ThreeVelocity {
        ThreeVelocity::new([Scalar::approx(x), Scalar::approx(y), Scalar::approx(z)])
    }

    fn exact3(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> ThreeVelocity {
        ThreeVelocity::new([
            Scalar::ratio(x.0, x.1),
            Scalar::ratio(y.0, y.1),
            Scalar::ratio(z.0, z.1),
        ])
    }

    #[test]
    fn composition_is_plain_addition() {
        let u = exact3((3, 5), (0, 1), (0, 1));
        let sum = galilean_compose(&u, &u);
        assert_eq!(sum, exact3((6, 5), (0, 1), (0, 1)));
        assert!(sum.components()[0].is_exact());
        // Zero is neutral.
        assert_eq!(galilean_compose(&u, &ThreeVelocity::zero()), u);
    }

    #[test]
    fn composition_is_commutative_and_associative() {
        let a = exact3((1, 2), (0, 1), (0, 1));
        let b = exact3((0, 1), (1, 3), (0, 1));
        let c = exact3((0, 1), (0, 1), (-1, 4));
        assert_eq!(galilean_compose(&a, &b), galilean_compose(&b, &a));
        assert_eq!(
            galilean_compose(&c, &galilean_compose(&b, &a)),
            galilean_compose(&galilean_compose(&c, &b), &a)
        );
    }

    #[test]
    fn family_arrows_are_skew_symmetric() {
        let family = GalileanFamily::new([
            ("p".to_owned(), exact3((1, 4), (0, 1), (0, 1))),
            ("q".to_owned(), exact3((0, 1), (1, 3), (0, 1))),
        ])
        .unwrap();
        let forward = family.arrow("p", "q").unwrap();
        let backward = family.arrow("q", "p").unwrap();
        assert_eq!(forward.relative(), &backward.relative().neg());
        assert_eq!(family.inverse(&forward), backward);
    }

    #[test]
    fn family_composition_checks_labels() {
        let family = GalileanFamily::new([
            ("p".to_owned(), ThreeVelocity::zero()),
            ("q".to_owned(), exact3((1, 2), (0, 1), (0, 1))),
            ("r".to_owned(), exact3((1, 2), (1, 2), (0, 1))),
        ])
        .unwrap();
        let pq = family.arrow("p", "q").unwrap();
        let qr = family.arrow("q", "r").unwrap();
        let through = family.compose(&qr, &pq).unwrap();
        assert_eq!(through, family.arrow("p", "r").unwrap());
        assert!(matches!(
            family.compose(&pq, &qr),
            Err(GalileanError::NotComposable { .. })
        ));
    }

    #[test]
    fn duplicate_and_unknown_ids_are_reported() {
        let dup = GalileanFamily::new([
            ("p".to_owned(), ThreeVelocity::zero()),
            ("p".to_owned(), ThreeVelocity::zero()),
        ]);
        assert!(matches!(dup, Err(GalileanError::DuplicateObserver(_))));
        let family = GalileanFamily::new([("p".to_owned(), ThreeVelocity::zero())]).unwrap();
        assert!(matches!(
            family.arrow("p", "ghost"),
            Err(GalileanError::UnknownObserver(_))
        ));
    }

    #[test]
    fn deviation_shrinks_fourfold_per_doubling_of_light_speed() {
        let u = v3(0.3, 0.0, 0.0);
        let v = v3(0.0, 0.3, 0.0);
        let report = galilean_limit_check(&u, &v, &[10.0, 20.0, 40.0, 80.0]).unwrap();
        assert!(report.monotone_decreasing);
        assert_eq!(report.ratios.len(), 3);
        for ratio in &report.ratios {
            assert!(
                (3.2..=4.8).contains(ratio),
                "ratio {ratio} outside the second-order window"
            );
        }
    }

    #[test]
    fn zero_velocities_have_zero_deviation_at_every_light_speed() {
        let zero = ThreeVelocity::zero();
        let report = galilean_limit_check(&zero, &zero, &[10.0, 20.0]).unwrap();
        assert!(report.entries.iter().all(|e| e.deviation == 0.0));
        assert!(report.ratios.iter().all(|r| r.is_infinite()));
    }
}
