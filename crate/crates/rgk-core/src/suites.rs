//! Named invariant suites over randomly sampled exact configurations:
//! the same laws the unit tests pin on fixed data, run here over seeded
//! random families so the command line can re-verify them on demand.
//!
//! Every suite is deterministic for a fixed `(trials, seed)` pair; all
//! sampled data comes from [`crate::sampling`], so exact-mode runs
//! demand exact-zero residuals.

use crate::algebra::{
    check_associativity, matrix_rep, multiply, trace_element, word_trace, AlgebraElement,
};
use crate::einstein::{
    associativity_residual_einstein, einstein_add, gyration_angle, speed_agreement, ThreeVelocity,
};
use crate::galilean::{galilean_compose, galilean_limit_check, GalileanFamily};
use crate::groupoid::GroupoidContext;
use crate::minkowski::MetricContext;
use crate::observer::is_g_compatible;
use crate::sampling::{observer_family, seeded_rng, subluminal_velocity};
use crate::scalar::Scalar;
use crate::velocity::{binary_velocity_vector, magnitude_sq, velocity_operator};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SuiteError {
    #[error("no suite named {name:?}; available: {available}")]
    UnknownSuite { name: String, available: String },
}

/// One verified invariant: its name, whether it held on every trial,
/// and a short human-readable summary (worst residual, counts).
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything a suite run produces.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: u32,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

const SUITES: [&str; 7] = [
    "observer", "velocity", "algebra", "groupoid", "einstein", "galilean", "all",
];

/// Names accepted by [`run_suite`].
pub fn available_suites() -> &'static [&'static str] {
    &SUITES
}

/// Run the named invariant suite with `trials` sampled configurations
/// per check. `"all"` chains every suite, each on its own sub-seed.
pub fn run_suite(
    name: &str,
    trials: u32,
    seed: u64,
    ctx: &MetricContext,
) -> Result<SuiteReport, SuiteError> {
    let checks = match name {
        "observer" => observer_suite(trials, seed, ctx),
        "velocity" => velocity_suite(trials, seed, ctx),
        "algebra" => algebra_suite(trials, seed, ctx),
        "groupoid" => groupoid_suite(trials, seed, ctx),
        "einstein" => einstein_suite(trials, seed, ctx),
        "galilean" => galilean_suite(trials, seed, ctx),
        "all" => {
            let mut all = Vec::new();
            for (offset, sub) in SUITES[..6].iter().enumerate() {
                let sub_seed = seed.wrapping_add(offset as u64);
                let mut report = run_suite(sub, trials, sub_seed, ctx)?;
                for check in &mut report.checks {
                    check.name = format!("{sub}/{}", check.name);
                }
                all.extend(report.checks);
            }
            all
        }
        _ => {
            return Err(SuiteError::UnknownSuite {
                name: name.to_owned(),
                available: SUITES.join(", "),
            })
        }
    };
    Ok(SuiteReport {
        suite: name.to_owned(),
        trials,
        seed,
        checks,
    })
}

/// Tracks the worst absolute residual seen and whether every trial
/// stayed under the context's zero tolerance.
struct ResidualTally {
    worst: f64,
    failures: u32,
    trials: u32,
}

impl ResidualTally {
    fn new() -> Self {
        ResidualTally {
            worst: 0.0,
            failures: 0,
            trials: 0,
        }
    }

    fn push(&mut self, residual: &Scalar, ctx: &MetricContext) {
        self.trials += 1;
        let abs = residual.abs().to_f64();
        if abs > self.worst {
            self.worst = abs;
        }
        if !ctx.scalar_is_zero(residual) {
            self.failures += 1;
        }
    }

    fn push_bool(&mut self, ok: bool) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn outcome(self, name: &str) -> CheckOutcome {
        CheckOutcome {
            name: name.to_owned(),
            passed: self.failures == 0,
            detail: format!(
                "{}/{} trials ok, worst residual {:.3e}",
                self.trials - self.failures,
                self.trials,
                self.worst
            ),
        }
    }
}

fn sample_triple(rng: &mut ChaCha8Rng, ctx: &MetricContext) -> GroupoidContext {
    observer_family(rng, &["a", "b", "c"], ctx).expect("sampled monads are valid")
}

fn observer_suite(trials: u32, seed: u64, ctx: &MetricContext) -> Vec<CheckOutcome> {
    let mut rng = seeded_rng(seed);
    let mut idempotent = ResidualTally::new();
    let mut unit_trace = ResidualTally::new();
    let mut compatible = ResidualTally::new();
    let mut fixes_monad = ResidualTally::new();
    for _ in 0..trials {
        let family = sample_triple(&mut rng, ctx);
        for id in ["a", "b", "c"] {
            let obs = family.observer(id).unwrap();
            let op = obs.op();
            idempotent.push(&op.mul(op).sub(op).max_abs_entry(), ctx);
            unit_trace.push(&(op.trace() - Scalar::one()), ctx);
            compatible.push_bool(is_g_compatible(op, ctx));
            let moved = op.apply(obs.monad()).sub(obs.monad());
            fixes_monad.push(&moved.max_abs_component(), ctx);
        }
    }
    vec![
        idempotent.outcome("operator_is_idempotent"),
        unit_trace.outcome("operator_has_unit_trace"),
        compatible.outcome("operator_is_metric_compatible"),
        fixes_monad.outcome("operator_fixes_own_monad"),
    ]
}

fn velocity_suite(trials: u32, seed: u64, ctx: &MetricContext) -> Vec<CheckOutcome> {
    let mut rng = seeded_rng(seed);
    let mut nilpotent = ResidualTally::new();
    let mut traceless = ResidualTally::new();
    let mut routes_agree = ResidualTally::new();
    let mut magnitude_matches = ResidualTally::new();
    let mut subluminal = ResidualTally::new();
    let mut reciprocal = ResidualTally::new();
    let mut orthogonal = ResidualTally::new();
    for _ in 0..trials {
        let family = sample_triple(&mut rng, ctx);
        let gram = family.gram();
        for (p, q) in [("a", "b"), ("b", "c"), ("c", "a")] {
            let obs_p = family.observer(p).unwrap();
            let obs_q = family.observer(q).unwrap();
            let w = binary_velocity_vector(obs_p, obs_q, ctx);
            nilpotent.push(&w.op().mul(w.op()).max_abs_entry(), ctx);
            traceless.push(&w.op().trace(), ctx);
            let via_trace = velocity_operator(obs_p, obs_q, ctx).unwrap();
            routes_agree.push(&via_trace.sub(w.op()).max_abs_entry(), ctx);
            let table = magnitude_sq(&w, gram, ctx).unwrap();
            magnitude_matches.push(&(&table - &ctx.norm_sq(w.vec())), ctx);
            let room = &ctx.c_squared() - &table;
            subluminal.push_bool(room.is_positive() && !table.is_negative());
            let back = binary_velocity_vector(obs_q, obs_p, ctx);
            reciprocal.push(&(w.speed_sq() - back.speed_sq()), ctx);
            orthogonal.push(&ctx.dot(w.vec(), obs_p.monad()), ctx);
        }
    }
    vec![
        nilpotent.outcome("arrow_operator_is_nilpotent"),
        traceless.outcome("arrow_operator_is_traceless"),
        routes_agree.outcome("trace_route_matches_direct_route"),
        magnitude_matches.outcome("table_magnitude_matches_geometry"),
        subluminal.outcome("speeds_stay_below_light"),
        reciprocal.outcome("speed_is_reciprocal"),
        orthogonal.outcome("arrow_is_orthogonal_to_source"),
    ]
}

fn algebra_suite(trials: u32, seed: u64, ctx: &MetricContext) -> Vec<CheckOutcome> {
    let mut rng = seeded_rng(seed);
    let mut homomorphism = ResidualTally::new();
    let mut transposed_traces = ResidualTally::new();
    let mut associative = ResidualTally::new();
    for _ in 0..trials {
        let family = sample_triple(&mut rng, ctx);
        let gram = family.gram();
        let embedding: BTreeMap<String, _> = family
            .observers()
            .map(|obs| (obs.id().to_owned(), obs.clone()))
            .collect();
        let samples = [
            AlgebraElement::obj("a"),
            AlgebraElement::arrow("a", "b"),
            AlgebraElement::obj("c").add(&AlgebraElement::arrow("b", "c")),
            AlgebraElement::unit()
                .scale(&Scalar::ratio(1, 2))
                .sub(&AlgebraElement::obj("b")),
        ];
        for x in &samples {
            for y in &samples {
                let product = multiply(x, y, gram, ctx).unwrap();
                let lhs = matrix_rep(&product, &embedding, gram, ctx).unwrap();
                let rhs = matrix_rep(x, &embedding, gram, ctx)
                    .unwrap()
                    .mul(&matrix_rep(y, &embedding, gram, ctx).unwrap());
                homomorphism.push(&lhs.sub(&rhs).max_abs_entry(), ctx);
            }
        }
        let abc = word_trace(&["a", "b", "c"], gram).unwrap();
        let bac = word_trace(&["b", "a", "c"], gram).unwrap();
        transposed_traces.push(&(&abc - &bac), ctx);
        let product = multiply(
            &multiply(
                &AlgebraElement::obj("a"),
                &AlgebraElement::obj("b"),
                gram,
                ctx,
            )
            .unwrap(),
            &AlgebraElement::obj("c"),
            gram,
            ctx,
        )
        .unwrap();
        transposed_traces.push(&(&trace_element(&product, None).unwrap() - &abc), ctx);
        let report = check_associativity(gram, ctx, 60, seed ^ 0x5eed).unwrap();
        associative.push_bool(report.failures == 0);
    }
    vec![
        homomorphism.outcome("matrix_representation_is_multiplicative"),
        transposed_traces.outcome("word_traces_ignore_transposition"),
        associative.outcome("sampled_basis_triples_associate"),
    ]
}

fn groupoid_suite(trials: u32, seed: u64, ctx: &MetricContext) -> Vec<CheckOutcome> {
    let mut rng = seeded_rng(seed);
    let mut associative = ResidualTally::new();
    let mut path_independent = ResidualTally::new();
    let mut law_holds = ResidualTally::new();
    let mut inverses_cancel = ResidualTally::new();
    for _ in 0..trials {
        let family = observer_family(&mut rng, &["a", "b", "c", "d"], ctx)
            .expect("sampled monads are valid");
        let ab = family.arrow("a", "b").unwrap();
        let bc = family.arrow("b", "c").unwrap();
        let cd = family.arrow("c", "d").unwrap();
        let left = family
            .compose(&cd, &family.compose(&bc, &ab).unwrap())
            .unwrap();
        let right = family
            .compose(&family.compose(&cd, &bc).unwrap(), &ab)
            .unwrap();
        associative.push(&left.op().sub(right.op()).max_abs_entry(), ctx);
        let direct = family.arrow("a", "d").unwrap();
        path_independent.push(&left.op().sub(direct.op()).max_abs_entry(), ctx);
        law_holds.push(&family.composition_law_residual(&bc, &ab).unwrap(), ctx);
        inverses_cancel.push(&family.inverse_cancellation_residual(&ab).unwrap(), ctx);
        let round = family.compose(&family.inverse(&ab).unwrap(), &ab).unwrap();
        inverses_cancel.push(&round.op().max_abs_entry(), ctx);
    }
    vec![
        associative.outcome("composition_associates"),
        path_independent.outcome("composition_is_path_independent"),
        law_holds.outcome("explicit_composition_law_holds"),
        inverses_cancel.outcome("inverses_cancel_to_zero_arrows"),
    ]
}

fn einstein_suite(trials: u32, seed: u64, ctx: &MetricContext) -> Vec<CheckOutcome> {
    let mut rng = seeded_rng(seed);
    let mut sums_subluminal = ResidualTally::new();
    let mut speeds_agree = ResidualTally::new();
    let mut collinear_associates = ResidualTally::new();
    for _ in 0..trials {
        let u = subluminal_velocity(&mut rng, ctx);
        let v = subluminal_velocity(&mut rng, ctx);
        let sum = einstein_add(&u, &v, ctx).expect("sampled velocities are subluminal");
        sums_subluminal.push_bool((&ctx.c_squared() - &sum.norm_sq()).is_positive());
        let family = sample_triple(&mut rng, ctx);
        let agreement = speed_agreement(&family, "a", "b", "c").unwrap();
        speeds_agree.push(&agreement.speed_sq_residual, ctx);
        // Collinear rescalings of one sampled velocity associate and do
        // not gyrate.
        let half = u.scale(&Scalar::ratio(1, 2));
        let third = u.scale(&Scalar::ratio(-1, 3));
        let residual = associativity_residual_einstein(&u, &half, &third, ctx).unwrap();
        collinear_associates.push(&residual, ctx);
        let angle = gyration_angle(&u, &half, ctx).unwrap();
        collinear_associates.push(&angle, ctx);
    }
    // One fixed bent triple that must fail associativity: the contrast
    // that motivates the groupoid composition. (Two orthogonal legs,
    // third retracing the first — one velocity per coordinate axis
    // would be a degenerate configuration that associates.)
    let bent = {
        let u = ThreeVelocity::new([Scalar::ratio(3, 5), Scalar::zero(), Scalar::zero()])
            .scale(ctx.c());
        let v = ThreeVelocity::new([Scalar::zero(), Scalar::ratio(3, 5), Scalar::zero()])
            .scale(ctx.c());
        let w = u.clone();
        let residual = associativity_residual_einstein(&u, &v, &w, ctx).unwrap();
        CheckOutcome {
            name: "bent_triples_fail_associativity".to_owned(),
            passed: residual.to_f64() / ctx.c().to_f64() > 0.01,
            detail: format!(
                "defect {:.6} (relative to c)",
                residual.to_f64() / ctx.c().to_f64()
            ),
        }
    };
    let mut checks = vec![
        sums_subluminal.outcome("one_chart_sums_stay_subluminal"),
        speeds_agree.outcome("composite_speeds_match_groupoid"),
        collinear_associates.outcome("collinear_sums_associate_without_gyration"),
    ];
    checks.push(bent);
    checks
}

fn galilean_suite(trials: u32, seed: u64, ctx: &MetricContext) -> Vec<CheckOutcome> {
    let mut rng = seeded_rng(seed);
    let mut commutes = ResidualTally::new();
    let mut associates = ResidualTally::new();
    let mut skew = ResidualTally::new();
    for _ in 0..trials {
        let a = subluminal_velocity(&mut rng, ctx);
        let b = subluminal_velocity(&mut rng, ctx);
        let c = subluminal_velocity(&mut rng, ctx);
        commutes.push(
            &galilean_compose(&a, &b)
                .sub(&galilean_compose(&b, &a))
                .norm_sq(),
            ctx,
        );
        associates.push(
            &galilean_compose(&galilean_compose(&c, &b), &a)
                .sub(&galilean_compose(&c, &galilean_compose(&b, &a)))
                .norm_sq(),
            ctx,
        );
        let family =
            GalileanFamily::new([("p".to_owned(), a.clone()), ("q".to_owned(), b.clone())])
                .unwrap();
        let forward = family.arrow("p", "q").unwrap();
        let backward = family.arrow("q", "p").unwrap();
        skew.push(&forward.relative().add(backward.relative()).norm_sq(), ctx);
    }
    let sweep = {
        let u = ThreeVelocity::new([Scalar::ratio(3, 10), Scalar::zero(), Scalar::zero()]);
        let v = ThreeVelocity::new([Scalar::zero(), Scalar::ratio(3, 10), Scalar::zero()]);
        match galilean_limit_check(&u, &v, &[10.0, 20.0, 40.0, 80.0]) {
            Ok(report) => {
                let in_window = report.ratios.iter().all(|r| (3.2..=4.8).contains(r));
                CheckOutcome {
                    name: "composition_converges_to_addition".to_owned(),
                    passed: in_window && report.monotone_decreasing,
                    detail: format!(
                        "deviation ratios per c-doubling: {}",
                        report
                            .ratios
                            .iter()
                            .map(|r| format!("{r:.3}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                }
            }
            Err(err) => CheckOutcome {
                name: "composition_converges_to_addition".to_owned(),
                passed: false,
                detail: format!("sweep failed: {err}"),
            },
        }
    };
    let mut checks = vec![
        commutes.outcome("degenerate_composition_commutes"),
        associates.outcome("degenerate_composition_associates"),
        skew.outcome("labeled_arrows_are_skew_symmetric"),
    ];
    checks.push(sweep);
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_named_suite_passes_in_exact_mode() {
        let ctx = MetricContext::minkowski();
        for name in available_suites() {
            if *name == "all" {
                continue;
            }
            let report = run_suite(name, 8, 2024, &ctx).unwrap();
            assert!(
                report.passed(),
                "suite {name} failed: {:?}",
                report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .collect::<Vec<_>>()
            );
            assert!(!report.checks.is_empty());
        }
    }

    #[test]
    fn the_all_suite_chains_every_other_suite() {
        let ctx = MetricContext::minkowski();
        let report = run_suite("all", 4, 99, &ctx).unwrap();
        assert!(report.passed());
        for sub in &SUITES[..6] {
            assert!(
                report.checks.iter().any(|c| c.name.starts_with(sub)),
                "missing checks from {sub}"
            );
        }
    }

    #[test]
    fn unknown_suites_are_rejected_with_the_menu() {
        let ctx = MetricContext::minkowski();
        let err = run_suite("nonsense", 1, 1, &ctx).unwrap_err();
        let SuiteError::UnknownSuite { available, .. } = err;
        assert!(available.contains("groupoid"));
    }

    #[test]
    fn suites_pass_with_a_different_light_speed() {
        let ctx = MetricContext::exact_with_c(Scalar::from_int(3)).unwrap();
        for name in ["velocity", "groupoid", "einstein"] {
            let report = run_suite(name, 4, 7, &ctx).unwrap();
            assert!(report.passed(), "suite {name} failed at c=3");
        }
    }

    #[test]
    fn reports_are_reproducible_for_a_fixed_seed() {
        let ctx = MetricContext::minkowski();
        let a = run_suite("groupoid", 5, 31, &ctx).unwrap();
        let b = run_suite("groupoid", 5, 31, &ctx).unwrap();
        let render = |r: &SuiteReport| {
            r.checks
                .iter()
                .map(|c| format!("{}|{}|{}", c.name, c.passed, c.detail))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(render(&a), render(&b));
    }
}
