//! The acceptance gate: six graded criteria, one test per criterion. Each
//! prints a single `criterion N: pass` line on success (shown under
//! `--nocapture`; the per-test ok/FAILED line carries the same verdict in
//! quiet runs). The criteria serialize on a shared lock so their wall-clock
//! budgets stay honest even when the harness threads tests.

use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subordlab::batch::{agreement_suite, plugback_suite, soundness_suite};
use subordlab::briot_bouquet::{bb_solve_from_target, kcor_slope, odl_closed_form, BBParams};
use subordlab::config::Config;
use subordlab::dominants::DominantSpec;
use subordlab::exec::ExecMode;
use subordlab::harness::{converse_of, falsify, planted_defect, registry, run_trials};
use subordlab::integral_ops::{bernardi_general, OperatorParams};
use subordlab::series::TaylorSeries;
use subordlab::subordination::{is_subordinate, make_subordinate, schwarz_sample};
use subordlab::valued::ValuedSeries;

fn gate() -> MutexGuard<'static, ()> {
    static LOCK: OnceLock<Mutex<()>> = OnceLock::new();
    LOCK.get_or_init(|| Mutex::new(()))
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner())
}

/// Largest coefficient gap over the shared range of two series.
fn gap(x: &TaylorSeries, y: &TaylorSeries) -> f64 {
    let top = x.order().min(y.order());
    (0..=top)
        .map(|k| (x.coeff(k) - y.coeff(k)).norm())
        .fold(0.0, f64::max)
}

/// Random series with geometrically decaying coefficients. `unit` keeps the
/// constant term well away from zero so divisions and logarithms are safe.
fn random_series(rng: &mut ChaCha8Rng, order: usize, unit: bool) -> TaylorSeries {
    let decay: f64 = rng.gen_range(0.35..0.75);
    let mut coeffs = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mag = decay.powi(k as i32) * rng.gen_range(0.2..1.0);
        let arg = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        coeffs.push(C64::from_polar(mag, arg));
    }
    if unit {
        coeffs[0] = C64::from_polar(rng.gen_range(0.6..1.6), rng.gen_range(-0.8..0.8));
    } else {
        // Keep the constant term in the branch-safe strip for exp/log trips.
        coeffs[0] = C64::new(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
    }
    TaylorSeries::from_coeffs(coeffs)
}

#[test]
fn criterion_1_series_ring_and_round_trips() {
    let _lock = gate();
    let start = Instant::now();
    let order = 32;
    let trials = 200;
    let mut worst = 0.0f64;
    let mut check = |law: &str, observed: f64, tol: f64| {
        assert!(observed < tol, "{law}: worst gap {observed:.3e} >= {tol:.0e}");
        worst = worst.max(observed);
    };

    // Additive laws.
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut acc = 0.0f64;
    for _ in 0..trials {
        let (f, g, h) = (
            random_series(&mut rng, order, false),
            random_series(&mut rng, order, false),
            random_series(&mut rng, order, false),
        );
        acc = acc.max(gap(&f.add(&g).add(&h), &f.add(&g.add(&h))));
        acc = acc.max(gap(&f.add(&g), &g.add(&f)));
        acc = acc.max(gap(&f.sub(&f), &TaylorSeries::zero(order)));
    }
    check("addition", acc, 1e-12);

    // Multiplicative laws.
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut acc = 0.0f64;
    for _ in 0..trials {
        let (f, g, h) = (
            random_series(&mut rng, order, false),
            random_series(&mut rng, order, false),
            random_series(&mut rng, order, false),
        );
        acc = acc.max(gap(&f.multiply(&g), &g.multiply(&f)));
        acc = acc.max(gap(&f.multiply(&g).multiply(&h), &f.multiply(&g.multiply(&h))));
        acc = acc.max(gap(
            &f.multiply(&g.add(&h)),
            &f.multiply(&g).add(&f.multiply(&h)),
        ));
    }
    check("multiplication", acc, 1e-10);

    // Division and reciprocal round trips.
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut acc = 0.0f64;
    for _ in 0..trials {
        let f = random_series(&mut rng, order, false);
        let g = random_series(&mut rng, order, true);
        acc = acc.max(gap(&f.multiply(&g).divide(&g).unwrap(), &f));
        acc = acc.max(gap(
            &g.multiply(&g.inverse().unwrap()),
            &TaylorSeries::one(order),
        ));
    }
    check("division", acc, 1e-10);

    // Exponential/logarithm round trips, both directions.
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut acc = 0.0f64;
    for _ in 0..trials {
        let f = random_series(&mut rng, order, false);
        let u = random_series(&mut rng, order, true);
        acc = acc.max(gap(&f.exponential().logarithm().unwrap(), &f));
        acc = acc.max(gap(&u.logarithm().unwrap().exponential(), &u));
    }
    check("exp/log", acc, 1e-10);

    // Fractional powers square back.
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut acc = 0.0f64;
    for _ in 0..trials {
        let u = random_series(&mut rng, order, true);
        let root = u.power_real(0.5).unwrap();
        acc = acc.max(gap(&root.multiply(&root), &u));
    }
    check("sqrt", acc, 1e-10);

    // Leibniz rule and the derivative/integral round trip.
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut acc = 0.0f64;
    let mut acc_int = 0.0f64;
    for _ in 0..trials {
        let f = random_series(&mut rng, order, false);
        let g = random_series(&mut rng, order, false);
        // The top slot of a derivative is truncation padding, so the product
        // rule is compared one order short.
        acc = acc.max(gap(
            &f.multiply(&g).derivative().resized(order - 1),
            &f.derivative()
                .multiply(&g)
                .add(&f.multiply(&g.derivative()))
                .resized(order - 1),
        ));
        let back = f.derivative().integrate();
        for k in 1..order {
            acc_int = acc_int.max((back.coeff(k) - f.coeff(k)).norm());
        }
    }
    check("leibniz", acc, 1e-10);
    check("integrate", acc_int, 1e-12);

    // Composition associates against bounded inner maps.
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut acc = 0.0f64;
    for i in 0..trials {
        let f = random_series(&mut rng, order, false);
        let u = schwarz_sample(rng.gen(), 1 + i % 3, rng.gen_range(0.3..0.7), order);
        let v = schwarz_sample(rng.gen(), 1 + (i / 3) % 2, rng.gen_range(0.3..0.7), order);
        let left = f.compose(u.series()).unwrap().compose(v.series()).unwrap();
        let inner = u.series().compose(v.series()).unwrap();
        acc = acc.max(gap(&left, &f.compose(&inner).unwrap()));
    }
    check("compose", acc, 1e-10);

    // Serialization round-trips bit for bit.
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for _ in 0..trials {
        let f = random_series(&mut rng, order, false);
        let text = serde_json::to_string(&f).unwrap();
        let back: TaylorSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back.order(), f.order());
        for k in 0..=order {
            assert!(back.coeff(k) == f.coeff(k), "wire format drifted at {k}");
        }
        let v = ValuedSeries::new(rng.gen_range(0.25..2.0), f.clone()).unwrap();
        let back: ValuedSeries = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert!(back.exponent() == v.exponent());
        assert!(gap(back.unit(), v.unit()) == 0.0);
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "series suite took {elapsed:.1}s, budget is 10s");
    println!(
        "criterion 1: pass - ring and round-trip laws, {trials} trials each at order {order}, \
         worst gap {worst:.2e}, {elapsed:.2}s"
    );
}

#[test]
fn criterion_2_solver_plug_back_and_closed_form() {
    let _lock = gate();
    let start = Instant::now();
    let cfg = Config::default();

    let residual = plugback_suite(200, 21, ExecMode::default_mode(), &cfg).unwrap();
    assert!(residual < 1e-9, "plug-back residual {residual:.3e}");

    // The explicit solution must match the coefficient recursion on weights
    // with positive real part.
    let mut closed_gap = 0.0f64;
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        rng.set_stream(i);
        let omega = schwarz_sample(rng.gen(), 1 + (i as usize) % 3, rng.gen_range(0.3..0.75), cfg.order);
        let q = make_subordinate(&DominantSpec::HalfPlane, &omega).unwrap();
        let bb = BBParams::real(rng.gen_range(0.0..1.5), rng.gen_range(0.3..1.5)).unwrap();
        let closed = odl_closed_form(&q, &bb).unwrap();
        let recursive = bb_solve_from_target(&TaylorSeries::one(cfg.order), &q, &bb).unwrap();
        for k in 0..=cfg.order - 2 {
            closed_gap = closed_gap.max((closed.coeff(k) - recursive.coeff(k)).norm());
        }
    }
    assert!(closed_gap < 1e-9, "closed form vs recursion gap {closed_gap:.3e}");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "solver suite took {elapsed:.1}s, budget is 30s");
    println!(
        "criterion 2: pass - 200 plug-backs (residual {residual:.2e}) and 100 closed-form \
         agreements (gap {closed_gap:.2e}) at order {}, {elapsed:.2}s",
        cfg.order
    );
}

#[test]
fn criterion_3_subordination_oracle() {
    let _lock = gate();
    let cfg = Config::default();
    let mode = ExecMode::default_mode();

    let sound = soundness_suite(500, 11, mode, &cfg).unwrap();
    assert_eq!(sound.trials, 500);
    assert_eq!(sound.refuted, 0, "constructed pair judged false");
    assert_eq!(sound.confirmed, 500, "inconclusive verdicts: {}", sound.inconclusive);
    assert!(sound.min_margin > 0.0);

    let agree = agreement_suite(500, 13, mode, &cfg).unwrap();
    assert_eq!(agree.trials, 500);
    assert_eq!(
        agree.disagreements, 0,
        "paths disagreed beyond tolerance, worst {:.3e}",
        agree.worst_disagreement
    );

    println!(
        "criterion 3: pass - 500 constructed pairs confirmed (tightest {} at margin {:.2e}), \
         500 predicate/winding cross-checks agree",
        sound.tightest, sound.min_margin
    );
}

#[test]
fn criterion_4_full_catalogue_verify() {
    let _lock = gate();
    let start = Instant::now();
    let cfg = Config::default();
    let cases = registry();
    assert!(cases.len() >= 28, "catalogue shrank to {}", cases.len());

    let mut max_inconclusive = 0u64;
    for case in &cases {
        let report = run_trials(case, 100, 7, &cfg);
        assert_eq!(
            report.failures, 0,
            "{}: {} failures, witness {:?}",
            report.case_id, report.failures, report.witness
        );
        assert!(
            report.inconclusive < 10,
            "{}: {} of 100 trials inconclusive",
            report.case_id, report.inconclusive
        );
        max_inconclusive = max_inconclusive.max(report.inconclusive);
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "catalogue took {elapsed:.0}s, budget is 300s");
    println!(
        "criterion 4: pass - {} cases x 100 trials, seed 7, zero failures, \
         max inconclusive {max_inconclusive}, {elapsed:.1}s",
        cases.len()
    );
}

#[test]
fn criterion_5_spot_identities() {
    let _lock = gate();
    let cfg = Config::default();

    // Deviation-bound slope is exactly 5 whenever the dominant fixes 1.
    assert_eq!(kcor_slope(&DominantSpec::Exp), 5.0);
    assert_eq!(kcor_slope(&DominantSpec::SqrtShift), 5.0);

    // Boundary modulus of the first open-door curve at the right angle.
    let door = DominantSpec::OpenDoorA { n: 1, alpha: 0.0, beta: 1.0 };
    let w = door.evaluate(C64::new(0.0, 0.999_999)).unwrap();
    assert!(
        (w.norm() - 5.0f64.sqrt()).abs() < 1e-5,
        "open-door modulus at the top of the circle: {}",
        w.norm()
    );

    // The averaging operator fixes the identity for every parameter choice.
    let identity = ValuedSeries::new(1.0, TaylorSeries::one(cfg.order)).unwrap();
    for (alpha, beta) in [(0.0, 1.0), (0.7, 1.2), (1.0, 2.0)] {
        let params = OperatorParams::new(alpha, beta).unwrap();
        let fixed = bernardi_general(&identity, &identity, &params).unwrap();
        assert!((fixed.exponent() - 1.0).abs() < 1e-12);
        assert!(
            gap(fixed.unit(), &TaylorSeries::one(cfg.order)) < 1e-12,
            "identity moved under alpha {alpha}, beta {beta}"
        );
    }

    // Curvature gate on the rational example f = z/(1 - az), a = 0.9: the
    // gating expression collapses to 2az, its boundary sup stays under 2,
    // and the logarithmic derivative lands inside the disc of 1/(1+z).
    let a: f64 = 0.9;
    let mut coeffs = vec![C64::new(0.0, 0.0); cfg.order + 2];
    for k in 1..coeffs.len() {
        coeffs[k] = C64::new(a.powi(k as i32 - 1), 0.0);
    }
    let f = TaylorSeries::from_coeffs(coeffs);
    let fp = f.derivative();
    // The stored f is the truncated polynomial, so the quotient's top slots
    // carry truncation noise; dropping them leaves the exact linear part.
    let curvature = f
        .multiply(&fp.derivative())
        .divide(&fp.multiply(&fp))
        .unwrap()
        .resized(cfg.order - 4);
    assert!((curvature.coeff(1).re - 2.0 * a).abs() < 1e-10);
    let mut off_linear = 0.0f64;
    for k in (0..=curvature.order().min(cfg.order - 2)).filter(|&k| k != 1) {
        off_linear = off_linear.max(curvature.coeff(k).norm());
    }
    assert!(off_linear < 1e-9, "curvature is not linear: residue {off_linear:.3e}");

    let profile = curvature.boundary_profile(0.95, 720).unwrap();
    let sup = profile.points.iter().map(|(_, w)| w.norm()).fold(0.0, f64::max);
    assert!((sup - 2.0 * a * 0.95).abs() < 1e-6);
    assert!(sup < 2.0);

    let p = ValuedSeries::new(1.0, {
        let mut u = vec![C64::new(0.0, 0.0); cfg.order + 1];
        for (k, slot) in u.iter_mut().enumerate() {
            *slot = C64::new(a.powi(k as i32), 0.0);
        }
        TaylorSeries::from_coeffs(u)
    })
    .unwrap()
    .z_log_derivative()
    .unwrap();
    // z f'/f for this f is exactly the geometric series again.
    let geometric = TaylorSeries::from_coeffs(
        (0..=cfg.order).map(|k| C64::new(a.powi(k as i32), 0.0)).collect(),
    );
    assert!(gap(&p, &geometric) < 1e-9);
    let verdict = is_subordinate(&geometric, &DominantSpec::Janowski { a: 0.0, b: 1.0 }, &cfg);
    assert!(verdict.holds.is_true(), "margin {:.3e}", verdict.margin);
    assert!(verdict.margin > 0.0);

    println!(
        "criterion 5: pass - slope 5 at h(0)=1, open-door modulus sqrt 5, averaging fixed \
         point, curvature gate sup {sup:.3} < 2 with conclusion margin {:.2e}",
        verdict.margin
    );
}

#[test]
fn criterion_6_falsifier_self_test() {
    let _lock = gate();
    let cfg = Config::default();

    let converse = converse_of("cor-ez").unwrap();
    let broken = falsify(&converse, 10_000, 7, &cfg);
    assert!(broken.failures > 0, "no counterexample to the converse in budget");
    assert!(broken.worst_margin < 0.0);
    assert!(broken.witness.is_some());

    let planted = falsify(&planted_defect(), 10_000, 7, &cfg);
    assert!(planted.failures > 0, "planted defect went undetected");

    println!(
        "criterion 6: pass - converse broken after {} evaluations (worst margin {:+.2e}), \
         planted defect caught after {}",
        broken.trials, broken.worst_margin, planted.trials
    );
}
