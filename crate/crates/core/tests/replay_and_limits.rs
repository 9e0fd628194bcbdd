//! Proof-replay double sums, singular-limit lemmas, and the nome→0
//! degeneration suite.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thetasum_core::identities::{
    check_delta_limit_even, check_delta_limit_odd, is_rejection, lookup,
    replay_biba_double_sum, replay_new1_double_sum, sample_schema,
};
use thetasum_core::limits::{list_pairs, verify_pair};
use thetasum_core::numerics::{sub_seed, Cx, Dd, PrecisionContext, Real, SamplerConfig};

/// Interchanging the order of a double sum and collapsing the inner series
/// must reproduce the outer identity: both replayed double sums normalize
/// to exactly 1.
#[test]
fn replayed_double_sums_collapse_to_one() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    let schema = lookup("biba").unwrap().schema;
    type Replay =
        fn(Cx<Dd>, Cx<Dd>, Cx<Dd>, Cx<Dd>, i64, f64, &PrecisionContext) -> thetasum_core::Result<Cx<Dd>>;
    for (label, replay) in [
        ("interchange forward", replay_biba_double_sum::<Dd> as Replay),
        ("interchange backward", replay_new1_double_sum::<Dd> as Replay),
    ] {
        for idx in 0..5u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(31, idx));
            let mut done = false;
            for _ in 0..=cfg.max_retries {
                let free = sample_schema(schema, &mut rng, &cfg, 6);
                let a = Cx::from_f64(free.val("a").re, free.val("a").im);
                let b = Cx::from_f64(free.val("b").re, free.val("b").im);
                let q = Cx::from_f64(free.val("q").re, free.val("q").im);
                let p = Cx::from_f64(free.val("p").re, free.val("p").im);
                let n = free.int("n");
                let sum = match replay(a, b, q, p, n, cfg.singularity_floor, &ctx) {
                    Ok(v) => v,
                    Err(e) if is_rejection(&e) => continue,
                    Err(e) => panic!("{label}: {e}"),
                };
                let err = (sum - Cx::one()).norm().to_f64();
                assert!(err <= 1e-15, "{label} draw {idx}: |sum - 1| = {err:.3e}");
                done = true;
                break;
            }
            assert!(done, "{label} draw {idx}: no admissible draw");
        }
    }
}

/// The ratio of shifted factorials with a pinched argument collapses to a
/// Kronecker delta on its stated domain. Two-point extrapolation in the
/// pinch parameter must land within 1e-4 of the closed form.
#[test]
fn pinched_factorial_ratios_collapse_to_deltas() {
    let ctx = PrecisionContext::double_double();
    let a = Cx::<Dd>::from_f64(0.83, 0.41);
    let q = Cx::<Dd>::from_f64(0.55, 0.2);
    let p = Cx::<Dd>::from_f64(0.3, -0.1);

    // Squared-base form: defined for 0 <= r <= n.
    for n in 0..=6i64 {
        for r in 0..=n {
            let got = check_delta_limit_even(a, q, p, n, r, 1e-6, &ctx).unwrap();
            let want = if n == r {
                (-Cx::<Dd>::one()).powi(n) * q.powi(n * n - n)
            } else {
                Cx::zero()
            };
            let err = (got - want).norm().to_f64();
            assert!(err <= 1e-4, "squared-base n={n} r={r}: err {err:.3e}");
        }
    }

    // Plain-base form: defined for 0 <= 2r <= n.
    for n in 0..=6i64 {
        for r in 0..=n / 2 {
            let got = check_delta_limit_odd(a, q, p, n, r, 1e-6, &ctx).unwrap();
            let want = if n == 2 * r { q.powi(n * (n - 1) / 2) } else { Cx::zero() };
            let err = (got - want).norm().to_f64();
            assert!(err <= 1e-4, "plain-base n={n} r={r}: err {err:.3e}");
        }
    }
}

/// Every registered elliptic→basic pair decays at first order in the nome:
/// the deviation from the basic-side value shrinks by at least the required
/// factor across each probe-nome decade, on every sampled draw.
#[test]
fn every_degeneration_pair_decays_at_first_order() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    for pair in list_pairs() {
        let rep = verify_pair(&pair, 8, 21, 8, &ctx, &cfg).unwrap();
        assert!(
            rep.all_ok,
            "{} -> {}: {} of {} draws failed to decay",
            pair.elliptic,
            pair.basic,
            rep.draws.iter().filter(|d| !d.order_ok).count(),
            rep.draws.len()
        );
        assert_eq!(rep.draws.len(), 8);
    }
}

/// Degeneration reports are deterministic in the master seed.
#[test]
fn degeneration_reports_are_seed_deterministic() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    let pair = &list_pairs()[0];
    let a = verify_pair(pair, 3, 17, 6, &ctx, &cfg).unwrap();
    let b = verify_pair(pair, 3, 17, 6, &ctx, &cfg).unwrap();
    assert_eq!(a.draws.len(), b.draws.len());
    for (x, y) in a.draws.iter().zip(&b.draws) {
        assert_eq!(x.params, y.params);
        assert_eq!(x.errors, y.errors);
        assert_eq!(x.order_ok, y.order_ok);
    }
}
