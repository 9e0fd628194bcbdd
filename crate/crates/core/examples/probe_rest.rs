//! Scratch: exercises replays, delta limits, and degeneration pairs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thetasum_core::identities::{
    check_delta_limit_even, check_delta_limit_odd, is_rejection, lookup, replay_biba_double_sum,
    replay_new1_double_sum, sample_schema, Params,
};
use thetasum_core::limits::{list_pairs, verify_pair};
use thetasum_core::numerics::{sub_seed, Cx, Dd, PrecisionContext, Real, SamplerConfig};

fn main() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();

    // --- delta limits, all (n, r) with n <= 6 ---
    let a = Cx::<Dd>::from_f64(0.83, 0.41);
    let q = Cx::<Dd>::from_f64(0.55, 0.2);
    let p = Cx::<Dd>::from_f64(0.3, -0.1);
    let mut worst_even = 0.0f64;
    let mut worst_odd = 0.0f64;
    for n in 0..=6i64 {
        for r in 0..=6i64 {
            let even = check_delta_limit_even(a, q, p, n, r, 1e-6, &ctx).unwrap();
            let expect_even = if n == r {
                (-Cx::<Dd>::one()).powi(n) * q.powi(n * n - n)
            } else {
                Cx::zero()
            };
            let err = (even - expect_even).norm().to_f64();
            worst_even = worst_even.max(err);
            if err > 1e-4 {
                println!("even n={n} r={r} err={err:.3e}");
            }
            let odd = check_delta_limit_odd(a, q, p, n, r, 1e-6, &ctx).unwrap();
            let expect_odd =
                if n == 2 * r { q.powi(n * (n - 1) / 2) } else { Cx::zero() };
            let err = (odd - expect_odd).norm().to_f64();
            worst_odd = worst_odd.max(err);
            if err > 1e-4 {
                println!("odd n={n} r={r} err={err:.3e}");
            }
        }
    }
    println!("delta limits: worst_even={worst_even:.3e} worst_odd={worst_odd:.3e}");

    // --- replays: 25 admissible random points each, n <= 6 ---
    let schema = lookup("biba").unwrap().schema; // a, b, q, p, n
    type ReplayFn =
        fn(Cx<Dd>, Cx<Dd>, Cx<Dd>, Cx<Dd>, i64, f64, &PrecisionContext) -> thetasum_core::Result<Cx<Dd>>;
    for (label, f) in [
        ("replay_biba", replay_biba_double_sum::<Dd> as ReplayFn),
        ("replay_new1", replay_new1_double_sum::<Dd> as ReplayFn),
    ] {
        let mut worst = 0.0f64;
        let mut rejects = 0usize;
        for idx in 0..25u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(7, idx));
            let mut attempts = 0;
            loop {
                let free: Params<f64> = sample_schema(schema, &mut rng, &cfg, 6);
                let lift = |k: &str| {
                    let v = free.c[k];
                    Cx::<Dd>::from_f64(v.re, v.im)
                };
                match f(
                    lift("a"),
                    lift("b"),
                    lift("q"),
                    lift("p"),
                    free.i["n"],
                    cfg.singularity_floor,
                    &ctx,
                ) {
                    Ok(v) => {
                        let err = (v - Cx::<Dd>::one()).norm().to_f64();
                        worst = worst.max(err);
                        if err > 1e-15 {
                            println!("{label} idx={idx} err={err:.3e} n={}", free.i["n"]);
                        }
                        break;
                    }
                    Err(e) if is_rejection(&e) => {
                        rejects += 1;
                        attempts += 1;
                        if attempts > 200 {
                            println!("{label} idx={idx}: retry budget exhausted");
                            break;
                        }
                    }
                    Err(e) => {
                        println!("{label} idx={idx} HARD ERROR: {e}");
                        break;
                    }
                }
            }
        }
        println!("{label}: worst |sum-1| = {worst:.3e}, rejects={rejects}");
    }

    // --- degeneration pairs, 25 draws each ---
    for pair in list_pairs() {
        let rep = verify_pair(&pair, 25, 3, 8, &ctx, &cfg).unwrap();
        let bad = rep.draws.iter().filter(|d| !d.order_ok).count();
        println!(
            "pair {:>16} -> {:<18} all_ok={} bad_draws={} elapsed={}ms",
            rep.elliptic, rep.basic, rep.all_ok, bad, rep.elapsed_ms
        );
        if !rep.all_ok {
            for (i, d) in rep.draws.iter().enumerate() {
                if !d.order_ok {
                    println!("  draw {i}: errors={:?}", d.errors);
                }
            }
        }
    }
}
