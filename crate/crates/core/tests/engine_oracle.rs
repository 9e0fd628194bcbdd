//! Cross-checks of the incremental series engine against the quadratic
//! rebuild oracle, of each entry's left side against its declarative spec,
//! and of the explicit term-count contract.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thetasum_core::identities::{is_rejection, lift, list_identities, sample_schema};
use thetasum_core::numerics::{rel_residual, sub_seed, Cx, Dd, PrecisionContext, SamplerConfig};
use thetasum_core::series::{eval_mixed, eval_mixed_naive, FactorGroup, MixedSeriesSpec, Position};
use thetasum_core::theta::EllipticBase;

/// For every entry that publishes its left side as a declarative spec, the
/// incremental engine and the stateless quadratic rebuild agree to 1e-25
/// relative at double-double, up to series length 12. The two evaluators
/// share only the per-factor ordering, not any incremental state, so this
/// pins the engine's bookkeeping across the whole catalogue.
#[test]
fn incremental_engine_matches_quadratic_rebuild_up_to_n_12() {
    let ctx = PrecisionContext::double_double();
    let base_cfg = SamplerConfig::default();
    for def in list_identities() {
        let Some(spec_fn) = def.dd.lhs_spec else { continue };
        let mut cfg = base_cfg;
        if let Some(q) = def.q_magnitude {
            cfg.q_magnitude = q;
        }
        for (draw, n) in [(0u64, 12i64), (1, 12), (2, 9), (3, 5), (4, 0)] {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(101, draw));
            let mut checked = false;
            for _ in 0..=cfg.max_retries {
                let mut free = sample_schema(def.schema, &mut rng, &cfg, 12);
                free.set_int("n", n);
                let mut prm = lift::<Dd>(&free);
                (def.dd.resolve)(&mut prm);
                let spec = spec_fn(&prm);

                let fast = match eval_mixed(&spec, cfg.singularity_floor, &ctx) {
                    Ok(v) => v,
                    Err(e) if is_rejection(&e) => continue,
                    Err(e) => panic!("{}: {e}", def.name),
                };
                let slow = eval_mixed_naive(&spec, cfg.singularity_floor, &ctx)
                    .unwrap_or_else(|e| panic!("{}: rebuild failed: {e}", def.name));

                let res = rel_residual(fast.value, slow.value);
                assert!(res <= 1e-25, "{} n={n}: engine vs rebuild {res:.3e}", def.name);
                let spread = (fast.max_term - slow.max_term).abs()
                    / fast.max_term.max(slow.max_term).max(1e-300);
                assert!(spread <= 1e-12, "{} n={n}: max-term spread {spread:.3e}", def.name);
                checked = true;
                break;
            }
            assert!(checked, "{} n={n}: no admissible draw found", def.name);
        }
    }
}

/// The closure each entry evaluates as its left side agrees with the
/// engine run on that entry's declarative spec. For the plain-arithmetic
/// entries these are genuinely different code paths.
#[test]
fn entry_left_sides_agree_with_their_declarative_specs() {
    let ctx = PrecisionContext::double_double();
    let base_cfg = SamplerConfig::default();
    for def in list_identities() {
        let Some(spec_fn) = def.dd.lhs_spec else { continue };
        let mut cfg = base_cfg;
        if let Some(q) = def.q_magnitude {
            cfg.q_magnitude = q;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(103, 7));
        let mut checked = false;
        for _ in 0..=cfg.max_retries {
            let mut free = sample_schema(def.schema, &mut rng, &cfg, 4);
            free.set_int("n", 4);
            let mut prm = lift::<Dd>(&free);
            (def.dd.resolve)(&mut prm);

            let direct = match (def.dd.lhs)(&prm, cfg.singularity_floor, &ctx) {
                Ok(v) => v,
                Err(e) if is_rejection(&e) => continue,
                Err(e) => panic!("{}: {e}", def.name),
            };
            let via_spec = match eval_mixed(&spec_fn(&prm), cfg.singularity_floor, &ctx) {
                Ok(v) => v,
                Err(e) if is_rejection(&e) => continue,
                Err(e) => panic!("{}: {e}", def.name),
            };
            let res = rel_residual(direct.value, via_spec.value);
            assert!(res <= 1e-20, "{}: closure vs spec {res:.3e}", def.name);
            checked = true;
            break;
        }
        assert!(checked, "{}: no admissible draw found", def.name);
    }
}

fn plain_group(params: Vec<Cx<Dd>>, q: Cx<Dd>, p: Cx<Dd>, position: Position) -> FactorGroup<Dd> {
    FactorGroup { params, base: EllipticBase::new(q, p), position }
}

/// A length-n spec sums exactly the terms k = 0..=n: evaluating a
/// non-terminating spec at n and at n−1 differs by the (nonzero) final
/// term, so the limit is inclusive and explicit.
#[test]
fn series_length_is_explicit_and_inclusive() {
    let ctx = PrecisionContext::double_double();
    let q = Cx::<Dd>::from_f64(0.35, 0.1);
    let p = Cx::<Dd>::from_f64(0.2, -0.05);
    let spec = |n: i64| MixedSeriesSpec {
        vwp_ratio: None,
        groups: vec![plain_group(vec![Cx::from_f64(0.4, 0.2)], q, p, Position::Numerator)],
        z: Cx::from_f64(0.7, 0.0),
        n,
    };
    let f6 = eval_mixed(&spec(6), 0.0, &ctx).unwrap();
    let f5 = eval_mixed(&spec(5), 0.0, &ctx).unwrap();
    let gap = rel_residual(f6.value, f5.value);
    assert!(gap > 1e-3, "final term was not included (gap {gap:.3e})");
}

/// When an upper column terminates the series early (its argument walks
/// onto a theta zero), terms past the walk-off vanish to rounding noise:
/// lengthening the sum past that point leaves the value unchanged.
#[test]
fn terms_beyond_a_vanishing_column_contribute_nothing() {
    let ctx = PrecisionContext::double_double();
    let q = Cx::<Dd>::from_f64(0.4, 0.15);
    let p = Cx::<Dd>::from_f64(0.25, 0.1);
    let m = 4;
    let spec = |n: i64| MixedSeriesSpec {
        vwp_ratio: None,
        groups: vec![
            plain_group(vec![q.powi(-m), Cx::from_f64(0.5, 0.3)], q, p, Position::Numerator),
            plain_group(vec![Cx::from_f64(1.2, -0.4)], q, p, Position::Denominator),
        ],
        z: Cx::from_f64(0.8, 0.1),
        n,
    };
    let exact = eval_mixed(&spec(m), 0.0, &ctx).unwrap();
    let longer = eval_mixed(&spec(m + 3), 0.0, &ctx).unwrap();
    let res = rel_residual(exact.value, longer.value);
    assert!(res <= 1e-26, "residual {res:.3e}");
    assert_eq!(exact.max_term, longer.max_term);
}
