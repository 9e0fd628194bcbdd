//! Seeded verification sweeps over the whole identity registry, plus the
//! explicit-point and error paths of the verification front end.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thetasum_core::identities::{
    list_identities, lookup, sample_schema, verify_many, verify_once, IdentityKind, TrialStatus,
};
use thetasum_core::numerics::{sub_seed, PrecisionContext, SamplerConfig, Tier};
use thetasum_core::EvalError;

/// Every registry entry holds over seeded random draws at double-double.
/// Lemma entries get the full 100-point sweep (they are cheap single-theta
/// checks); series entries run a shorter sweep here and the full-length one
/// in the acceptance suite.
#[test]
fn every_entry_passes_seeded_verification_at_double_double() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    for def in list_identities() {
        let trials = if def.kind == IdentityKind::Lemma { 100 } else { 25 };
        let rep = verify_many(def.name, trials, 11, 8, &ctx, &cfg).unwrap();
        assert!(
            rep.pass,
            "{}: {} failures, max residual {:.3e}",
            def.name,
            rep.failures.len(),
            rep.max_residual
        );
    }
}

/// A representative cross-section also holds at plain double precision with
/// the double-tier tolerance.
#[test]
fn representative_entries_pass_at_double_precision() {
    let ctx = PrecisionContext::double();
    let cfg = SamplerConfig::default();
    for name in
        ["ft_jackson_V109", "biba", "v87_delta", "linp2", "watson_8phi7", "nr414_transform"]
    {
        let rep = verify_many(name, 25, 5, 6, &ctx, &cfg).unwrap();
        assert!(rep.pass, "{name}: max residual {:.3e}", rep.max_residual);
    }
}

/// Identical (seed, trials, tier) reproduce bit-identical reports apart from
/// the elapsed-time field.
#[test]
fn repeated_runs_are_bitwise_deterministic() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    for name in ["biba", "warnaar_14V13", "quad_ratio"] {
        let a = verify_many(name, 10, 42, 8, &ctx, &cfg).unwrap();
        let b = verify_many(name, 10, 42, 8, &ctx, &cfg).unwrap();
        assert_eq!(a.max_residual.to_bits(), b.max_residual.to_bits(), "{name}");
        assert_eq!(a.failures.len(), b.failures.len());
        assert_eq!(a.seed, 42);
        assert_eq!(a.trials, 10);
        assert_eq!(a.tier, Tier::DoubleDouble);
    }
}

/// An explicit parameter point can be checked directly; derived parameters
/// are filled in by the entry's resolver and echoed in the record.
#[test]
fn explicit_point_verification_resolves_and_passes() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    let def = lookup("ft_jackson_V109").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(9, 0));
    let free = sample_schema(def.schema, &mut rng, &cfg, 6);

    let rec = verify_once("ft_jackson_V109", &free, &ctx, &cfg).unwrap();
    assert_eq!(rec.status, TrialStatus::Pass, "residual {:.3e}", rec.residual);
    assert!(rec.params.contains_key("e"), "derived parameter missing from record");

    let mut incomplete = free.clone();
    incomplete.c.remove("b");
    let err = verify_once("ft_jackson_V109", &incomplete, &ctx, &cfg).unwrap_err();
    assert!(matches!(err, EvalError::InvalidSeries(_)), "got {err:?}");
}

/// Unknown identity names surface as lookup errors rather than panics.
#[test]
fn unknown_identity_name_is_an_error() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    assert!(lookup("no_such_identity").is_err());
    assert!(verify_many("no_such_identity", 1, 1, 4, &ctx, &cfg).is_err());
}

/// Entries whose right side vanishes identically switch to the scaled
/// absolute residual: the sum of O(max_term) summands must cancel to the
/// zero-target bar.
#[test]
fn zero_target_entries_use_scaled_absolute_residual() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    for (name, n) in [("v87_delta", 3), ("new2_12V11", 5), ("linp2", 3), ("andrews_q_watson", 1)] {
        let def = lookup(name).unwrap();
        let zero = def.zero_rhs.expect("entry under test must have a zero-target predicate");
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(13, n as u64));
        let mut free = sample_schema(def.schema, &mut rng, &cfg, 8);
        free.set_int("n", n);
        assert!(zero(&free.i), "n={n} must trigger the zero-target branch for {name}");

        let rec = verify_once(name, &free, &ctx, &cfg).unwrap();
        assert_eq!(rec.status, TrialStatus::Pass, "{name}: residual {:.3e}", rec.residual);
        assert!(rec.residual <= ctx.zero_rhs_bar(), "{name}: residual {:.3e}", rec.residual);
        assert!(rec.max_term > 0.0, "{name}: zero-target residual needs a term scale");
    }
}

/// The registry exposes the full catalogue: every name resolves, names are
/// unique, and each advertised kind appears.
#[test]
fn registry_catalogue_is_complete_and_unique() {
    let all = list_identities();
    let mut names: Vec<&str> = all.iter().map(|d| d.name).collect();
    names.sort_unstable();
    let before = names.len();
    names.dedup();
    assert_eq!(before, names.len(), "duplicate registry names");
    for def in all {
        assert!(lookup(def.name).is_ok());
    }
    for kind in [
        IdentityKind::EllipticSummation,
        IdentityKind::EllipticTransformation,
        IdentityKind::BasicSummation,
        IdentityKind::BasicTransformation,
        IdentityKind::Lemma,
    ] {
        assert!(all.iter().any(|d| d.kind == kind), "no entry of kind {}", kind.name());
    }
}
