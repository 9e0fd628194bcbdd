//! Identity registry and randomized verification.
//!
//! Each [`IdentityDef`] names a summation or transformation identity, the
//! schema of its free parameters, and evaluators for both sides at both
//! precision tiers. Verification draws parameter points from the schema,
//! resolves derived parameters exactly as the identity's constraints
//! dictate, evaluates both sides honestly (transformations never reuse one
//! side's value for the other), and records the relative residual.
//!
//! Draws whose denominator theta factors fall below the sampler's
//! singularity floor — on either side — are rejected and resampled from the
//! same per-trial stream, so results do not depend on trial order or thread
//! interleaving.
//!
//! Rejection likewise covers draws the working precision cannot decide: a
//! sum that cancels to a tiny fraction of its largest term leaves the
//! computed sides dominated by roundoff, so the best attainable residual —
//! the unit roundoff amplified by the term-to-sum ratio and an op-count
//! headroom — is compared against the tolerance, and draws past that wall
//! are resampled exactly like singular ones. A genuine mismatch between
//! two sides of comparable size keeps that ratio small and is never
//! rejected.
//!
//! Right-hand sides that vanish identically on part of the parameter range
//! (for example odd series lengths) are flagged by the identity's
//! `zero_rhs` predicate; those trials are judged by `|lhs| / max_term`
//! against the context's scaled absolute bar instead of a relative
//! residual.

mod registry;
mod replay;

pub use replay::{
    check_delta_limit_even, check_delta_limit_odd, replay_biba_double_sum,
    replay_new1_double_sum,
};

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{EvalError, Result};
use crate::numerics::{
    rel_residual, sample_annulus, sample_ring, sub_seed, Cx, Dd, PrecisionContext, Real,
    SamplerConfig, Tier,
};
use crate::series::{EvalOut, MixedSeriesSpec};

// ---------------------------------------------------------------------------
// Parameter points
// ---------------------------------------------------------------------------

/// A parameter point: complex values plus integer values, keyed by name.
#[derive(Clone, Debug, Default)]
pub struct Params<R> {
    pub c: BTreeMap<&'static str, Cx<R>>,
    pub i: BTreeMap<&'static str, i64>,
}

impl<R: Real> Params<R> {
    pub fn new() -> Self {
        Params { c: BTreeMap::new(), i: BTreeMap::new() }
    }

    /// Complex parameter by name. Panics on a missing name: registry
    /// evaluators only run on schema-validated points, so absence is a bug.
    pub fn val(&self, name: &str) -> Cx<R> {
        *self.c.get(name).unwrap_or_else(|| panic!("missing complex parameter `{name}`"))
    }

    /// Integer parameter by name; panics on a missing name.
    pub fn int(&self, name: &str) -> i64 {
        *self.i.get(name).unwrap_or_else(|| panic!("missing integer parameter `{name}`"))
    }

    pub fn set(&mut self, name: &'static str, v: Cx<R>) {
        self.c.insert(name, v);
    }

    pub fn set_int(&mut self, name: &'static str, v: i64) {
        self.i.insert(name, v);
    }
}

/// Exact widening of a double-precision parameter point, so both tiers
/// evaluate bit-identical inputs.
pub fn lift<R: Real>(src: &Params<f64>) -> Params<R> {
    Params {
        c: src.c.iter().map(|(&k, v)| (k, Cx::from_f64(v.re, v.im))).collect(),
        i: src.i.clone(),
    }
}

// ---------------------------------------------------------------------------
// Schemas
// ---------------------------------------------------------------------------

/// How a free parameter is drawn.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Role {
    /// Generic complex parameter from the sampler's annulus.
    Annulus,
    /// Base `q`.
    BaseQ,
    /// Nome `p`.
    NomeP,
    /// Complex value whose square lies in the annulus range.
    RootAnnulus,
    /// Complex value whose square lies in the nome range.
    RootNomeP,
    /// Series length, drawn from `0..=n_max`.
    IntN,
    /// Auxiliary integer from a fixed inclusive range.
    IntRange { lo: i64, hi: i64 },
}

/// Named free parameter of an identity.
#[derive(Copy, Clone, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub role: Role,
}

pub(crate) const fn ps(name: &'static str, role: Role) -> ParamSpec {
    ParamSpec { name, role }
}

/// Draws one parameter point for `schema`, in schema order.
pub fn sample_schema<G: rand::Rng + ?Sized>(
    schema: &[ParamSpec],
    rng: &mut G,
    cfg: &SamplerConfig,
    n_max: i64,
) -> Params<f64> {
    let mut out = Params::new();
    for spec in schema {
        match spec.role {
            Role::Annulus => out.set(spec.name, sample_annulus(rng, cfg)),
            Role::BaseQ => {
                out.set(spec.name, sample_ring(rng, cfg.q_magnitude.0, cfg.q_magnitude.1))
            }
            Role::NomeP => {
                out.set(spec.name, sample_ring(rng, cfg.p_magnitude.0, cfg.p_magnitude.1))
            }
            Role::RootAnnulus => out.set(
                spec.name,
                sample_ring(rng, cfg.magnitude_min.sqrt(), cfg.magnitude_max.sqrt()),
            ),
            Role::RootNomeP => out.set(
                spec.name,
                sample_ring(rng, cfg.p_magnitude.0.sqrt(), cfg.p_magnitude.1.sqrt()),
            ),
            Role::IntN => out.set_int(spec.name, rng.gen_range(0..=n_max.max(0))),
            Role::IntRange { lo, hi } => out.set_int(spec.name, rng.gen_range(lo..=hi)),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Identity definitions
// ---------------------------------------------------------------------------

/// Coarse classification, used for listings.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    EllipticSummation,
    EllipticTransformation,
    BasicSummation,
    BasicTransformation,
    Lemma,
}

impl IdentityKind {
    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::EllipticSummation => "elliptic summation",
            IdentityKind::EllipticTransformation => "elliptic transformation",
            IdentityKind::BasicSummation => "basic summation",
            IdentityKind::BasicTransformation => "basic transformation",
            IdentityKind::Lemma => "lemma",
        }
    }
}

/// Fills in derived (constraint-resolved) parameters.
pub type ResolveFn<R> = fn(&mut Params<R>);
/// Evaluates one side of an identity at a resolved point.
pub type SideFn<R> = fn(&Params<R>, f64, &PrecisionContext) -> Result<EvalOut<R>>;
/// Builds the left side as an engine spec (series-backed identities only).
pub type SpecFn<R> = fn(&Params<R>) -> MixedSeriesSpec<R>;
/// Detects parameter points where the right side vanishes identically.
pub type ZeroRhsFn = fn(&BTreeMap<&'static str, i64>) -> bool;

/// One precision tier's evaluators.
pub struct TierFns<R> {
    pub resolve: ResolveFn<R>,
    pub lhs: SideFn<R>,
    pub rhs: SideFn<R>,
    pub lhs_spec: Option<SpecFn<R>>,
}

/// A registered identity.
pub struct IdentityDef {
    pub name: &'static str,
    pub kind: IdentityKind,
    pub schema: &'static [ParamSpec],
    pub zero_rhs: Option<ZeroRhsFn>,
    /// Overrides the sampler's `q` magnitude range. Series with
    /// quadratic-base columns grow like `|q|^(-2nk)` term-wise, so small
    /// `|q|` drives every draw past the precision wall; entries that hit
    /// it restrict draws to where verification is informative.
    pub q_magnitude: Option<(f64, f64)>,
    pub dd: TierFns<Dd>,
    pub dbl: TierFns<f64>,
}

/// All registered identities, in stable registry order.
pub fn list_identities() -> &'static [IdentityDef] {
    static REGISTRY: OnceLock<Vec<IdentityDef>> = OnceLock::new();
    REGISTRY.get_or_init(registry::build)
}

/// Registry lookup by name.
pub fn lookup(name: &str) -> Result<&'static IdentityDef> {
    list_identities()
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| EvalError::UnknownIdentity(name.to_string()))
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Outcome of a single parameter draw.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TrialStatus {
    Pass,
    Fail,
    /// The draw (and every retry) hit the singularity floor.
    RejectedSingular,
}

/// One verified draw: the resolved parameter point (double-precision view),
/// the residual, and the largest term magnitude of the left side.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub params: BTreeMap<&'static str, (f64, f64)>,
    pub residual: f64,
    pub max_term: f64,
    pub status: TrialStatus,
}

/// Aggregate outcome of a randomized run.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub identity: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub tier: Tier,
    pub tolerance: f64,
    /// Largest residual over evaluated (non-rejected) trials.
    pub max_residual: f64,
    pub failures: Vec<TrialRecord>,
    pub pass: bool,
    pub elapsed_ms: u64,
}

/// Whether an evaluation error marks a singular draw (to be resampled)
/// rather than an engine failure. Callers driving their own sampling
/// loops should retry on these and propagate everything else.
pub fn is_rejection(e: &EvalError) -> bool {
    matches!(
        e,
        EvalError::SingularDenominator { .. }
            | EvalError::ZeroThetaArgument
            | EvalError::ZeroSeriesParam
    )
}

pub(crate) fn record_params<R: Real>(prm: &Params<R>) -> BTreeMap<&'static str, (f64, f64)> {
    let mut out: BTreeMap<&'static str, (f64, f64)> = prm
        .c
        .iter()
        .map(|(&k, v)| (k, (v.re.to_f64(), v.im.to_f64())))
        .collect();
    for (&k, &v) in &prm.i {
        out.insert(k, (v as f64, 0.0));
    }
    out
}

fn run_trial<R: Real>(
    fns: &TierFns<R>,
    zero_rhs: Option<ZeroRhsFn>,
    free: &Params<f64>,
    ctx: &PrecisionContext,
    floor: f64,
) -> Result<TrialRecord> {
    let mut prm = lift::<R>(free);
    (fns.resolve)(&mut prm);
    let params = record_params(&prm);

    let rejected = |params| TrialRecord {
        params,
        residual: f64::INFINITY,
        max_term: 0.0,
        status: TrialStatus::RejectedSingular,
    };

    let lhs = match (fns.lhs)(&prm, floor, ctx) {
        Ok(v) => v,
        Err(e) if is_rejection(&e) => return Ok(rejected(params)),
        Err(e) => return Err(e),
    };

    let zero = zero_rhs.is_some_and(|f| f(&prm.i));
    let (residual, bar) = if zero {
        (lhs.value.norm().to_f64() / lhs.max_term.max(1e-300), ctx.zero_rhs_bar())
    } else {
        let rhs = match (fns.rhs)(&prm, floor, ctx) {
            Ok(v) => v,
            Err(e) if is_rejection(&e) => return Ok(rejected(params)),
            Err(e) => return Err(e),
        };
        // The residual of a correct identity is bounded by roughly
        // (per-term op count) x (unit roundoff) x (largest term / sum):
        // when that bound exceeds the tolerance, the draw cannot be
        // decided at this precision and is rejected. The headroom bounds
        // the measured per-term op count (a few hundred) with margin.
        const COND_HEADROOM: f64 = 1024.0;
        let scale = lhs.value.norm().to_f64().max(rhs.value.norm().to_f64());
        let kappa = lhs.max_term.max(rhs.max_term) / scale.max(1e-300);
        if kappa.is_finite() && kappa * COND_HEADROOM * ctx.unit_roundoff() > ctx.rel_tolerance {
            return Ok(rejected(params));
        }
        (rel_residual(lhs.value, rhs.value), ctx.rel_tolerance)
    };

    let status = if residual.is_finite() && residual <= bar {
        TrialStatus::Pass
    } else {
        TrialStatus::Fail
    };
    Ok(TrialRecord { params, residual, max_term: lhs.max_term, status })
}

fn run_trial_at_tier(
    def: &IdentityDef,
    free: &Params<f64>,
    ctx: &PrecisionContext,
    floor: f64,
) -> Result<TrialRecord> {
    match ctx.tier {
        Tier::Double => run_trial(&def.dbl, def.zero_rhs, free, ctx, floor),
        Tier::DoubleDouble => run_trial(&def.dd, def.zero_rhs, free, ctx, floor),
    }
}

/// Verifies one explicit parameter point.
///
/// `free` must provide every schema parameter; derived parameters are
/// resolved internally and included in the returned record.
pub fn verify_once(
    name: &str,
    free: &Params<f64>,
    ctx: &PrecisionContext,
    cfg: &SamplerConfig,
) -> Result<TrialRecord> {
    let def = lookup(name)?;
    for spec in def.schema {
        let present = match spec.role {
            Role::IntN | Role::IntRange { .. } => free.i.contains_key(spec.name),
            _ => free.c.contains_key(spec.name),
        };
        if !present {
            return Err(EvalError::InvalidSeries(format!(
                "missing free parameter `{}` for identity `{}`",
                spec.name, name
            )));
        }
    }
    run_trial_at_tier(def, free, ctx, cfg.singularity_floor)
}

/// Runs `trials` seeded draws of `name` in parallel.
///
/// Each trial's random stream is derived from `master_seed` and the trial
/// index alone; singular draws are resampled from the same stream up to the
/// sampler's retry budget, and a trial that exhausts it is recorded as
/// rejected (which fails the run, since it indicates a structurally
/// singular identity or a misconfigured sampler).
pub fn verify_many(
    name: &str,
    trials: usize,
    master_seed: u64,
    n_max: i64,
    ctx: &PrecisionContext,
    cfg: &SamplerConfig,
) -> Result<VerificationReport> {
    let def = lookup(name)?;
    let started = Instant::now();

    let mut cfg = *cfg;
    if let Some(q) = def.q_magnitude {
        cfg.q_magnitude = q;
    }
    let cfg = &cfg;

    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|idx| {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(master_seed, idx as u64));
            let mut last = None;
            for _ in 0..=cfg.max_retries {
                let free = sample_schema(def.schema, &mut rng, cfg, n_max);
                let rec = run_trial_at_tier(def, &free, ctx, cfg.singularity_floor)?;
                if rec.status != TrialStatus::RejectedSingular {
                    return Ok(rec);
                }
                last = Some(rec);
            }
            Ok(last.expect("max_retries is finite"))
        })
        .collect::<Result<_>>()?;

    let max_residual = records
        .iter()
        .filter(|r| r.status != TrialStatus::RejectedSingular)
        .map(|r| r.residual)
        .fold(0.0_f64, f64::max);
    let failures: Vec<TrialRecord> =
        records.into_iter().filter(|r| r.status != TrialStatus::Pass).collect();
    let pass = failures.is_empty();

    Ok(VerificationReport {
        identity: def.name,
        seed: master_seed,
        trials,
        tier: ctx.tier,
        tolerance: ctx.rel_tolerance,
        max_residual,
        failures,
        pass,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}
