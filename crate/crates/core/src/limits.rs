//! Degeneration checks: as the nome shrinks to zero, each elliptic
//! identity's left side must converge — at first order in `p` — to the
//! left side of a named basic (`p = 0`) identity in the registry.
//!
//! The protocol isolates the degeneration itself: the basic side is
//! evaluated once at `p = 0` (its correctness is established separately by
//! the registry suites), then the elliptic side is evaluated along a
//! decreasing sequence of nomes and the error against the basic value must
//! shrink consistently with linear decay. A noise floor proportional to
//! the working tier's tolerance and to the magnitude of the basic value
//! keeps draws whose error has already reached arithmetic noise from
//! failing the decay test spuriously.
//!
//! Because the probe nomes are fixed, sampled draws must keep the series
//! inside the first-order regime at the largest probed nome: a theta
//! factor `θ(x; p)` deviates from its `p = 0` value by a leading term of
//! order `p·max(|x|, 1/|x|)`, and terminating columns push ladder
//! arguments to magnitudes like `|q|^{-2n}`, so for small `|q|` or large
//! `n` the decay onset lies beyond the probed sequence (not beyond the
//! mathematics). A draw is admissible when every theta argument of the
//! resolved left side keeps that leading correction below
//! `1/REGIME_MARGIN` at the first probed nome; the rest are resampled.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::identities::{
    is_rejection, lift, lookup, ps, record_params, sample_schema, IdentityDef, ParamSpec, Params,
    Role,
};
use crate::numerics::{sub_seed, Cx, Dd, PrecisionContext, Real, SamplerConfig, Tier};
use crate::series::{EvalOut, MixedSeriesSpec};

/// How an elliptic identity degenerates onto a basic one.
#[derive(Clone, Copy, Debug)]
pub struct DegenerationPair {
    /// Registry name of the elliptic identity.
    pub elliptic: &'static str,
    /// Registry name of its `p = 0` counterpart.
    pub basic: &'static str,
    /// Extra parameters the elliptic side needs beyond the basic schema
    /// (sampled alongside it; they vanish from the limit).
    pub aux: &'static [ParamSpec],
    /// Decreasing nome magnitudes to probe.
    pub p_sequence: &'static [f64],
    /// Lifts a draw for the basic identity (plus `aux`) to elliptic
    /// parameters at the given nome.
    pub parameter_link: fn(&Params<f64>, f64) -> Params<f64>,
}

/// Error sequence along `p_sequence` for one parameter draw.
#[derive(Clone, Debug)]
pub struct DegenerationReport {
    /// `|elliptic LHS(p) − basic LHS|` per probed nome (0 when `p = 0`,
    /// where the two sides coincide by construction).
    pub errors: Vec<f64>,
    /// Whether every step shrank by the linear-decay factor or sat below
    /// the noise floor.
    pub order_ok: bool,
}

/// One sampled draw in a pair run.
#[derive(Clone, Debug)]
pub struct DrawRecord {
    pub params: BTreeMap<&'static str, (f64, f64)>,
    pub errors: Vec<f64>,
    pub order_ok: bool,
}

/// Aggregate of a multi-draw degeneration run for one pair.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub elliptic: &'static str,
    pub basic: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub tier: Tier,
    pub draws: Vec<DrawRecord>,
    pub all_ok: bool,
    pub elapsed_ms: u64,
}

const DEFAULT_P_SEQUENCE: &[f64] = &[1e-2, 1e-3];

/// Decay factor errors must beat per decade of `p` (0.1 expected for
/// clean linear decay; 0.2 leaves headroom for the unknown constant).
const DECAY_FACTOR: f64 = 0.2;

/// Regime gate: every theta factor's leading `p`-correction
/// `|p|·max(|x|, 1/|x|)` must stay below the reciprocal of this margin at
/// the first probed nome for a draw to be admissible.
const REGIME_MARGIN: f64 = 20.0;

/// Largest leading correction `|p_g|·max(|x|, 1/|x|)` over all theta
/// arguments the left-side spec evaluates: group ladders `a·q_g^j` for
/// `j = 0..n-1` (extremes at the ends since `|q_g| < 1`) and the
/// very-well-poised ladder `a₁·q̃^{2k}` for `k = 0..n`.
fn spec_exposure(spec: &MixedSeriesSpec<f64>) -> f64 {
    let lead = |x: f64, p: f64| p * x.max(1.0 / x);
    let mut worst = 0.0_f64;
    if let Some((a1, vb)) = spec.vwp_ratio {
        let qq = vb.q.norm() * vb.q.norm();
        let (a, p) = (a1.norm(), vb.p.norm());
        worst = worst.max(lead(a, p)).max(lead(a * qq.powi(spec.n as i32), p));
    }
    if spec.n > 0 {
        for g in &spec.groups {
            let (q, p) = (g.base.q.norm(), g.base.p.norm());
            for a in &g.params {
                let a = a.norm();
                worst = worst
                    .max(lead(a, p))
                    .max(lead(a * q.powi(spec.n as i32 - 1), p));
            }
        }
    }
    worst
}

/// Whether the draw keeps the whole probe sequence inside the
/// first-order-in-`p` regime (see module docs).
fn in_regime(free: &Params<f64>, pair: &DegenerationPair, edef: &IdentityDef) -> bool {
    let p_first = pair.p_sequence.iter().copied().find(|&p| p > 0.0);
    let Some(p_first) = p_first else { return true };
    let Some(lhs_spec) = edef.dbl.lhs_spec else { return true };
    let mut prm = lift::<f64>(&(pair.parameter_link)(free, p_first));
    (edef.dbl.resolve)(&mut prm);
    spec_exposure(&lhs_spec(&prm)) <= 1.0 / REGIME_MARGIN
}

const AUX_A: &[ParamSpec] = &[ps("a", Role::Annulus)];

fn link_nome(free: &Params<f64>, pv: f64) -> Params<f64> {
    let mut out = free.clone();
    out.set("p", Cx::from_f64(pv, 0.0));
    out
}

fn link_root_nome(free: &Params<f64>, pv: f64) -> Params<f64> {
    let mut out = free.clone();
    out.set("rho", Cx::from_f64(pv.sqrt(), 0.0));
    out
}

/// The nine degeneration pairs, in registry order of the elliptic side.
pub fn list_pairs() -> Vec<DegenerationPair> {
    let plain = |elliptic, basic| DegenerationPair {
        elliptic,
        basic,
        aux: &[],
        p_sequence: DEFAULT_P_SEQUENCE,
        parameter_link: link_nome,
    };
    vec![
        plain("biba", "biba_p0"),
        plain("new1_12V11", "watson_8phi7"),
        plain("new2_12V11", "new2_p0_8W7"),
        plain("new3_shifted", "andrews_q_whipple"),
        plain("linp", "bw_4phi3"),
        plain("linp2", "andrews_q_watson"),
        DegenerationPair {
            aux: AUX_A,
            ..plain("schlosser_10V9", "q_pfaff_saalschutz")
        },
        plain("spiridonov_14V13", "nr414_transform"),
        DegenerationPair {
            parameter_link: link_root_nome,
            ..plain("warnaar_14V13", "rv78_transform")
        },
    ]
}

fn lhs_at<R: Real>(
    def: &IdentityDef,
    tier: fn(&IdentityDef) -> &crate::identities::TierFns<R>,
    free: &Params<f64>,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<EvalOut<R>> {
    let fns = tier(def);
    let mut prm = lift::<R>(free);
    (fns.resolve)(&mut prm);
    (fns.lhs)(&prm, floor, ctx)
}

fn run_pair<R: Real>(
    pair: &DegenerationPair,
    tier: fn(&IdentityDef) -> &crate::identities::TierFns<R>,
    free: &Params<f64>,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<DegenerationReport> {
    let basic = lhs_at(lookup(pair.basic)?, tier, free, floor, ctx)?;
    let edef = lookup(pair.elliptic)?;
    let scale = basic
        .value
        .norm()
        .to_f64()
        .max(basic.max_term)
        .max(1e-300);
    let noise = ctx.rel_tolerance * 100.0 * scale;
    let mut errors = Vec::with_capacity(pair.p_sequence.len());
    for &pv in pair.p_sequence {
        if pv == 0.0 {
            // At p = 0 the elliptic series IS the basic one.
            errors.push(0.0);
            continue;
        }
        let ell = lhs_at(edef, tier, &(pair.parameter_link)(free, pv), floor, ctx)?;
        errors.push((ell.value - basic.value).norm().to_f64());
    }
    let mut order_ok = errors.iter().all(|e| e.is_finite());
    for w in errors.windows(2) {
        if !(w[1] <= (DECAY_FACTOR * w[0]).max(noise)) {
            order_ok = false;
        }
    }
    Ok(DegenerationReport { errors, order_ok })
}

/// Evaluates one draw of a degeneration pair at the context's tier.
/// Singular draws surface as errors for the caller to resample.
pub fn check_degeneration(
    pair: &DegenerationPair,
    free: &Params<f64>,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<DegenerationReport> {
    match ctx.tier {
        Tier::DoubleDouble => run_pair::<Dd>(pair, |d| &d.dd, free, floor, ctx),
        Tier::Double => run_pair::<f64>(pair, |d| &d.dbl, free, floor, ctx),
    }
}

/// Runs `trials` sub-seeded draws of one pair, resampling singular draws.
pub fn verify_pair(
    pair: &DegenerationPair,
    trials: usize,
    master_seed: u64,
    n_max: i64,
    ctx: &PrecisionContext,
    cfg: &SamplerConfig,
) -> Result<PairReport> {
    let started = Instant::now();
    let bdef = lookup(pair.basic)?;
    let edef = lookup(pair.elliptic)?;
    let mut draws = Vec::with_capacity(trials);
    for idx in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(master_seed, idx as u64));
        let mut last: Option<DrawRecord> = None;
        for _ in 0..=cfg.max_retries {
            let mut free = sample_schema(bdef.schema, &mut rng, cfg, n_max);
            let aux = sample_schema(pair.aux, &mut rng, cfg, n_max);
            free.c.extend(aux.c);
            free.i.extend(aux.i);
            if !in_regime(&free, pair, edef) {
                last = last.or(Some(DrawRecord {
                    params: record_params(&free),
                    errors: Vec::new(),
                    order_ok: false,
                }));
                continue;
            }
            match check_degeneration(pair, &free, cfg.singularity_floor, ctx) {
                Ok(rep) => {
                    last = Some(DrawRecord {
                        params: record_params(&free),
                        errors: rep.errors,
                        order_ok: rep.order_ok,
                    });
                    break;
                }
                Err(e) if is_rejection(&e) => {
                    last = Some(DrawRecord {
                        params: record_params(&free),
                        errors: Vec::new(),
                        order_ok: false,
                    });
                    continue;
                }
                Err(e) => return Err(e),
            }
        }
        draws.push(last.expect("at least one attempt recorded"));
    }
    let all_ok = draws.iter().all(|d| d.order_ok);
    Ok(PairReport {
        elliptic: pair.elliptic,
        basic: pair.basic,
        seed: master_seed,
        trials,
        tier: ctx.tier,
        draws,
        all_ok,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}
