//! Terminating hypergeometric series over one or several theta bases.
//!
//! The workhorse is [`eval_mixed`]: a sum `Σ_{k=0}^n t_k` whose term ratio
//! is assembled from *factor groups*. A group contributes the factorials
//! `(a; q, p)_k` of its parameters — each group with its own base pair — to
//! the numerator or denominator of `t_k`, and the spec may add a
//! very-well-poised ratio `θ(a₁ q̃^{2k}; p̃)/θ(a₁; p̃)` and a geometric factor
//! `z^k`:
//!
//! ```text
//!       θ(a₁ q̃^{2k}; p̃)        ∏_{num} (a; q_g, p_g)_k
//! t_k = ---------------- · z^k ------------------------ .
//!       θ(a₁; p̃)               ∏_{den} (a; q_g, p_g)_k
//! ```
//!
//! Terms are updated incrementally — one theta factor per parameter per
//! step — and the running ratio is carried in scaled form ([`Scaled`]): the
//! factor chains feeding a term routinely pass through magnitudes far
//! outside the `f64` range even when every term of the sum is moderate.
//!
//! On top of the engine sit three families in conventional parametrization:
//!
//! * [`eval_v`] — terminating very-well-poised elliptic series
//!   `ᵣ₊₁Vᵣ(a₁; a₆, …, a_{r+1}; q, p)` (validated for balancing and
//!   termination by [`validate_v`]);
//! * [`eval_phi`] — terminating basic series `ᵣφₛ` with the standard
//!   `[(−1)^k q^(k(k−1)/2)]^{1+s−r}` correction;
//! * [`eval_w`] — terminating very-well-poised basic series with a free
//!   argument `z`.

use crate::error::{EvalError, Result};
use crate::numerics::{rel_residual, Cx, PrecisionContext, Real, Scaled};
use crate::theta::{theta_scaled, EllipticBase};

/// Whether a factor group multiplies or divides the term.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Position {
    Numerator,
    Denominator,
}

/// A block of shifted factorials sharing one base pair.
/// Invariant: all parameters nonzero.
#[derive(Clone, Debug)]
pub struct FactorGroup<R> {
    pub params: Vec<Cx<R>>,
    pub base: EllipticBase<R>,
    pub position: Position,
}

impl<R: Real> FactorGroup<R> {
    pub fn numerator(params: Vec<Cx<R>>, base: EllipticBase<R>) -> Self {
        FactorGroup { params, base, position: Position::Numerator }
    }

    pub fn denominator(params: Vec<Cx<R>>, base: EllipticBase<R>) -> Self {
        FactorGroup { params, base, position: Position::Denominator }
    }
}

/// Declarative description of a terminating mixed-base sum.
#[derive(Clone, Debug)]
pub struct MixedSeriesSpec<R> {
    /// Optional very-well-poised ratio `θ(a₁ q̃^{2k}; p̃)/θ(a₁; p̃)`,
    /// given as `(a₁, (q̃, p̃))`.
    pub vwp_ratio: Option<(Cx<R>, EllipticBase<R>)>,
    pub groups: Vec<FactorGroup<R>>,
    /// Geometric factor `z^k`.
    pub z: Cx<R>,
    /// The sum runs over `k = 0..=n`.
    pub n: i64,
}

/// Series value together with the magnitude of its largest term, which is
/// the natural scale for judging residuals of sums that should vanish.
#[derive(Copy, Clone, Debug)]
pub struct EvalOut<R> {
    pub value: Cx<R>,
    pub max_term: f64,
}

/// Evaluates a [`MixedSeriesSpec`].
///
/// Every denominator theta factor must stay above `floor` in magnitude for
/// all terms `k = 0..=n`; the first violation reports the affected term
/// index. `floor = 0` rejects only exact zeros.
pub fn eval_mixed<R: Real>(
    spec: &MixedSeriesSpec<R>,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<EvalOut<R>> {
    if spec.n < 0 {
        return Err(EvalError::NegativeSeriesLength(spec.n));
    }
    for g in &spec.groups {
        if g.params.iter().any(|a| a.is_zero()) {
            return Err(EvalError::ZeroSeriesParam);
        }
    }
    if let Some((a1, _)) = spec.vwp_ratio {
        if a1.is_zero() {
            return Err(EvalError::ZeroSeriesParam);
        }
    }

    // Very-well-poised ratio state: the fixed 1/θ(a₁; p̃) and the running
    // argument a₁ q̃^{2k}.
    let vwp = match spec.vwp_ratio {
        Some((a1, vb)) => {
            let t = theta_scaled(a1, vb.p, ctx)?;
            if t.modulus_le(floor) {
                return Err(EvalError::SingularDenominator {
                    k: 0,
                    magnitude: t.to_cx().norm().to_f64(),
                });
            }
            Some((a1, vb.q * vb.q, vb.p, t.inv()))
        }
        None => None,
    };

    // Running factorial arguments a·q_g^k, one vector per group.
    let mut args: Vec<Vec<Cx<R>>> = spec.groups.iter().map(|g| g.params.clone()).collect();
    let mut vwp_arg = vwp.map(|(a1, ..)| a1);

    let mut core = Scaled::<R>::one(); // z^k · grouped factorial ratio at the current k
    let mut sum = Cx::<R>::zero();
    let mut max_term = 0.0_f64;

    for k in 0..=spec.n {
        // The k = 0 ratio is exactly 1; skipping the multiplication keeps
        // the empty-sum and first-term values exact.
        let full = if k == 0 {
            Cx::one()
        } else if let (Some((_, qq, pt, inv)), Some(arg)) = (vwp, vwp_arg.as_mut()) {
            *arg = *arg * qq;
            core.mul(theta_scaled(*arg, pt, ctx)?).mul(inv).to_cx()
        } else {
            core.to_cx()
        };
        sum = sum + full;
        max_term = max_term.max(full.norm().to_f64());

        if k == spec.n {
            break;
        }

        // Advance core from term k to term k + 1: one theta per parameter.
        for (g, arg_row) in spec.groups.iter().zip(args.iter_mut()) {
            for arg in arg_row.iter_mut() {
                let t = theta_scaled(*arg, g.base.p, ctx)?;
                match g.position {
                    Position::Numerator => core = core.mul(t),
                    Position::Denominator => {
                        if t.modulus_le(floor) {
                            return Err(EvalError::SingularDenominator {
                                k: (k + 1) as usize,
                                magnitude: t.to_cx().norm().to_f64(),
                            });
                        }
                        core = core.div(t);
                    }
                }
                *arg = *arg * g.base.q;
            }
        }
        core = core.mul_cx(spec.z);
    }

    Ok(EvalOut { value: sum, max_term })
}

/// Reference evaluator for cross-checking [`eval_mixed`]: every term is
/// rebuilt from scratch as the product of its step ratios — quadratic work,
/// no state carried between terms — so it shares none of the engine's
/// incremental bookkeeping (running arguments, carried term ratio, cached
/// inverse). The factor ordering inside each rebuild matches the engine's,
/// which keeps the comparison meaningful even for sums whose terms dwarf
/// their total.
pub fn eval_mixed_naive<R: Real>(
    spec: &MixedSeriesSpec<R>,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<EvalOut<R>> {
    if spec.n < 0 {
        return Err(EvalError::NegativeSeriesLength(spec.n));
    }
    for g in &spec.groups {
        if g.params.iter().any(|a| a.is_zero()) {
            return Err(EvalError::ZeroSeriesParam);
        }
    }
    if let Some((a1, _)) = spec.vwp_ratio {
        if a1.is_zero() {
            return Err(EvalError::ZeroSeriesParam);
        }
    }

    let vwp = match spec.vwp_ratio {
        Some((a1, vb)) => {
            let t = theta_scaled(a1, vb.p, ctx)?;
            if t.modulus_le(floor) {
                return Err(EvalError::SingularDenominator {
                    k: 0,
                    magnitude: t.to_cx().norm().to_f64(),
                });
            }
            Some((a1, vb.q * vb.q, vb.p, t.inv()))
        }
        None => None,
    };

    let mut sum = Cx::<R>::zero();
    let mut max_term = 0.0_f64;

    for k in 0..=spec.n {
        let full = if k == 0 {
            Cx::one()
        } else {
            let mut args: Vec<Vec<Cx<R>>> =
                spec.groups.iter().map(|g| g.params.clone()).collect();
            let mut core = Scaled::<R>::one();
            for j in 0..k {
                for (g, arg_row) in spec.groups.iter().zip(args.iter_mut()) {
                    for arg in arg_row.iter_mut() {
                        let t = theta_scaled(*arg, g.base.p, ctx)?;
                        match g.position {
                            Position::Numerator => core = core.mul(t),
                            Position::Denominator => {
                                if t.modulus_le(floor) {
                                    return Err(EvalError::SingularDenominator {
                                        k: (j + 1) as usize,
                                        magnitude: t.to_cx().norm().to_f64(),
                                    });
                                }
                                core = core.div(t);
                            }
                        }
                        *arg = *arg * g.base.q;
                    }
                }
                core = core.mul_cx(spec.z);
            }
            if let Some((a1, qq, pt, inv)) = vwp {
                let mut arg = a1;
                for _ in 0..k {
                    arg = arg * qq;
                }
                core.mul(theta_scaled(arg, pt, ctx)?).mul(inv).to_cx()
            } else {
                core.to_cx()
            }
        };
        sum = sum + full;
        max_term = max_term.max(full.norm().to_f64());
    }

    Ok(EvalOut { value: sum, max_term })
}

// ---------------------------------------------------------------------------
// Very-well-poised elliptic series
// ---------------------------------------------------------------------------

/// Terminating `ᵣ₊₁Vᵣ(a₁; a₆, …, a_{r+1}; q, p)` in the standard
/// parametrization: `upper` lists `a₆, …, a_{r+1}`, so `r = upper.len() + 4`.
#[derive(Clone, Debug)]
pub struct VSeriesSpec<R> {
    pub a1: Cx<R>,
    pub upper: Vec<Cx<R>>,
    pub base: EllipticBase<R>,
    pub n: i64,
}

/// Structural report for a [`VSeriesSpec`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VReport {
    /// Series order: `upper.len() + 4`.
    pub r: usize,
    /// Whether `a₆ ⋯ a_{r+1} · q = (a₁ q)^((r−5)/2)` within the context's
    /// relative tolerance (requires odd `r`).
    pub balanced: bool,
    /// Whether some upper parameter equals `q^{−n}` within tolerance.
    pub terminating: bool,
}

/// Checks order, balancing, and termination of a very-well-poised spec.
pub fn validate_v<R: Real>(spec: &VSeriesSpec<R>, ctx: &PrecisionContext) -> VReport {
    let r = spec.upper.len() + 4;
    let tol = ctx.rel_tolerance;

    let balanced = if r % 2 == 1 {
        let mut prod = spec.base.q;
        for &u in &spec.upper {
            prod = prod * u;
        }
        let target = (spec.a1 * spec.base.q).powi(((r - 5) / 2) as i64);
        rel_residual(prod, target) <= tol
    } else {
        false
    };

    let q_neg_n = spec.base.q.powi(-spec.n);
    let terminating = spec.upper.iter().any(|&u| rel_residual(u, q_neg_n) <= tol);

    VReport { r, balanced, terminating }
}

/// Evaluates a terminating very-well-poised elliptic series.
///
/// The spec must validate as balanced and terminating; the sum is then
///
/// ```text
///  n   θ(a₁ q^{2k}; p)   (a₁, a₆, …, a_{r+1}; q, p)_k
///  Σ   --------------- · ----------------------------------- · q^k .
/// k=0  θ(a₁; p)          (q, a₁q/a₆, …, a₁q/a_{r+1}; q, p)_k
/// ```
pub fn eval_v<R: Real>(
    spec: &VSeriesSpec<R>,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<EvalOut<R>> {
    if spec.n < 0 {
        return Err(EvalError::NegativeSeriesLength(spec.n));
    }
    if spec.a1.is_zero() || spec.upper.iter().any(|u| u.is_zero()) {
        return Err(EvalError::ZeroSeriesParam);
    }
    let report = validate_v(spec, ctx);
    if !report.terminating {
        return Err(EvalError::InvalidSeries(
            "no upper parameter equals q^-n: series does not terminate".into(),
        ));
    }
    if !report.balanced {
        return Err(EvalError::InvalidSeries(
            "balancing condition violated: a6...a_{r+1} q != (a1 q)^((r-5)/2)".into(),
        ));
    }
    eval_mixed(&v_to_mixed(spec), floor, ctx)
}

/// Translates a very-well-poised spec into engine form.
pub fn v_to_mixed<R: Real>(spec: &VSeriesSpec<R>) -> MixedSeriesSpec<R> {
    let aq = spec.a1 * spec.base.q;
    let mut num = Vec::with_capacity(spec.upper.len() + 1);
    let mut den = Vec::with_capacity(spec.upper.len() + 1);
    num.push(spec.a1);
    den.push(spec.base.q);
    for &u in &spec.upper {
        num.push(u);
        den.push(aq / u);
    }
    MixedSeriesSpec {
        vwp_ratio: Some((spec.a1, spec.base)),
        groups: vec![
            FactorGroup::numerator(num, spec.base),
            FactorGroup::denominator(den, spec.base),
        ],
        z: spec.base.q,
        n: spec.n,
    }
}

// ---------------------------------------------------------------------------
// Basic series
// ---------------------------------------------------------------------------

/// Terminating basic hypergeometric series
///
/// ```text
///                       n   (u₁, …, u_r; q)_k
/// ᵣφₛ(u; l; q, z)_n  =  Σ   ------------------- [(−1)^k q^(k(k−1)/2)]^(1+s−r) z^k ,
///                      k=0  (q, l₁, …, l_s; q)_k
/// ```
///
/// summed over exactly `n + 1` terms. Denominator factors are floor-checked
/// as in [`eval_mixed`].
pub fn eval_phi<R: Real>(
    upper: &[Cx<R>],
    lower: &[Cx<R>],
    q: Cx<R>,
    z: Cx<R>,
    n: i64,
    floor: f64,
    _ctx: &PrecisionContext,
) -> Result<EvalOut<R>> {
    if n < 0 {
        return Err(EvalError::NegativeSeriesLength(n));
    }
    if upper.iter().chain(lower).any(|a| a.is_zero()) {
        return Err(EvalError::ZeroSeriesParam);
    }
    let correction = 1 + lower.len() as i64 - upper.len() as i64;
    let one = Cx::<R>::one();

    let mut u_args = upper.to_vec();
    let mut l_args = lower.to_vec();
    let mut q_pow = one; // q^k
    let mut core = one;
    let mut sum = one; // k = 0 term
    let mut max_term = 1.0_f64;

    for k in 0..n {
        core = core * z;
        for u in u_args.iter_mut() {
            core = core * (one - *u);
            *u = *u * q;
        }
        let qk1 = one - q_pow * q; // 1 − q^{k+1}
        let m = qk1.norm().to_f64();
        if m <= floor {
            return Err(EvalError::SingularDenominator { k: (k + 1) as usize, magnitude: m });
        }
        core = core / qk1;
        for l in l_args.iter_mut() {
            let f = one - *l;
            let m = f.norm().to_f64();
            if m <= floor {
                return Err(EvalError::SingularDenominator {
                    k: (k + 1) as usize,
                    magnitude: m,
                });
            }
            core = core / f;
            *l = *l * q;
        }
        if correction != 0 {
            core = core * (-q_pow).powi(correction);
        }
        q_pow = q_pow * q;
        sum = sum + core;
        max_term = max_term.max(core.norm().to_f64());
    }

    Ok(EvalOut { value: sum, max_term })
}

/// Terminating very-well-poised basic series with free argument `z`:
///
/// ```text
///  n   1 − a₁ q^{2k}   (a₁, b₁, …, b_m; q)_k
///  Σ   ------------- · ------------------------------- · z^k .
/// k=0  1 − a₁          (q, a₁q/b₁, …, a₁q/b_m; q)_k
/// ```
pub fn eval_w<R: Real>(
    a1: Cx<R>,
    params: &[Cx<R>],
    q: Cx<R>,
    z: Cx<R>,
    n: i64,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<EvalOut<R>> {
    if a1.is_zero() || params.iter().any(|a| a.is_zero()) {
        return Err(EvalError::ZeroSeriesParam);
    }
    eval_mixed(&w_to_mixed(a1, params, q, z, n), floor, ctx)
}

/// Translates a very-well-poised basic series into engine form.
pub fn w_to_mixed<R: Real>(
    a1: Cx<R>,
    params: &[Cx<R>],
    q: Cx<R>,
    z: Cx<R>,
    n: i64,
) -> MixedSeriesSpec<R> {
    let base = EllipticBase::new(q, Cx::zero());
    let aq = a1 * q;
    let mut num = Vec::with_capacity(params.len() + 1);
    let mut den = Vec::with_capacity(params.len() + 1);
    num.push(a1);
    den.push(q);
    for &b in params {
        num.push(b);
        den.push(aq / b);
    }
    MixedSeriesSpec {
        vwp_ratio: Some((a1, base)),
        groups: vec![FactorGroup::numerator(num, base), FactorGroup::denominator(den, base)],
        z,
        n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Dd;
    use crate::theta::{poch, poch_multi};

    fn ctx_dd() -> PrecisionContext {
        PrecisionContext::double_double()
    }

    /// Reference evaluator: every factorial rebuilt from scratch per term.
    fn naive_mixed(spec: &MixedSeriesSpec<Dd>, ctx: &PrecisionContext) -> Cx<Dd> {
        let mut sum = Cx::<Dd>::zero();
        for k in 0..=spec.n {
            let mut term = spec.z.powi(k);
            if let Some((a1, vb)) = spec.vwp_ratio {
                let arg = a1 * vb.q.powi(2 * k);
                term = term * theta(arg, vb.p, ctx).unwrap()
                    / theta(a1, vb.p, ctx).unwrap();
            }
            for g in &spec.groups {
                let f = poch_multi(&g.params, &g.base, k, ctx).unwrap();
                term = match g.position {
                    Position::Numerator => term * f,
                    Position::Denominator => term / f,
                };
            }
            sum = sum + term;
        }
        sum
    }

    fn sample_spec(n: i64) -> MixedSeriesSpec<Dd> {
        let q = Cx::from_f64(0.45, 0.2);
        let p = Cx::from_f64(0.1, -0.3);
        let b1 = EllipticBase::new(q, p);
        let b2 = EllipticBase::new(q * q, p * p);
        MixedSeriesSpec {
            vwp_ratio: Some((Cx::from_f64(0.8, 0.5), b2)),
            groups: vec![
                FactorGroup::numerator(
                    vec![Cx::from_f64(0.8, 0.5), Cx::from_f64(-0.6, 0.9)],
                    b2,
                ),
                FactorGroup::denominator(
                    vec![Cx::from_f64(1.2, -0.4), Cx::from_f64(0.9, 1.0)],
                    b2,
                ),
                FactorGroup::numerator(vec![Cx::from_f64(-1.1, 0.25)], b1),
                FactorGroup::denominator(vec![Cx::from_f64(0.55, -0.8)], b1),
            ],
            z: q * q,
            n,
        }
    }

    #[test]
    fn empty_sum_is_exactly_one() {
        let out = eval_mixed(&sample_spec(0), 1e-5, &ctx_dd()).unwrap();
        assert_eq!(out.value, Cx::one());
        assert_eq!(out.max_term, 1.0);
    }

    #[test]
    fn incremental_terms_match_naive_reference() {
        let ctx = ctx_dd();
        let spec = sample_spec(9);
        let fast = eval_mixed(&spec, 1e-5, &ctx).unwrap();
        let slow = naive_mixed(&spec, &ctx);
        assert!(rel_residual(fast.value, slow) < 1e-28);
        assert!(fast.max_term >= 1.0);
    }

    #[test]
    fn quadratic_rebuild_oracle_matches_engine_and_reference() {
        let ctx = ctx_dd();
        let spec = sample_spec(9);
        let fast = eval_mixed(&spec, 1e-5, &ctx).unwrap();
        let slow = eval_mixed_naive(&spec, 1e-5, &ctx).unwrap();
        let reference = naive_mixed(&spec, &ctx);
        assert!(rel_residual(fast.value, slow.value) < 1e-30);
        assert!(rel_residual(slow.value, reference) < 1e-28);
        assert!((fast.max_term - slow.max_term).abs() <= 1e-12 * fast.max_term);
    }

    #[test]
    fn singular_denominator_reports_first_affected_term() {
        let ctx = ctx_dd();
        let q = Cx::<Dd>::from_f64(0.5, 0.0);
        let p = Cx::<Dd>::from_f64(0.25, 0.0);
        let base = EllipticBase::new(q, p);
        // Denominator parameter p/q reaches θ(p; p) = 0 inside term 2.
        let spec = MixedSeriesSpec {
            vwp_ratio: None,
            groups: vec![
                FactorGroup::numerator(vec![Cx::from_f64(0.7, 0.1)], base),
                FactorGroup::denominator(vec![p / q], base),
            ],
            z: q,
            n: 5,
        };
        match eval_mixed(&spec, 1e-5, &ctx) {
            Err(EvalError::SingularDenominator { k: 2, magnitude }) => {
                assert_eq!(magnitude, 0.0)
            }
            other => panic!("expected singular denominator at term 2, got {other:?}"),
        }
    }

    #[test]
    fn zero_parameters_are_rejected() {
        let ctx = ctx_dd();
        let base = EllipticBase::new(Cx::<f64>::from_f64(0.5, 0.0), Cx::zero());
        let spec = MixedSeriesSpec {
            vwp_ratio: None,
            groups: vec![FactorGroup::numerator(vec![Cx::zero()], base)],
            z: Cx::one(),
            n: 1,
        };
        assert!(matches!(eval_mixed(&spec, 0.0, &ctx), Err(EvalError::ZeroSeriesParam)));
        assert!(matches!(
            eval_mixed(
                &MixedSeriesSpec { n: -1, ..spec.clone() },
                0.0,
                &ctx
            ),
            Err(EvalError::NegativeSeriesLength(-1))
        ));
    }

    fn terminating_vspec(n: i64) -> VSeriesSpec<Dd> {
        // Order-9 very-well-poised spec with the balancing parameter solved
        // for: e = a²q^{n+1}/(bcd).
        let a = Cx::from_f64(0.9, 0.3);
        let b = Cx::from_f64(0.7, -0.5);
        let c = Cx::from_f64(-1.1, 0.2);
        let d = Cx::from_f64(0.4, 0.8);
        let q = Cx::from_f64(0.5, 0.25);
        let p = Cx::from_f64(0.2, -0.15);
        let e = a * a * q.powi(n + 1) / (b * c * d);
        VSeriesSpec {
            a1: a,
            upper: vec![b, c, d, e, q.powi(-n)],
            base: EllipticBase::new(q, p),
            n,
        }
    }

    #[test]
    fn validate_v_classifies_order_balance_termination() {
        let ctx = ctx_dd();
        let spec = terminating_vspec(4);
        let rep = validate_v(&spec, &ctx);
        assert_eq!(rep, VReport { r: 9, balanced: true, terminating: true });

        let mut broken = terminating_vspec(4);
        broken.upper[0] = broken.upper[0] * Cx::from_f64(1.01, 0.0);
        assert!(!validate_v(&broken, &ctx).balanced);

        let mut nonterm = terminating_vspec(4);
        nonterm.n = 5;
        assert!(!validate_v(&nonterm, &ctx).terminating);
        assert!(matches!(
            eval_v(&nonterm, 0.0, &ctx),
            Err(EvalError::InvalidSeries(_))
        ));
    }

    #[test]
    fn eval_v_matches_direct_engine_run() {
        let ctx = ctx_dd();
        let spec = terminating_vspec(5);
        let via_v = eval_v(&spec, 1e-5, &ctx).unwrap();
        let direct = eval_mixed(&v_to_mixed(&spec), 1e-5, &ctx).unwrap();
        assert_eq!(via_v.value, direct.value);
    }

    #[test]
    fn eval_v_at_zero_nome_matches_eval_w_at_z_q() {
        let ctx = ctx_dd();
        let mut spec = terminating_vspec(6);
        spec.base.p = Cx::zero();
        let v = eval_v(&spec, 1e-6, &ctx).unwrap();
        let w = eval_w(spec.a1, &spec.upper, spec.base.q, spec.base.q, spec.n, 1e-6, &ctx)
            .unwrap();
        assert!(rel_residual(v.value, w.value) < 1e-30);
    }

    #[test]
    fn eval_phi_matches_factorial_reference() {
        let ctx = ctx_dd();
        let q = Cx::<Dd>::from_f64(0.4, 0.3);
        let z = Cx::<Dd>::from_f64(0.9, -0.2);
        let upper = [Cx::from_f64(0.8, 0.1), Cx::from_f64(-0.7, 0.6), q.powi(-7)];
        let lower = [Cx::from_f64(1.3, 0.5)];
        // 3 upper, 1 lower: correction exponent is −1.
        let out = eval_phi(&upper, &lower, q, z, 7, 1e-6, &ctx).unwrap();
        let base = EllipticBase::new(q, Cx::zero());
        let mut sum = Cx::<Dd>::zero();
        for k in 0..=7 {
            let mut t = poch_multi(&upper, &base, k, &ctx).unwrap()
                / poch(q, &base, k, &ctx).unwrap()
                / poch_multi(&lower, &base, k, &ctx).unwrap()
                * z.powi(k);
            let corr = (-Cx::<Dd>::one()).powi(k) * q.powi(k * (k - 1) / 2);
            t = t / corr;
            sum = sum + t;
        }
        assert!(rel_residual(out.value, sum) < 1e-28);
    }

    #[test]
    fn eval_phi_with_zero_correction_matches_plain_ratio() {
        let ctx = ctx_dd();
        let q = Cx::<Dd>::from_f64(0.35, -0.25);
        let z = Cx::<Dd>::from_f64(0.6, 0.4);
        let upper = [Cx::from_f64(0.9, 0.2), q.powi(-5)];
        let lower = [Cx::from_f64(-0.8, 0.45)];
        let out = eval_phi(&upper, &lower, q, z, 5, 1e-6, &ctx).unwrap();
        let base = EllipticBase::new(q, Cx::zero());
        let spec = MixedSeriesSpec {
            vwp_ratio: None,
            groups: vec![
                FactorGroup::numerator(upper.to_vec(), base),
                FactorGroup::denominator(vec![q, lower[0]], base),
            ],
            z,
            n: 5,
        };
        let direct = eval_mixed(&spec, 1e-6, &ctx).unwrap();
        assert!(rel_residual(out.value, direct.value) < 1e-30);
    }
}
