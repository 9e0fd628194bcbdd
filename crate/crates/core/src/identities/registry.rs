//! The identity registry: summations, transformations, and factorial
//! lemmas, each with schema, constraint resolution, and honest evaluators
//! for both sides at both precision tiers.
//!
//! Conventions shared by all entries:
//!
//! * `q` is a base, `p` a nome, `n` the series length; other letters are
//!   generic complex parameters. Parameters written as squares elsewhere
//!   (`b = β²`, `p = ρ²`, …) are sampled at root level so no complex square
//!   root is ever taken.
//! * Constraint-resolved parameters (balancing solutions and the like) are
//!   derived in the working tier from exactly widened draws, so both tiers
//!   resolve bit-compatible points.
//! * Every denominator theta factor — inside series and in closed-form
//!   prefactors alike — is guarded by the singularity floor. Right-hand
//!   sides of transformations evaluate their own series; nothing is shared
//!   with the left side.

use std::collections::BTreeMap;

use super::{ps, IdentityDef, IdentityKind, ParamSpec, Params, Role, TierFns};
use crate::error::Result;
use crate::numerics::{Cx, Dd, PrecisionContext, Real, Scaled};
use crate::series::{
    eval_mixed, eval_phi, eval_v, eval_w, v_to_mixed, w_to_mixed, EvalOut, FactorGroup,
    MixedSeriesSpec, VSeriesSpec,
};
use crate::theta::{
    poch, poch_checked, poch_multi, poch_multi_checked, poch_multi_scaled,
    poch_multi_scaled_checked, poch_scaled, poch_scaled_checked, theta, theta_checked,
    theta_scaled, theta_scaled_checked, EllipticBase,
};

fn out<R: Real>(value: Cx<R>) -> Result<EvalOut<R>> {
    Ok(EvalOut { value, max_term: value.norm().to_f64() })
}

/// Closed-form prefactor times an inner series: the reported term magnitude
/// is the inner one rescaled by the prefactor, so the cancellation hidden
/// inside the series stays visible to conditioning checks.
fn out_series<R: Real>(pref: Cx<R>, inner: &EvalOut<R>) -> Result<EvalOut<R>> {
    Ok(EvalOut {
        value: pref * inner.value,
        max_term: pref.norm().to_f64() * inner.max_term,
    })
}

/// [`out_series`] for a prefactor carried in scaled form.
fn out_scaled_series<R: Real>(pref: Scaled<R>, inner: &EvalOut<R>) -> Result<EvalOut<R>> {
    Ok(EvalOut {
        value: pref.mul_cx(inner.value).to_cx(),
        max_term: pref.to_cx().norm().to_f64() * inner.max_term,
    })
}

fn base<R: Real>(q: Cx<R>, p: Cx<R>) -> EllipticBase<R> {
    EllipticBase::new(q, p)
}

fn odd_n(ints: &BTreeMap<&'static str, i64>) -> bool {
    ints["n"] % 2 != 0
}

fn positive_n(ints: &BTreeMap<&'static str, i64>) -> bool {
    ints["n"] > 0
}

fn no_resolve<R: Real>(_: &mut Params<R>) {}

macro_rules! cvals {
    ($pm:ident : $($x:ident),+ $(,)?) => {
        $(let $x = $pm.val(stringify!($x));)+
    };
}

macro_rules! series_entry {
    ($name:literal, $kind:expr, $schema:expr, $zero:expr, $m:ident) => {
        series_entry!($name, $kind, $schema, $zero, $m, None)
    };
    ($name:literal, $kind:expr, $schema:expr, $zero:expr, $m:ident, $qr:expr) => {
        IdentityDef {
            name: $name,
            kind: $kind,
            schema: $schema,
            zero_rhs: $zero,
            q_magnitude: $qr,
            dd: TierFns {
                resolve: $m::resolve::<Dd>,
                lhs: $m::lhs::<Dd>,
                rhs: $m::rhs::<Dd>,
                lhs_spec: Some($m::lhs_spec::<Dd>),
            },
            dbl: TierFns {
                resolve: $m::resolve::<f64>,
                lhs: $m::lhs::<f64>,
                rhs: $m::rhs::<f64>,
                lhs_spec: Some($m::lhs_spec::<f64>),
            },
        }
    };
}

macro_rules! lemma_entry {
    ($name:literal, $schema:expr, $m:ident) => {
        IdentityDef {
            name: $name,
            kind: IdentityKind::Lemma,
            schema: $schema,
            zero_rhs: None,
            q_magnitude: None,
            dd: TierFns {
                resolve: no_resolve::<Dd>,
                lhs: $m::lhs::<Dd>,
                rhs: $m::rhs::<Dd>,
                lhs_spec: None,
            },
            dbl: TierFns {
                resolve: no_resolve::<f64>,
                lhs: $m::lhs::<f64>,
                rhs: $m::rhs::<f64>,
                lhs_spec: None,
            },
        }
    };
}

// ---------------------------------------------------------------------------
// Shared schemas
// ---------------------------------------------------------------------------

const S_ABQPN: &[ParamSpec] = &[
    ps("a", Role::Annulus),
    ps("b", Role::Annulus),
    ps("q", Role::BaseQ),
    ps("p", Role::NomeP),
    ps("n", Role::IntN),
];

const S_BCQPN: &[ParamSpec] = &[
    ps("b", Role::Annulus),
    ps("c", Role::Annulus),
    ps("q", Role::BaseQ),
    ps("p", Role::NomeP),
    ps("n", Role::IntN),
];

const S_ABCDQPN: &[ParamSpec] = &[
    ps("a", Role::Annulus),
    ps("b", Role::Annulus),
    ps("c", Role::Annulus),
    ps("d", Role::Annulus),
    ps("q", Role::BaseQ),
    ps("p", Role::NomeP),
    ps("n", Role::IntN),
];

const S_ABQN: &[ParamSpec] = &[
    ps("a", Role::Annulus),
    ps("b", Role::Annulus),
    ps("q", Role::BaseQ),
    ps("n", Role::IntN),
];

const S_W02: &[ParamSpec] = &[
    ps("a", Role::Annulus),
    ps("b", Role::Annulus),
    ps("c", Role::Annulus),
    ps("q", Role::BaseQ),
    ps("p", Role::NomeP),
    ps("n", Role::IntN),
    ps("r", Role::IntRange { lo: 1, hi: 3 }),
];

const S_SPIRIDONOV: &[ParamSpec] = &[
    ps("a", Role::Annulus),
    ps("beta", Role::RootAnnulus),
    ps("gamma", Role::RootAnnulus),
    ps("kappa", Role::RootAnnulus),
    ps("q", Role::BaseQ),
    ps("p", Role::NomeP),
    ps("n", Role::IntN),
];

const S_WARNAAR: &[ParamSpec] = &[
    ps("u", Role::RootAnnulus),
    ps("b", Role::Annulus),
    ps("c", Role::Annulus),
    ps("k", Role::Annulus),
    ps("rho", Role::RootNomeP),
    ps("q", Role::BaseQ),
    ps("n", Role::IntN),
];

const S_BAILEY: &[ParamSpec] = &[
    ps("a", Role::Annulus),
    ps("b", Role::Annulus),
    ps("c", Role::Annulus),
    ps("d", Role::Annulus),
    ps("e", Role::Annulus),
    ps("f", Role::Annulus),
    ps("q", Role::BaseQ),
    ps("p", Role::NomeP),
    ps("n", Role::IntN),
];

const S_BCDQN: &[ParamSpec] = &[
    ps("b", Role::Annulus),
    ps("c", Role::Annulus),
    ps("d", Role::Annulus),
    ps("q", Role::BaseQ),
    ps("n", Role::IntN),
];

const S_BCQN: &[ParamSpec] = &[
    ps("b", Role::Annulus),
    ps("c", Role::Annulus),
    ps("q", Role::BaseQ),
    ps("n", Role::IntN),
];

const S_NR414: &[ParamSpec] = &[
    ps("a", Role::Annulus),
    ps("beta", Role::RootAnnulus),
    ps("gamma", Role::RootAnnulus),
    ps("kappa", Role::RootAnnulus),
    ps("q", Role::BaseQ),
    ps("n", Role::IntN),
];

const S_RV78: &[ParamSpec] = &[
    ps("u", Role::RootAnnulus),
    ps("b", Role::Annulus),
    ps("c", Role::Annulus),
    ps("k", Role::Annulus),
    ps("q", Role::BaseQ),
    ps("n", Role::IntN),
];

const S_AP: &[ParamSpec] = &[ps("a", Role::Annulus), ps("p", Role::NomeP)];

const S_AQPN: &[ParamSpec] = &[
    ps("a", Role::Annulus),
    ps("q", Role::BaseQ),
    ps("p", Role::NomeP),
    ps("n", Role::IntN),
];

// ---------------------------------------------------------------------------
// Elliptic summations
// ---------------------------------------------------------------------------

/// Order-9 very-well-poised summation: for `bcde = a²q^{n+1}`,
///
/// ```text
/// ₁₀V₉(a; b, c, d, e, q⁻ⁿ; q, p)
///   = (aq, aq/bc, aq/bd, aq/cd; q, p)_n / (aq/b, aq/c, aq/d, aq/bcd; q, p)_n .
/// ```
mod ft_jackson_v109 {
    use super::*;

    pub fn resolve<R: Real>(pm: &mut Params<R>) {
        cvals!(pm: a, b, c, d, q);
        let n = pm.int("n");
        pm.set("e", a * a * q.powi(n + 1) / (b * c * d));
    }

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: a, b, c, d, e, q, p);
        let n = pm.int("n");
        VSeriesSpec { a1: a, upper: vec![b, c, d, e, q.powi(-n)], base: base(q, p), n }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, c, d, q, p);
        let n = pm.int("n");
        let bs = base(q, p);
        let aq = a * q;
        let num =
            poch_multi_scaled(&[aq, aq / (b * c), aq / (b * d), aq / (c * d)], &bs, n, ctx)?;
        let den = poch_multi_scaled_checked(
            &[aq / b, aq / c, aq / d, aq / (b * c * d)],
            &bs,
            n,
            floor,
            ctx,
        )?;
        out(num.div(den).to_cx())
    }
}

/// Karlsson–Minton-style summation in the mixed bases `(q, p)` and
/// `(qʳ, p)`, `r = 1, 2, 3`:
///
/// ```text
/// ₂ᵣ₊₈V₂ᵣ₊₇(ab; c, ab/c, bq, …, bqʳ, aqⁿ, …, aq^{n+r−1}, q^{−rn}; qʳ, p)
///   = (a/c, c/b; q, p)_n (qʳ, abqʳ; qʳ, p)_n
///     / [ (cqʳ, abqʳ/c; qʳ, p)_n (a, 1/b; q, p)_n ] .
/// ```
mod w02_thm41 {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        cvals!(pm: a, b, c, q, p);
        let n = pm.int("n");
        let r = pm.int("r");
        let a1 = a * b;
        let qr = q.powi(r);
        let a1qr = a1 * qr;
        let mut num = vec![a1, c, a1 / c];
        let mut den = vec![qr, a1qr / c, c * qr];
        for i in 1..=r {
            num.push(b * q.powi(i));
            den.push(a * q.powi(r - i));
        }
        for i in 0..r {
            num.push(a * q.powi(n + i));
            den.push(b * q.powi(r - n - i));
        }
        num.push(q.powi(-r * n));
        den.push(a1 * q.powi(r * (n + 1)));
        let bs = base(qr, p);
        MixedSeriesSpec {
            vwp_ratio: Some((a1, bs)),
            groups: vec![FactorGroup::numerator(num, bs), FactorGroup::denominator(den, bs)],
            z: qr,
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_mixed(&lhs_spec(pm), floor, ctx)
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, c, q, p);
        let n = pm.int("n");
        let r = pm.int("r");
        let b1 = base(q, p);
        let br = base(q.powi(r), p);
        let qr = q.powi(r);
        let num = poch_multi_scaled(&[a / c, c / b], &b1, n, ctx)?
            .mul(poch_multi_scaled(&[qr, a * b * qr], &br, n, ctx)?);
        let den = poch_multi_scaled_checked(&[c * qr, a * b * qr / c], &br, n, floor, ctx)?
            .mul(poch_multi_scaled_checked(&[a, b.inv()], &b1, n, floor, ctx)?);
        out(num.div(den).to_cx())
    }
}

/// Bibasic very-well-poised summation over `(q², p²)` and `(q, p)`:
///
/// ```text
///  n  θ(a²q⁴ᵏ; p²)  (a², b/q; q², p²)_k    (aqⁿ/b, q⁻ⁿ; q, p)_k
///  Σ  ------------ ----------------------- ------------------------- q²ᵏ
/// k=0 θ(a²; p²)     (q², a²q³/b; q², p²)_k (bq^{1−n}, aq^{n+1}; q, p)_k
///
///    θ(−aq²ⁿ/b; p) (−a/b, aq; q, p)_n (1/bq; q², p²)_n
///  = ------------- ------------------ ----------------- qⁿ .
///    θ(−a/b; p)    (−q, 1/b; q, p)_n  (a²q³/b; q², p²)_n
/// ```
mod biba {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        let b2 = base(q * q, p * p);
        let b1 = base(q, p);
        let a2 = a * a;
        MixedSeriesSpec {
            vwp_ratio: Some((a2, b2)),
            groups: vec![
                FactorGroup::numerator(vec![a2, b / q], b2),
                FactorGroup::denominator(vec![q * q, a2 * q.powi(3) / b], b2),
                FactorGroup::numerator(vec![a * q.powi(n) / b, q.powi(-n)], b1),
                FactorGroup::denominator(vec![b * q.powi(1 - n), a * q.powi(n + 1)], b1),
            ],
            z: q * q,
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_mixed(&lhs_spec(pm), floor, ctx)
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        let b1 = base(q, p);
        let b2 = base(q * q, p * p);
        let tn = theta_scaled(-(a * q.powi(2 * n) / b), p, ctx)?;
        let td = theta_scaled_checked(-(a / b), p, floor, ctx)?;
        let num1 = poch_multi_scaled(&[-(a / b), a * q], &b1, n, ctx)?;
        let den1 = poch_multi_scaled_checked(&[-q, b.inv()], &b1, n, floor, ctx)?;
        let num2 = poch_scaled((b * q).inv(), &b2, n, ctx)?;
        let den2 = poch_scaled_checked(a * a * q.powi(3) / b, &b2, n, floor, ctx)?;
        out(tn.div(td).mul(num1).div(den1).mul(num2).div(den2).mul_cx(q.powi(n)).to_cx())
    }
}

/// Order-11 summation over `(q², p²)` with paired nome-shifted parameters:
///
/// ```text
/// ₁₂V₁₁(ab; b, bq, b/p, bqp, aq²/b, a²q²ⁿ, q⁻²ⁿ; q², p²)
///   = θ(a; p)/θ(aq²ⁿ; p)
///     · (−q, aq/b; q, p)_n / (a, −b; q, p)_n
///     · (abq²; q², p²)_n / (a/b; q², p²)_n · q⁻ⁿ .
/// ```
mod new1_12v11 {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: a * b,
            upper: vec![
                b,
                b * q,
                b / p,
                b * q * p,
                a * q * q / b,
                a * a * q.powi(2 * n),
                q.powi(-2 * n),
            ],
            base: base(q * q, p * p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        let b1 = base(q, p);
        let b2 = base(q * q, p * p);
        let tn = theta_scaled(a, p, ctx)?;
        let td = theta_scaled_checked(a * q.powi(2 * n), p, floor, ctx)?;
        let num1 = poch_multi_scaled(&[-q, a * q / b], &b1, n, ctx)?;
        let den1 = poch_multi_scaled_checked(&[a, -b], &b1, n, floor, ctx)?;
        let num2 = poch_scaled(a * b * q * q, &b2, n, ctx)?;
        let den2 = poch_scaled_checked(a / b, &b2, n, floor, ctx)?;
        out(tn.div(td).mul(num1).div(den1).mul(num2).div(den2).mul_cx(q.powi(-n)).to_cx())
    }
}

/// Order-11 summation over `(q, p²)` whose right side vanishes for odd `n`:
///
/// ```text
/// ₁₂V₁₁(ab; b, −b, bp, −b/p, aq/b, a²q^{n+1}, q⁻ⁿ; q, p²)
///   = χ(n even) · (q, a²q²/b²; q², p²)_{n/2} / (a²q², b²q; q², p²)_{n/2}
///     · (abq; q, p²)_n / (aq/b; q, p²)_n .
/// ```
mod new2_12v11 {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: a * b,
            upper: vec![b, -b, b * p, -(b / p), a * q / b, a * a * q.powi(n + 1), q.powi(-n)],
            base: base(q, p * p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        if n % 2 != 0 {
            return out(Cx::zero());
        }
        let h = n / 2;
        let pp = p * p;
        let b1 = base(q, pp);
        let b2 = base(q * q, pp);
        let a2q2 = a * a * q * q;
        let numh = poch_multi_scaled(&[q, a2q2 / (b * b)], &b2, h, ctx)?;
        let denh = poch_multi_scaled_checked(&[a2q2, b * b * q], &b2, h, floor, ctx)?;
        let num1 = poch_scaled(a * b * q, &b1, n, ctx)?;
        let den1 = poch_scaled_checked(a * q / b, &b1, n, floor, ctx)?;
        out(numh.div(denh).mul(num1).div(den1).to_cx())
    }
}

/// Order-11 summation over `(q, p²)` with a `q^{n+1}` upper parameter:
///
/// ```text
/// ₁₂V₁₁(b; −b, bp, −b/p, c/b, bq/c, q^{n+1}, q⁻ⁿ; q, p²)
///   = (bq, c/b²; q, p²)_n / (q/b, c; q, p²)_n
///     · (cq⁻ⁿ; q², p²)_n / (cq⁻ⁿ/b²; q², p²)_n · (−1/b)ⁿ .
/// ```
mod new3_12v11 {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: b, c, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: b,
            upper: vec![-b, b * p, -(b / p), c / b, b * q / c, q.powi(n + 1), q.powi(-n)],
            base: base(q, p * p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: b, c, q, p);
        let n = pm.int("n");
        let pp = p * p;
        let b1 = base(q, pp);
        let b2 = base(q * q, pp);
        let bb = b * b;
        let num1 = poch_multi_scaled(&[b * q, c / bb], &b1, n, ctx)?;
        let den1 = poch_multi_scaled_checked(&[q / b, c], &b1, n, floor, ctx)?;
        let num2 = poch_scaled(c * q.powi(-n), &b2, n, ctx)?;
        let den2 = poch_scaled_checked(c * q.powi(-n) / bb, &b2, n, floor, ctx)?;
        out(num1.div(den1).mul(num2).div(den2).mul_cx((-(b.inv())).powi(n)).to_cx())
    }
}

/// The nome shift `b → bp` of the previous summation, with the sign factor
/// absorbed:
///
/// ```text
/// ₁₂V₁₁(bp; b, −b, −bp, cp/b, bpq/c, q^{n+1}, q⁻ⁿ; q, p²)
///   = (bqp, c/b²; q, p²)_n / (qp/b, c; q, p²)_n
///     · (cq⁻ⁿ; q², p²)_n / (cq⁻ⁿ/b²; q², p²)_n .
/// ```
mod new3_shifted {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: b, c, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: b * p,
            upper: vec![b, -b, -(b * p), c * p / b, b * p * q / c, q.powi(n + 1), q.powi(-n)],
            base: base(q, p * p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: b, c, q, p);
        let n = pm.int("n");
        let pp = p * p;
        let b1 = base(q, pp);
        let b2 = base(q * q, pp);
        let bb = b * b;
        let num1 = poch_multi_scaled(&[b * q * p, c / bb], &b1, n, ctx)?;
        let den1 = poch_multi_scaled_checked(&[q * p / b, c], &b1, n, floor, ctx)?;
        let num2 = poch_scaled(c * q.powi(-n), &b2, n, ctx)?;
        let den2 = poch_scaled_checked(c * q.powi(-n) / bb, &b2, n, floor, ctx)?;
        out(num1.div(den1).mul(num2).div(den2).to_cx())
    }
}

/// Nome-shifted variant of the order-11 summation over `(q², p²)`:
///
/// ```text
/// ₁₂V₁₁(abp; b, bq, bp, bqp, aq²p/b, a²q²ⁿ, q⁻²ⁿ; q², p²)
///   = θ(a; p)/θ(aq²ⁿ; p)
///     · (−q, aq/b; q, p)_n / (a, −b; q, p)_n
///     · (abq²p; q², p²)_n / (ap/b; q², p²)_n · bⁿ .
/// ```
mod linp {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: a * b * p,
            upper: vec![
                b,
                b * q,
                b * p,
                b * q * p,
                a * q * q * p / b,
                a * a * q.powi(2 * n),
                q.powi(-2 * n),
            ],
            base: base(q * q, p * p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        let b1 = base(q, p);
        let b2 = base(q * q, p * p);
        let tn = theta_scaled(a, p, ctx)?;
        let td = theta_scaled_checked(a * q.powi(2 * n), p, floor, ctx)?;
        let num1 = poch_multi_scaled(&[-q, a * q / b], &b1, n, ctx)?;
        let den1 = poch_multi_scaled_checked(&[a, -b], &b1, n, floor, ctx)?;
        let num2 = poch_scaled(a * b * q * q * p, &b2, n, ctx)?;
        let den2 = poch_scaled_checked(a * p / b, &b2, n, floor, ctx)?;
        out(tn.div(td).mul(num1).div(den1).mul(num2).div(den2).mul_cx(b.powi(n)).to_cx())
    }
}

/// Nome-shifted variant of the odd-vanishing order-11 summation:
///
/// ```text
/// ₁₂V₁₁(abp; b, −b, bp, −bp, aqp/b, a²q^{n+1}, q⁻ⁿ; q, p²)
///   = χ(n even) · (q, a²q²/b²; q², p²)_{n/2} / (a²q², b²q; q², p²)_{n/2}
///     · (abqp; q, p²)_n / (aqp/b; q, p²)_n · bⁿ .
/// ```
mod linp2 {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: a * b * p,
            upper: vec![b, -b, b * p, -(b * p), a * q * p / b, a * a * q.powi(n + 1), q.powi(-n)],
            base: base(q, p * p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        if n % 2 != 0 {
            return out(Cx::zero());
        }
        let h = n / 2;
        let pp = p * p;
        let b1 = base(q, pp);
        let b2 = base(q * q, pp);
        let a2q2 = a * a * q * q;
        let numh = poch_multi_scaled(&[q, a2q2 / (b * b)], &b2, h, ctx)?;
        let denh = poch_multi_scaled_checked(&[a2q2, b * b * q], &b2, h, floor, ctx)?;
        let num1 = poch_scaled(a * b * q * p, &b1, n, ctx)?;
        let den1 = poch_scaled_checked(a * q * p / b, &b1, n, floor, ctx)?;
        out(numh.div(denh).mul(num1).div(den1).mul_cx(b.powi(n)).to_cx())
    }
}

/// Order-9 summation over `(q, p²)` with one nome-shifted column: for
/// `bce = adqⁿ`,
///
/// ```text
/// ₁₀V₉(ap; b, c, aqp/d, ep, q⁻ⁿ; q, p²)
///   = (aqp, aqp/bc, d/b, d/c; q, p²)_n / (aqp/b, aqp/c, d, d/bc; q, p²)_n .
/// ```
mod schlosser_10v9 {
    use super::*;

    pub fn resolve<R: Real>(pm: &mut Params<R>) {
        cvals!(pm: a, b, c, d, q);
        let n = pm.int("n");
        pm.set("e", a * d * q.powi(n) / (b * c));
    }

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: a, b, c, d, e, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: a * p,
            upper: vec![b, c, a * q * p / d, e * p, q.powi(-n)],
            base: base(q, p * p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, c, d, q, p);
        let n = pm.int("n");
        let bs = base(q, p * p);
        let aqp = a * q * p;
        let num = poch_multi_scaled(&[aqp, aqp / (b * c), d / b, d / c], &bs, n, ctx)?;
        let den =
            poch_multi_scaled_checked(&[aqp / b, aqp / c, d, d / (b * c)], &bs, n, floor, ctx)?;
        out(num.div(den).to_cx())
    }
}

/// Orthogonality-type evaluation: the order-7 series collapses to a delta,
///
/// ```text
/// ₈V₇(a; b, aqⁿ/b, q⁻ⁿ; q, p) = δ_{n,0} .
/// ```
mod v87_delta {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: a,
            upper: vec![b, a * q.powi(n) / b, q.powi(-n)],
            base: base(q, p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, _floor: f64, _ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        let n = pm.int("n");
        out(if n == 0 { Cx::one() } else { Cx::zero() })
    }
}

/// Order-11 summation anchored at `a₁ = b²q^{−n−1}`, with a free parameter
/// `c` entering both sides:
///
/// ```text
/// ₁₂V₁₁(b²q^{−n−1}; b, −b, bp, −b/p, cq^{−n−1}, b²q⁻ⁿ/c, q⁻ⁿ; q, p²)
///   = (q/b², c/b²; q, p²)_n / (q, c; q, p²)_n
///     · (q², cq⁻ⁿ; q², p²)_n / (q²/b², cq⁻ⁿ/b²; q², p²)_n .
/// ```
///
/// Both sides are invariant under `c → cp²`, which the test suite checks
/// separately.
mod v1211 {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: b, c, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: b * b * q.powi(-n - 1),
            upper: vec![
                b,
                -b,
                b * p,
                -(b / p),
                c * q.powi(-n - 1),
                b * b * q.powi(-n) / c,
                q.powi(-n),
            ],
            base: base(q, p * p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: b, c, q, p);
        let n = pm.int("n");
        let pp = p * p;
        let b1 = base(q, pp);
        let b2 = base(q * q, pp);
        let bb = b * b;
        let num1 = poch_multi_scaled(&[q / bb, c / bb], &b1, n, ctx)?;
        let den1 = poch_multi_scaled_checked(&[q, c], &b1, n, floor, ctx)?;
        let num2 = poch_multi_scaled(&[q * q, c * q.powi(-n)], &b2, n, ctx)?;
        let den2 =
            poch_multi_scaled_checked(&[q * q / bb, c * q.powi(-n) / bb], &b2, n, floor, ctx)?;
        out(num1.div(den1).mul(num2).div(den2).to_cx())
    }
}

// ---------------------------------------------------------------------------
// Elliptic transformations
// ---------------------------------------------------------------------------

/// Order-13 transformation from base `(q, p)` to base `(q², p²)`: with
/// `b = β²`, `c = γ²`, `k = κ²`, `m = bck/(a²q²)`, `d = −m/a`,
///
/// ```text
/// ₁₄V₁₃(a; a²q/m, ±β, ±γ, ±κqⁿ, ±q⁻ⁿ; q, p)
///   = (a²q², k/m, mq²/b, mq²/c; q², p²)_n
///     / (mq², k/a², a²q²/b, a²q²/c; q², p²)_n
///     · ₁₄V₁₃(m; a²q²/m, d, dq, d/p, dqp, b, c, kq²ⁿ, q⁻²ⁿ; q², p²) .
/// ```
mod spiridonov_14v13 {
    use super::*;

    pub fn resolve<R: Real>(pm: &mut Params<R>) {
        cvals!(pm: a, beta, gamma, kappa, q);
        let b = beta * beta;
        let c = gamma * gamma;
        let k = kappa * kappa;
        let m = b * c * k / (a * a * q * q);
        pm.set("b", b);
        pm.set("c", c);
        pm.set("k", k);
        pm.set("m", m);
        pm.set("d", -(m / a));
    }

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: a, beta, gamma, kappa, m, q, p);
        let n = pm.int("n");
        let kq = kappa * q.powi(n);
        let qn = q.powi(-n);
        VSeriesSpec {
            a1: a,
            upper: vec![a * a * q / m, beta, -beta, gamma, -gamma, kq, -kq, qn, -qn],
            base: base(q, p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, c, d, k, m, q, p);
        let n = pm.int("n");
        let q2 = q * q;
        let p2 = p * p;
        let b2 = base(q2, p2);
        let a2q2 = a * a * q2;
        let mq2 = m * q2;
        let num = poch_multi_scaled(&[a2q2, k / m, mq2 / b, mq2 / c], &b2, n, ctx)?;
        let den = poch_multi_scaled_checked(
            &[mq2, k / (a * a), a2q2 / b, a2q2 / c],
            &b2,
            n,
            floor,
            ctx,
        )?;
        let second = eval_v(
            &VSeriesSpec {
                a1: m,
                upper: vec![
                    a2q2 / m,
                    d,
                    d * q,
                    d / p,
                    d * q * p,
                    b,
                    c,
                    k * q.powi(2 * n),
                    q.powi(-2 * n),
                ],
                base: b2,
                n,
            },
            floor,
            ctx,
        )?;
        out_scaled_series(num.div(den), &second)
    }
}

/// Order-13 transformation from base `(q², p)` to base `(q, p)`: with
/// `a = q/u²`, `p = ρ²`, `m = bck/(aq)`, `d = mu`,
///
/// ```text
/// ₁₄V₁₃(a; a²/m², b, bq, c, cq, kqⁿ, kq^{n+1}, q⁻ⁿ, q^{1−n}; q², p)
///   = (aq, k/m, mq/b, mq/c; q, p)_n / (mq, k/a, aq/b, aq/c; q, p)_n
///     · ₁₄V₁₃(m; a/m, d, −d, dρ, −d/ρ, b, c, kqⁿ, q⁻ⁿ; q, p) ,
/// ```
///
/// where the left side terminates at `⌊n/2⌋` because its merged
/// `q⁻ⁿ`-column vanishes beyond that point.
mod warnaar_14v13 {
    use super::*;

    pub fn resolve<R: Real>(pm: &mut Params<R>) {
        cvals!(pm: u, b, c, k, rho, q);
        let p = rho * rho;
        let a = q / (u * u);
        let m = b * c * k / (a * q);
        pm.set("p", p);
        pm.set("a", a);
        pm.set("m", m);
        pm.set("d", m * u);
    }

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: a, b, c, k, m, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: a,
            upper: vec![
                a * a / (m * m),
                b,
                b * q,
                c,
                c * q,
                k * q.powi(n),
                k * q.powi(n + 1),
                q.powi(-n),
                q.powi(1 - n),
            ],
            base: base(q * q, p),
            n: n / 2,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, c, d, k, m, q, p, rho);
        let n = pm.int("n");
        let b1 = base(q, p);
        let num = poch_multi_scaled(&[a * q, k / m, m * q / b, m * q / c], &b1, n, ctx)?;
        let den = poch_multi_scaled_checked(
            &[m * q, k / a, a * q / b, a * q / c],
            &b1,
            n,
            floor,
            ctx,
        )?;
        let second = eval_v(
            &VSeriesSpec {
                a1: m,
                upper: vec![
                    a / m,
                    d,
                    -d,
                    d * rho,
                    -(d / rho),
                    b,
                    c,
                    k * q.powi(n),
                    q.powi(-n),
                ],
                base: b1,
                n,
            },
            floor,
            ctx,
        )?;
        out_scaled_series(num.div(den), &second)
    }
}

/// Order-11 self-transformation in one base: with
/// `g = a³q^{n+2}/(bcdef)` and `λ = a²q/(bcd)`,
///
/// ```text
/// ₁₂V₁₁(a; b, c, d, e, f, g, q⁻ⁿ; q, p)
///   = (aq, aq/ef, aq/fg, aq/eg; q, p)_n / (aq/e, aq/f, aq/g, aq/efg; q, p)_n
///     · ₁₂V₁₁(λ; λb/a, λc/a, λd/a, e, f, g, q⁻ⁿ; q, p) .
/// ```
mod bailey_12v11 {
    use super::*;

    pub fn resolve<R: Real>(pm: &mut Params<R>) {
        cvals!(pm: a, b, c, d, e, f, q);
        let n = pm.int("n");
        pm.set("g", a * a * a * q.powi(n + 2) / (b * c * d * e * f));
        pm.set("lam", a * a * q / (b * c * d));
    }

    fn vspec<R: Real>(pm: &Params<R>) -> VSeriesSpec<R> {
        cvals!(pm: a, b, c, d, e, f, g, q, p);
        let n = pm.int("n");
        VSeriesSpec {
            a1: a,
            upper: vec![b, c, d, e, f, g, q.powi(-n)],
            base: base(q, p),
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_v(&vspec(pm), floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        v_to_mixed(&vspec(pm))
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, c, d, e, f, g, lam, q, p);
        let n = pm.int("n");
        let b1 = base(q, p);
        let aq = a * q;
        let num =
            poch_multi_scaled(&[aq, aq / (e * f), aq / (f * g), aq / (e * g)], &b1, n, ctx)?;
        let den = poch_multi_scaled_checked(
            &[aq / e, aq / f, aq / g, aq / (e * f * g)],
            &b1,
            n,
            floor,
            ctx,
        )?;
        let second = eval_v(
            &VSeriesSpec {
                a1: lam,
                upper: vec![lam * b / a, lam * c / a, lam * d / a, e, f, g, q.powi(-n)],
                base: b1,
                n,
            },
            floor,
            ctx,
        )?;
        out_scaled_series(num.div(den), &second)
    }
}

// ---------------------------------------------------------------------------
// Basic (p = 0) summations and transformations
// ---------------------------------------------------------------------------

/// Quadratic-base summation in base `q²` with argument `q²`:
///
/// ```text
/// ₄φ₃[b, bq, a²q²ⁿ, q⁻²ⁿ; b², aq, aq²; q², q²]
///   = (1−a)/(1−aq²ⁿ) · (−q, aq/b; q)_n / (a, −b; q)_n · bⁿ .
/// ```
mod bw_4phi3 {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn parts<R: Real>(pm: &Params<R>) -> (Vec<Cx<R>>, Vec<Cx<R>>, Cx<R>, i64) {
        cvals!(pm: a, b, q);
        let n = pm.int("n");
        let upper = vec![b, b * q, a * a * q.powi(2 * n), q.powi(-2 * n)];
        let lower = vec![b * b, a * q, a * q * q];
        (upper, lower, q * q, n)
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        let (upper, lower, q2, n) = parts(pm);
        eval_phi(&upper, &lower, q2, q2, n, floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        let (upper, lower, q2, n) = parts(pm);
        let bs = base(q2, Cx::zero());
        let mut den = vec![q2];
        den.extend(lower);
        MixedSeriesSpec {
            vwp_ratio: None,
            groups: vec![FactorGroup::numerator(upper, bs), FactorGroup::denominator(den, bs)],
            z: q2,
            n,
        }
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q);
        let n = pm.int("n");
        let zero = Cx::zero();
        let b1 = base(q, zero);
        let tn = theta(a, zero, ctx)?;
        let td = theta_checked(a * q.powi(2 * n), zero, floor, ctx)?;
        let num = poch_multi(&[-q, a * q / b], &b1, n, ctx)?;
        let den = poch_multi_checked(&[a, -b], &b1, n, floor, ctx)?;
        out(tn / td * (num / den) * b.powi(n))
    }
}

/// Quadratic summation in base `q` whose right side vanishes for odd `n`:
///
/// ```text
/// ₄φ₃[b, −b, a²q^{n+1}, q⁻ⁿ; b², aq, −aq; q, q]
///   = χ(n even) · (q, a²q²/b²; q²)_{n/2} / (a²q², b²q; q²)_{n/2} · bⁿ .
/// ```
mod andrews_q_watson {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn parts<R: Real>(pm: &Params<R>) -> (Vec<Cx<R>>, Vec<Cx<R>>, Cx<R>, i64) {
        cvals!(pm: a, b, q);
        let n = pm.int("n");
        let upper = vec![b, -b, a * a * q.powi(n + 1), q.powi(-n)];
        let lower = vec![b * b, a * q, -(a * q)];
        (upper, lower, q, n)
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        let (upper, lower, q, n) = parts(pm);
        eval_phi(&upper, &lower, q, q, n, floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        let (upper, lower, q, n) = parts(pm);
        let bs = base(q, Cx::zero());
        let mut den = vec![q];
        den.extend(lower);
        MixedSeriesSpec {
            vwp_ratio: None,
            groups: vec![FactorGroup::numerator(upper, bs), FactorGroup::denominator(den, bs)],
            z: q,
            n,
        }
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q);
        let n = pm.int("n");
        if n % 2 != 0 {
            return out(Cx::zero());
        }
        let h = n / 2;
        let b2 = base(q * q, Cx::zero());
        let a2q2 = a * a * q * q;
        let num = poch_multi(&[q, a2q2 / (b * b)], &b2, h, ctx)?;
        let den = poch_multi_checked(&[a2q2, b * b * q], &b2, h, floor, ctx)?;
        out(num / den * b.powi(n))
    }
}

/// Balanced ₃φ₂ summation:
///
/// ```text
/// ₃φ₂[b, c, q⁻ⁿ; d, bcq^{1−n}/d; q, q] = (d/b, d/c; q)_n / (d, d/bc; q)_n .
/// ```
mod q_pfaff_saalschutz {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn parts<R: Real>(pm: &Params<R>) -> (Vec<Cx<R>>, Vec<Cx<R>>, Cx<R>, i64) {
        cvals!(pm: b, c, d, q);
        let n = pm.int("n");
        let upper = vec![b, c, q.powi(-n)];
        let lower = vec![d, b * c * q.powi(1 - n) / d];
        (upper, lower, q, n)
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        let (upper, lower, q, n) = parts(pm);
        eval_phi(&upper, &lower, q, q, n, floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        let (upper, lower, q, n) = parts(pm);
        let bs = base(q, Cx::zero());
        let mut den = vec![q];
        den.extend(lower);
        MixedSeriesSpec {
            vwp_ratio: None,
            groups: vec![FactorGroup::numerator(upper, bs), FactorGroup::denominator(den, bs)],
            z: q,
            n,
        }
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: b, c, d, q);
        let n = pm.int("n");
        let b1 = base(q, Cx::zero());
        let num = poch_multi(&[d / b, d / c], &b1, n, ctx)?;
        let den = poch_multi_checked(&[d, d / (b * c)], &b1, n, floor, ctx)?;
        out(num / den)
    }
}

/// Quadratic ₄φ₃ summation with a `q^{n+1}` column:
///
/// ```text
/// ₄φ₃[b, −b, q^{n+1}, q⁻ⁿ; −q, c, b²q/c; q, q]
///   = (c/b²; q)_n / (c; q)_n · (cq⁻ⁿ; q²)_n / (cq⁻ⁿ/b²; q²)_n .
/// ```
mod andrews_q_whipple {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn parts<R: Real>(pm: &Params<R>) -> (Vec<Cx<R>>, Vec<Cx<R>>, Cx<R>, i64) {
        cvals!(pm: b, c, q);
        let n = pm.int("n");
        let upper = vec![b, -b, q.powi(n + 1), q.powi(-n)];
        let lower = vec![-q, c, b * b * q / c];
        (upper, lower, q, n)
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        let (upper, lower, q, n) = parts(pm);
        eval_phi(&upper, &lower, q, q, n, floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        let (upper, lower, q, n) = parts(pm);
        let bs = base(q, Cx::zero());
        let mut den = vec![q];
        den.extend(lower);
        MixedSeriesSpec {
            vwp_ratio: None,
            groups: vec![FactorGroup::numerator(upper, bs), FactorGroup::denominator(den, bs)],
            z: q,
            n,
        }
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: b, c, q);
        let n = pm.int("n");
        let zero = Cx::zero();
        let b1 = base(q, zero);
        let b2 = base(q * q, zero);
        let bb = b * b;
        let num1 = poch(c / bb, &b1, n, ctx)?;
        let den1 = poch_checked(c, &b1, n, floor, ctx)?;
        let num2 = poch(c * q.powi(-n), &b2, n, ctx)?;
        let den2 = poch_checked(c * q.powi(-n) / bb, &b2, n, floor, ctx)?;
        out(num1 / den1 * (num2 / den2))
    }
}

/// Transformation of a very-well-poised ₈W₇ in base `q²` with argument
/// `bq/a` into a balanced ₄φ₃:
///
/// ```text
/// ₈W₇(ab; b, bq, aq²/b, a²q²ⁿ, q⁻²ⁿ; q², bq/a)
///   = (abq², q^{1−2n}/a; q²)_n / (aq, bq^{2−2n}/a; q²)_n
///     · ₄φ₃[b, bq, a²q²ⁿ, q⁻²ⁿ; b², aq, aq²; q², q²] .
/// ```
mod watson_8phi7 {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn parts<R: Real>(pm: &Params<R>) -> (Cx<R>, Vec<Cx<R>>, Cx<R>, Cx<R>, i64) {
        cvals!(pm: a, b, q);
        let n = pm.int("n");
        let params =
            vec![b, b * q, a * q * q / b, a * a * q.powi(2 * n), q.powi(-2 * n)];
        (a * b, params, q * q, b * q / a, n)
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        let (a1, params, q2, z, n) = parts(pm);
        eval_w(a1, &params, q2, z, n, floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        let (a1, params, q2, z, n) = parts(pm);
        w_to_mixed(a1, &params, q2, z, n)
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q);
        let n = pm.int("n");
        let q2 = q * q;
        let b2 = base(q2, Cx::zero());
        let num = poch_multi(&[a * b * q2, q.powi(1 - 2 * n) / a], &b2, n, ctx)?;
        let den = poch_multi_checked(
            &[a * q, b * q.powi(2 - 2 * n) / a],
            &b2,
            n,
            floor,
            ctx,
        )?;
        let phi = eval_phi(
            &[b, b * q, a * a * q.powi(2 * n), q.powi(-2 * n)],
            &[b * b, a * q, a * q2],
            q2,
            q2,
            n,
            floor,
            ctx,
        )?;
        out_series(num / den, &phi)
    }
}

/// The `p = 0` limit of the odd-vanishing order-11 summation, stated as a
/// ₈W₇ with argument `−b/a`:
///
/// ```text
/// ₈W₇(ab; b, −b, aq/b, a²q^{n+1}, q⁻ⁿ; q, −b/a)
///   = χ(n even) · (q, a²q²/b²; q²)_{n/2} / (a²q², b²q; q²)_{n/2}
///     · (abq; q)_n / (aq/b; q)_n .
/// ```
mod new2_p0_8w7 {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    fn parts<R: Real>(pm: &Params<R>) -> (Cx<R>, Vec<Cx<R>>, Cx<R>, Cx<R>, i64) {
        cvals!(pm: a, b, q);
        let n = pm.int("n");
        let params = vec![b, -b, a * q / b, a * a * q.powi(n + 1), q.powi(-n)];
        (a * b, params, q, -(b / a), n)
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        let (a1, params, q, z, n) = parts(pm);
        eval_w(a1, &params, q, z, n, floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        let (a1, params, q, z, n) = parts(pm);
        w_to_mixed(a1, &params, q, z, n)
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q);
        let n = pm.int("n");
        if n % 2 != 0 {
            return out(Cx::zero());
        }
        let h = n / 2;
        let zero = Cx::zero();
        let b1 = base(q, zero);
        let b2 = base(q * q, zero);
        let a2q2 = a * a * q * q;
        let numh = poch_multi(&[q, a2q2 / (b * b)], &b2, h, ctx)?;
        let denh = poch_multi_checked(&[a2q2, b * b * q], &b2, h, floor, ctx)?;
        let num1 = poch(a * b * q, &b1, n, ctx)?;
        let den1 = poch_checked(a * q / b, &b1, n, floor, ctx)?;
        out(numh / denh * (num1 / den1))
    }
}

/// The `p = 0` limit of the quadratic-base order-13 transformation: with
/// `b = β²`, `c = γ²`, `k = κ²`, `m = bck/(a²q²)`, `d = −m/a`,
///
/// ```text
/// ₁₂W₁₁(a; a²q/m, ±β, ±γ, ±κqⁿ, ±q⁻ⁿ; q, q)
///   = (a²q², k/m, mq²/b, mq²/c; q²)_n / (mq², k/a², a²q²/b, a²q²/c; q²)_n
///     · ₁₀W₉(m; a²q²/m, d, dq, b, c, kq²ⁿ, q⁻²ⁿ; q², mq/a²) .
/// ```
mod nr414_transform {
    use super::*;

    pub fn resolve<R: Real>(pm: &mut Params<R>) {
        spiridonov_14v13::resolve(pm);
    }

    fn parts<R: Real>(pm: &Params<R>) -> (Cx<R>, Vec<Cx<R>>, Cx<R>, i64) {
        cvals!(pm: a, beta, gamma, kappa, m, q);
        let n = pm.int("n");
        let kq = kappa * q.powi(n);
        let qn = q.powi(-n);
        let params = vec![a * a * q / m, beta, -beta, gamma, -gamma, kq, -kq, qn, -qn];
        (a, params, q, n)
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        let (a1, params, q, n) = parts(pm);
        eval_w(a1, &params, q, q, n, floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        let (a1, params, q, n) = parts(pm);
        w_to_mixed(a1, &params, q, q, n)
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, c, d, k, m, q);
        let n = pm.int("n");
        let q2 = q * q;
        let b2 = base(q2, Cx::zero());
        let a2q2 = a * a * q2;
        let mq2 = m * q2;
        let num = poch_multi(&[a2q2, k / m, mq2 / b, mq2 / c], &b2, n, ctx)?;
        let den =
            poch_multi_checked(&[mq2, k / (a * a), a2q2 / b, a2q2 / c], &b2, n, floor, ctx)?;
        let second = eval_w(
            m,
            &[a2q2 / m, d, d * q, b, c, k * q.powi(2 * n), q.powi(-2 * n)],
            q2,
            m * q / (a * a),
            n,
            floor,
            ctx,
        )?;
        out_series(num / den, &second)
    }
}

/// The `p = 0` limit of the base-halving order-13 transformation: with
/// `a = q/u²`, `m = bck/(aq)`, `d = mu`,
///
/// ```text
/// ₁₂W₁₁(a; a²/m², b, bq, c, cq, kqⁿ, kq^{n+1}, q⁻ⁿ, q^{1−n}; q², q²)
///   = (aq, k/m, mq/b, mq/c; q)_n / (mq, k/a, aq/b, aq/c; q)_n
///     · ₁₀W₉(m; a/m, d, −d, b, c, kqⁿ, q⁻ⁿ; q, −mq/a) ,
/// ```
///
/// the left side again terminating at `⌊n/2⌋`.
mod rv78_transform {
    use super::*;

    pub fn resolve<R: Real>(pm: &mut Params<R>) {
        cvals!(pm: u, b, c, k, q);
        let a = q / (u * u);
        let m = b * c * k / (a * q);
        pm.set("a", a);
        pm.set("m", m);
        pm.set("d", m * u);
    }

    fn parts<R: Real>(pm: &Params<R>) -> (Cx<R>, Vec<Cx<R>>, Cx<R>, i64) {
        cvals!(pm: a, b, c, k, m, q);
        let n = pm.int("n");
        let params = vec![
            a * a / (m * m),
            b,
            b * q,
            c,
            c * q,
            k * q.powi(n),
            k * q.powi(n + 1),
            q.powi(-n),
            q.powi(1 - n),
        ];
        (a, params, q * q, n / 2)
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        let (a1, params, q2, half) = parts(pm);
        eval_w(a1, &params, q2, q2, half, floor, ctx)
    }

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        let (a1, params, q2, half) = parts(pm);
        w_to_mixed(a1, &params, q2, q2, half)
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, c, d, k, m, q);
        let n = pm.int("n");
        let b1 = base(q, Cx::zero());
        let num = poch_multi(&[a * q, k / m, m * q / b, m * q / c], &b1, n, ctx)?;
        let den =
            poch_multi_checked(&[m * q, k / a, a * q / b, a * q / c], &b1, n, floor, ctx)?;
        let second = eval_w(
            m,
            &[a / m, d, -d, b, c, k * q.powi(n), q.powi(-n)],
            q,
            -(m * q / a),
            n,
            floor,
            ctx,
        )?;
        out_series(num / den, &second)
    }
}

/// The `p = 0` limit of the bibasic very-well-poised summation.
mod biba_p0 {
    use super::*;

    pub fn resolve<R: Real>(_: &mut Params<R>) {}

    pub fn lhs_spec<R: Real>(pm: &Params<R>) -> MixedSeriesSpec<R> {
        cvals!(pm: a, b, q);
        let n = pm.int("n");
        let zero = Cx::zero();
        let b2 = base(q * q, zero);
        let b1 = base(q, zero);
        let a2 = a * a;
        MixedSeriesSpec {
            vwp_ratio: Some((a2, b2)),
            groups: vec![
                FactorGroup::numerator(vec![a2, b / q], b2),
                FactorGroup::denominator(vec![q * q, a2 * q.powi(3) / b], b2),
                FactorGroup::numerator(vec![a * q.powi(n) / b, q.powi(-n)], b1),
                FactorGroup::denominator(vec![b * q.powi(1 - n), a * q.powi(n + 1)], b1),
            ],
            z: q * q,
            n,
        }
    }

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        eval_mixed(&lhs_spec(pm), floor, ctx)
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q);
        let n = pm.int("n");
        let zero = Cx::zero();
        let b1 = base(q, zero);
        let b2 = base(q * q, zero);
        let tn = theta(-(a * q.powi(2 * n) / b), zero, ctx)?;
        let td = theta_checked(-(a / b), zero, floor, ctx)?;
        let num1 = poch_multi(&[-(a / b), a * q], &b1, n, ctx)?;
        let den1 = poch_multi_checked(&[-q, b.inv()], &b1, n, floor, ctx)?;
        let num2 = poch((b * q).inv(), &b2, n, ctx)?;
        let den2 = poch_checked(a * a * q.powi(3) / b, &b2, n, floor, ctx)?;
        out(tn / td * (num1 / den1) * (num2 / den2) * q.powi(n))
    }
}

// ---------------------------------------------------------------------------
// Factorial lemmas
// ---------------------------------------------------------------------------

/// `θ(a; p) = −a·θ(ap; p)`.
mod theta_quasi1 {
    use super::*;

    pub fn lhs<R: Real>(pm: &Params<R>, _floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, p);
        out(theta(a, p, ctx)?)
    }

    pub fn rhs<R: Real>(pm: &Params<R>, _floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, p);
        out(-(a * theta(a * p, p, ctx)?))
    }
}

/// `(a; q, p)_n = (−a)ⁿ q^(n(n−1)/2) (ap; q, p)_n`.
mod poch_quasi2 {
    use super::*;

    pub fn lhs<R: Real>(pm: &Params<R>, _floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, q, p);
        let n = pm.int("n");
        out(poch(a, &base(q, p), n, ctx)?)
    }

    pub fn rhs<R: Real>(pm: &Params<R>, _floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, q, p);
        let n = pm.int("n");
        let shifted = poch(a * p, &base(q, p), n, ctx)?;
        out((-a).powi(n) * q.powi(n * (n - 1) / 2) * shifted)
    }
}

/// Base doubling of a ratio of length-`2n` factorials.
mod double_argument_id {
    use super::*;

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        let b1 = base(q, p);
        let num = poch_scaled(a, &b1, 2 * n, ctx)?;
        let den = poch_scaled_checked(b, &b1, 2 * n, floor, ctx)?;
        out(num.div(den).to_cx())
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        let b2 = base(q * q, p * p);
        let num = poch_multi_scaled(&[a, a * q, a / p, a * q * p], &b2, n, ctx)?;
        let den =
            poch_multi_scaled_checked(&[b, b * q, b / p, b * q * p], &b2, n, floor, ctx)?;
        out(num.div(den).mul_cx((b / a).powi(n)).to_cx())
    }
}

/// Quadruple-to-square factorial ratio across `(q, p²)` and `(q², p²)`.
mod quad_ratio {
    use super::*;

    pub fn lhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        let b1 = base(q, p * p);
        let num = poch_multi_scaled(&[a, -a, a / p, -(a * p)], &b1, n, ctx)?;
        let den = poch_multi_scaled_checked(&[b, -b, b * p, -(b / p)], &b1, n, floor, ctx)?;
        out(num.div(den).to_cx())
    }

    pub fn rhs<R: Real>(pm: &Params<R>, floor: f64, ctx: &PrecisionContext) -> Result<EvalOut<R>> {
        cvals!(pm: a, b, q, p);
        let n = pm.int("n");
        let b2 = base(q * q, p * p);
        let num = poch_scaled(a * a, &b2, n, ctx)?;
        let den = poch_scaled_checked(b * b, &b2, n, floor, ctx)?;
        out(num.div(den).mul_cx((-(a / b)).powi(n)).to_cx())
    }
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

pub(super) fn build() -> Vec<IdentityDef> {
    use IdentityKind::*;

    vec![
        series_entry!(
            "ft_jackson_V109",
            EllipticSummation,
            S_ABCDQPN,
            None,
            ft_jackson_v109
        ),
        series_entry!("w02_thm41", EllipticSummation, S_W02, None, w02_thm41),
        series_entry!("biba", EllipticSummation, S_ABQPN, None, biba),
        series_entry!("new1_12V11", EllipticSummation, S_ABQPN, None, new1_12v11),
        series_entry!(
            "new2_12V11",
            EllipticSummation,
            S_ABQPN,
            Some(odd_n as super::ZeroRhsFn),
            new2_12v11
        ),
        series_entry!("new3_12V11", EllipticSummation, S_BCQPN, None, new3_12v11),
        series_entry!("new3_shifted", EllipticSummation, S_BCQPN, None, new3_shifted),
        series_entry!("linp", EllipticSummation, S_ABQPN, None, linp),
        series_entry!(
            "linp2",
            EllipticSummation,
            S_ABQPN,
            Some(odd_n as super::ZeroRhsFn),
            linp2
        ),
        series_entry!(
            "schlosser_10V9",
            EllipticSummation,
            S_ABCDQPN,
            None,
            schlosser_10v9
        ),
        series_entry!(
            "v87_delta",
            EllipticSummation,
            S_ABQPN,
            Some(positive_n as super::ZeroRhsFn),
            v87_delta
        ),
        series_entry!("v1211", EllipticSummation, S_BCQPN, None, v1211),
        series_entry!(
            "spiridonov_14V13",
            EllipticTransformation,
            S_SPIRIDONOV,
            None,
            spiridonov_14v13
        ),
        series_entry!(
            "warnaar_14V13",
            EllipticTransformation,
            S_WARNAAR,
            None,
            warnaar_14v13
        ),
        series_entry!("bailey_12V11", EllipticTransformation, S_BAILEY, None, bailey_12v11),
        series_entry!("bw_4phi3", BasicSummation, S_ABQN, None, bw_4phi3, Some((0.6, 0.8))),
        series_entry!(
            "andrews_q_watson",
            BasicSummation,
            S_ABQN,
            Some(odd_n as super::ZeroRhsFn),
            andrews_q_watson,
            Some((0.5, 0.8))
        ),
        series_entry!("q_pfaff_saalschutz", BasicSummation, S_BCDQN, None, q_pfaff_saalschutz),
        series_entry!(
            "andrews_q_whipple",
            BasicSummation,
            S_BCQN,
            None,
            andrews_q_whipple,
            Some((0.5, 0.8))
        ),
        series_entry!(
            "watson_8phi7",
            BasicTransformation,
            S_ABQN,
            None,
            watson_8phi7,
            Some((0.6, 0.8))
        ),
        series_entry!(
            "new2_p0_8W7",
            BasicSummation,
            S_ABQN,
            Some(odd_n as super::ZeroRhsFn),
            new2_p0_8w7
        ),
        series_entry!("nr414_transform", BasicTransformation, S_NR414, None, nr414_transform),
        series_entry!("rv78_transform", BasicTransformation, S_RV78, None, rv78_transform),
        series_entry!("biba_p0", BasicSummation, S_ABQN, None, biba_p0),
        lemma_entry!("theta_quasi1", S_AP, theta_quasi1),
        lemma_entry!("poch_quasi2", S_AQPN, poch_quasi2),
        lemma_entry!("double_argument_id", S_ABQPN, double_argument_id),
        lemma_entry!("quad_ratio", S_ABQPN, quad_ratio),
    ]
}
