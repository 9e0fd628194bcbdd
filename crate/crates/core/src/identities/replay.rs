//! Structural consistency replays: two telescoping double sums that must
//! evaluate to exactly 1, and two singular-limit checks that must collapse
//! to Kronecker deltas.
//!
//! The double sums arise from expanding a delta-collapsing order-7 series
//! inside an order-11 summand and exchanging the order of summation. Both
//! orderings are evaluated directly — the inner series is summed term by
//! term, never replaced by its closed form — so the checks exercise the
//! engine end to end rather than restating a registry identity.

use crate::error::Result;
use crate::numerics::{Cx, PrecisionContext, Real};
use crate::series::{eval_mixed, eval_v, FactorGroup, MixedSeriesSpec, VSeriesSpec};
use crate::theta::{poch, poch_checked, poch_multi, poch_multi_checked, theta, theta_checked, EllipticBase};

/// Double sum
///
/// ```text
///  n   (−aq; q, p)_{2s}   (a²q³/b; q², p²)_{2s}
///  Σ   ----------------- ----------------------
/// s=0  (−aq/b; q, p)_{2s} (a²; q², p²)_{2s}
///
///      (a², b/q, a²q²ⁿ/b², q⁻²ⁿ; q², p²)_s
///    · ------------------------------------------- q³ˢ
///      (q², a²q³/b, bq^{3−2n}, a²q^{2n+3}/b; q², p²)_s
///
///    · ₁₂V₁₁(a²q^{4s+1}/b; −aq^{2s+1}, −aq^{2s+2}, −aq^{2s+1}/p,
///            −aq^{2s+2}p, q/b, a²q^{2n+2s}/b², q^{2s−2n}; q², p²)  =  1 .
/// ```
///
/// The inner order-11 series (length `n − s`) is evaluated directly.
pub fn replay_biba_double_sum<R: Real>(
    a: Cx<R>,
    b: Cx<R>,
    q: Cx<R>,
    p: Cx<R>,
    n: i64,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<Cx<R>> {
    let b1 = EllipticBase::new(q, p);
    let b2 = EllipticBase::new(q * q, p * p);
    let a2 = a * a;
    let mut total = Cx::zero();
    for s in 0..=n {
        let t1n = poch(-(a * q), &b1, 2 * s, ctx)?;
        let t1d = poch_checked(-(a * q / b), &b1, 2 * s, floor, ctx)?;
        let t2n = poch(a2 * q.powi(3) / b, &b2, 2 * s, ctx)?;
        let t2d = poch_checked(a2, &b2, 2 * s, floor, ctx)?;
        let t3n = poch_multi(
            &[a2, b / q, a2 * q.powi(2 * n) / (b * b), q.powi(-2 * n)],
            &b2,
            s,
            ctx,
        )?;
        let t3d = poch_multi_checked(
            &[
                q * q,
                a2 * q.powi(3) / b,
                b * q.powi(3 - 2 * n),
                a2 * q.powi(2 * n + 3) / b,
            ],
            &b2,
            s,
            floor,
            ctx,
        )?;
        let inner = eval_v(
            &VSeriesSpec {
                a1: a2 * q.powi(4 * s + 1) / b,
                upper: vec![
                    -(a * q.powi(2 * s + 1)),
                    -(a * q.powi(2 * s + 2)),
                    -(a * q.powi(2 * s + 1) / p),
                    -(a * q.powi(2 * s + 2) * p),
                    q / b,
                    a2 * q.powi(2 * n + 2 * s) / (b * b),
                    q.powi(2 * s - 2 * n),
                ],
                base: b2,
                n: n - s,
            },
            floor,
            ctx,
        )?;
        total = total + (t1n / t1d) * (t2n / t2d) * (t3n / t3d) * q.powi(3 * s) * inner.value;
    }
    Ok(total)
}

/// Double sum
///
/// ```text
///  n  θ(b²q^{4s−2}; p²) (b²/q²; q², p²)_{2s} (a, aq²/b²; q², p²)_s
///  Σ  ----------------- -------------------- ---------------------
/// s=0 θ(b²/q²; p²)      (a; q², p²)_{2s}     (q², b²; q², p²)_s
///
///      (−aqⁿ/b, q⁻ⁿ; q, p)_s
///    · ----------------------- (b²/a)ˢ
///      (b²q⁻ⁿ/a, −bqⁿ; q, p)_s
///
///      n−s θ(b²q^{4r+4s−2}; p²) (b²q^{4s−2}, b²/aq²; q², p²)_r
///    ·  Σ  -------------------- ------------------------------
///      r=0 θ(b²q^{4s−2}; p²)    (q², aq^{4s+2}; q², p²)_r
///
///          (−aq^{n+s}/b, q^{s−n}; q, p)_r
///        · ------------------------------- q²ʳ   =  1 .
///          (b²q^{s−n}/a, −bq^{n+s}; q, p)_r
/// ```
///
/// The inner bibasic sum is evaluated directly as a mixed series.
pub fn replay_new1_double_sum<R: Real>(
    a: Cx<R>,
    b: Cx<R>,
    q: Cx<R>,
    p: Cx<R>,
    n: i64,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<Cx<R>> {
    let b1 = EllipticBase::new(q, p);
    let b2 = EllipticBase::new(q * q, p * p);
    let p2 = p * p;
    let bb = b * b;
    let mut total = Cx::zero();
    for s in 0..=n {
        let anchor = bb * q.powi(4 * s - 2);
        let v1n = theta(anchor, p2, ctx)?;
        let v1d = theta_checked(bb / (q * q), p2, floor, ctx)?;
        let v2n = poch(bb / (q * q), &b2, 2 * s, ctx)?;
        let v2d = poch_checked(a, &b2, 2 * s, floor, ctx)?;
        let v3n = poch_multi(&[a, a * q * q / bb], &b2, s, ctx)?;
        let v3d = poch_multi_checked(&[q * q, bb], &b2, s, floor, ctx)?;
        let v4n = poch_multi(&[-(a * q.powi(n) / b), q.powi(-n)], &b1, s, ctx)?;
        let v4d = poch_multi_checked(
            &[bb * q.powi(-n) / a, -(b * q.powi(n))],
            &b1,
            s,
            floor,
            ctx,
        )?;
        let inner = eval_mixed(
            &MixedSeriesSpec {
                vwp_ratio: Some((anchor, b2)),
                groups: vec![
                    FactorGroup::numerator(vec![anchor, bb / (a * q * q)], b2),
                    FactorGroup::denominator(vec![q * q, a * q.powi(4 * s + 2)], b2),
                    FactorGroup::numerator(
                        vec![-(a * q.powi(n + s) / b), q.powi(s - n)],
                        b1,
                    ),
                    FactorGroup::denominator(
                        vec![bb * q.powi(s - n) / a, -(b * q.powi(n + s))],
                        b1,
                    ),
                ],
                z: q * q,
                n: n - s,
            },
            floor,
            ctx,
        )?;
        total = total
            + (v1n / v1d)
                * (v2n / v2d)
                * (v3n / v3d)
                * (v4n / v4d)
                * (bb / a).powi(s)
                * inner.value;
    }
    Ok(total)
}

/// Two-point linear extrapolation to `eps = 0`: given `f(eps)` and
/// `f(eps/10)`, returns `(10·f(eps/10) − f(eps)) / 9`, which cancels the
/// leading linear error term.
fn extrapolate<R: Real>(f_eps: Cx<R>, f_tenth: Cx<R>) -> Cx<R> {
    let ten = Cx::new(R::from_f64(10.0), R::zero());
    let nine = Cx::new(R::from_f64(9.0), R::zero());
    (f_tenth * ten - f_eps) / nine
}

/// Singular limit in the squared base: extrapolates
///
/// ```text
/// lim_{k→a²} (k/a²; q², p²)_n / (a²q^{2−2n}/k; q², p²)_r
///   = (−1)ⁿ q^{n²−n} δ_{n,r}
/// ```
///
/// by evaluating the ratio at `k = a²(1+eps)` and `k = a²(1+eps/10)`.
/// No singularity floor is applied: the denominator zero at the limit
/// point is the feature under test.
pub fn check_delta_limit_even<R: Real>(
    a: Cx<R>,
    q: Cx<R>,
    p: Cx<R>,
    n: i64,
    r: i64,
    eps: f64,
    ctx: &PrecisionContext,
) -> Result<Cx<R>> {
    let b2 = EllipticBase::new(q * q, p * p);
    let a2 = a * a;
    let ratio = |scale: f64| -> Result<Cx<R>> {
        let k = a2 * (R::one() + R::from_f64(scale));
        let num = poch(k / a2, &b2, n, ctx)?;
        let den = poch(a2 * q.powi(2 - 2 * n) / k, &b2, r, ctx)?;
        Ok(num / den)
    };
    Ok(extrapolate(ratio(eps)?, ratio(eps / 10.0)?))
}

/// Singular limit mixing plain and squared bases: extrapolates
///
/// ```text
/// lim_{k→a} (k/a; q, p)_n / (aq^{1−n}/k; q, p)_{2r} = q^{n(n−1)/2} δ_{n,2r}
/// ```
///
/// with the same two-point protocol.
pub fn check_delta_limit_odd<R: Real>(
    a: Cx<R>,
    q: Cx<R>,
    p: Cx<R>,
    n: i64,
    r: i64,
    eps: f64,
    ctx: &PrecisionContext,
) -> Result<Cx<R>> {
    let b1 = EllipticBase::new(q, p);
    let ratio = |scale: f64| -> Result<Cx<R>> {
        let k = a * (R::one() + R::from_f64(scale));
        let num = poch(k / a, &b1, n, ctx)?;
        let den = poch(a * q.powi(1 - n) / k, &b1, 2 * r, ctx)?;
        Ok(num / den)
    };
    Ok(extrapolate(ratio(eps)?, ratio(eps / 10.0)?))
}
