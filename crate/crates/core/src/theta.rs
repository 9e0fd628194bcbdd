//! Theta functions and elliptic shifted factorials.
//!
//! The modified theta function is the doubly infinite product
//!
//! ```text
//! θ(a; p) = ∏_{i≥0} (1 − a·pⁱ)(1 − p^{i+1}/a),   0 ≤ |p| < 1, a ≠ 0,
//! ```
//!
//! which degenerates to `1 − a` at `p = 0`. The elliptic shifted factorial
//! stacks theta factors along a geometric progression:
//!
//! ```text
//! (a; q, p)_n = ∏_{j=0}^{n−1} θ(a·qʲ; p),          n ≥ 0,
//! ```
//!
//! and a comma-separated parameter list abbreviates the product of the
//! individual factorials.
//!
//! Truncation: factors approach 1 geometrically in `|p|`, so the product is
//! cut after `N = ceil((digits + margin) / |log₁₀|p||)` rounds, where
//! `digits` and `margin` come from the [`PrecisionContext`]. That bound is
//! valid when the argument sits in the annulus `|p| ≤ |a| < 1`; arguments
//! outside it are first brought in through the quasi-periodicity
//!
//! ```text
//! θ(a; p) = (−1)^m a^m p^(m(m−1)/2) θ(a·p^m; p),   m ∈ ℤ,
//! ```
//!
//! whose monomial prefactor is carried as a separate binary exponent
//! ([`Scaled`]), because its magnitude leaves the `f64` range long before
//! any balanced factor ratio does. With the reduction in place the
//! truncation error sits below the tier's own roundoff for every argument.
//!
//! Zeros: the second product's factor is computed as `(a − p^{i+1})/a`, so
//! arguments that hit a lattice zero exactly (for example `θ(p; p)` or
//! `θ(1; p)`) return exactly 0 rather than a roundoff residue.

use crate::error::{EvalError, Result};
use crate::numerics::{Cx, PrecisionContext, Real, Scaled};

/// Base pair `(q, p)` of a shifted factorial: `q` steps the argument,
/// `p` is the theta nome. Invariant: `|p| < 1` (enforced at evaluation,
/// with a hard bound of 0.95).
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct EllipticBase<R> {
    pub q: Cx<R>,
    pub p: Cx<R>,
}

impl<R: Real> EllipticBase<R> {
    pub fn new(q: Cx<R>, p: Cx<R>) -> Self {
        EllipticBase { q, p }
    }

    /// The base `(q², p²)` reached by doubling both parameters.
    pub fn squared(self) -> Self {
        EllipticBase { q: self.q * self.q, p: self.p * self.p }
    }
}

/// Hard ceiling on the truncation depth; the stock contexts stay far below
/// it for every nome allowed by the magnitude bound.
const DEPTH_CAP: usize = 1_000_000;

/// Number of product rounds needed for the context's accuracy at nome
/// magnitude `pn` (with `0 < pn ≤ 0.95`).
fn truncation_depth(pn: f64, ctx: &PrecisionContext) -> Result<usize> {
    let decades = -pn.log10();
    let needed = ((ctx.digits10() + ctx.theta_truncation_margin) / decades).ceil();
    if needed > DEPTH_CAP as f64 {
        return Err(EvalError::TruncationCap { needed, cap: DEPTH_CAP });
    }
    Ok((needed as usize).max(1))
}

/// Truncated product `∏_{i<depth} (1 − a·pⁱ)(1 − p^{i+1}/a)` for an argument
/// already reduced into the annulus `|p| ≤ |a| < 1`, where every factor is
/// bounded and the tail is below the context's accuracy target.
fn theta_annulus<R: Real>(a: Cx<R>, p: Cx<R>, depth: usize) -> Cx<R> {
    let one = Cx::one();
    let mut acc = one;
    let mut a_pow = a; // a·pⁱ
    let mut p_pow = p; // p^{i+1}
    for _ in 0..depth {
        let f1 = one - a_pow;
        let f2 = (a - p_pow) / a;
        acc = acc * f1 * f2;
        a_pow = a_pow * p;
        p_pow = p_pow * p;
    }
    acc
}

/// Modified theta function `θ(a; p)` in scaled form.
///
/// The value is exact-zero-preserving: an argument whose reduced image hits
/// a lattice zero within the truncation window yields a zero mantissa.
pub fn theta_scaled<R: Real>(a: Cx<R>, p: Cx<R>, ctx: &PrecisionContext) -> Result<Scaled<R>> {
    if a.is_zero() {
        return Err(EvalError::ZeroThetaArgument);
    }
    let pn = p.norm().to_f64();
    if pn == 0.0 {
        return Ok(Scaled::from_cx(Cx::one() - a));
    }
    if pn > 0.95 {
        return Err(EvalError::UnsupportedNome(pn));
    }
    let an = a.norm().to_f64();
    if !an.is_finite() {
        return Ok(Scaled { m: Cx::from_f64(f64::NAN, f64::NAN), e: 0 });
    }
    let depth = truncation_depth(pn, ctx)?;

    // Shift count m = floor(1 − log|a|/log|p|) puts |a·p^m| in [|p|, 1).
    // The clamp covers degenerate norms (an underflowed modulus) without
    // affecting any representable argument.
    let m = (1.0 - an.ln() / pn.ln()).floor().clamp(-100_000.0, 100_000.0) as i64;
    if m == 0 {
        return Ok(Scaled { m: theta_annulus(a, p, depth), e: 0 });
    }
    let y = Scaled::powi_cx(p, m).mul_cx(a).to_cx();
    let prod = theta_annulus(y, p, depth);
    let mono = Scaled::powi_cx(a, m).mul(Scaled::powi_cx(p, m * (m - 1) / 2));
    let mono = if m & 1 == 1 { mono.neg() } else { mono };
    Ok(mono.mul_cx(prod))
}

/// Modified theta function `θ(a; p)` as a plain value; saturates to an
/// infinity or to zero if the true magnitude is outside the `f64` range.
pub fn theta<R: Real>(a: Cx<R>, p: Cx<R>, ctx: &PrecisionContext) -> Result<Cx<R>> {
    Ok(theta_scaled(a, p, ctx)?.to_cx())
}

/// Theta factor required to stay above a magnitude floor (for use in
/// denominators). `floor = 0` rejects only exact zeros.
pub fn theta_checked<R: Real>(
    a: Cx<R>,
    p: Cx<R>,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<Cx<R>> {
    Ok(theta_scaled_checked(a, p, floor, ctx)?.to_cx())
}

/// Scaled theta factor required to stay above a magnitude floor (for use
/// in denominators). The floor comparison happens in log space, so it is
/// reliable even when the value itself leaves the `f64` range.
pub fn theta_scaled_checked<R: Real>(
    a: Cx<R>,
    p: Cx<R>,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<Scaled<R>> {
    let t = theta_scaled(a, p, ctx)?;
    if t.modulus_le(floor) {
        return Err(EvalError::SingularDenominator {
            k: 0,
            magnitude: t.to_cx().norm().to_f64(),
        });
    }
    Ok(t)
}

/// Elliptic shifted factorial `(a; q, p)_n`.
pub fn poch<R: Real>(
    a: Cx<R>,
    base: &EllipticBase<R>,
    n: i64,
    ctx: &PrecisionContext,
) -> Result<Cx<R>> {
    if n < 0 {
        return Err(EvalError::NegativeLength(n));
    }
    let mut acc = Cx::one();
    let mut arg = a;
    for _ in 0..n {
        acc = acc * theta(arg, base.p, ctx)?;
        arg = arg * base.q;
    }
    Ok(acc)
}

/// Elliptic shifted factorial `(a; q, p)_n` in scaled form, for argument
/// chains whose factor magnitudes leave the `f64` range.
pub fn poch_scaled<R: Real>(
    a: Cx<R>,
    base: &EllipticBase<R>,
    n: i64,
    ctx: &PrecisionContext,
) -> Result<Scaled<R>> {
    if n < 0 {
        return Err(EvalError::NegativeLength(n));
    }
    let mut acc = Scaled::one();
    let mut arg = a;
    for _ in 0..n {
        acc = acc.mul(theta_scaled(arg, base.p, ctx)?);
        arg = arg * base.q;
    }
    Ok(acc)
}

/// Scaled factorial with every theta factor required to stay above `floor`
/// in magnitude (denominator use); `floor = 0` rejects only exact zeros.
/// The error's index is the offending factor's position `j`.
pub fn poch_scaled_checked<R: Real>(
    a: Cx<R>,
    base: &EllipticBase<R>,
    n: i64,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<Scaled<R>> {
    if n < 0 {
        return Err(EvalError::NegativeLength(n));
    }
    let mut acc = Scaled::one();
    let mut arg = a;
    for j in 0..n {
        let t = theta_scaled(arg, base.p, ctx)?;
        if t.modulus_le(floor) {
            return Err(EvalError::SingularDenominator {
                k: j as usize,
                magnitude: t.to_cx().norm().to_f64(),
            });
        }
        acc = acc.mul(t);
        arg = arg * base.q;
    }
    Ok(acc)
}

/// Scaled product `(a₁, …, a_k; q, p)_n` over a nonempty parameter list.
pub fn poch_multi_scaled<R: Real>(
    params: &[Cx<R>],
    base: &EllipticBase<R>,
    n: i64,
    ctx: &PrecisionContext,
) -> Result<Scaled<R>> {
    if params.is_empty() {
        return Err(EvalError::EmptyParams);
    }
    let mut acc = Scaled::one();
    for &a in params {
        acc = acc.mul(poch_scaled(a, base, n, ctx)?);
    }
    Ok(acc)
}

/// Scaled multi-parameter product with the floor check of
/// [`poch_scaled_checked`] applied to every factor.
pub fn poch_multi_scaled_checked<R: Real>(
    params: &[Cx<R>],
    base: &EllipticBase<R>,
    n: i64,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<Scaled<R>> {
    if params.is_empty() {
        return Err(EvalError::EmptyParams);
    }
    let mut acc = Scaled::one();
    for &a in params {
        acc = acc.mul(poch_scaled_checked(a, base, n, floor, ctx)?);
    }
    Ok(acc)
}

/// `(a; q, p)_n` with every theta factor required to stay above `floor`.
/// The error's index is the offending factor's position `j`.
pub fn poch_checked<R: Real>(
    a: Cx<R>,
    base: &EllipticBase<R>,
    n: i64,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<Cx<R>> {
    if n < 0 {
        return Err(EvalError::NegativeLength(n));
    }
    let mut acc = Cx::one();
    let mut arg = a;
    for j in 0..n {
        let t = theta(arg, base.p, ctx)?;
        let m = t.norm().to_f64();
        if m <= floor {
            return Err(EvalError::SingularDenominator { k: j as usize, magnitude: m });
        }
        acc = acc * t;
        arg = arg * base.q;
    }
    Ok(acc)
}

/// Product `(a₁, …, a_k; q, p)_n` over a nonempty parameter list.
pub fn poch_multi<R: Real>(
    params: &[Cx<R>],
    base: &EllipticBase<R>,
    n: i64,
    ctx: &PrecisionContext,
) -> Result<Cx<R>> {
    if params.is_empty() {
        return Err(EvalError::EmptyParams);
    }
    let mut acc = Cx::one();
    for &a in params {
        acc = acc * poch(a, base, n, ctx)?;
    }
    Ok(acc)
}

/// Multi-parameter product with the denominator floor check of
/// [`poch_checked`] applied to every factor.
pub fn poch_multi_checked<R: Real>(
    params: &[Cx<R>],
    base: &EllipticBase<R>,
    n: i64,
    floor: f64,
    ctx: &PrecisionContext,
) -> Result<Cx<R>> {
    if params.is_empty() {
        return Err(EvalError::EmptyParams);
    }
    let mut acc = Cx::one();
    for &a in params {
        acc = acc * poch_checked(a, base, n, floor, ctx)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Rewriting-rule checks
// ---------------------------------------------------------------------------

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Residual of the theta quasi-periodicity rule `θ(a;p) = −a·θ(ap;p)`.
pub fn check_quasi_theta<R: Real>(a: Cx<R>, p: Cx<R>, ctx: &PrecisionContext) -> Result<f64> {
    let lhs = theta(a, p, ctx)?;
    let rhs = -(a * theta(a * p, p, ctx)?);
    Ok(crate::numerics::rel_residual(lhs, rhs))
}

/// Residual of the factorial shift rule
/// `(a;q,p)_n = (−a)ⁿ q^(n(n−1)/2) (ap;q,p)_n`.
pub fn check_quasi_poch<R: Real>(
    a: Cx<R>,
    base: &EllipticBase<R>,
    n: i64,
    ctx: &PrecisionContext,
) -> Result<f64> {
    let lhs = poch(a, base, n, ctx)?;
    let rhs = (-a).powi(n) * base.q.powi(binom2(n)) * poch(a * base.p, base, n, ctx)?;
    Ok(crate::numerics::rel_residual(lhs, rhs))
}

/// Residual of the base-doubling rule
///
/// ```text
/// (a;q,p)_2n   (a, aq, a/p, aqp; q², p²)_n   ( b )ⁿ
/// ---------- = --------------------------- · ( - )
/// (b;q,p)_2n   (b, bq, b/p, bqp; q², p²)_n   ( a )
/// ```
///
/// Fails with a singularity error if a denominator factor is exactly zero.
pub fn check_double_argument<R: Real>(
    a: Cx<R>,
    b: Cx<R>,
    base: &EllipticBase<R>,
    n: i64,
    ctx: &PrecisionContext,
) -> Result<f64> {
    let q = base.q;
    let p = base.p;
    let b2 = base.squared();
    // Each factorial alone can leave the f64 range long before either side
    // of the rule (a bounded ratio) does, so everything stays scaled until
    // the final division.
    let lhs = poch_scaled(a, base, 2 * n, ctx)?
        .div(poch_scaled_checked(b, base, 2 * n, 0.0, ctx)?)
        .to_cx();
    let num = poch_multi_scaled(&[a, a * q, a / p, a * q * p], &b2, n, ctx)?;
    let den = poch_multi_scaled_checked(&[b, b * q, b / p, b * q * p], &b2, n, 0.0, ctx)?;
    let rhs = num.div(den).to_cx() * (b / a).powi(n);
    Ok(crate::numerics::rel_residual(lhs, rhs))
}

/// Residual of the quadruple-ratio rule
///
/// ```text
/// (a, −a, a/p, −ap; q, p²)_n   (a²; q², p²)_n   (  a )ⁿ
/// -------------------------- = -------------- · ( − - )
/// (b, −b, bp, −b/p; q, p²)_n   (b²; q², p²)_n   (  b )
/// ```
pub fn check_quad_ratio<R: Real>(
    a: Cx<R>,
    b: Cx<R>,
    q: Cx<R>,
    p: Cx<R>,
    n: i64,
    ctx: &PrecisionContext,
) -> Result<f64> {
    let p2 = p * p;
    let base1 = EllipticBase::new(q, p2);
    let base2 = EllipticBase::new(q * q, p2);
    let lhs = poch_multi_scaled(&[a, -a, a / p, -(a * p)], &base1, n, ctx)?
        .div(poch_multi_scaled_checked(&[b, -b, b * p, -(b / p)], &base1, n, 0.0, ctx)?)
        .to_cx();
    let rhs = poch_scaled(a * a, &base2, n, ctx)?
        .div(poch_scaled_checked(b * b, &base2, n, 0.0, ctx)?)
        .to_cx()
        * (-(a / b)).powi(n);
    Ok(crate::numerics::rel_residual(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Dd;

    fn ctx_dd() -> PrecisionContext {
        PrecisionContext::double_double()
    }

    #[test]
    fn theta_at_zero_nome_is_one_minus_a() {
        let v = theta(Cx::<f64>::from_f64(0.5, 0.0), Cx::zero(), &ctx_dd()).unwrap();
        assert_eq!(v, Cx::from_f64(0.5, 0.0));
    }

    #[test]
    fn theta_hits_lattice_zeros_exactly() {
        let ctx = ctx_dd();
        let p = Cx::<Dd>::from_f64(0.3, 0.0);
        assert!(theta(p, p, &ctx).unwrap().is_zero());
        assert!(theta(Cx::<Dd>::one(), p, &ctx).unwrap().is_zero());
    }

    #[test]
    fn theta_rejects_bad_inputs() {
        let ctx = ctx_dd();
        assert!(matches!(
            theta(Cx::<f64>::zero(), Cx::from_f64(0.1, 0.0), &ctx),
            Err(EvalError::ZeroThetaArgument)
        ));
        assert!(matches!(
            theta(Cx::<f64>::one(), Cx::from_f64(0.96, 0.0), &ctx),
            Err(EvalError::UnsupportedNome(_))
        ));
    }

    #[test]
    fn truncation_matches_deep_oracle() {
        // Engine depth vs. a fixed 200-round product at the worst allowed nome.
        let ctx = ctx_dd();
        let a = Cx::<Dd>::from_f64(0.83, -0.41);
        let p = Cx::<Dd>::from_f64(0.42, 0.35); // |p| ≈ 0.55
        let v = theta(a, p, &ctx).unwrap();
        let mut oracle = Cx::<Dd>::one();
        let mut a_pow = a;
        let mut p_pow = p;
        for _ in 0..200 {
            oracle = oracle * (Cx::one() - a_pow) * ((a - p_pow) / a);
            a_pow = a_pow * p;
            p_pow = p_pow * p;
        }
        assert!(crate::numerics::rel_residual(v, oracle) < 1e-30);
    }

    #[test]
    fn poch_conventions() {
        let ctx = ctx_dd();
        let base = EllipticBase::new(Cx::<Dd>::from_f64(0.5, 0.0), Cx::from_f64(0.3, 0.0));
        // Empty product.
        assert_eq!(poch(Cx::from_f64(0.7, 0.2), &base, 0, &ctx).unwrap(), Cx::one());
        // (q⁻²; q, p)₃ contains θ(q⁻²·q²; p) = θ(1; p) = 0, hit exactly
        // because q = 1/2 makes the argument chain exact.
        let a = Cx::<Dd>::from_f64(4.0, 0.0);
        assert!(poch(a, &base, 3, &ctx).unwrap().is_zero());
        assert!(!poch(a, &base, 2, &ctx).unwrap().is_zero());
        assert!(matches!(
            poch(a, &base, -1, &ctx),
            Err(EvalError::NegativeLength(-1))
        ));
    }

    #[test]
    fn poch_multi_rejects_empty_lists() {
        let ctx = ctx_dd();
        let base = EllipticBase::new(Cx::<f64>::from_f64(0.5, 0.0), Cx::from_f64(0.3, 0.0));
        assert!(matches!(
            poch_multi::<f64>(&[], &base, 2, &ctx),
            Err(EvalError::EmptyParams)
        ));
    }

    #[test]
    fn checked_variants_flag_small_factors() {
        let ctx = ctx_dd();
        let p = Cx::<f64>::from_f64(0.3, 0.0);
        // θ(1;p) = 0 exactly: rejected at any floor.
        assert!(matches!(
            theta_checked(Cx::<f64>::one(), p, 0.0, &ctx),
            Err(EvalError::SingularDenominator { k: 0, .. })
        ));
        let base = EllipticBase::new(Cx::<f64>::from_f64(0.5, 0.0), p);
        let e = poch_checked(Cx::from_f64(4.0, 0.0), &base, 3, 1e-5, &ctx);
        assert!(matches!(e, Err(EvalError::SingularDenominator { k: 2, .. })));
    }

    #[test]
    fn quasi_periodicity_residuals_are_tiny() {
        let ctx = ctx_dd();
        let a = Cx::<Dd>::from_f64(0.9, 0.7);
        let p = Cx::<Dd>::from_f64(-0.2, 0.25);
        assert!(check_quasi_theta(a, p, &ctx).unwrap() < 1e-28);
        // A theta zero on both sides gives residual exactly 0.
        assert_eq!(check_quasi_theta(Cx::<Dd>::one(), p, &ctx).unwrap(), 0.0);
        let base = EllipticBase::new(Cx::<Dd>::from_f64(0.35, -0.3), p);
        assert!(check_quasi_poch(a, &base, 5, &ctx).unwrap() < 1e-27);
    }

    #[test]
    fn base_doubling_and_quad_ratio_residuals_are_tiny() {
        let ctx = ctx_dd();
        let a = Cx::<Dd>::from_f64(1.1, 0.4);
        let b = Cx::<Dd>::from_f64(-0.5, 0.8);
        let q = Cx::<Dd>::from_f64(0.3, 0.2);
        let p = Cx::<Dd>::from_f64(0.15, -0.4);
        let base = EllipticBase::new(q, p);
        assert!(check_double_argument(a, b, &base, 3, &ctx).unwrap() < 1e-26);
        assert!(check_quad_ratio(a, b, q, p, 3, &ctx).unwrap() < 1e-26);
    }
}
