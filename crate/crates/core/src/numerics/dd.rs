//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`
//! words giving roughly 31 significant decimal digits.
//!
//! The building blocks are the classic error-free transformations: `two_sum`
//! recovers the exact rounding error of a floating addition, and `two_prod`
//! recovers the exact error of a multiplication through `f64::mul_add`,
//! which is correct whether or not the target has a hardware FMA. Division
//! refines a word-by-word quotient twice, and square root performs one
//! Newton step on the double-precision seed; both deliver full double-double
//! accuracy for the magnitudes used here.
//!
//! Values produced by this module are normalized: `hi = fl(hi + lo)`, so
//! `|lo| ≤ ulp(hi)/2`. Comparison derives from the `(hi, lo)` lexicographic
//! order, which agrees with the numeric order exactly when both operands
//! are normalized.

/// Exact sum: returns `(s, e)` with `s = fl(a+b)` and `a + b = s + e`.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Exact sum assuming `|a| ≥ |b|` (or `a == 0`).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Exact product: returns `(p, e)` with `p = fl(a·b)` and `a·b = p + e`.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

/// Double-double value. Fields are public for inspection; arithmetic keeps
/// them normalized.
#[derive(Copy, Clone, Debug, Default, PartialEq, PartialOrd)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    /// Renormalizes a dominant/residual pair.
    #[inline]
    fn renorm(hi: f64, lo: f64) -> Dd {
        let (h, l) = quick_two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    /// Exact widening of a double.
    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Nearest double. For normalized values this is just `hi`.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    fn add_f64(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        Dd::renorm(s, e + self.lo)
    }

    #[inline]
    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::renorm(p, f64::mul_add(self.lo, b, e))
    }

    /// Square root by one double-double Newton correction of the `f64` seed.
    /// Negative inputs yield NaN, mirroring `f64::sqrt`.
    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = self - Dd { hi: p, lo: e };
        let dx = r.to_f64() / (2.0 * x);
        Dd::renorm(x, dx)
    }

    #[inline]
    pub fn max(self, other: Dd) -> Dd {
        if self > other {
            self
        } else {
            other
        }
    }
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s2, e2) = quick_two_sum(s, e + t);
        Dd::renorm(s2, e2 + f)
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        Dd::renorm(p, e)
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        Dd::renorm(q1, q2).add_f64(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_recovers_rounding_error() {
        let a = Dd::from_f64(1.0);
        let b = Dd::from_f64(1e-30);
        let s = a + b;
        assert_eq!(s.hi, 1.0);
        assert_eq!(s.lo, 1e-30);
    }

    #[test]
    fn mul_is_exact_for_exact_products() {
        let a = Dd::from_f64(1.5);
        let b = Dd::from_f64(2.5);
        let p = a * b;
        assert_eq!(p.hi, 3.75);
        assert_eq!(p.lo, 0.0);
    }

    #[test]
    fn div_round_trips() {
        let a = Dd::from_f64(1.0) / Dd::from_f64(3.0);
        let b = a * Dd::from_f64(3.0);
        let err = (b - Dd::ONE).abs();
        assert!(err.hi < 1e-31, "1/3*3 error {:?}", err);
    }

    #[test]
    fn div_beats_double_precision() {
        // 1/3 in double-double must carry a correction word of the right size.
        let a = Dd::from_f64(1.0) / Dd::from_f64(3.0);
        assert_eq!(a.hi, 1.0 / 3.0);
        assert!(a.lo.abs() > 0.0 && a.lo.abs() < f64::EPSILON);
    }

    #[test]
    fn sqrt_squares_back() {
        let x = Dd::from_f64(2.0).sqrt();
        let err = (x * x - Dd::from_f64(2.0)).abs();
        assert!(err.hi < 1e-31, "sqrt(2)^2 error {:?}", err);
    }

    #[test]
    fn sqrt_of_negative_is_nan() {
        assert!(Dd::from_f64(-1.0).sqrt().hi.is_nan());
    }

    #[test]
    fn compare_uses_low_word() {
        let a = Dd { hi: 1.0, lo: 1e-20 };
        let b = Dd { hi: 1.0, lo: -1e-20 };
        assert!(a > b);
        assert!(Dd::from_f64(2.0) > Dd::from_f64(1.0));
    }

    #[test]
    fn abs_flips_negative_values() {
        let a = Dd { hi: -1.0, lo: 1e-20 };
        let b = a.abs();
        assert!(b.hi > 0.0);
        assert_eq!(b, -a);
    }
}
