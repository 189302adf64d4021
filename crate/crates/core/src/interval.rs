//! Interval arithmetic over `f64` with certified comparisons.
//!
//! Every bound is computed with the default round-to-nearest mode. When the
//! bound may be inexact it is pushed one representable step outward, so the
//! exact real result of an operation always lies inside the returned interval.
//! Exactness of a single rounded operation is detected with error-free
//! transformations (TwoSum for sums, FMA residuals for products and quotients),
//! which keeps singleton inputs singleton whenever the arithmetic happens to be
//! exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

use crate::scalar::{GeomError, Sign};

/// Below this magnitude an FMA residual may underflow and is no longer exact.
const RESIDUAL_SAFE_MIN: f64 = 1.0e-280;

/// Outcome of a sign or order query on intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certainty {
    Negative,
    Zero,
    Positive,
    /// The interval does not determine the answer.
    Uncertain,
}

impl Certainty {
    pub fn decided(self) -> Option<Sign> {
        match self {
            Certainty::Negative => Some(Sign::Negative),
            Certainty::Zero => Some(Sign::Zero),
            Certainty::Positive => Some(Sign::Positive),
            Certainty::Uncertain => None,
        }
    }

    pub fn is_uncertain(self) -> bool {
        self == Certainty::Uncertain
    }
}

impl From<Sign> for Certainty {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Negative => Certainty::Negative,
            Sign::Zero => Certainty::Zero,
            Sign::Positive => Certainty::Positive,
        }
    }
}

/// A closed interval `[inf, sup]` of reals with `f64` bounds.
///
/// Bounds may be infinite after overflow but are never NaN.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    inf: f64,
    sup: f64,
}

impl Interval {
    /// Builds `[inf, sup]`.
    ///
    /// # Panics
    ///
    /// Panics if either bound is NaN or `inf > sup`.
    pub fn new(inf: f64, sup: f64) -> Self {
        assert!(
            !inf.is_nan() && !sup.is_nan() && inf <= sup,
            "invalid interval bounds [{inf}, {sup}]"
        );
        Interval { inf, sup }
    }

    /// The singleton `[x, x]`; `None` for non-finite `x`.
    pub fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(Interval { inf: x, sup: x })
    }

    pub fn point(x: f64) -> Self {
        Self::from_f64(x).expect("interval point must be finite")
    }

    #[inline]
    pub fn inf(&self) -> f64 {
        self.inf
    }

    #[inline]
    pub fn sup(&self) -> f64 {
        self.sup
    }

    pub fn width(&self) -> f64 {
        self.sup - self.inf
    }

    pub fn is_singleton(&self) -> bool {
        self.inf == self.sup
    }

    pub fn contains_zero(&self) -> bool {
        self.inf <= 0.0 && self.sup >= 0.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.inf <= x && x <= self.sup
    }

    /// True if `other` lies entirely inside `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.inf <= other.inf && other.sup <= self.sup
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            inf: self.inf.min(other.inf),
            sup: self.sup.max(other.sup),
        }
    }

    pub fn sign(&self) -> Certainty {
        if self.inf > 0.0 {
            Certainty::Positive
        } else if self.sup < 0.0 {
            Certainty::Negative
        } else if self.inf == 0.0 && self.sup == 0.0 {
            Certainty::Zero
        } else {
            Certainty::Uncertain
        }
    }

    /// Order of the values contained in `self` and `other`.
    ///
    /// Touching intervals (`a.sup == b.inf`) are uncertain unless both are the
    /// same singleton.
    pub fn compare(&self, other: &Interval) -> Certainty {
        if self.sup < other.inf {
            Certainty::Negative
        } else if self.inf > other.sup {
            Certainty::Positive
        } else if self.is_singleton() && other.is_singleton() && self.inf == other.inf {
            Certainty::Zero
        } else {
            Certainty::Uncertain
        }
    }

    /// Quotient `self / rhs`; signals uncertainty when `rhs` contains zero.
    pub fn checked_div(&self, rhs: &Interval) -> Result<Interval, GeomError> {
        if rhs.contains_zero() {
            return Err(GeomError::Uncertain);
        }
        let (a, b) = (self, rhs);
        let c = [
            (a.inf, b.inf),
            (a.inf, b.sup),
            (a.sup, b.inf),
            (a.sup, b.sup),
        ];
        let inf = c.iter().map(|&(x, y)| div_down(x, y)).fold(f64::INFINITY, f64::min);
        let sup = c.iter().map(|&(x, y)| div_up(x, y)).fold(f64::NEG_INFINITY, f64::max);
        Ok(Interval { inf, sup })
    }

    /// `self * self`, tighter than the general product when zero is inside.
    pub fn square(&self) -> Interval {
        if self.inf >= 0.0 {
            Interval {
                inf: mul_down(self.inf, self.inf),
                sup: mul_up(self.sup, self.sup),
            }
        } else if self.sup <= 0.0 {
            Interval {
                inf: mul_down(self.sup, self.sup),
                sup: mul_up(self.inf, self.inf),
            }
        } else {
            let m = self.sup.max(-self.inf);
            Interval { inf: 0.0, sup: mul_up(m, m) }
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.inf, self.sup)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.inf, self.sup)
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval { inf: 0.0, sup: 0.0 }
    }
}

impl Add for Interval {
    type Output = Interval;

    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            inf: add_down(self.inf, rhs.inf),
            sup: add_up(self.sup, rhs.sup),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;

    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            inf: add_down(self.inf, -rhs.sup),
            sup: add_up(self.sup, -rhs.inf),
        }
    }
}

impl Neg for Interval {
    type Output = Interval;

    #[inline]
    fn neg(self) -> Interval {
        Interval { inf: -self.sup, sup: -self.inf }
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        let (a, b) = (self, rhs);
        if a.inf >= 0.0 && b.inf >= 0.0 {
            return Interval {
                inf: mul_down(a.inf, b.inf),
                sup: mul_up(a.sup, b.sup),
            };
        }
        if a.is_singleton() && b.is_singleton() {
            return Interval {
                inf: mul_down(a.inf, b.inf),
                sup: mul_up(a.inf, b.inf),
            };
        }
        let c = [
            (a.inf, b.inf),
            (a.inf, b.sup),
            (a.sup, b.inf),
            (a.sup, b.sup),
        ];
        let inf = c.iter().map(|&(x, y)| mul_down(x, y)).fold(f64::INFINITY, f64::min);
        let sup = c.iter().map(|&(x, y)| mul_up(x, y)).fold(f64::NEG_INFINITY, f64::max);
        Interval { inf, sup }
    }
}

impl Zero for Interval {
    fn zero() -> Self {
        Interval { inf: 0.0, sup: 0.0 }
    }

    fn is_zero(&self) -> bool {
        self.sign() == Certainty::Zero
    }
}

impl One for Interval {
    fn one() -> Self {
        Interval { inf: 1.0, sup: 1.0 }
    }
}

impl FromPrimitive for Interval {
    fn from_i64(n: i64) -> Option<Self> {
        Some(bracket_integer(n as i128, n as f64))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(bracket_integer(n as i128, n as f64))
    }

    fn from_f64(x: f64) -> Option<Self> {
        Interval::from_f64(x)
    }
}

fn bracket_integer(exact: i128, rounded: f64) -> Interval {
    // every i64/u64 is below 2^64, so `rounded as i128` is exact
    match (rounded as i128).cmp(&exact) {
        Ordering::Equal => Interval::point(rounded),
        Ordering::Less => Interval::new(rounded, rounded.next_up()),
        Ordering::Greater => Interval::new(rounded.next_down(), rounded),
    }
}

impl PartialOrd for Interval {
    /// Certain order only; overlapping intervals are incomparable.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).decided().map(Sign::to_ordering)
    }
}

// Directed rounding helpers. `*_down` returns a value <= the exact result,
// `*_up` one >= it.

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_nan() {
        return f64::NEG_INFINITY;
    }
    if s.is_infinite() {
        return if s > 0.0 && a.is_finite() && b.is_finite() { f64::MAX } else { s };
    }
    let err = two_sum_err(a, b, s);
    if err < 0.0 || err.is_nan() {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    -add_down(-a, -b)
}

#[inline]
pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return if p > 0.0 && a.is_finite() && b.is_finite() { f64::MAX } else { p };
    }
    if p.abs() < RESIDUAL_SAFE_MIN {
        return p.next_down();
    }
    let err = a.mul_add(b, -p);
    if err < 0.0 || err.is_nan() {
        p.next_down()
    } else {
        p
    }
}

#[inline]
pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    -mul_down(-a, b)
}

#[inline]
pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    debug_assert!(b != 0.0);
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if q.is_nan() {
        return f64::NEG_INFINITY;
    }
    if !a.is_finite() || !b.is_finite() {
        // x/inf collapses to a signed zero, the limit of the quotient set;
        // inf/x keeps the right sign.
        return q;
    }
    if q.is_infinite() {
        return if q > 0.0 { f64::MAX } else { q };
    }
    if q.abs() < RESIDUAL_SAFE_MIN || a.abs() < RESIDUAL_SAFE_MIN {
        return q.next_down();
    }
    // a - q*b, exactly; the true quotient is q + r/b
    let r = (-q).mul_add(b, a);
    if r.is_nan() || (r != 0.0 && (r < 0.0) != (b < 0.0)) {
        q.next_down()
    } else {
        q
    }
}

#[inline]
pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    -div_down(-a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use proptest::prelude::*;

    fn contains_exact(iv: &Interval, q: &Rational) -> bool {
        let lo = if iv.inf().is_finite() { Some(Rational::from_f64_exact(iv.inf())) } else { None };
        let hi = if iv.sup().is_finite() { Some(Rational::from_f64_exact(iv.sup())) } else { None };
        lo.map_or(iv.inf() == f64::NEG_INFINITY, |lo| &lo <= q)
            && hi.map_or(iv.sup() == f64::INFINITY, |hi| q <= &hi)
    }

    #[test]
    fn from_double_is_singleton() {
        assert_eq!(Interval::from_f64(1.5), Some(Interval::new(1.5, 1.5)));
        assert_eq!(Interval::from_f64(0.0), Some(Interval::new(0.0, 0.0)));
        let tenth = Interval::from_f64(0.1).unwrap();
        assert_eq!(tenth.inf(), 0.1);
        assert_eq!(tenth.sup(), 0.1);
        assert!(Interval::from_f64(f64::NAN).is_none());
        assert!(Interval::from_f64(f64::INFINITY).is_none());
    }

    #[test]
    fn basic_ops() {
        let s = Interval::new(1.0, 2.0) + Interval::new(3.0, 4.0);
        assert!(s.inf() <= 4.0 && s.sup() >= 6.0);
        assert!(s.width() <= 2.0 + 2.0 * f64::EPSILON * 8.0);
        // exact endpoint sums stay tight
        assert_eq!(s, Interval::new(4.0, 6.0));

        let p = Interval::new(-1.0, 2.0) * Interval::new(3.0, 4.0);
        assert!(p.inf() <= -4.0 && p.sup() >= 8.0);
        assert_eq!(p, Interval::new(-4.0, 8.0));

        let third = Interval::point(1.0).checked_div(&Interval::point(3.0)).unwrap();
        let exact = Rational::from_f64_exact(1.0) / Rational::from_f64_exact(3.0);
        assert!(third.inf() < third.sup());
        assert!(Rational::from_f64_exact(third.inf()) < exact);
        assert!(exact < Rational::from_f64_exact(third.sup()));
        assert_eq!(third.sup(), third.inf().next_up());
    }

    #[test]
    fn division_by_zero_containing_is_uncertain() {
        let r = Interval::point(1.0).checked_div(&Interval::new(-1.0, 1.0));
        assert_eq!(r, Err(GeomError::Uncertain));
        let r = Interval::point(1.0).checked_div(&Interval::point(0.0));
        assert_eq!(r, Err(GeomError::Uncertain));
    }

    #[test]
    fn signs() {
        assert_eq!(Interval::new(1e-300, 2e-300).sign(), Certainty::Positive);
        assert_eq!(Interval::new(0.0, 0.0).sign(), Certainty::Zero);
        assert_eq!(Interval::new(-1.0, 1.0).sign(), Certainty::Uncertain);
        assert_eq!(Interval::new(-2.0, -1.0).sign(), Certainty::Negative);
        assert_eq!(Interval::new(0.0, 1.0).sign(), Certainty::Uncertain);
    }

    #[test]
    fn comparisons() {
        let c = |a: (f64, f64), b: (f64, f64)| Interval::new(a.0, a.1).compare(&Interval::new(b.0, b.1));
        assert_eq!(c((1.0, 2.0), (3.0, 4.0)), Certainty::Negative);
        assert_eq!(c((2.0, 2.0), (2.0, 2.0)), Certainty::Zero);
        assert_eq!(c((1.0, 3.0), (2.0, 4.0)), Certainty::Uncertain);
        assert_eq!(c((1.0, 2.0), (2.0, 3.0)), Certainty::Uncertain);
        assert_eq!(c((5.0, 6.0), (3.0, 4.0)), Certainty::Positive);
    }

    #[test]
    fn overflow_keeps_inclusion_and_no_nan() {
        let big = Interval::point(f64::MAX);
        let s = big + big;
        assert_eq!(s.inf(), f64::MAX);
        assert_eq!(s.sup(), f64::INFINITY);
        let p = big * big;
        assert_eq!(p.sup(), f64::INFINITY);
        let unbounded = Interval::new(0.0, f64::INFINITY);
        let z = unbounded * Interval::point(0.0);
        assert!(!z.inf().is_nan() && !z.sup().is_nan());
        let q = Interval::new(1.0, f64::INFINITY)
            .checked_div(&Interval::new(1.0, f64::INFINITY))
            .unwrap();
        assert!(q.inf() <= 0.0 + f64::MIN_POSITIVE && q.sup() == f64::INFINITY);
    }

    #[test]
    fn integers_beyond_2_53_are_bracketed() {
        let n = (1i64 << 53) + 1;
        let iv = Interval::from_i64(n).unwrap();
        assert!(iv.inf() < iv.sup());
        assert!((iv.inf() as i128) < n as i128 && n as i128 <= iv.sup() as i128);
    }

    fn any_double() -> impl Strategy<Value = f64> {
        prop_oneof![
            -1e3f64..1e3,
            proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO,
            (-1.0f64..1.0).prop_map(|x| x * 1e-310),
            (-1.0f64..1.0).prop_map(|x| x * 1e300),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(4000))]

        #[test]
        fn inclusion_for_binary_ops(x in any_double(), y in any_double()) {
            let (a, b) = (Interval::point(x), Interval::point(y));
            let (qx, qy) = (Rational::from_f64_exact(x), Rational::from_f64_exact(y));
            prop_assert!(contains_exact(&(a + b), &(&qx + &qy)));
            prop_assert!(contains_exact(&(a - b), &(&qx - &qy)));
            prop_assert!(contains_exact(&(a * b), &(&qx * &qy)));
            if y != 0.0 {
                let d = a.checked_div(&b).unwrap();
                prop_assert!(contains_exact(&d, &(&qx / &qy)));
                prop_assert!(d.sup() <= d.inf().next_up().next_up()
                    || d.inf() == f64::MAX || d.sup() == -f64::MAX);
            }
        }

        #[test]
        fn monotone_containment(
            x in -1e6f64..1e6, y in -1e6f64..1e6,
            dx in 0.0f64..10.0, dy in 0.0f64..10.0,
        ) {
            let a = Interval::point(x);
            let b = Interval::point(y);
            let a2 = Interval::new(x - dx, x + dx).hull(&a);
            let b2 = Interval::new(y - dy, y + dy).hull(&b);
            prop_assert!((a2 + b2).encloses(&(a + b)));
            prop_assert!((a2 - b2).encloses(&(a - b)));
            prop_assert!((a2 * b2).encloses(&(a * b)));
            if !b2.contains_zero() {
                prop_assert!(a2.checked_div(&b2).unwrap().encloses(&a.checked_div(&b).unwrap()));
            }
        }

        #[test]
        fn sign_never_contradicts_members(lo in -10.0f64..10.0, w in 0.0f64..5.0, t in 0.0f64..=1.0) {
            let iv = Interval::new(lo, lo + w);
            let member = iv.inf() + t * (iv.sup() - iv.inf());
            prop_assume!(iv.contains(member));
            match iv.sign().decided() {
                Some(Sign::Positive) => prop_assert!(member > 0.0),
                Some(Sign::Negative) => prop_assert!(member < 0.0),
                Some(Sign::Zero) => prop_assert!(member == 0.0),
                None => {}
            }
        }
    }
}
