//! Exact rational arithmetic, the fallback number type of the filters.
//!
//! [`Rational`] wraps an arbitrary-precision `BigRational` kept in canonical
//! form (positive denominator, reduced). Every arithmetic operation bumps a
//! thread-local counter so tests and the benchmark can verify that the exact
//! path was, or was not, taken.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::float::FloatCore;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::interval::Interval;
use crate::scalar::Sign;

thread_local! {
    static EXACT_OPS: Cell<u64> = const { Cell::new(0) };
}

/// Number of exact arithmetic operations performed on this thread.
pub fn exact_op_count() -> u64 {
    EXACT_OPS.with(Cell::get)
}

pub fn reset_exact_op_count() {
    EXACT_OPS.with(|c| c.set(0));
}

#[inline]
fn count_op() {
    EXACT_OPS.with(|c| c.set(c.get() + 1));
}

/// An exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// The exact value of a finite double; `None` for NaN or infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        let (mantissa, exponent, sign) = FloatCore::integer_decode(x);
        if mantissa == 0 {
            return Some(Rational::zero());
        }
        // strip factors of two so the result is already reduced
        let tz = mantissa.trailing_zeros();
        let mantissa = mantissa >> tz;
        let exponent = exponent as i32 + tz as i32;
        let mut num = BigInt::from(mantissa);
        if sign < 0 {
            num = -num;
        }
        let r = if exponent >= 0 {
            BigRational::from_integer(num << exponent as usize)
        } else {
            BigRational::new_raw(num, BigInt::one() << (-exponent) as usize)
        };
        Some(Rational(r))
    }

    /// Like [`Rational::from_f64`] for inputs known to be finite.
    pub fn from_f64_exact(x: f64) -> Self {
        Self::from_f64(x).expect("non-finite double has no rational value")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn sign(&self) -> Sign {
        match self.0.numer().sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        count_op();
        Rational(self.0.recip())
    }

    /// Nearest double (ties to even), saturating to infinities.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.0.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// A tight interval around the value: `[x, x]` when the value is a double,
    /// otherwise two adjacent doubles (or `MAX`/infinity beyond the range).
    pub fn to_interval(&self) -> Interval {
        let mut x = self.to_f64();
        if x == f64::INFINITY {
            return Interval::new(f64::MAX, f64::INFINITY);
        }
        if x == f64::NEG_INFINITY {
            return Interval::new(f64::NEG_INFINITY, -f64::MAX);
        }
        // `to_f64` is correctly rounded, the loops only guard the contract
        loop {
            let rx = Rational::from_f64_exact(x).0;
            match rx.cmp(&self.0) {
                Ordering::Equal => return Interval::point(x),
                Ordering::Less => {
                    let up = x.next_up();
                    if up == f64::INFINITY || Rational::from_f64_exact(up).0 >= self.0 {
                        return Interval::new(x, up);
                    }
                    x = up;
                }
                Ordering::Greater => {
                    let down = x.next_down();
                    if down == f64::NEG_INFINITY || Rational::from_f64_exact(down).0 <= self.0 {
                        return Interval::new(down, x);
                    }
                    x = down;
                }
            }
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    /// `num/den`, or just `num` for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ParseRationalError::Malformed(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| malformed())?;
        let den: BigInt = den.parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $check:expr) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;

            #[inline]
            fn $method(self, rhs: &'a Rational) -> Rational {
                $check(rhs);
                count_op();
                Rational((&self.0).$method(&rhs.0))
            }
        }

        impl $trait for Rational {
            type Output = Rational;

            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                $check(&rhs);
                count_op();
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

fn no_check(_: &Rational) {}

fn nonzero_divisor(d: &Rational) {
    assert!(!d.is_zero(), "exact division by zero");
}

binop!(Add, add, no_check);
binop!(Sub, sub, no_check);
binop!(Mul, mul, no_check);
binop!(Div, div, nonzero_divisor);

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        count_op();
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        count_op();
        Rational(-&self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

impl FromPrimitive for Rational {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Rational::from_integer(n))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(Rational::from_integer(n))
    }

    fn from_f64(x: f64) -> Option<Self> {
        Rational::from_f64(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn from_double() {
        assert_eq!(Rational::from_f64_exact(0.5), q("1/2"));
        assert_eq!(Rational::from_f64_exact(-3.0), q("-3"));
        // 0.1 = 0x3FB999999999999A: mantissa 0x1999999999999A, exponent -56
        let expected = Rational::new(BigInt::from(0x1999999999999Au64), BigInt::one() << 56usize);
        assert_eq!(expected, Rational::new(BigInt::from(3602879701896397u64), BigInt::one() << 55usize));
        assert_eq!(Rational::from_f64_exact(0.1), expected);
        assert_eq!(Rational::from_f64(f64::NAN), None);
        assert_eq!(Rational::from_f64(f64::NEG_INFINITY), None);
        assert_eq!(Rational::from_f64_exact(-0.0), Rational::zero());
        assert_eq!(Rational::from_f64_exact(1e300).denom(), &BigInt::one());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&q("1/3") + &q("1/6"), q("1/2"));
        assert_eq!(&q("1/3") * &q("3"), q("1"));
        assert_eq!(&q("1/3") - &q("1/3"), q("0"));
        assert_eq!((&q("1/3") - &q("1/3")).denom(), &BigInt::one());
        assert_eq!(&q("3/4") / &q("-3/2"), q("-1/2"));
    }

    #[test]
    #[should_panic(expected = "exact division by zero")]
    fn division_by_zero_is_a_bug() {
        let _ = &q("1") / &q("0");
    }

    #[test]
    fn signs() {
        assert_eq!(q("0/1").sign(), Sign::Zero);
        assert_eq!(q("-2/7").sign(), Sign::Negative);
        let big = Rational::new(BigInt::from(10).pow(40), BigInt::from(3));
        assert_eq!(big.sign(), Sign::Positive);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(q("6/-4").to_string(), "-3/2");
        assert_eq!(q(" 7 ").to_string(), "7");
        assert_eq!(q("0/5").to_string(), "0");
        assert!(matches!("1/0".parse::<Rational>(), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(matches!("abc".parse::<Rational>(), Err(ParseRationalError::Malformed(_))));
        assert!(matches!("1/2/3".parse::<Rational>(), Err(ParseRationalError::Malformed(_))));
    }

    #[test]
    fn to_interval() {
        assert_eq!(q("1/2").to_interval(), Interval::point(0.5));
        assert_eq!(q("0").to_interval(), Interval::point(0.0));
        let third = q("1/3");
        let iv = third.to_interval();
        assert_eq!(iv.sup(), iv.inf().next_up());
        assert!(Rational::from_f64_exact(iv.inf()) < third);
        assert!(third < Rational::from_f64_exact(iv.sup()));
        let huge = Rational::from_integer(BigInt::from(10).pow(400));
        assert_eq!(huge.to_interval(), Interval::new(f64::MAX, f64::INFINITY));
        let tiny = Rational::new(BigInt::one(), BigInt::from(10).pow(400));
        let iv = tiny.to_interval();
        assert_eq!((iv.inf(), iv.sup()), (0.0, 5e-324));
    }

    #[test]
    fn op_counter() {
        reset_exact_op_count();
        let a = q("1/3");
        let b = q("2/5");
        let _ = &a + &b;
        let _ = &a * &b;
        assert_eq!(exact_op_count(), 2);
        let _ = a.to_interval();
        assert_eq!(exact_op_count(), 2);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &a), &Rational::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip(), Rational::one());
            }
        }

        #[test]
        fn double_round_trip(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let r = Rational::from_f64_exact(x);
            prop_assert_eq!(r.to_interval(), Interval::point(x));
            prop_assert_eq!(r.to_f64(), x);
        }

        #[test]
        fn interval_brackets_quotients(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
            let r = Rational::new(n.into(), d.into());
            let iv = r.to_interval();
            prop_assert!(Rational::from_f64_exact(iv.inf()) <= r);
            prop_assert!(r <= Rational::from_f64_exact(iv.sup()));
            prop_assert!(iv.sup() == iv.inf() || iv.sup() == iv.inf().next_up());
        }
    }
}
