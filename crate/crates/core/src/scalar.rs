//! The number-type contract every kernel is generic over.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

use crate::exact::Rational;
use crate::interval::Interval;

/// Three-valued sign, also used for orientations and comparison results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative = -1,
    Zero = 0,
    Positive = 1,
}

/// Orientation of an ordered point triple: `Positive` is a left turn,
/// `Negative` a right turn and `Zero` collinear.
pub type Orientation = Sign;

impl Sign {
    pub fn from_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    pub fn reverse(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn as_i32(self) -> i32 {
        self as i32
    }
}

/// Failure modes of geometric operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    /// An approximate evaluation could not certify a branch. Filters consume
    /// this and retry exactly; it never reaches users of robust kernels.
    #[error("approximate evaluation could not certify the result")]
    Uncertain,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

/// A field-like number type a Cartesian kernel can be instantiated with.
///
/// Sign and comparison queries may signal [`GeomError::Uncertain`] for
/// approximate types; division reports a zero divisor as a precondition
/// violation (or uncertainty if the divisor is only possibly zero).
pub trait Scalar:
    Clone
    + Debug
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn checked_div(self, rhs: Self) -> Result<Self, GeomError>;

    fn sign(&self) -> Result<Sign, GeomError>;

    fn compare(&self, other: &Self) -> Result<Sign, GeomError> {
        (self.clone() - other.clone()).sign()
    }

    /// Bounds `(lo, hi)` with `lo <= value <= hi`.
    fn enclosure(&self) -> (f64, f64);

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

/// Number types whose sign queries never signal uncertainty.
///
/// `f64` belongs here even though it is not exact: it always answers, the
/// answer just may be wrong.
pub trait RobustScalar: Scalar {
    /// Filter failures recorded by the number type itself, if it tracks them.
    fn fallback_count() -> Option<u64> {
        None
    }
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            #[inline]
            fn checked_div(self, rhs: Self) -> Result<Self, GeomError> {
                if rhs == 0.0 {
                    Err(GeomError::Precondition("division by zero"))
                } else {
                    Ok(self / rhs)
                }
            }

            #[inline]
            fn sign(&self) -> Result<Sign, GeomError> {
                Ok(if *self > 0.0 {
                    Sign::Positive
                } else if *self < 0.0 {
                    Sign::Negative
                } else {
                    Sign::Zero
                })
            }

            #[inline]
            fn compare(&self, other: &Self) -> Result<Sign, GeomError> {
                Ok(self
                    .partial_cmp(other)
                    .map(Sign::from_ordering)
                    .unwrap_or(Sign::Zero))
            }

            fn enclosure(&self) -> (f64, f64) {
                let x = *self as f64;
                (x, x)
            }
        }

        impl RobustScalar for $f {}
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for Interval {
    #[inline]
    fn checked_div(self, rhs: Self) -> Result<Self, GeomError> {
        Interval::checked_div(&self, &rhs)
    }

    #[inline]
    fn sign(&self) -> Result<Sign, GeomError> {
        Interval::sign(self).decided().ok_or(GeomError::Uncertain)
    }

    #[inline]
    fn compare(&self, other: &Self) -> Result<Sign, GeomError> {
        Interval::compare(self, other).decided().ok_or(GeomError::Uncertain)
    }

    fn enclosure(&self) -> (f64, f64) {
        (self.inf(), self.sup())
    }

    fn square(&self) -> Self {
        Interval::square(self)
    }
}

impl Scalar for Rational {
    fn checked_div(self, rhs: Self) -> Result<Self, GeomError> {
        if rhs.is_zero() {
            Err(GeomError::Precondition("division by zero"))
        } else {
            Ok(self / rhs)
        }
    }

    fn sign(&self) -> Result<Sign, GeomError> {
        Ok(Rational::sign(self))
    }

    fn compare(&self, other: &Self) -> Result<Sign, GeomError> {
        Ok(Sign::from_ordering(self.cmp(other)))
    }

    fn enclosure(&self) -> (f64, f64) {
        let iv = self.to_interval();
        (iv.inf(), iv.sup())
    }

    fn square(&self) -> Self {
        self * self
    }
}

impl RobustScalar for Rational {}
