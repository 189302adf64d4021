//! Kernel converters: structure-preserving maps between kernels driven by a
//! conversion of the number type.

use crate::exact::Rational;
use crate::interval::Interval;
use crate::kernel::object::{Intersection, Line2, Point2, Segment2};

/// A conversion between two number types.
pub trait NumberConversion<From> {
    type To;

    fn convert_number(&self, x: &From) -> Self::To;
}

/// A geometric object whose coordinates are numbers of type `Number`.
///
/// `Rebind<M>` is the same kind of object over the number type `M`, which is
/// what lets a converter find the target type of any object.
pub trait Geometric {
    type Number;
    type Rebind<M>;

    fn map_numbers<M>(&self, f: &mut impl FnMut(&Self::Number) -> M) -> Self::Rebind<M>;
}

impl<N> Geometric for Point2<N> {
    type Number = N;
    type Rebind<M> = Point2<M>;

    fn map_numbers<M>(&self, f: &mut impl FnMut(&N) -> M) -> Point2<M> {
        Point2::new(f(&self.x), f(&self.y))
    }
}

impl<N> Geometric for Segment2<N> {
    type Number = N;
    type Rebind<M> = Segment2<M>;

    fn map_numbers<M>(&self, f: &mut impl FnMut(&N) -> M) -> Segment2<M> {
        Segment2::new(self.source.map_numbers(f), self.target.map_numbers(f))
    }
}

impl<N> Geometric for Line2<N> {
    type Number = N;
    type Rebind<M> = Line2<M>;

    fn map_numbers<M>(&self, f: &mut impl FnMut(&N) -> M) -> Line2<M> {
        Line2::new(f(&self.a), f(&self.b), f(&self.c))
    }
}

impl<P, S> Geometric for Intersection<P, S>
where
    P: Geometric,
    S: Geometric<Number = P::Number>,
{
    type Number = P::Number;
    type Rebind<M> = Intersection<P::Rebind<M>, S::Rebind<M>>;

    fn map_numbers<M>(&self, f: &mut impl FnMut(&P::Number) -> M) -> Self::Rebind<M> {
        match self {
            Intersection::Empty => Intersection::Empty,
            Intersection::Point(p) => Intersection::Point(p.map_numbers(f)),
            Intersection::Segment(s) => Intersection::Segment(s.map_numbers(f)),
        }
    }
}

/// Applies a number conversion coordinate-wise to any geometric object.
#[derive(Debug, Clone, Copy, Default)]
pub struct KernelConverter<C>(pub C);

impl<C> KernelConverter<C> {
    pub fn convert<O>(&self, obj: &O) -> O::Rebind<C::To>
    where
        O: Geometric,
        C: NumberConversion<O::Number>,
    {
        obj.map_numbers(&mut |x| self.0.convert_number(x))
    }
}

/// Exact conversion of doubles into rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct ToRational;

impl NumberConversion<f64> for ToRational {
    type To = Rational;

    fn convert_number(&self, x: &f64) -> Rational {
        Rational::from_f64_exact(*x)
    }
}

impl NumberConversion<Rational> for ToRational {
    type To = Rational;

    fn convert_number(&self, x: &Rational) -> Rational {
        x.clone()
    }
}

/// Conversion into enclosing intervals.
#[derive(Debug, Clone, Copy, Default)]
pub struct ToInterval;

impl NumberConversion<f64> for ToInterval {
    type To = Interval;

    #[inline]
    fn convert_number(&self, x: &f64) -> Interval {
        Interval::point(*x)
    }
}

impl NumberConversion<Rational> for ToInterval {
    type To = Interval;

    fn convert_number(&self, x: &Rational) -> Interval {
        x.to_interval()
    }
}

impl NumberConversion<Interval> for ToInterval {
    type To = Interval;

    fn convert_number(&self, x: &Interval) -> Interval {
        *x
    }
}

/// Nearest-double conversion; lossy.
#[derive(Debug, Clone, Copy, Default)]
pub struct ToDouble;

impl NumberConversion<Rational> for ToDouble {
    type To = f64;

    fn convert_number(&self, x: &Rational) -> f64 {
        x.to_f64()
    }
}

impl NumberConversion<Interval> for ToDouble {
    type To = f64;

    fn convert_number(&self, x: &Interval) -> f64 {
        if x.is_singleton() {
            x.inf()
        } else {
            x.inf() + (x.sup() - x.inf()) / 2.0
        }
    }
}

/// Double kernel to interval kernel.
pub type DoubleToInterval = KernelConverter<ToInterval>;
/// Double kernel to rational kernel.
pub type DoubleToRational = KernelConverter<ToRational>;
/// Rational kernel to interval kernel.
pub type RationalToInterval = KernelConverter<ToInterval>;
