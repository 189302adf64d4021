//! Filtered predicates: evaluate with interval arithmetic first and fall back
//! to exact arithmetic only when the intervals cannot decide.

use std::cell::Cell;

use crate::exact::Rational;
use crate::interval::Interval;
use crate::kernel::convert::{Geometric, KernelConverter, NumberConversion, ToInterval, ToRational};
use crate::kernel::{construct, decided, predicates, Bbox2, Cartesian, Intersection2, Kernel, Line2, Point2, Segment2};
use crate::scalar::{GeomError, Orientation, Sign};

/// Conversion of a predicate argument into the representation a predicate
/// instantiation works on.
pub trait Convert<T> {
    type Output;

    fn convert(&self, x: &T) -> Self::Output;
}

impl<C, T> Convert<T> for KernelConverter<C>
where
    T: Geometric,
    C: NumberConversion<T::Number>,
{
    type Output = T::Rebind<C::To>;

    #[inline]
    fn convert(&self, x: &T) -> Self::Output {
        KernelConverter::convert(self, x)
    }
}

/// Call statistics of one filtered predicate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FilterStats {
    pub approx_calls: u64,
    pub exact_fallbacks: u64,
}

impl FilterStats {
    pub fn fallback_rate(&self) -> f64 {
        if self.approx_calls == 0 {
            0.0
        } else {
            self.exact_fallbacks as f64 / self.approx_calls as f64
        }
    }
}

impl std::ops::Add for FilterStats {
    type Output = FilterStats;

    fn add(self, rhs: FilterStats) -> FilterStats {
        FilterStats {
            approx_calls: self.approx_calls + rhs.approx_calls,
            exact_fallbacks: self.exact_fallbacks + rhs.exact_fallbacks,
        }
    }
}

/// Adapts an approximate predicate `AP` and an exact predicate `EP` computing
/// the same function. Arguments go through `C2A` for the approximate attempt
/// and through `C2E` for the exact retry.
///
/// The counters are plain cells: an instance is meant to be used from one
/// thread.
pub struct FilteredPredicate<AP, EP, C2A, C2E> {
    ap: AP,
    ep: EP,
    c2a: C2A,
    c2e: C2E,
    approx_calls: Cell<u64>,
    exact_fallbacks: Cell<u64>,
}

impl<AP, EP, C2A, C2E> FilteredPredicate<AP, EP, C2A, C2E> {
    pub fn new(ap: AP, ep: EP, c2a: C2A, c2e: C2E) -> Self {
        FilteredPredicate {
            ap,
            ep,
            c2a,
            c2e,
            approx_calls: Cell::new(0),
            exact_fallbacks: Cell::new(0),
        }
    }

    pub fn failure_counters(&self) -> FilterStats {
        FilterStats {
            approx_calls: self.approx_calls.get(),
            exact_fallbacks: self.exact_fallbacks.get(),
        }
    }

    pub fn reset_counters(&self) {
        self.approx_calls.set(0);
        self.exact_fallbacks.set(0);
    }

    #[inline]
    fn settle<R>(&self, approx: Result<R, GeomError>, exact: impl FnOnce() -> Result<R, GeomError>) -> R {
        self.approx_calls.set(self.approx_calls.get() + 1);
        match approx {
            Ok(r) => r,
            Err(GeomError::Uncertain) => {
                self.exact_fallbacks.set(self.exact_fallbacks.get() + 1);
                match exact() {
                    Ok(r) => r,
                    Err(e) => panic!("exact predicate failed: {e}"),
                }
            }
            Err(e) => panic!("approximate predicate failed: {e}"),
        }
    }
}

macro_rules! filtered_call {
    ($name:ident; $($arg:ident: $ty:ident),+) => {
        impl<AP, EP, C2A, C2E> FilteredPredicate<AP, EP, C2A, C2E> {
            /// Evaluates the predicate; the result always equals the exact one.
            pub fn $name<$($ty,)+ R>(&self, $($arg: &$ty),+) -> R
            where
                C2A: $(Convert<$ty> +)+,
                C2E: $(Convert<$ty> +)+,
                AP: Fn($(&<C2A as Convert<$ty>>::Output),+) -> Result<R, GeomError>,
                EP: Fn($(&<C2E as Convert<$ty>>::Output),+) -> Result<R, GeomError>,
            {
                let approx = (self.ap)($(&Convert::<$ty>::convert(&self.c2a, $arg)),+);
                self.settle(approx, || (self.ep)($(&Convert::<$ty>::convert(&self.c2e, $arg)),+))
            }
        }
    };
}

filtered_call!(call1; a1: A1);
filtered_call!(call2; a1: A1, a2: A2);
filtered_call!(call3; a1: A1, a2: A2, a3: A3);
filtered_call!(call4; a1: A1, a2: A2, a3: A3, a4: A4);

pub(crate) type Pred2<P, R> = fn(&P, &P) -> Result<R, GeomError>;
pub(crate) type Pred3<P, R> = fn(&P, &P, &P) -> Result<R, GeomError>;
pub(crate) type Pred4<P, R> = fn(&P, &P, &P, &P) -> Result<R, GeomError>;

type ApproxPoint = Point2<Interval>;
type ExactPoint = Point2<Rational>;
type DoubleFiltered<AP, EP> = FilteredPredicate<AP, EP, KernelConverter<ToInterval>, KernelConverter<ToRational>>;

/// Kernel over `f64` objects whose predicates are filtered: intervals first,
/// rationals on failure. Constructions are plain double constructions and
/// therefore not exact.
pub struct FilteredCartesian {
    base: Cartesian<f64>,
    orientation: DoubleFiltered<Pred3<ApproxPoint, Sign>, Pred3<ExactPoint, Sign>>,
    compare_x: DoubleFiltered<Pred2<ApproxPoint, Sign>, Pred2<ExactPoint, Sign>>,
    compare_y: DoubleFiltered<Pred2<ApproxPoint, Sign>, Pred2<ExactPoint, Sign>>,
    side_of_oriented_circle: DoubleFiltered<Pred4<ApproxPoint, Sign>, Pred4<ExactPoint, Sign>>,
}

impl FilteredCartesian {
    pub fn new() -> Self {
        let cv = || (KernelConverter(ToInterval), KernelConverter(ToRational));
        let (a, e) = cv();
        let orientation = FilteredPredicate::new(
            predicates::orientation::<Interval> as Pred3<ApproxPoint, Sign>,
            predicates::orientation::<Rational> as Pred3<ExactPoint, Sign>,
            a,
            e,
        );
        let (a, e) = cv();
        let compare_x = FilteredPredicate::new(
            predicates::compare_x::<Interval> as Pred2<ApproxPoint, Sign>,
            predicates::compare_x::<Rational> as Pred2<ExactPoint, Sign>,
            a,
            e,
        );
        let (a, e) = cv();
        let compare_y = FilteredPredicate::new(
            predicates::compare_y::<Interval> as Pred2<ApproxPoint, Sign>,
            predicates::compare_y::<Rational> as Pred2<ExactPoint, Sign>,
            a,
            e,
        );
        let (a, e) = cv();
        let side_of_oriented_circle = FilteredPredicate::new(
            predicates::side_of_oriented_circle::<Interval> as Pred4<ApproxPoint, Sign>,
            predicates::side_of_oriented_circle::<Rational> as Pred4<ExactPoint, Sign>,
            a,
            e,
        );
        FilteredCartesian {
            base: Cartesian::new(),
            orientation,
            compare_x,
            compare_y,
            side_of_oriented_circle,
        }
    }

    /// Combined counters of all predicates.
    pub fn stats(&self) -> FilterStats {
        self.orientation.failure_counters()
            + self.compare_x.failure_counters()
            + self.compare_y.failure_counters()
            + self.side_of_oriented_circle.failure_counters()
    }

    pub fn orientation_stats(&self) -> FilterStats {
        self.orientation.failure_counters()
    }

    pub fn reset_stats(&self) {
        self.orientation.reset_counters();
        self.compare_x.reset_counters();
        self.compare_y.reset_counters();
        self.side_of_oriented_circle.reset_counters();
    }
}

impl Default for FilteredCartesian {
    fn default() -> Self {
        Self::new()
    }
}

impl Kernel for FilteredCartesian {
    type Point = Point2<f64>;
    type Segment = Segment2<f64>;
    type Line = Line2<f64>;

    fn point(&self, x: f64, y: f64) -> Point2<f64> {
        self.base.point(x, y)
    }

    fn segment(&self, source: &Point2<f64>, target: &Point2<f64>) -> Segment2<f64> {
        self.base.segment(source, target)
    }

    fn line(&self, a: f64, b: f64, c: f64) -> Result<Line2<f64>, GeomError> {
        self.base.line(a, b, c)
    }

    fn orientation(&self, p: &Point2<f64>, q: &Point2<f64>, r: &Point2<f64>) -> Orientation {
        self.orientation.call3(p, q, r)
    }

    fn compare_x(&self, p: &Point2<f64>, q: &Point2<f64>) -> Sign {
        self.compare_x.call2(p, q)
    }

    fn compare_y(&self, p: &Point2<f64>, q: &Point2<f64>) -> Sign {
        self.compare_y.call2(p, q)
    }

    fn side_of_oriented_circle(
        &self,
        p: &Point2<f64>,
        q: &Point2<f64>,
        r: &Point2<f64>,
        t: &Point2<f64>,
    ) -> Sign {
        self.side_of_oriented_circle.call4(p, q, r, t)
    }

    fn midpoint(&self, p: &Point2<f64>, q: &Point2<f64>) -> Point2<f64> {
        self.base.midpoint(p, q)
    }

    fn circumcenter(&self, p: &Point2<f64>, q: &Point2<f64>, r: &Point2<f64>) -> Result<Point2<f64>, GeomError> {
        self.base.circumcenter(p, q, r)
    }

    fn intersection(&self, s1: &Segment2<f64>, s2: &Segment2<f64>) -> Intersection2<f64> {
        decided(construct::intersect_segments(s1, s2))
    }

    fn vertical_projection(&self, p: &Point2<f64>, l: &Line2<f64>) -> Result<Point2<f64>, GeomError> {
        self.base.vertical_projection(p, l)
    }

    fn point_bbox(&self, p: &Point2<f64>) -> Bbox2 {
        construct::point_bbox(p)
    }

    fn segment_bbox(&self, s: &Segment2<f64>) -> Bbox2 {
        construct::segment_bbox(s)
    }

    fn exact_fallbacks(&self) -> Option<u64> {
        Some(self.stats().exact_fallbacks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{exact_op_count, reset_exact_op_count};

    fn p(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    #[test]
    fn wide_margin_stays_approximate() {
        let k = FilteredCartesian::new();
        reset_exact_op_count();
        assert_eq!(k.orientation(&p(0.0, 0.0), &p(1.0, 0.0), &p(0.0, 1.0)), Sign::Positive);
        assert_eq!(k.orientation_stats(), FilterStats { approx_calls: 1, exact_fallbacks: 0 });
        assert_eq!(exact_op_count(), 0);
    }

    #[test]
    fn exact_collinearity_falls_back() {
        // (0.1, 0.3) and its double are exactly collinear with the origin, but
        // the products 0.1 * 0.6 and 0.2 * 0.3 are inexact in binary64, so the
        // interval determinant straddles zero
        let k = FilteredCartesian::new();
        let r = k.orientation(&p(0.0, 0.0), &p(0.1, 0.3), &p(0.2, 0.6));
        assert_eq!(r, Sign::Zero);
        assert_eq!(k.orientation_stats().exact_fallbacks, 1);
    }

    #[test]
    fn tiny_determinant_matches_exact() {
        let k = FilteredCartesian::new();
        let r = p(3.0, 3.0 + 2f64.powi(-51));
        assert_eq!(k.orientation(&p(0.0, 0.0), &p(1.0, 1.0), &r), Sign::Positive);
        let exact = Cartesian::<Rational>::new();
        let cv = KernelConverter(ToRational);
        assert_eq!(
            exact.orientation(&cv.convert(&p(0.0, 0.0)), &cv.convert(&p(1.0, 1.0)), &cv.convert(&r)),
            Sign::Positive
        );
    }

    #[test]
    fn generic_arities() {
        let is_pos = FilteredPredicate::new(
            |x: &Interval| Scalar::sign(x),
            |x: &Rational| Scalar::sign(x),
            ToIntervalNumber,
            ToRationalNumber,
        );
        assert_eq!(is_pos.call1(&0.5), Sign::Positive);
        assert_eq!(is_pos.call1(&0.0), Sign::Zero);
        assert_eq!(is_pos.failure_counters().exact_fallbacks, 0);

        let incircle = FilteredCartesian::new();
        let (a, b, c) = (p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0));
        assert_eq!(incircle.side_of_oriented_circle(&a, &b, &c, &p(1.0, 1.0)), Sign::Zero);
        assert_eq!(incircle.side_of_oriented_circle(&a, &b, &c, &p(0.5, 0.5)), Sign::Positive);
        assert_eq!(incircle.compare_x(&a, &b), Sign::Negative);
        assert_eq!(incircle.compare_y(&b, &a), Sign::Zero);
    }

    use crate::scalar::Scalar;

    struct ToIntervalNumber;
    impl Convert<f64> for ToIntervalNumber {
        type Output = Interval;
        fn convert(&self, x: &f64) -> Interval {
            Interval::point(*x)
        }
    }

    struct ToRationalNumber;
    impl Convert<f64> for ToRationalNumber {
        type Output = Rational;
        fn convert(&self, x: &f64) -> Rational {
            Rational::from_f64_exact(*x)
        }
    }
}
