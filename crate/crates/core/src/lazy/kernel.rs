//! A kernel whose objects are lazy: each point, segment and line is a DAG
//! node holding an interval object, with the rational object computed only
//! when an interval predicate cannot decide.

use std::cell::Cell;

use num_traits::Zero;

use super::construct::{Args2, Construction, LazyConstruct};
use super::dag::{new_default_node, ExactValue, Lazy};
use super::number::LazyNumber;
use crate::exact::Rational;
use crate::filtered::{Convert, FilterStats, FilteredPredicate, Pred2, Pred3, Pred4};
use crate::interval::Interval;
use crate::kernel::convert::{Geometric, KernelConverter, ToInterval};
use crate::kernel::{construct, decided, predicates, Bbox2, Intersection, Kernel, Line2, Point2, Segment2};
use crate::scalar::{GeomError, Orientation, Scalar, Sign};

pub type LazyPoint = Lazy<Point2<Interval>, Point2<Rational>>;
pub type LazySegment = Lazy<Segment2<Interval>, Segment2<Rational>>;
pub type LazyLine = Lazy<Line2<Interval>, Line2<Rational>>;
pub type LazyIntersection = Intersection<LazyPoint, LazySegment>;

fn singleton_exact<O: Geometric<Number = Interval>>(a: &O) -> Option<O::Rebind<Rational>> {
    let mut ok = true;
    let r = a.map_numbers(&mut |x: &Interval| {
        match x.is_singleton().then(|| Rational::from_f64(x.inf())).flatten() {
            Some(q) => q,
            None => {
                ok = false;
                Rational::zero()
            }
        }
    });
    ok.then_some(r)
}

macro_rules! exact_object {
    ($obj:ident, $default:expr) => {
        impl ExactValue for $obj<Rational> {
            type Approx = $obj<Interval>;

            fn to_approx(&self) -> $obj<Interval> {
                KernelConverter(ToInterval).convert(self)
            }

            fn from_singleton(a: &$obj<Interval>) -> Option<Self> {
                singleton_exact(a)
            }

            fn try_default_handle() -> Option<Lazy<$obj<Interval>, Self>> {
                thread_local! {
                    static DEFAULT: Lazy<$obj<Interval>, $obj<Rational>> = new_default_node($default);
                }
                DEFAULT.try_with(Clone::clone).ok()
            }
        }
    };
}

fn origin() -> Point2<Rational> {
    Point2::new(Rational::zero(), Rational::zero())
}

exact_object!(Point2, origin());
exact_object!(Segment2, Segment2::new(origin(), origin()));
exact_object!(Line2, Line2::new(Rational::zero(), Rational::from(1), Rational::zero()));

/// Reads the approximation of a lazy argument.
#[derive(Debug, Clone, Copy, Default)]
pub struct ApproxConverter;

/// Reads (computing if needed) the exact value of a lazy argument.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactConverter;

impl<AT: Copy + 'static, ET: ExactValue<Approx = AT>> Convert<Lazy<AT, ET>> for ApproxConverter {
    type Output = AT;

    #[inline]
    fn convert(&self, x: &Lazy<AT, ET>) -> AT {
        x.approx()
    }
}

impl<AT: Copy + 'static, ET: ExactValue<Approx = AT> + Clone> Convert<Lazy<AT, ET>> for ExactConverter {
    type Output = ET;

    fn convert(&self, x: &Lazy<AT, ET>) -> ET {
        x.exact().clone()
    }
}

type IPoint = Point2<Interval>;
type EPoint = Point2<Rational>;
type ISegment = Segment2<Interval>;
type ESegment = Segment2<Rational>;
type ILine = Line2<Interval>;
type ELine = Line2<Rational>;

type LazyPred<AP, EP> = FilteredPredicate<AP, EP, ApproxConverter, ExactConverter>;
type Cons1<A, R> = fn(&A) -> Result<R, GeomError>;
type Cons2<A, B, R> = fn(&A, &B) -> Result<R, GeomError>;
type Cons3<A, R> = fn(&A, &A, &A) -> Result<R, GeomError>;
type Lc1<A, B, R, S> = LazyConstruct<Cons1<A, R>, Cons1<B, S>>;
type Lc2<A, B, R, C, D, S> = LazyConstruct<Cons2<A, B, R>, Cons2<C, D, S>>;

fn make_segment<N: Scalar>(p: &Point2<N>, q: &Point2<N>) -> Result<Segment2<N>, GeomError> {
    Ok(construct::segment(p, q))
}

fn x_of<N: Scalar>(p: &Point2<N>) -> Result<N, GeomError> {
    Ok(p.x.clone())
}

fn y_of<N: Scalar>(p: &Point2<N>) -> Result<N, GeomError> {
    Ok(p.y.clone())
}

fn point_from<N: Scalar>(x: &N, y: &N) -> Result<Point2<N>, GeomError> {
    Ok(Point2::new(x.clone(), y.clone()))
}

fn squared_distance<N: Scalar>(p: &Point2<N>, q: &Point2<N>) -> Result<N, GeomError> {
    let dx = p.x.clone() - q.x.clone();
    let dy = p.y.clone() - q.y.clone();
    Ok(dx.square() + dy.square())
}

fn exact_point_arm(s1: &ESegment, s2: &ESegment) -> Result<EPoint, GeomError> {
    match construct::intersect_segments(s1, s2)? {
        Intersection::Point(p) => Ok(p),
        _ => Err(GeomError::Precondition("exact intersection is not a point")),
    }
}

fn exact_segment_arm(s1: &ESegment, s2: &ESegment) -> Result<ESegment, GeomError> {
    match construct::intersect_segments(s1, s2)? {
        Intersection::Segment(s) => Ok(s),
        _ => Err(GeomError::Precondition("exact intersection is not a segment")),
    }
}

/// Cartesian kernel over lazy objects.
///
/// Predicates evaluate on the interval objects and retry on the exact
/// objects when undecided. Constructions build DAG nodes; only when the
/// interval construction itself cannot decide a branch is the exact object
/// computed on the spot.
pub struct LazyKernel {
    orientation: LazyPred<Pred3<IPoint, Sign>, Pred3<EPoint, Sign>>,
    compare_x: LazyPred<Pred2<IPoint, Sign>, Pred2<EPoint, Sign>>,
    compare_y: LazyPred<Pred2<IPoint, Sign>, Pred2<EPoint, Sign>>,
    side_of_oriented_circle: LazyPred<Pred4<IPoint, Sign>, Pred4<EPoint, Sign>>,
    midpoint: Lc2<IPoint, IPoint, IPoint, EPoint, EPoint, EPoint>,
    circumcenter: LazyConstruct<Cons3<IPoint, IPoint>, Cons3<EPoint, EPoint>>,
    segment: Lc2<IPoint, IPoint, ISegment, EPoint, EPoint, ESegment>,
    vertical_projection: Lc2<IPoint, ILine, IPoint, EPoint, ELine, EPoint>,
    line_through: Lc2<IPoint, IPoint, ILine, EPoint, EPoint, ELine>,
    x: Lc1<IPoint, EPoint, Interval, Rational>,
    y: Lc1<IPoint, EPoint, Interval, Rational>,
    point_from: Lc2<Interval, Interval, IPoint, Rational, Rational, EPoint>,
    squared_distance: Lc2<IPoint, IPoint, Interval, EPoint, EPoint, Rational>,
    intersection_calls: Cell<u64>,
    intersection_fallbacks: Cell<u64>,
}

macro_rules! lazy_pred {
    ($f:ident, $arity:ident) => {
        FilteredPredicate::new(
            predicates::$f::<Interval> as $arity<IPoint, Sign>,
            predicates::$f::<Rational> as $arity<EPoint, Sign>,
            ApproxConverter,
            ExactConverter,
        )
    };
}

macro_rules! lazy_cons {
    ($f:path, $ty:ty, $ety:ty) => {
        LazyConstruct::new($f as $ty, $f as $ety)
    };
}

impl LazyKernel {
    pub fn new() -> Self {
        LazyKernel {
            orientation: lazy_pred!(orientation, Pred3),
            compare_x: lazy_pred!(compare_x, Pred2),
            compare_y: lazy_pred!(compare_y, Pred2),
            side_of_oriented_circle: lazy_pred!(side_of_oriented_circle, Pred4),
            midpoint: lazy_cons!(construct::midpoint, Cons2<IPoint, IPoint, IPoint>, Cons2<EPoint, EPoint, EPoint>),
            circumcenter: lazy_cons!(construct::circumcenter, Cons3<IPoint, IPoint>, Cons3<EPoint, EPoint>),
            segment: lazy_cons!(make_segment, Cons2<IPoint, IPoint, ISegment>, Cons2<EPoint, EPoint, ESegment>),
            vertical_projection: lazy_cons!(
                construct::vertical_projection,
                Cons2<IPoint, ILine, IPoint>,
                Cons2<EPoint, ELine, EPoint>
            ),
            line_through: lazy_cons!(construct::line_through, Cons2<IPoint, IPoint, ILine>, Cons2<EPoint, EPoint, ELine>),
            x: lazy_cons!(x_of, Cons1<IPoint, Interval>, Cons1<EPoint, Rational>),
            y: lazy_cons!(y_of, Cons1<IPoint, Interval>, Cons1<EPoint, Rational>),
            point_from: lazy_cons!(point_from, Cons2<Interval, Interval, IPoint>, Cons2<Rational, Rational, EPoint>),
            squared_distance: lazy_cons!(
                squared_distance,
                Cons2<IPoint, IPoint, Interval>,
                Cons2<EPoint, EPoint, Rational>
            ),
            intersection_calls: Cell::new(0),
            intersection_fallbacks: Cell::new(0),
        }
    }

    pub fn x(&self, p: &LazyPoint) -> LazyNumber {
        decided(self.x.call1(p))
    }

    pub fn y(&self, p: &LazyPoint) -> LazyNumber {
        decided(self.y.call1(p))
    }

    pub fn point_from_coordinates(&self, x: &LazyNumber, y: &LazyNumber) -> LazyPoint {
        decided(self.point_from.call2(x, y))
    }

    pub fn squared_distance(&self, p: &LazyPoint, q: &LazyPoint) -> LazyNumber {
        decided(self.squared_distance.call2(p, q))
    }

    pub fn line_through(&self, p: &LazyPoint, q: &LazyPoint) -> Result<LazyLine, GeomError> {
        self.line_through.call2(p, q)
    }

    /// Counters of the filtered orientation predicate.
    pub fn orientation_stats(&self) -> FilterStats {
        self.orientation.failure_counters()
    }

    /// Counters of all predicates.
    pub fn predicate_stats(&self) -> FilterStats {
        self.orientation.failure_counters()
            + self.compare_x.failure_counters()
            + self.compare_y.failure_counters()
            + self.side_of_oriented_circle.failure_counters()
    }

    /// Counters of all constructions, intersections included.
    pub fn construction_stats(&self) -> FilterStats {
        self.midpoint.stats()
            + self.circumcenter.stats()
            + self.segment.stats()
            + self.vertical_projection.stats()
            + self.line_through.stats()
            + self.x.stats()
            + self.y.stats()
            + self.point_from.stats()
            + self.squared_distance.stats()
            + FilterStats {
                approx_calls: self.intersection_calls.get(),
                exact_fallbacks: self.intersection_fallbacks.get(),
            }
    }

    pub fn reset_stats(&self) {
        self.orientation.reset_counters();
        self.compare_x.reset_counters();
        self.compare_y.reset_counters();
        self.side_of_oriented_circle.reset_counters();
        self.midpoint.reset_stats();
        self.circumcenter.reset_stats();
        self.segment.reset_stats();
        self.vertical_projection.reset_stats();
        self.line_through.reset_stats();
        self.x.reset_stats();
        self.y.reset_stats();
        self.point_from.reset_stats();
        self.squared_distance.reset_stats();
        self.intersection_calls.set(0);
        self.intersection_fallbacks.set(0);
    }
}

impl Default for LazyKernel {
    fn default() -> Self {
        Self::new()
    }
}

fn singleton(x: f64) -> Result<Interval, GeomError> {
    Interval::from_f64(x).ok_or(GeomError::Precondition("non-finite coordinate"))
}

impl Kernel for LazyKernel {
    type Point = LazyPoint;
    type Segment = LazySegment;
    type Line = LazyLine;

    fn point(&self, x: f64, y: f64) -> LazyPoint {
        let cv = |v: f64| singleton(v).expect("point coordinates must be finite");
        Lazy::from_singleton(Point2::new(cv(x), cv(y)))
    }

    fn segment(&self, source: &LazyPoint, target: &LazyPoint) -> LazySegment {
        decided(self.segment.call2(source, target))
    }

    fn line(&self, a: f64, b: f64, c: f64) -> Result<LazyLine, GeomError> {
        if a == 0.0 && b == 0.0 {
            return Err(GeomError::Precondition("line with a = b = 0"));
        }
        Ok(Lazy::from_singleton(Line2::new(singleton(a)?, singleton(b)?, singleton(c)?)))
    }

    fn orientation(&self, p: &LazyPoint, q: &LazyPoint, r: &LazyPoint) -> Orientation {
        self.orientation.call3(p, q, r)
    }

    fn compare_x(&self, p: &LazyPoint, q: &LazyPoint) -> Sign {
        self.compare_x.call2(p, q)
    }

    fn compare_y(&self, p: &LazyPoint, q: &LazyPoint) -> Sign {
        self.compare_y.call2(p, q)
    }

    fn side_of_oriented_circle(&self, p: &LazyPoint, q: &LazyPoint, r: &LazyPoint, t: &LazyPoint) -> Sign {
        self.side_of_oriented_circle.call4(p, q, r, t)
    }

    fn midpoint(&self, p: &LazyPoint, q: &LazyPoint) -> LazyPoint {
        decided(self.midpoint.call2(p, q))
    }

    fn circumcenter(&self, p: &LazyPoint, q: &LazyPoint, r: &LazyPoint) -> Result<LazyPoint, GeomError> {
        self.circumcenter.call3(p, q, r)
    }

    /// Decides the kind of intersection on the interval segments when
    /// possible; the resulting point or segment node recomputes only its own
    /// arm exactly.
    fn intersection(&self, s1: &LazySegment, s2: &LazySegment) -> LazyIntersection {
        self.intersection_calls.set(self.intersection_calls.get() + 1);
        match construct::intersect_segments(&s1.approx(), &s2.approx()) {
            Ok(Intersection::Empty) => Intersection::Empty,
            Ok(Intersection::Point(at)) => Intersection::Point(Construction::handle(
                at,
                Args2::new(exact_point_arm as Cons2<ESegment, ESegment, EPoint>, s1.clone(), s2.clone()),
            )),
            Ok(Intersection::Segment(at)) => Intersection::Segment(Construction::handle(
                at,
                Args2::new(exact_segment_arm as Cons2<ESegment, ESegment, ESegment>, s1.clone(), s2.clone()),
            )),
            Err(_) => {
                self.intersection_fallbacks.set(self.intersection_fallbacks.get() + 1);
                match decided(construct::intersect_segments(s1.exact(), s2.exact())) {
                    Intersection::Empty => Intersection::Empty,
                    Intersection::Point(p) => Intersection::Point(Lazy::from_exact(p)),
                    Intersection::Segment(s) => Intersection::Segment(Lazy::from_exact(s)),
                }
            }
        }
    }

    fn vertical_projection(&self, p: &LazyPoint, l: &LazyLine) -> Result<LazyPoint, GeomError> {
        self.vertical_projection.call2(p, l)
    }

    fn point_bbox(&self, p: &LazyPoint) -> Bbox2 {
        construct::point_bbox(&p.approx())
    }

    fn segment_bbox(&self, s: &LazySegment) -> Bbox2 {
        construct::segment_bbox(&s.approx())
    }

    fn exact_fallbacks(&self) -> Option<u64> {
        Some(self.predicate_stats().exact_fallbacks + self.construction_stats().exact_fallbacks)
    }
}
