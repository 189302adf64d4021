//! A 2D Cartesian geometry kernel generic over its number type.
//!
//! The free functions in [`predicates`] and [`construct`] work for any
//! [`Scalar`]. The [`Kernel`] trait bundles object types with the
//! operations so algorithms (like the benchmark) can be written once and run
//! over plain, filtered and lazy kernels.

pub mod construct;
pub mod convert;
pub mod object;
pub mod predicates;

use std::fmt;
use std::marker::PhantomData;

use crate::scalar::{GeomError, Orientation, RobustScalar, Sign};

pub use object::{Bbox2, Intersection, Intersection2, IntersectionKind, Line2, Point2, Segment2};

/// A family of geometric object types with predicates and constructions.
///
/// Predicates always decide; constructions report violated preconditions
/// (collinear circumcenter input, vertical projection line) as errors.
pub trait Kernel {
    type Point: Clone;
    type Segment: Clone;
    type Line: Clone;

    fn point(&self, x: f64, y: f64) -> Self::Point;
    fn segment(&self, source: &Self::Point, target: &Self::Point) -> Self::Segment;
    fn line(&self, a: f64, b: f64, c: f64) -> Result<Self::Line, GeomError>;

    fn orientation(&self, p: &Self::Point, q: &Self::Point, r: &Self::Point) -> Orientation;
    fn compare_x(&self, p: &Self::Point, q: &Self::Point) -> Sign;
    fn compare_y(&self, p: &Self::Point, q: &Self::Point) -> Sign;
    fn side_of_oriented_circle(
        &self,
        p: &Self::Point,
        q: &Self::Point,
        r: &Self::Point,
        t: &Self::Point,
    ) -> Sign;

    fn collinear(&self, p: &Self::Point, q: &Self::Point, r: &Self::Point) -> bool {
        self.orientation(p, q, r) == Sign::Zero
    }

    fn midpoint(&self, p: &Self::Point, q: &Self::Point) -> Self::Point;
    fn circumcenter(
        &self,
        p: &Self::Point,
        q: &Self::Point,
        r: &Self::Point,
    ) -> Result<Self::Point, GeomError>;
    fn intersection(
        &self,
        s1: &Self::Segment,
        s2: &Self::Segment,
    ) -> Intersection<Self::Point, Self::Segment>;
    fn vertical_projection(&self, p: &Self::Point, l: &Self::Line) -> Result<Self::Point, GeomError>;
    fn point_bbox(&self, p: &Self::Point) -> Bbox2;
    fn segment_bbox(&self, s: &Self::Segment) -> Bbox2;

    /// Exact re-evaluations triggered so far, for kernels that filter.
    fn exact_fallbacks(&self) -> Option<u64> {
        None
    }
}

pub(crate) fn decided<T>(r: Result<T, GeomError>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("robust number type failed to decide: {e}"),
    }
}

fn certain<T>(r: Result<T, GeomError>) -> Result<T, GeomError> {
    match r {
        Err(GeomError::Uncertain) => panic!("robust number type signalled uncertainty"),
        other => other,
    }
}

/// The plain Cartesian kernel over number type `N`.
pub struct Cartesian<N>(PhantomData<fn() -> N>);

impl<N> Cartesian<N> {
    pub fn new() -> Self {
        Cartesian(PhantomData)
    }
}

impl<N> Default for Cartesian<N> {
    fn default() -> Self {
        Self::new()
    }
}

impl<N> Clone for Cartesian<N> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

impl<N> fmt::Debug for Cartesian<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cartesian<{}>", std::any::type_name::<N>())
    }
}

impl<N: RobustScalar> Kernel for Cartesian<N> {
    type Point = Point2<N>;
    type Segment = Segment2<N>;
    type Line = Line2<N>;

    fn point(&self, x: f64, y: f64) -> Point2<N> {
        let cv = |v: f64| N::from_f64(v).expect("point coordinates must be finite");
        Point2::new(cv(x), cv(y))
    }

    fn segment(&self, source: &Point2<N>, target: &Point2<N>) -> Segment2<N> {
        construct::segment(source, target)
    }

    fn line(&self, a: f64, b: f64, c: f64) -> Result<Line2<N>, GeomError> {
        if a == 0.0 && b == 0.0 {
            return Err(GeomError::Precondition("line with a = b = 0"));
        }
        let cv = |v: f64| N::from_f64(v).ok_or(GeomError::Precondition("non-finite line coefficient"));
        Ok(Line2::new(cv(a)?, cv(b)?, cv(c)?))
    }

    fn orientation(&self, p: &Point2<N>, q: &Point2<N>, r: &Point2<N>) -> Orientation {
        decided(predicates::orientation(p, q, r))
    }

    fn compare_x(&self, p: &Point2<N>, q: &Point2<N>) -> Sign {
        decided(predicates::compare_x(p, q))
    }

    fn compare_y(&self, p: &Point2<N>, q: &Point2<N>) -> Sign {
        decided(predicates::compare_y(p, q))
    }

    fn side_of_oriented_circle(&self, p: &Point2<N>, q: &Point2<N>, r: &Point2<N>, t: &Point2<N>) -> Sign {
        decided(predicates::side_of_oriented_circle(p, q, r, t))
    }

    fn midpoint(&self, p: &Point2<N>, q: &Point2<N>) -> Point2<N> {
        decided(construct::midpoint(p, q))
    }

    fn circumcenter(&self, p: &Point2<N>, q: &Point2<N>, r: &Point2<N>) -> Result<Point2<N>, GeomError> {
        certain(construct::circumcenter(p, q, r))
    }

    fn intersection(&self, s1: &Segment2<N>, s2: &Segment2<N>) -> Intersection2<N> {
        decided(construct::intersect_segments(s1, s2))
    }

    fn vertical_projection(&self, p: &Point2<N>, l: &Line2<N>) -> Result<Point2<N>, GeomError> {
        certain(construct::vertical_projection(p, l))
    }

    fn point_bbox(&self, p: &Point2<N>) -> Bbox2 {
        construct::point_bbox(p)
    }

    fn segment_bbox(&self, s: &Segment2<N>) -> Bbox2 {
        construct::segment_bbox(s)
    }

    fn exact_fallbacks(&self) -> Option<u64> {
        N::fallback_count()
    }
}
