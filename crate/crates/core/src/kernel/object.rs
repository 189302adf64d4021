use std::fmt;

/// A point in Cartesian coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Point2<N> {
    pub x: N,
    pub y: N,
}

impl<N> Point2<N> {
    pub fn new(x: N, y: N) -> Self {
        Point2 { x, y }
    }

    pub fn map<M>(&self, mut f: impl FnMut(&N) -> M) -> Point2<M> {
        Point2 { x: f(&self.x), y: f(&self.y) }
    }
}

impl<N: fmt::Display> fmt::Display for Point2<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A directed segment; zero-length segments are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Segment2<N> {
    pub source: Point2<N>,
    pub target: Point2<N>,
}

impl<N> Segment2<N> {
    pub fn new(source: Point2<N>, target: Point2<N>) -> Self {
        Segment2 { source, target }
    }
}

/// The line `a*x + b*y + c = 0`. `(a, b)` must not be `(0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Line2<N> {
    pub a: N,
    pub b: N,
    pub c: N,
}

impl<N> Line2<N> {
    pub fn new(a: N, b: N, c: N) -> Self {
        Line2 { a, b, c }
    }
}

/// Result of intersecting two segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Intersection<P, S> {
    Empty,
    Point(P),
    /// Collinear overlap of positive length.
    Segment(S),
}

impl<P, S> Intersection<P, S> {
    pub fn kind(&self) -> IntersectionKind {
        match self {
            Intersection::Empty => IntersectionKind::Empty,
            Intersection::Point(_) => IntersectionKind::Point,
            Intersection::Segment(_) => IntersectionKind::Segment,
        }
    }

    pub fn point(&self) -> Option<&P> {
        match self {
            Intersection::Point(p) => Some(p),
            _ => None,
        }
    }

    pub fn segment(&self) -> Option<&S> {
        match self {
            Intersection::Segment(s) => Some(s),
            _ => None,
        }
    }
}

/// The variant arm of an [`Intersection`], without payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntersectionKind {
    Empty,
    Point,
    Segment,
}

pub type Intersection2<N> = Intersection<Point2<N>, Segment2<N>>;

/// Axis-aligned box with double bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bbox2 {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl Bbox2 {
    pub fn new(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Self {
        debug_assert!(xmin <= xmax && ymin <= ymax);
        Bbox2 { xmin, ymin, xmax, ymax }
    }

    pub fn union(&self, other: &Bbox2) -> Bbox2 {
        Bbox2 {
            xmin: self.xmin.min(other.xmin),
            ymin: self.ymin.min(other.ymin),
            xmax: self.xmax.max(other.xmax),
            ymax: self.ymax.max(other.ymax),
        }
    }

    pub fn contains_point(&self, x: f64, y: f64) -> bool {
        self.xmin <= x && x <= self.xmax && self.ymin <= y && y <= self.ymax
    }
}
