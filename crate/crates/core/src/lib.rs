//! Lazy exact geometric computation in the plane.
//!
//! Geometric predicates and constructions run on interval arithmetic first.
//! When an interval result cannot certify a decision, the computation is
//! redone with exact rationals, using the history recorded in a DAG of lazy
//! nodes.
//!
//! Layers, bottom up:
//!
//! * [`Interval`]: certified interval arithmetic on `f64`.
//! * [`Rational`]: exact arbitrary-precision rationals.
//! * [`Scalar`]: the number interface; the Cartesian kernel
//!   [`Cartesian<N>`] is generic over it.
//! * [`FilteredPredicate`] and [`FilteredCartesian`]: interval filter with
//!   exact fallback for predicates on double inputs.
//! * [`LazyNumber`]: a lazily evaluated exact number, usable as the number
//!   type of a Cartesian kernel ([`LazyNumberKernel`]).
//! * [`LazyKernel`]: lazy evaluation at the level of geometric objects.
//!
//! ```
//! use lazy_exact::{Kernel, LazyKernel, Sign};
//!
//! let k = LazyKernel::new();
//! let s1 = k.segment(&k.point(0.0, 0.0), &k.point(1.0, 1.0));
//! let s2 = k.segment(&k.point(0.0, 1.0), &k.point(1.0, 0.0));
//! let m = k.intersection(&s1, &s2).point().cloned().unwrap();
//! let (a, b) = (k.point(0.0, 0.0), k.point(1.0, 1.0));
//! assert_eq!(k.orientation(&a, &m, &b), Sign::Zero);
//! ```

pub mod exact;
pub mod filtered;
pub mod interval;
pub mod kernel;
pub mod lazy;
pub mod scalar;

pub use exact::{exact_op_count, reset_exact_op_count, ParseRationalError, Rational};
pub use filtered::{Convert, FilterStats, FilteredCartesian, FilteredPredicate};
pub use interval::{Certainty, Interval};
pub use kernel::convert::{KernelConverter, NumberConversion, ToDouble, ToInterval, ToRational};
pub use kernel::{Bbox2, Cartesian, Intersection, Intersection2, IntersectionKind, Kernel, Line2, Point2, Segment2};
pub use lazy::{
    ApproxConverter, ExactConverter, Lazy, LazyConstruct, LazyIntersection, LazyKernel, LazyLine, LazyNumber,
    LazyPoint, LazySegment,
};
pub use scalar::{GeomError, Orientation, RobustScalar, Scalar, Sign};

/// Cartesian kernel over `f64`: fast, not robust.
pub type DoubleKernel = Cartesian<f64>;
/// Cartesian kernel over `f32`.
pub type FloatKernel = Cartesian<f32>;
/// Cartesian kernel over exact rationals.
pub type ExactKernel = Cartesian<Rational>;
/// Cartesian kernel over lazily evaluated exact numbers.
pub type LazyNumberKernel = Cartesian<LazyNumber>;

pub type DoublePoint = Point2<f64>;
pub type IntervalPoint = Point2<Interval>;
pub type ExactPoint = Point2<Rational>;
pub type LazyNumberPoint = Point2<LazyNumber>;
pub type DoubleSegment = Segment2<f64>;
pub type ExactSegment = Segment2<Rational>;
