//! Constructions of the Cartesian kernel, generic over the number type.
//!
//! Every branch is decided through [`Scalar::sign`] or [`Scalar::compare`],
//! so an interval instantiation either returns the same case as exact
//! arithmetic would or fails with [`GeomError::Uncertain`].

use crate::kernel::object::{Bbox2, Intersection, Intersection2, Line2, Point2, Segment2};
use crate::kernel::predicates::{compare_xy, orientation};
use crate::scalar::{GeomError, Scalar, Sign};

fn two<N: Scalar>() -> N {
    N::one() + N::one()
}

pub fn midpoint<N: Scalar>(p: &Point2<N>, q: &Point2<N>) -> Result<Point2<N>, GeomError> {
    Ok(Point2::new(
        (p.x.clone() + q.x.clone()).checked_div(two())?,
        (p.y.clone() + q.y.clone()).checked_div(two())?,
    ))
}

/// Center of the circle through three non-collinear points.
pub fn circumcenter<N: Scalar>(
    p: &Point2<N>,
    q: &Point2<N>,
    r: &Point2<N>,
) -> Result<Point2<N>, GeomError> {
    let qx = q.x.clone() - p.x.clone();
    let qy = q.y.clone() - p.y.clone();
    let rx = r.x.clone() - p.x.clone();
    let ry = r.y.clone() - p.y.clone();
    let den = two::<N>() * (qx.clone() * ry.clone() - qy.clone() * rx.clone());
    if den.sign()? == Sign::Zero {
        return Err(GeomError::Precondition("circumcenter of collinear points"));
    }
    let q2 = qx.square() + qy.square();
    let r2 = rx.square() + ry.square();
    let cx = (ry * q2.clone() - qy * r2.clone()).checked_div(den.clone())?;
    let cy = (qx * r2 - rx * q2).checked_div(den)?;
    Ok(Point2::new(p.x.clone() + cx, p.y.clone() + cy))
}

pub fn segment<N: Scalar>(p: &Point2<N>, q: &Point2<N>) -> Segment2<N> {
    Segment2::new(p.clone(), q.clone())
}

/// The line through `p` and `q`, oriented from `p` to `q`.
pub fn line_through<N: Scalar>(p: &Point2<N>, q: &Point2<N>) -> Result<Line2<N>, GeomError> {
    if compare_xy(p, q)? == Sign::Zero {
        return Err(GeomError::Precondition("line through coincident points"));
    }
    let a = p.y.clone() - q.y.clone();
    let b = q.x.clone() - p.x.clone();
    let c = p.x.clone() * q.y.clone() - p.y.clone() * q.x.clone();
    Ok(Line2::new(a, b, c))
}

/// The point of `l` vertically above or below `p`.
pub fn vertical_projection<N: Scalar>(p: &Point2<N>, l: &Line2<N>) -> Result<Point2<N>, GeomError> {
    if l.b.sign()? == Sign::Zero {
        return Err(GeomError::Precondition("vertical projection onto a vertical line"));
    }
    let y = (-(l.a.clone() * p.x.clone() + l.c.clone())).checked_div(l.b.clone())?;
    Ok(Point2::new(p.x.clone(), y))
}

/// Intersection of two closed segments.
///
/// Proper and touching crossings give a point; collinear overlaps give a
/// segment with lexicographically ordered endpoints, or a point when the
/// overlap is a single point.
pub fn intersect_segments<N: Scalar>(
    s1: &Segment2<N>,
    s2: &Segment2<N>,
) -> Result<Intersection2<N>, GeomError> {
    let (p, q) = (&s1.source, &s1.target);
    let (r, s) = (&s2.source, &s2.target);

    let o1 = orientation(p, q, r)?;
    let o2 = orientation(p, q, s)?;
    if o1 == o2 && o1 != Sign::Zero {
        return Ok(Intersection::Empty);
    }
    let o3 = orientation(r, s, p)?;
    let o4 = orientation(r, s, q)?;
    if o3 == o4 && o3 != Sign::Zero {
        return Ok(Intersection::Empty);
    }

    if o1 == Sign::Zero && o2 == Sign::Zero && o3 == Sign::Zero && o4 == Sign::Zero {
        return collinear_overlap(p, q, r, s);
    }

    // The supporting lines cross in a single point and o3 != o4. Parametrize
    // along s1 with t = d3 / (d3 - d4) where d3, d4 are the determinants of
    // (r, s, p) and (r, s, q).
    let d3 = det(r, s, p);
    let d4 = det(r, s, q);
    let t = d3.clone().checked_div(d3 - d4)?;
    let x = p.x.clone() + t.clone() * (q.x.clone() - p.x.clone());
    let y = p.y.clone() + t * (q.y.clone() - p.y.clone());
    Ok(Intersection::Point(Point2::new(x, y)))
}

fn det<N: Scalar>(p: &Point2<N>, q: &Point2<N>, r: &Point2<N>) -> N {
    (q.x.clone() - p.x.clone()) * (r.y.clone() - p.y.clone())
        - (r.x.clone() - p.x.clone()) * (q.y.clone() - p.y.clone())
}

fn collinear_overlap<N: Scalar>(
    p: &Point2<N>,
    q: &Point2<N>,
    r: &Point2<N>,
    s: &Point2<N>,
) -> Result<Intersection2<N>, GeomError> {
    // all four points lie on one line (or both segments are single points),
    // so lexicographic order is the order along that line
    let (a1, b1) = ordered(p, q)?;
    let (a2, b2) = ordered(r, s)?;
    let lo = if compare_xy(a1, a2)? == Sign::Negative { a2 } else { a1 };
    let hi = if compare_xy(b1, b2)? == Sign::Negative { b1 } else { b2 };
    Ok(match compare_xy(lo, hi)? {
        Sign::Positive => Intersection::Empty,
        Sign::Zero => Intersection::Point(lo.clone()),
        Sign::Negative => Intersection::Segment(Segment2::new(lo.clone(), hi.clone())),
    })
}

fn ordered<'a, N: Scalar>(
    p: &'a Point2<N>,
    q: &'a Point2<N>,
) -> Result<(&'a Point2<N>, &'a Point2<N>), GeomError> {
    Ok(if compare_xy(p, q)? == Sign::Positive { (q, p) } else { (p, q) })
}

pub fn point_bbox<N: Scalar>(p: &Point2<N>) -> Bbox2 {
    let (xmin, xmax) = p.x.enclosure();
    let (ymin, ymax) = p.y.enclosure();
    Bbox2::new(xmin, ymin, xmax, ymax)
}

pub fn segment_bbox<N: Scalar>(s: &Segment2<N>) -> Bbox2 {
    point_bbox(&s.source).union(&point_bbox(&s.target))
}
