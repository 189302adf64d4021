//! Predicates of the Cartesian kernel, generic over the number type.
//!
//! Under [`Interval`](crate::Interval) any undecided sign surfaces as
//! [`GeomError::Uncertain`]; under robust number types they always answer.

use crate::kernel::object::Point2;
use crate::scalar::{GeomError, Orientation, Scalar, Sign};

/// Sign of `(q.x-p.x)(r.y-p.y) - (r.x-p.x)(q.y-p.y)`.
pub fn orientation<N: Scalar>(
    p: &Point2<N>,
    q: &Point2<N>,
    r: &Point2<N>,
) -> Result<Orientation, GeomError> {
    let lhs = (q.x.clone() - p.x.clone()) * (r.y.clone() - p.y.clone());
    let rhs = (r.x.clone() - p.x.clone()) * (q.y.clone() - p.y.clone());
    lhs.compare(&rhs)
}

pub fn collinear<N: Scalar>(p: &Point2<N>, q: &Point2<N>, r: &Point2<N>) -> Result<bool, GeomError> {
    Ok(orientation(p, q, r)? == Sign::Zero)
}

pub fn compare_x<N: Scalar>(p: &Point2<N>, q: &Point2<N>) -> Result<Sign, GeomError> {
    p.x.compare(&q.x)
}

pub fn compare_y<N: Scalar>(p: &Point2<N>, q: &Point2<N>) -> Result<Sign, GeomError> {
    p.y.compare(&q.y)
}

/// Lexicographic `(x, y)` comparison.
pub fn compare_xy<N: Scalar>(p: &Point2<N>, q: &Point2<N>) -> Result<Sign, GeomError> {
    match compare_x(p, q)? {
        Sign::Zero => compare_y(p, q),
        s => Ok(s),
    }
}

/// Position of `t` relative to the circle through `p`, `q`, `r`.
///
/// For counter-clockwise `p, q, r`: `Positive` inside, `Zero` on the circle,
/// `Negative` outside. The sign flips for clockwise triples, and for
/// collinear `p, q, r` it is the sign of the degenerate determinant.
pub fn side_of_oriented_circle<N: Scalar>(
    p: &Point2<N>,
    q: &Point2<N>,
    r: &Point2<N>,
    t: &Point2<N>,
) -> Result<Sign, GeomError> {
    let qx = q.x.clone() - p.x.clone();
    let qy = q.y.clone() - p.y.clone();
    let rx = r.x.clone() - p.x.clone();
    let ry = r.y.clone() - p.y.clone();
    let tx = t.x.clone() - p.x.clone();
    let ty = t.y.clone() - p.y.clone();
    let q2 = qx.square() + qy.square();
    let r2 = rx.square() + ry.square();
    let t2 = tx.square() + ty.square();
    // rows (q-p, |q-p|^2), (r-p, |r-p|^2), (t-p, |t-p|^2); negative inside
    let det = qx * (ry.clone() * t2.clone() - r2.clone() * ty.clone())
        - qy * (rx.clone() * t2 - r2 * tx.clone())
        + q2 * (rx * ty - ry * tx);
    Ok(det.sign()?.reverse())
}
