//! Reference implementations on `num_rational::BigRational`, written
//! independently of the library so they can serve as oracles.

#![allow(dead_code)]

use lazy_exact::Sign;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Q = BigRational;

pub fn q(x: f64) -> Q {
    BigRational::from_float(x).expect("finite input")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P {
    pub x: Q,
    pub y: Q,
}

pub fn pt(x: f64, y: f64) -> P {
    P { x: q(x), y: q(y) }
}

pub fn sign(v: &Q) -> Sign {
    if v.is_positive() {
        Sign::Positive
    } else if v.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

fn cross2(ax: &Q, ay: &Q, bx: &Q, by: &Q) -> Q {
    ax * by - ay * bx
}

/// Twice the signed area of (o, a, b).
pub fn area2(o: &P, a: &P, b: &P) -> Q {
    cross2(&(&a.x - &o.x), &(&a.y - &o.y), &(&b.x - &o.x), &(&b.y - &o.y))
}

pub fn orientation(p: &P, q: &P, r: &P) -> Sign {
    sign(&area2(p, q, r))
}

pub fn compare(a: &Q, b: &Q) -> Sign {
    sign(&(a - b))
}

/// Positive when `d` is inside the circle through counterclockwise `a, b, c`.
pub fn incircle(a: &P, b: &P, c: &P, d: &P) -> Sign {
    let (adx, ady) = (&a.x - &d.x, &a.y - &d.y);
    let (bdx, bdy) = (&b.x - &d.x, &b.y - &d.y);
    let (cdx, cdy) = (&c.x - &d.x, &c.y - &d.y);
    let alift = &adx * &adx + &ady * &ady;
    let blift = &bdx * &bdx + &bdy * &bdy;
    let clift = &cdx * &cdx + &cdy * &cdy;
    let det = &adx * (&bdy * &clift - &cdy * &blift) - &ady * (&bdx * &clift - &cdx * &blift)
        + &alift * (&bdx * &cdy - &cdx * &bdy);
    sign(&det)
}

pub fn midpoint(a: &P, b: &P) -> P {
    let two = q(2.0);
    P { x: (&a.x + &b.x) / &two, y: (&a.y + &b.y) / &two }
}

/// Intersection of the perpendicular bisectors, by Cramer's rule.
pub fn circumcenter(a: &P, b: &P, c: &P) -> Option<P> {
    let two = q(2.0);
    let (a11, a12) = (&two * (&b.x - &a.x), &two * (&b.y - &a.y));
    let (a21, a22) = (&two * (&c.x - &a.x), &two * (&c.y - &a.y));
    let na = &a.x * &a.x + &a.y * &a.y;
    let b1 = &b.x * &b.x + &b.y * &b.y - &na;
    let b2 = &c.x * &c.x + &c.y * &c.y - &na;
    let det = &a11 * &a22 - &a12 * &a21;
    if det.is_zero() {
        return None;
    }
    Some(P { x: (&b1 * &a22 - &b2 * &a12) / &det, y: (&a11 * &b2 - &a21 * &b1) / &det })
}

/// The point of the line through `a` and `b` with the abscissa of `p`;
/// `None` for a vertical or undefined line.
pub fn vertical_projection(p: &P, a: &P, b: &P) -> Option<P> {
    if a.x == b.x {
        return None;
    }
    let slope = (&b.y - &a.y) / (&b.x - &a.x);
    Some(P { x: p.x.clone(), y: &a.y + (&p.x - &a.x) * slope })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inter {
    Empty,
    Point(P),
    /// Endpoints in lexicographic order.
    Segment(P, P),
}

fn lex_le(a: &P, b: &P) -> bool {
    (&a.x, &a.y) <= (&b.x, &b.y)
}

fn on_segment(x: &P, r: &P, s: &P) -> bool {
    let within = |v: &Q, a: &Q, b: &Q| (a.min(b) <= v) && (v <= a.max(b));
    area2(r, s, x).is_zero() && within(&x.x, &r.x, &s.x) && within(&x.y, &r.y, &s.y)
}

/// Closed segment intersection in parametric form.
pub fn intersect(p: &P, q_: &P, r: &P, s: &P) -> Inter {
    match (p == q_, r == s) {
        (true, true) => return if p == r { Inter::Point(p.clone()) } else { Inter::Empty },
        (true, false) => return if on_segment(p, r, s) { Inter::Point(p.clone()) } else { Inter::Empty },
        (false, true) => return if on_segment(r, p, q_) { Inter::Point(r.clone()) } else { Inter::Empty },
        _ => {}
    }
    let (dx, dy) = (&q_.x - &p.x, &q_.y - &p.y);
    let (ex, ey) = (&s.x - &r.x, &s.y - &r.y);
    let (wx, wy) = (&r.x - &p.x, &r.y - &p.y);
    let den = cross2(&dx, &dy, &ex, &ey);
    let zero = Q::zero();
    let one = q(1.0);
    let at = |t: &Q| P { x: &p.x + t * &dx, y: &p.y + t * &dy };
    if !den.is_zero() {
        let t = cross2(&wx, &wy, &ex, &ey) / &den;
        let u = cross2(&wx, &wy, &dx, &dy) / &den;
        return if zero <= t && t <= one && zero <= u && u <= one { Inter::Point(at(&t)) } else { Inter::Empty };
    }
    if !cross2(&wx, &wy, &dx, &dy).is_zero() {
        return Inter::Empty;
    }
    let dd = &dx * &dx + &dy * &dy;
    let param = |x: &P| ((&x.x - &p.x) * &dx + (&x.y - &p.y) * &dy) / &dd;
    let (t0, t1) = (param(r), param(s));
    let lo = t0.clone().min(t1.clone()).max(zero);
    let hi = t0.max(t1).min(one);
    if lo > hi {
        Inter::Empty
    } else if lo == hi {
        Inter::Point(at(&lo))
    } else {
        let (a, b) = (at(&lo), at(&hi));
        if lex_le(&a, &b) {
            Inter::Segment(a, b)
        } else {
            Inter::Segment(b, a)
        }
    }
}

/// Converts a library rational into the oracle representation.
pub fn from_lib(x: &lazy_exact::Rational) -> Q {
    x.as_big_rational().clone()
}

pub fn point_from_lib(p: &lazy_exact::ExactPoint) -> P {
    P { x: from_lib(&p.x), y: from_lib(&p.y) }
}

/// Whether the exact value `v` lies in `[lo, hi]`; infinite bounds are open.
pub fn encloses(lo: f64, hi: f64, v: &Q) -> bool {
    let above = lo == f64::NEG_INFINITY || (lo.is_finite() && q(lo) <= *v);
    let below = hi == f64::INFINITY || (hi.is_finite() && *v <= q(hi));
    above && below
}
