use lazy_exact::kernel::{construct, predicates};
use lazy_exact::{
    FilteredCartesian, GeomError, Intersection, Interval, Kernel, LazyKernel, Point2, Rational, Scalar, Sign,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Point2<Rational>;

fn exact(x: f64, y: f64) -> Q {
    Point2::new(Rational::from_f64_exact(x), Rational::from_f64_exact(y))
}

fn interval(p: &Q) -> Point2<Interval> {
    p.map(|c| Interval::point(c.to_f64()))
}

fn neg(s: Sign) -> Sign {
    match s {
        Sign::Negative => Sign::Positive,
        Sign::Zero => Sign::Zero,
        Sign::Positive => Sign::Negative,
    }
}

fn between(v: &Rational, a: &Rational, b: &Rational) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= v && v <= hi
}

fn sqdist(p: &Q, q: &Q) -> Rational {
    let dx = p.x.clone() - q.x.clone();
    let dy = p.y.clone() - q.y.clone();
    dx.clone() * dx + dy.clone() * dy
}

fn encloses(i: &Interval, r: &Rational) -> bool {
    Rational::from_f64_exact(i.inf()) <= *r && *r <= Rational::from_f64_exact(i.sup())
}

/// Coordinates drawn from a small grid half the time so that collinear and
/// cocircular configurations actually show up.
fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![(-4i32..=4).prop_map(|v| v as f64 * 0.25), -1.0f64..1.0]
}

fn pt() -> impl Strategy<Value = (f64, f64)> {
    (coord(), coord())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn orientation_is_antisymmetric(p in pt(), q in pt(), r in pt()) {
        let (p, q, r) = (exact(p.0, p.1), exact(q.0, q.1), exact(r.0, r.1));
        let o = predicates::orientation(&p, &q, &r).unwrap();
        prop_assert_eq!(predicates::orientation(&q, &p, &r).unwrap(), neg(o));
        prop_assert_eq!(predicates::orientation(&p, &r, &q).unwrap(), neg(o));
    }

    #[test]
    fn intersection_point_lies_on_both_segments(a in pt(), b in pt(), c in pt(), d in pt()) {
        let (a, b, c, d) = (exact(a.0, a.1), exact(b.0, b.1), exact(c.0, c.1), exact(d.0, d.1));
        let s1 = construct::segment(&a, &b);
        let s2 = construct::segment(&c, &d);
        if let Intersection::Point(p) = construct::intersect_segments(&s1, &s2).unwrap() {
            for (u, v) in [(&a, &b), (&c, &d)] {
                prop_assert_eq!(predicates::orientation(u, v, &p).unwrap(), Sign::Zero);
                prop_assert!(between(&p.x, &u.x, &v.x));
                prop_assert!(between(&p.y, &u.y, &v.y));
            }
        }
    }

    #[test]
    fn circumcenter_is_equidistant(p in pt(), q in pt(), r in pt()) {
        let (p, q, r) = (exact(p.0, p.1), exact(q.0, q.1), exact(r.0, r.1));
        match construct::circumcenter(&p, &q, &r) {
            Ok(c) => {
                let d = sqdist(&c, &p);
                prop_assert_eq!(&d, &sqdist(&c, &q));
                prop_assert_eq!(&d, &sqdist(&c, &r));
            }
            Err(GeomError::Precondition(_)) => {
                prop_assert_eq!(predicates::orientation(&p, &q, &r).unwrap(), Sign::Zero);
            }
            Err(e) => prop_assert!(false, "unexpected {}", e),
        }
    }

    #[test]
    fn interval_and_rational_signs_agree_on_one_expression(a in coord(), b in coord(), c in coord()) {
        // (a - b) * c + a * a - b * c, evaluated in both number types
        fn eval<N: Scalar>(a: N, b: N, c: N) -> N {
            (a.clone() - b.clone()) * c.clone() + a.clone() * a - b * c
        }
        let e = eval(Rational::from_f64_exact(a), Rational::from_f64_exact(b), Rational::from_f64_exact(c));
        let i = eval(Interval::point(a), Interval::point(b), Interval::point(c));
        prop_assert!(encloses(&i, &e));
        if let Ok(s) = Scalar::sign(&i) {
            prop_assert_eq!(s, e.sign());
        }
    }

    #[test]
    fn filtered_and_lazy_predicates_match_exact(p in pt(), q in pt(), r in pt(), t in pt()) {
        let f = FilteredCartesian::new();
        let l = LazyKernel::new();
        let (ep, eq, er, et) = (exact(p.0, p.1), exact(q.0, q.1), exact(r.0, r.1), exact(t.0, t.1));
        let o = predicates::orientation(&ep, &eq, &er).unwrap();
        let c = predicates::side_of_oriented_circle(&ep, &eq, &er, &et).unwrap();
        let cx = predicates::compare_x(&ep, &eq).unwrap();

        let (fp, fq, fr, ft) = (f.point(p.0, p.1), f.point(q.0, q.1), f.point(r.0, r.1), f.point(t.0, t.1));
        prop_assert_eq!(f.orientation(&fp, &fq, &fr), o);
        prop_assert_eq!(f.side_of_oriented_circle(&fp, &fq, &fr, &ft), c);
        prop_assert_eq!(f.compare_x(&fp, &fq), cx);

        let (lp, lq, lr, lt) = (l.point(p.0, p.1), l.point(q.0, q.1), l.point(r.0, r.1), l.point(t.0, t.1));
        prop_assert_eq!(l.orientation(&lp, &lq, &lr), o);
        prop_assert_eq!(l.side_of_oriented_circle(&lp, &lq, &lr, &lt), c);
        prop_assert_eq!(l.compare_x(&lp, &lq), cx);
    }

    #[test]
    fn lazy_constructions_enclose_their_exact_values(a in pt(), b in pt(), c in pt(), d in pt()) {
        let l = LazyKernel::new();
        let (pa, pb, pc, pd) = (l.point(a.0, a.1), l.point(b.0, b.1), l.point(c.0, c.1), l.point(d.0, d.1));
        let m = l.midpoint(&pa, &pc);
        let s1 = l.segment(&pa, &pb);
        let s2 = l.segment(&m, &pd);
        let mut points = vec![m.clone()];
        if let Intersection::Point(p) = l.intersection(&s1, &s2) {
            points.push(l.midpoint(&p, &pb));
            points.push(p);
        }
        for p in &points {
            let before = p.approx();
            let e = p.exact().clone();
            prop_assert!(encloses(&before.x, &e.x) && encloses(&before.y, &e.y));
            let after = p.approx();
            prop_assert!(encloses(&after.x, &e.x) && encloses(&after.y, &e.y));
        }
    }
}

/// Interval predicates, when they decide, never contradict the exact ones.
/// Half the triples are nearly collinear so both outcomes get exercised.
#[test]
fn decided_interval_predicates_never_contradict_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut decided, mut undecided) = (0u32, 0u32);
    for i in 0..100_000 {
        let p = exact(rng.gen(), rng.gen());
        let q = exact(rng.gen(), rng.gen());
        let r = if i % 2 == 0 {
            // on the line pq, rounded to doubles
            let t: f64 = rng.gen_range(-2.0..2.0);
            let x = p.x.to_f64() + t * (q.x.to_f64() - p.x.to_f64());
            let y = p.y.to_f64() + t * (q.y.to_f64() - p.y.to_f64());
            exact(x, y)
        } else {
            exact(rng.gen(), rng.gen())
        };
        let t = exact(rng.gen(), rng.gen());
        let (ip, iq, ir, it) = (interval(&p), interval(&q), interval(&r), interval(&t));

        let checks = [
            (predicates::orientation(&ip, &iq, &ir), predicates::orientation(&p, &q, &r)),
            (predicates::compare_x(&ip, &iq), predicates::compare_x(&p, &q)),
            (predicates::compare_y(&ip, &ir), predicates::compare_y(&p, &r)),
            (
                predicates::side_of_oriented_circle(&ip, &iq, &ir, &it),
                predicates::side_of_oriented_circle(&p, &q, &r, &t),
            ),
        ];
        for (approx, exact) in checks {
            match approx {
                Ok(s) => {
                    assert_eq!(s, exact.unwrap());
                    decided += 1;
                }
                Err(GeomError::Uncertain) => undecided += 1,
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(decided > 0 && undecided > 0, "decided {decided}, undecided {undecided}");
}
