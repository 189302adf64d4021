//! Lazy exact numbers: every arithmetic operation becomes a DAG node carrying
//! an interval; rationals are computed only when a comparison needs them.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_traits::{FromPrimitive, One, Zero};

use super::dag::{defer_drops, new_default_node, DagNode, ExactValue, Lazy, Rep, Slot};
use crate::exact::Rational;
use crate::interval::Interval;
use crate::scalar::{GeomError, RobustScalar, Scalar, Sign};

/// Lazily evaluated exact number.
pub type LazyNumber = Lazy<Interval, Rational>;

thread_local! {
    static NUMBER_FALLBACKS: Cell<u64> = const { Cell::new(0) };
}

/// Comparisons and sign tests on this thread that needed exact values.
pub fn lazy_number_fallbacks() -> u64 {
    NUMBER_FALLBACKS.with(Cell::get)
}

pub fn reset_lazy_number_fallbacks() {
    NUMBER_FALLBACKS.with(|c| c.set(0));
}

fn count_fallback() {
    NUMBER_FALLBACKS.with(|c| c.set(c.get() + 1));
}

impl ExactValue for Rational {
    type Approx = Interval;

    fn to_approx(&self) -> Interval {
        self.to_interval()
    }

    fn from_singleton(approx: &Interval) -> Option<Rational> {
        if approx.is_singleton() {
            Rational::from_f64(approx.inf())
        } else {
            None
        }
    }

    fn try_default_handle() -> Option<LazyNumber> {
        thread_local! {
            static DEFAULT: LazyNumber = new_default_node(Rational::zero());
        }
        DEFAULT.try_with(Clone::clone).ok()
    }
}

#[derive(Clone, Copy, Debug)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

enum Op {
    Neg(LazyNumber),
    Binary(BinOp, LazyNumber, LazyNumber),
    Evaluated,
}

struct NumberNode {
    slot: Slot<Interval, Rational>,
    op: RefCell<Op>,
}

impl NumberNode {
    fn handle(at: Interval, op: Op) -> LazyNumber {
        Lazy::from_node(Rc::new(NumberNode { slot: Slot::new(at), op: RefCell::new(op) }))
    }
}

fn exact_of(x: &LazyNumber) -> &Rational {
    x.cached_exact().expect("operands are evaluated first")
}

impl DagNode for NumberNode {
    fn is_exact(&self) -> bool {
        self.slot.exact().is_some()
    }

    fn push_pending(&self, stack: &mut Vec<Rc<dyn DagNode>>) {
        let mut push = |x: &LazyNumber| {
            if !x.is_exact_cached() {
                stack.push(x.dag());
            }
        };
        match &*self.op.borrow() {
            Op::Neg(a) => push(a),
            Op::Binary(_, a, b) => {
                push(a);
                push(b);
            }
            Op::Evaluated => {}
        }
    }

    fn update_exact(&self) {
        let et = match &*self.op.borrow() {
            Op::Neg(a) => -exact_of(a),
            Op::Binary(op, a, b) => {
                let (a, b) = (exact_of(a), exact_of(b));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                }
            }
            Op::Evaluated => unreachable!("evaluated node without exact value"),
        };
        self.slot.set_exact(et);
        let old = self.op.replace(Op::Evaluated);
        release(old);
    }

    fn outdegree(&self) -> usize {
        match &*self.op.borrow() {
            Op::Neg(_) => 1,
            Op::Binary(..) => 2,
            Op::Evaluated => 0,
        }
    }
}

fn release(op: Op) {
    let mut old = match op {
        Op::Neg(a) => vec![a.into_dag()],
        Op::Binary(_, a, b) => vec![a.into_dag(), b.into_dag()],
        Op::Evaluated => return,
    };
    defer_drops(&mut old);
}

impl Rep<Interval, Rational> for NumberNode {
    fn slot(&self) -> &Slot<Interval, Rational> {
        &self.slot
    }
}

impl Drop for NumberNode {
    fn drop(&mut self) {
        release(std::mem::replace(self.op.get_mut(), Op::Evaluated));
    }
}

impl LazyNumber {
    /// Exact leaf for a finite double; `None` for NaN or infinities.
    pub fn from_double(x: f64) -> Option<LazyNumber> {
        Interval::from_f64(x).map(Lazy::from_singleton)
    }

    pub fn from_rational(q: Rational) -> LazyNumber {
        Lazy::from_exact(q)
    }

    fn binary(op: BinOp, at: Interval, a: &LazyNumber, b: &LazyNumber) -> LazyNumber {
        NumberNode::handle(at, Op::Binary(op, a.clone(), b.clone()))
    }
}

macro_rules! lazy_binop {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr<&LazyNumber> for &LazyNumber {
            type Output = LazyNumber;

            fn $m(self, rhs: &LazyNumber) -> LazyNumber {
                LazyNumber::binary(BinOp::$op, self.approx().$m(rhs.approx()), self, rhs)
            }
        }

        impl $tr for LazyNumber {
            type Output = LazyNumber;

            fn $m(self, rhs: LazyNumber) -> LazyNumber {
                (&self).$m(&rhs)
            }
        }
    };
}

lazy_binop!(Add, add, Add);
lazy_binop!(Sub, sub, Sub);
lazy_binop!(Mul, mul, Mul);

impl Neg for &LazyNumber {
    type Output = LazyNumber;

    fn neg(self) -> LazyNumber {
        NumberNode::handle(-self.approx(), Op::Neg(self.clone()))
    }
}

impl Neg for LazyNumber {
    type Output = LazyNumber;

    fn neg(self) -> LazyNumber {
        -&self
    }
}

impl Zero for LazyNumber {
    fn zero() -> Self {
        Lazy::from_singleton(Interval::point(0.0))
    }

    fn is_zero(&self) -> bool {
        Scalar::sign(self) == Ok(Sign::Zero)
    }
}

impl One for LazyNumber {
    fn one() -> Self {
        Lazy::from_singleton(Interval::point(1.0))
    }
}

impl FromPrimitive for LazyNumber {
    fn from_i64(n: i64) -> Option<Self> {
        Some(LazyNumber::from_rational(Rational::from(n)))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Rational::from_u64(n).map(LazyNumber::from_rational)
    }

    fn from_f64(x: f64) -> Option<Self> {
        LazyNumber::from_double(x)
    }
}

impl PartialEq for LazyNumber {
    /// Exact equality; may evaluate.
    fn eq(&self, other: &Self) -> bool {
        Scalar::compare(self, other) == Ok(Sign::Zero)
    }
}

impl PartialOrd for LazyNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(Scalar::compare(self, other).ok()?.to_ordering())
    }
}

impl Scalar for LazyNumber {
    /// Division is built lazily when the divisor's interval excludes zero.
    /// Otherwise both operands are evaluated at once so a zero divisor is
    /// reported here rather than during a later evaluation.
    fn checked_div(self, rhs: Self) -> Result<Self, GeomError> {
        match Interval::checked_div(&self.approx(), &rhs.approx()) {
            Ok(at) => Ok(LazyNumber::binary(BinOp::Div, at, &self, &rhs)),
            Err(_) => {
                count_fallback();
                let d = rhs.exact();
                if d.is_zero() {
                    return Err(GeomError::Precondition("division by zero"));
                }
                Ok(LazyNumber::from_rational(self.exact() / d))
            }
        }
    }

    fn sign(&self) -> Result<Sign, GeomError> {
        Ok(match self.approx().sign().decided() {
            Some(s) => s,
            None => {
                count_fallback();
                self.exact().sign()
            }
        })
    }

    fn compare(&self, other: &Self) -> Result<Sign, GeomError> {
        Ok(match self.approx().compare(&other.approx()).decided() {
            Some(s) => s,
            None => {
                count_fallback();
                Sign::from_ordering(self.exact().cmp(other.exact()))
            }
        })
    }

    fn enclosure(&self) -> (f64, f64) {
        let a = self.approx();
        (a.inf(), a.sup())
    }
}

impl RobustScalar for LazyNumber {
    fn fallback_count() -> Option<u64> {
        Some(lazy_number_fallbacks())
    }
}
