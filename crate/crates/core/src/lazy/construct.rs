//! Lazy constructions: nodes whose exact value is recomputed on demand from
//! their children by a stored exact function.

use std::cell::{Cell, RefCell};
use std::rc::Rc;

use super::dag::{defer_drops, take_child, DagNode, ExactValue, Lazy, Rep, Slot};
use crate::filtered::FilterStats;
use crate::scalar::GeomError;

/// Child bookkeeping of a construction node.
pub(crate) trait Children: 'static {
    fn push_pending(&self, stack: &mut Vec<Rc<dyn DagNode>>);
    /// Replaces every child by the shared default, handing out the old ones.
    fn take_children(&mut self, out: &mut Vec<Rc<dyn DagNode>>);
    fn live_children(&self) -> usize;
}

/// Children plus the exact function combining them.
pub(crate) trait Recipe<ET>: Children {
    fn compute(&self) -> Result<ET, GeomError>;
}

pub(crate) struct Construction<AT, ET, R: Children> {
    slot: Slot<AT, ET>,
    recipe: RefCell<R>,
}

impl<AT, ET, R> Construction<AT, ET, R>
where
    AT: Copy + 'static,
    ET: ExactValue<Approx = AT>,
    R: Recipe<ET>,
{
    pub(crate) fn handle(at: AT, recipe: R) -> Lazy<AT, ET> {
        Lazy::from_node(Rc::new(Construction { slot: Slot::new(at), recipe: RefCell::new(recipe) }))
    }
}

impl<AT, ET, R> DagNode for Construction<AT, ET, R>
where
    AT: Copy + 'static,
    ET: ExactValue<Approx = AT>,
    R: Recipe<ET>,
{
    fn is_exact(&self) -> bool {
        self.slot.exact().is_some()
    }

    fn push_pending(&self, stack: &mut Vec<Rc<dyn DagNode>>) {
        self.recipe.borrow().push_pending(stack);
    }

    fn update_exact(&self) {
        let et = match self.recipe.borrow().compute() {
            Ok(et) => et,
            Err(e) => panic!("exact construction failed where the approximation succeeded: {e}"),
        };
        self.slot.set_exact(et);
        let mut old = Vec::new();
        self.recipe.borrow_mut().take_children(&mut old);
        defer_drops(&mut old);
    }

    fn outdegree(&self) -> usize {
        self.recipe.borrow().live_children()
    }
}

impl<AT, ET, R> Rep<AT, ET> for Construction<AT, ET, R>
where
    AT: Copy + 'static,
    ET: ExactValue<Approx = AT>,
    R: Recipe<ET>,
{
    fn slot(&self) -> &Slot<AT, ET> {
        &self.slot
    }
}

impl<AT, ET, R: Children> Drop for Construction<AT, ET, R> {
    fn drop(&mut self) {
        let mut old = Vec::new();
        self.recipe.get_mut().take_children(&mut old);
        defer_drops(&mut old);
    }
}

/// Adapts a pair of approximate and exact construction functions into a
/// lazy construction.
///
/// `AC` works on approximations and may report [`GeomError::Uncertain`];
/// then the exact function runs right away and the result is a leaf.
/// Otherwise the result is a node that stores `EC` and its arguments.
pub struct LazyConstruct<AC, EC> {
    ac: AC,
    ec: EC,
    calls: Cell<u64>,
    fallbacks: Cell<u64>,
}

impl<AC, EC> LazyConstruct<AC, EC> {
    pub fn new(ac: AC, ec: EC) -> Self {
        LazyConstruct { ac, ec, calls: Cell::new(0), fallbacks: Cell::new(0) }
    }

    pub fn stats(&self) -> FilterStats {
        FilterStats { approx_calls: self.calls.get(), exact_fallbacks: self.fallbacks.get() }
    }

    pub fn reset_stats(&self) {
        self.calls.set(0);
        self.fallbacks.set(0);
    }
}

macro_rules! arity {
    ($args:ident, $call:ident; $($a:ident: $at:ident, $et:ident),+) => {
        pub(crate) struct $args<F, $($at, $et),+> {
            ec: F,
            $($a: Lazy<$at, $et>,)+
        }

        impl<F, $($at, $et),+> $args<F, $($at, $et),+> {
            pub(crate) fn new(ec: F, $($a: Lazy<$at, $et>),+) -> Self {
                $args { ec, $($a),+ }
            }
        }

        impl<F: 'static, $($at, $et),+> Children for $args<F, $($at, $et),+>
        where
            $($at: Copy + 'static, $et: ExactValue<Approx = $at>,)+
        {
            fn push_pending(&self, stack: &mut Vec<Rc<dyn DagNode>>) {
                $(if !self.$a.is_exact_cached() {
                    stack.push(self.$a.dag());
                })+
            }

            fn take_children(&mut self, out: &mut Vec<Rc<dyn DagNode>>) {
                $(out.extend(take_child(&mut self.$a));)+
            }

            fn live_children(&self) -> usize {
                0 $(+ usize::from(!self.$a.is_default()))+
            }
        }

        impl<ET, F, $($at, $et),+> Recipe<ET> for $args<F, $($at, $et),+>
        where
            F: Fn($(&$et),+) -> Result<ET, GeomError> + 'static,
            $($at: Copy + 'static, $et: ExactValue<Approx = $at>,)+
        {
            fn compute(&self) -> Result<ET, GeomError> {
                (self.ec)($(self.$a.cached_exact().expect("children are evaluated first")),+)
            }
        }

        impl<AC, EC> LazyConstruct<AC, EC> {
            /// Constructs from lazy arguments; see [`LazyConstruct`].
            pub fn $call<AT, ET, $($at, $et),+>(&self, $($a: &Lazy<$at, $et>),+) -> Result<Lazy<AT, ET>, GeomError>
            where
                AC: Fn($(&$at),+) -> Result<AT, GeomError>,
                EC: Fn($(&$et),+) -> Result<ET, GeomError> + Clone + 'static,
                AT: Copy + 'static,
                ET: ExactValue<Approx = AT>,
                $($at: Copy + 'static, $et: ExactValue<Approx = $at>,)+
            {
                self.calls.set(self.calls.get() + 1);
                match (self.ac)($(&$a.approx()),+) {
                    Ok(at) => Ok(Construction::handle(at, $args::new(self.ec.clone(), $($a.clone()),+))),
                    Err(GeomError::Uncertain) => {
                        self.fallbacks.set(self.fallbacks.get() + 1);
                        (self.ec)($($a.exact()),+).map(Lazy::from_exact)
                    }
                    Err(e) => Err(e),
                }
            }
        }
    };
}

arity!(Args1, call1; a1: AT1, ET1);
arity!(Args2, call2; a1: AT1, ET1, a2: AT2, ET2);
arity!(Args3, call3; a1: AT1, ET1, a2: AT2, ET2, a3: AT3, ET3);
arity!(Args4, call4; a1: AT1, ET1, a2: AT2, ET2, a3: AT3, ET3, a4: AT4, ET4);
