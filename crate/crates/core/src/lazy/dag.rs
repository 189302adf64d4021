//! Reference-counted DAG nodes shared by lazy numbers and lazy geometric
//! objects.
//!
//! Each node stores an interval approximation and, once computed, the exact
//! value. Interior nodes also keep the recipe to recompute the exact value
//! from their children. Exact evaluation walks the DAG with an explicit stack,
//! caches results, refreshes approximations from the exact values and prunes
//! children. Dropping long chains is also iterative.
//!
//! Handles are `Rc`-based: a DAG is confined to the thread that built it.

use std::cell::{Cell, OnceCell, RefCell};
use std::fmt;
use std::rc::Rc;

thread_local! {
    static LIVE_NODES: Cell<i64> = const { Cell::new(0) };
    static CREATED_NODES: Cell<u64> = const { Cell::new(0) };
    static DEFAULT_NODES: Cell<i64> = const { Cell::new(0) };
    static PENDING_DROPS: RefCell<Vec<Rc<dyn DagNode>>> = const { RefCell::new(Vec::new()) };
    static DRAINING: Cell<bool> = const { Cell::new(false) };
}

/// DAG nodes currently alive on this thread, shared default nodes included.
pub fn live_node_count() -> i64 {
    LIVE_NODES.with(Cell::get)
}

/// DAG nodes allocated on this thread so far.
pub fn created_node_count() -> u64 {
    CREATED_NODES.with(Cell::get)
}

/// Shared default nodes instantiated on this thread (one per object kind).
pub fn default_node_count() -> i64 {
    DEFAULT_NODES.with(Cell::get)
}

/// A value that can be the exact part of a lazy node.
pub trait ExactValue: Sized + 'static {
    /// The interval-based approximation paired with this exact type.
    type Approx: Copy + 'static;

    /// Tight enclosure of the exact value.
    fn to_approx(&self) -> Self::Approx;

    /// The exact value of an approximation made of singleton intervals, or
    /// `None` if some interval is not a singleton.
    fn from_singleton(approx: &Self::Approx) -> Option<Self>;

    /// Handle to the shared default node of this kind on this thread, or
    /// `None` while the thread is being torn down.
    fn try_default_handle() -> Option<Lazy<Self::Approx, Self>>;
}

/// Type-erased view of a node, used by evaluation and drop traversals.
pub(crate) trait DagNode {
    fn is_exact(&self) -> bool;
    /// Pushes the children whose exact value is still missing.
    fn push_pending(&self, stack: &mut Vec<Rc<dyn DagNode>>);
    /// Computes and caches the exact value; all children must be exact.
    fn update_exact(&self);
    fn outdegree(&self) -> usize;
}

pub(crate) trait Rep<AT, ET>: DagNode {
    fn slot(&self) -> &Slot<AT, ET>;
}

/// Approximation plus exact cache, the part every node has.
pub(crate) struct Slot<AT, ET> {
    at: Cell<AT>,
    et: OnceCell<Box<ET>>,
}

impl<AT: Copy, ET: ExactValue<Approx = AT>> Slot<AT, ET> {
    pub(crate) fn new(at: AT) -> Self {
        let _ = LIVE_NODES.try_with(|c| c.set(c.get() + 1));
        let _ = CREATED_NODES.try_with(|c| c.set(c.get() + 1));
        Slot { at: Cell::new(at), et: OnceCell::new() }
    }

    pub(crate) fn with_exact(et: ET) -> Self {
        let slot = Slot::new(et.to_approx());
        let _ = slot.et.set(Box::new(et));
        slot
    }

    #[inline]
    pub(crate) fn approx(&self) -> AT {
        self.at.get()
    }

    #[inline]
    pub(crate) fn exact(&self) -> Option<&ET> {
        self.et.get().map(|b| &**b)
    }

    /// Caches `et` and replaces the approximation by its tight enclosure.
    pub(crate) fn set_exact(&self, et: ET) {
        self.at.set(et.to_approx());
        if self.et.set(Box::new(et)).is_err() {
            panic!("exact value of a lazy node computed twice");
        }
    }

    pub(crate) fn set_approx(&self, at: AT) {
        self.at.set(at);
    }
}

impl<AT, ET> Drop for Slot<AT, ET> {
    fn drop(&mut self) {
        let _ = LIVE_NODES.try_with(|c| c.set(c.get() - 1));
    }
}

/// Leaf node. Its exact value is either stored at creation or derived on
/// demand from a singleton approximation (leaves built from doubles).
pub(crate) struct Leaf<AT, ET> {
    slot: Slot<AT, ET>,
}

impl<AT: Copy + 'static, ET: ExactValue<Approx = AT>> DagNode for Leaf<AT, ET> {
    fn is_exact(&self) -> bool {
        self.slot.exact().is_some()
    }

    fn push_pending(&self, _: &mut Vec<Rc<dyn DagNode>>) {}

    fn update_exact(&self) {
        let et = ET::from_singleton(&self.slot.approx())
            .expect("leaf without exact value must have a singleton approximation");
        let _ = self.slot.et.set(Box::new(et));
    }

    fn outdegree(&self) -> usize {
        0
    }
}

impl<AT: Copy + 'static, ET: ExactValue<Approx = AT>> Rep<AT, ET> for Leaf<AT, ET> {
    fn slot(&self) -> &Slot<AT, ET> {
        &self.slot
    }
}

/// Computes the exact value of `root` and of every node below it that is
/// still missing one, children before parents, without recursion.
pub(crate) fn force(root: Rc<dyn DagNode>) {
    let mut stack = vec![root];
    while let Some(top) = stack.last() {
        if top.is_exact() {
            stack.pop();
            continue;
        }
        let top = Rc::clone(top);
        let before = stack.len();
        top.push_pending(&mut stack);
        if stack.len() == before {
            top.update_exact();
            stack.pop();
        }
    }
}

/// Drops `children` breadth-first through a thread-local queue so that
/// releasing a deep chain does not recurse.
pub(crate) fn defer_drops(children: &mut Vec<Rc<dyn DagNode>>) {
    if children.is_empty() {
        return;
    }
    let queued = PENDING_DROPS
        .try_with(|q| q.borrow_mut().append(children))
        .is_ok();
    if !queued {
        children.clear();
        return;
    }
    if DRAINING.with(|d| d.replace(true)) {
        return;
    }
    loop {
        let next = PENDING_DROPS.with(|q| q.borrow_mut().pop());
        match next {
            Some(node) => drop(node),
            None => break,
        }
    }
    DRAINING.with(|d| d.set(false));
}

/// Handle to a lazily evaluated value: `AT` is the interval approximation,
/// `ET` the exact value. Cloning shares the node.
pub struct Lazy<AT, ET> {
    node: Rc<dyn Rep<AT, ET>>,
}

impl<AT, ET> Clone for Lazy<AT, ET> {
    fn clone(&self) -> Self {
        Lazy { node: Rc::clone(&self.node) }
    }
}

impl<AT: Copy + 'static, ET: ExactValue<Approx = AT>> Lazy<AT, ET> {
    pub(crate) fn from_node(node: Rc<dyn Rep<AT, ET>>) -> Self {
        Lazy { node }
    }

    /// A leaf holding a known exact value.
    pub fn from_exact(et: ET) -> Self {
        Lazy::from_node(Rc::new(Leaf { slot: Slot::with_exact(et) }))
    }

    /// A leaf whose approximation is exact (all intervals are singletons);
    /// the exact value is materialized only if requested.
    ///
    /// # Panics
    ///
    /// Panics if some interval of `at` is not a singleton.
    pub fn from_singleton(at: AT) -> Self {
        assert!(
            ET::from_singleton(&at).is_some(),
            "leaf approximation must consist of singleton intervals"
        );
        Lazy::from_node(Rc::new(Leaf { slot: Slot::new(at) }))
    }

    /// The stored approximation; never triggers exact computation.
    #[inline]
    pub fn approx(&self) -> AT {
        self.node.slot().approx()
    }

    /// The exact value, computing and caching it (and everything it depends
    /// on) if needed. Afterwards the approximation is refreshed from the
    /// exact value and the node's children are pruned.
    pub fn exact(&self) -> &ET {
        if self.node.slot().exact().is_none() {
            force(self.dag());
        }
        self.node
            .slot()
            .exact()
            .expect("exact value present after evaluation")
    }

    /// Same as [`Lazy::exact`], named after the node operation it performs.
    pub fn update_exact(&self) -> &ET {
        self.exact()
    }

    pub fn is_exact_cached(&self) -> bool {
        self.node.slot().exact().is_some()
    }

    pub(crate) fn cached_exact(&self) -> Option<&ET> {
        self.node.slot().exact()
    }

    /// Number of children the node still references (0 for leaves and for
    /// pruned nodes).
    pub fn outdegree(&self) -> usize {
        self.node.outdegree()
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Rc::ptr_eq(&self.node, &other.node)
    }

    /// Handle to the shared default node of this kind.
    pub fn default_handle() -> Self {
        ET::try_default_handle().expect("default node accessed during thread teardown")
    }

    pub fn is_default(&self) -> bool {
        ET::try_default_handle().is_some_and(|d| d.ptr_eq(self))
    }

    /// Number of handles sharing this node.
    pub fn handle_count(&self) -> usize {
        Rc::strong_count(&self.node)
    }

    /// Overwrites the stored approximation. Test hook: the caller must keep
    /// the exact value inside `at`.
    #[doc(hidden)]
    pub fn debug_set_approx(&self, at: AT) {
        self.node.slot().set_approx(at);
    }

    pub(crate) fn dag(&self) -> Rc<dyn DagNode> {
        self.node.clone()
    }

    pub(crate) fn into_dag(self) -> Rc<dyn DagNode> {
        self.node
    }
}

/// Detaches `slot` from its node, leaving the shared default in its place.
/// Returns the old node unless it already was the default.
pub(crate) fn take_child<AT: Copy + 'static, ET: ExactValue<Approx = AT>>(
    slot: &mut Lazy<AT, ET>,
) -> Option<Rc<dyn DagNode>> {
    let default = ET::try_default_handle()?;
    if default.ptr_eq(slot) {
        return None;
    }
    Some(std::mem::replace(slot, default).into_dag())
}

/// Builds a thread-local shared default node; used by [`ExactValue`] impls.
pub(crate) fn new_default_node<AT: Copy + 'static, ET: ExactValue<Approx = AT>>(et: ET) -> Lazy<AT, ET> {
    let _ = DEFAULT_NODES.try_with(|c| c.set(c.get() + 1));
    Lazy::from_exact(et)
}

impl<AT: fmt::Debug + Copy + 'static, ET: fmt::Debug + ExactValue<Approx = AT>> fmt::Debug for Lazy<AT, ET> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Lazy");
        d.field("approx", &self.approx());
        match self.cached_exact() {
            Some(e) => d.field("exact", e),
            None => d.field("exact", &format_args!("<pending>")),
        };
        d.finish()
    }
}
