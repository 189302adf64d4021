//! Lazy exact evaluation.
//!
//! [`LazyNumber`] records arithmetic on numbers; [`LazyKernel`] records
//! geometric constructions on whole objects. Both keep an interval
//! approximation per node and compute rationals on demand.

mod construct;
pub mod dag;
pub mod kernel;
pub mod number;

pub use construct::LazyConstruct;
pub use dag::{created_node_count, default_node_count, live_node_count, ExactValue, Lazy};
pub use kernel::{ApproxConverter, ExactConverter, LazyIntersection, LazyKernel, LazyLine, LazyPoint, LazySegment};
pub use number::{lazy_number_fallbacks, reset_lazy_number_fallbacks, LazyNumber};
