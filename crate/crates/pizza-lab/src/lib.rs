//! Exact rational pizzas, their combinatorial invariants, explicit arc
//! realizations, and an independent tangency-order oracle that recovers
//! the invariants from the arcs alone.

pub mod blocks;
pub mod exact;
pub mod fixtures;
pub mod invariant;
pub mod par;
pub mod pizza;
pub mod realization;
pub mod sweep;
pub mod table;
pub mod verify;
