//! Explicit realizations: functions with a prescribed pizza, and normal
//! pairs of triangles with a prescribed invariant.

mod construct;
mod embedding;
mod function;
mod slice;

use thiserror::Error;

use crate::blocks::BlockError;
use crate::exact::ExactError;
use crate::invariant::InvariantError;
use crate::pizza::PizzaError;

pub use construct::{realize_general, realize_transverse, sigma_from_extended};
pub use embedding::{model_pair, ArcRole, NamedArc, PairEmbedding, PrimaryPiece};
pub use function::{cumulative_arcs, realize_function, PiecewiseFunctionRealization};
pub use slice::{grade, graded_power, test_arc, Side, SliceFormula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error(transparent)]
    Pizza(#[from] PizzaError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error("not admissible: {0}")]
    Admissibility(String),
    #[error("exponent constraint: {0}")]
    Exponents(String),
    #[error("slice formula: {0}")]
    Slice(String),
    #[error("embedding has no arcs")]
    Empty,
    #[error("malformed embedding: {0}")]
    Embedding(String),
}
