//! Cochains with values in the algebra and in the ground field, the
//! Nijenhuis–Richardson bracket, coboundaries and cyclicity.

mod adj;
mod algebra;
pub mod reference;
mod text;
mod triv;

#[cfg(test)]
mod tests;

pub use adj::{nr_bracket, AdjCochain};
pub use algebra::{
    bracket_triv, coboundary_adj, coboundary_sign, coboundary_triv, is_cyclic, is_invariant, raise, tilde,
    BilinearForm, LieAlgebra, MetricAlgebra, TildeTable,
};
pub use text::{parse_adj, parse_adj_degree, parse_terms, parse_triv, SymbolicTerm};
pub use triv::TrivCochain;
