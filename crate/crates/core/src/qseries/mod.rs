//! Polynomials and rational functions in `q` over cyclotomic fields.

mod poly;
mod ratq;
pub mod render;
mod tree;

pub use poly::QPoly;
pub use ratq::{CommonDen, RatQ};
pub use tree::{tree_continued_fraction, RootedTree};
