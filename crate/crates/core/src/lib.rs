pub mod analysis;
pub mod arith;
pub mod causal_model;
pub mod entropy_space;
pub mod error;
pub mod distributions;
pub mod polyhedra;
