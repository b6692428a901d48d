pub mod canon;
pub mod corpus;
pub mod covering;
pub mod dot;
pub mod embed;
pub mod error;
pub mod graph;
pub mod kuratowski;
pub mod obstruction;
pub mod suite;

pub use error::{Error, Result};
