//! Exact-arithmetic audit toolkit for quadratic fields, their ray class
//! groups, polynomial-defined number fields and elliptic curves over them.

pub mod arith;
pub mod bounds;
pub mod curves;
pub mod data;
pub mod fields;
pub mod quadratic;
pub mod report;
mod error;

pub use error::{Error, Result};
