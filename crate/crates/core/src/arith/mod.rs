//! Exact arithmetic primitives.

pub mod abelian;
pub mod integer;
pub mod modp;
pub mod poly;
pub mod real;
pub mod serde_big;
pub mod zfactor;
