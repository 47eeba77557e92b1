//! Elliptic curves over quadratic fields: invariants, reduction away from 2,
//! 2-torsion and admissibility.

pub mod admissibility;
pub mod element;
pub mod model;
pub mod reduction;
pub mod torsion;

pub use admissibility::{admissibility, corollary3_report, prop4_audit, Corollary3Report, Corollary3Statement, Prop4Audit, Prop4Verdict};
pub use element::{primes_above, PrimeIdeal, QuadElement};
pub use model::{curve_invariants, CurveModel, Invariants, ModelChange};
pub use reduction::{odd_reduction_audit, PrimeReduction, ReductionReport, ReductionVerdict};
pub use torsion::{two_torsion_field, two_torsion_image_over_q, CubicSplitting, Gl2Image, TwoTorsionReport};
