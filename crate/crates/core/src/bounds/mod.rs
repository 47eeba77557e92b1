//! Different exponents, discriminant bounds and exclusion thresholds.

pub mod analytic;
pub mod different;
pub mod exclusion;

pub use analytic::{minimize_ratio, odlyzko_limit, odlyzko_lower};
pub use different::{
    corollary1_bound, global_disc_bound, lemma2_bound, moon_bound, prop3_bound, tame_different, DifferentBound,
};
pub use exclusion::{
    exclusion_threshold, published_threshold, recomputed_threshold, tame_exclusion, BaseSplit, BoundScenario,
    ExclusionResult, Variant, Wildness,
};
