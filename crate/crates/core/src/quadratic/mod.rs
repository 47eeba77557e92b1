//! Quadratic-field arithmetic: forms, units, residue rings and ray class
//! groups.

pub mod field;
pub mod forms;
pub mod nakagoshi;
pub mod rayclass;
pub mod residue;
pub mod units;

pub use field::{QuadInteger, QuadraticField, SplitKind, Splitting};
pub use forms::{class_group, Form, FormClassGroup};
pub use units::{fundamental_unit, unit_group, UnitGroup};
pub use residue::{residue_ring_units, ResidueRing, ResidueRingUnits};
pub use nakagoshi::{nakagoshi_rank, zeta_p_in_completion};
pub use rayclass::{check_rank_stabilization, nakagoshi_check, ray_class_group, verify_prop2, RankInfo, RayClassReport};
