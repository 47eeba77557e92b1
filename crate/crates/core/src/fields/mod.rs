//! Audits of polynomial-defined number fields: shapes of primes, discriminant
//! support, Galois consistency, and corpus search.

pub mod audit;
pub mod census;
pub mod corpus;
pub mod newton;
pub mod ore;

pub use audit::{audit_sextic, audit_sextic_with_bound, audit_table_field, AuditReport, Check, Ramification, SexticRecord, TableFieldRecord, Verdict};
pub use census::{compatible_groups, cycle_type_census, Census, DEGREE6_GROUPS};
pub use corpus::{load_corpus, search_s3_candidates, CorpusEntry, CorpusLoad};
pub use newton::{newton_polygon, Segment};
pub use ore::{dedekind_index_check, ore_local, unramified_at, DedekindVerdict, OreLocal};
