//! Haar state on `O(SL_q(3))`.

pub mod basis;
pub mod relation;
pub mod standard;
pub mod table;

pub use basis::{decompose_to_basis, order_basis, OrderBasis};
pub use relation::{derive_relation, dq_identity, LinearRelation};
pub use standard::{birkhoff_decompose, parse_segments, StandardMonomial};
pub use table::HaarTable;
pub mod order1;
pub mod recursive;
pub mod source;

pub use order1::order1_haar;
pub use recursive::{recursive_bfg_ceg, recursive_cdh_ceg};
pub use source::{source_matrix, SourceMatrix};
pub mod schedule;

pub use schedule::{compute_order, compute_order_strict, ScheduleReport};
pub mod store;
pub use store::HaarStore;
pub mod rules;
pub use rules::{reordering_identities, SegmentIdentity};
pub mod triple;
pub use triple::{triple_determinant, triple_determinant_closed, triple_matrix};
