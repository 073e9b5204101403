//! Seeded verification suites and their reports.
//!
//! Every suite draws its instances sequentially from one ChaCha8 stream
//! seeded by the caller, evaluates them in parallel, and returns trials in
//! generation order, so a report depends only on its parameters and seed.

pub mod matrices;
pub mod props;
pub mod report;
pub mod suites;

pub use props::suite_props;
pub use report::{Relation, Report, Summary, Trial};
pub use suites::{
    matrix_tree_corpus, suite_decomp, suite_ineq, suite_lemma1, suite_matrix_tree,
    suite_matrix_tree_seeded, suite_mt, suite_rc, suite_remark, suite_steck,
};
