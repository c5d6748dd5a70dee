//! Library surface of the gendim CLI: group records, the construction
//! expression language, the catalog, result caching, analysis reports and
//! the verification suites. The binary in `main.rs` is a thin shell over
//! these.

pub mod analysis;
pub mod cache;
pub mod catalog;
pub mod expr;
pub mod record;
pub mod report;
pub mod suites;
