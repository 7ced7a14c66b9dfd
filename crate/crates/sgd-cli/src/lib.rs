//! Library surface of the CLI crate: the small-group catalog and the
//! compressibility bench, shared by the binary and the test suites.

pub mod bench;
pub mod catalog;
