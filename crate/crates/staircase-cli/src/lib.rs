//! File formats, reports, deterministic sampling, and the verification
//! census for `staircase-core`, shared by the `staircase` binary and the
//! acceptance suite.

pub mod census;
pub mod format;
pub mod gen;
pub mod report;
pub mod verify;
