//! Named constructions and the tools behind the `forge` binary.
//!
//! - [`dsc`]: diagonal codes from a prime-order linear map.
//! - [`optimism`]: the twisted affine group on 16 points and its 256-point orbit.
//! - [`nsc`]: the 64- and 128-point codes around two base points, by two routes.
//! - [`search`]: orbit-union scan over the ±1 vectors of RM(2,d).
//! - [`catalog`]: named entries with expected data, the summary table check,
//!   and cohomology presets.
//! - [`io`]: code file formats.

pub mod catalog;
pub mod dsc;
pub mod io;
pub mod nsc;
pub mod optimism;
pub mod search;

pub use catalog::{build_entry, verify_table1, Built, Check, Workbench, ENTRIES};
