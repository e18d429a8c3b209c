// The verification oracles index matrices explicitly, like the core crate.
#![allow(clippy::needless_range_loop)]

//! Library half of the `knotkit` command-line tool: the bundled example
//! catalog and the end-to-end verification report. The binary in `main.rs`
//! is a thin argument-parsing shell over these modules and the `knotkit`
//! core crate.

pub mod catalog;
pub mod verify;
