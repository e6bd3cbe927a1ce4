//! File formats, instance generators, oracle verification and timing
//! helpers for the `tree-ecc` command.

pub mod bench;
pub mod gen;
pub mod io;
pub mod verify;
