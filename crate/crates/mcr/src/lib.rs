//! Files, rendering and the command line for `mcr-core`.

pub mod cli;
pub mod gen;
pub mod io;
pub mod svg;
