//! File formats, worker pools and the command-line front end for
//! `matsemi-core`.

pub mod cli;
pub mod error;
pub mod io;
pub mod parallel;
pub mod render;
pub mod verify;
