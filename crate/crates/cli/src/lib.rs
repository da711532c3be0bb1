//! Text formats and the command surface of the `islandpoly` tool.

pub mod checkfile;
pub mod commands;
pub mod smap;

pub use commands::{run, Cli, Command, Outcome, INPUT_ERROR};
pub use smap::{parse_smap, render_smap, MapDocument};
