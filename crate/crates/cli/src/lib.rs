//! Library half of the `nodal` command-line tool.

pub mod certfile;
pub mod commands;
pub mod parser;
