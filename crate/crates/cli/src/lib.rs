//! Library side of the `drfeas` command-line tool.

pub mod csv;
pub mod demos;
pub mod puzzles;
