//! File formats, reports and the command-line front end for
//! [`orbicoh_core`].

pub mod cli;
pub mod records;
pub mod selfcheck;

pub use cli::{run, Outcome};
pub use selfcheck::{selfcheck, CheckEntry, CheckReport, Status};
