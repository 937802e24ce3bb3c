//! Job language, reports and the computation cache behind the command-line tool.

pub mod cache;
pub mod job;
pub mod report;

pub use cache::{cache_key, DiskCache};
pub use job::{parse_cycle, parse_job, parse_split, Command, JobSpec};
pub use report::{cycle_from_report, render_json, render_text, run, Report, RunOptions, SCHEMA};

use crate::error::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const ENGINE: i32 = 3;
    pub const STRICT_WARNING: i32 = 4;
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownVariable(_) | Error::InvalidRing(_) => exit::PARSE,
        Error::Io(_) => exit::USAGE,
        _ => exit::ENGINE,
    }
}
