//! Configuration, report documents and the command drivers behind `qfaudit`.

pub mod commands;
pub mod config;
pub mod document;

pub use commands::{cmd_bounds, cmd_curve, cmd_rayclass, cmd_tables, cmd_walkthrough, BoundsArgs, CurveArgs, RayclassArgs, TableChoice};
pub use config::{ConfigFile, Format, RunConfig};
pub use document::{Item, Provenance, Quantity, Report};

use crate::error::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_AUDIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_INVALID_MATH: i32 = 4;

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) => EXIT_USAGE,
        Error::Unsupported(_) | Error::Budget(_) => EXIT_UNSUPPORTED,
        Error::Domain(_) | Error::Singular => EXIT_INVALID_MATH,
    }
}

pub fn report_exit_code(r: &Report) -> i32 {
    if r.has_failures() { EXIT_AUDIT_FAIL } else { EXIT_PASS }
}
