//! File formats, parameter tables and command implementations behind the
//! `lrc` binary.

pub mod commands;
pub mod formats;
pub mod table;
