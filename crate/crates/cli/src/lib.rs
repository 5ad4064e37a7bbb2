//! Library half of the `fishburn` binary: desk-scale limits, object
//! encodings, and the verification harness with its machine-readable
//! report. The binary is a thin argument-parsing layer over this crate.

pub mod config;
pub mod encode;
pub mod report;
pub mod verify;
