//! Files, parallel execution and the command-line pipeline around
//! `tern48-core`.
//!
//! The text formats live in [`format`], run manifests in [`manifest`], the
//! thread pool in [`exec`], and the reference data and checks behind
//! `verify-paper` in [`gamma`] and [`verify`].

pub mod exec;
pub mod format;
pub mod gamma;
pub mod manifest;
pub mod pipeline;
pub mod verify;

pub use exec::Pool;
