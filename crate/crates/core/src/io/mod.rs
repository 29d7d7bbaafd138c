//! JSON documents, the command-line front end and text rendering.

pub mod cli;
pub mod docs;
pub mod render;

pub use cli::{execute, run, Command, Failure, Format, Options, Report};
