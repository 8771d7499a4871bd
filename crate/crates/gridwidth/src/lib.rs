//! Command-line front end and text file formats for `gridwidth-core`.

pub mod cli;
pub mod formats;
pub mod selfcheck;

pub use cli::run_cli;
