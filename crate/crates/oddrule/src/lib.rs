//! Scheme files, result rendering and the `oddrule` command line for
//! [`oddrule_core`].

pub mod cli;
pub mod error;
pub mod render;
pub mod scheme_file;

pub use cli::run;
pub use error::{Error, Result};
pub use scheme_file::{read_scheme, scheme_to_json, write_scheme, SchemeFile};
