//! File formats, fixtures, certificates and the `zipper` command surface.

pub mod certificate;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod text;

pub use certificate::{Certificate, Payload};
pub use commands::{run, Cli, Output};
pub use error::CliError;
pub use text::{
    parse_facets, parse_poset, parse_subject, write_facets, write_poset, FormatError, Subject,
};
