//! Batch front end: channel documents, basis specs, result documents.

pub mod app;
pub mod basis_spec;
pub mod document;
pub mod output;

pub use app::run;
pub use document::{parse_channel_document, ChannelDocument, DocumentError};
