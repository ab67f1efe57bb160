//! Graph files, SVG output and instance generators.

pub mod format;
pub mod generate;
pub mod svg;

pub use format::{parse_document, write_document, Document};
pub use svg::{emit_svg, SvgOptions};
