//! Straight-line drawings of plane graphs that realize a given embedding.
//!
//! The pipeline is [`augment::triangulate`], then [`reduce::reduce`], then
//! [`layout::draw_with`]. [`verify::verify`] checks any drawing against its
//! rotation system independently of how the drawing was produced.

pub mod augment;
pub mod cli;
pub mod drawing;
pub mod error;
pub mod geometry;
pub mod io;
pub mod layout;
pub mod plane_graph;
pub mod reduce;
pub mod verify;

pub use drawing::{Drawing, ExactDrawing, FloatDrawing};
pub use error::{Error, Result, StructureError};
pub use geometry::{Kernel, Point};
pub use layout::{draw, draw_with, DrawOutcome, LayoutOptions};
pub use plane_graph::{Dart, Face, PlaneGraph, VertexId};
pub use reduce::Strategy;
pub use verify::{verify, VerifyReport, Violation};
