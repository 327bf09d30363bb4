//! Exact restrained chromatic polynomials of small graphs.
//!
//! A restraint forbids a finite set of colours at each vertex; `π_r(G, x)`
//! counts the proper `x`-colourings that avoid them. This crate computes those
//! polynomials exactly, enumerates standard simple restraints up to colour
//! permutation, and runs exhaustive extremal searches over them.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod poly;
pub mod rcp;
pub mod restraint;

pub use catalog::CatalogEntry;
pub use error::{Error, Result};
pub use extremal::{Direction, ExtremalReport, SearchOptions, Verdict};
pub use graph::{parse_graph6, to_graph6, Graph};
pub use poly::IntPoly;
pub use rcp::{brute_count, rcp_delcon, rcp_interpolate, RestrainedPoly};
pub use restraint::{Restraint, Rgs};
