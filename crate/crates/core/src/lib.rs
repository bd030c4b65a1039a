//! Exact inversive-coordinate toolkit for crystallographic sphere packings.

pub mod catalog;
pub mod cli;
pub mod convert;
pub mod coxeter;
pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod groupwords;
pub mod integrality;
pub mod lobachevsky;
pub mod matrix;
pub mod orbit;
pub mod polygraph;
pub mod render;

pub use error::{Error, Result};
pub use exactnum::{q, QNum, Sign};
pub use geometry::{InversiveVector, SquareConfigBasis};
pub use groupwords::{Configuration, Word};
pub use matrix::QMatrix;
