//! Standing waves of the cubic focusing NLS on the double-bridge graph.

pub mod alpha;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod format;
pub mod maps;
pub mod profile;
pub mod quadrature;
pub mod roots;
pub mod scan;
pub mod spectrum;

pub use error::{Error, Result};
