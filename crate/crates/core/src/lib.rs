//! Exact inversion of rational curve and surface parameterizations.

pub mod error;
pub mod exactpoly;
pub mod polymat;
pub mod curveinv;
pub mod surfinv;
pub mod verify;
pub mod movsurf;
pub mod dixon;

pub use error::{Error, Result};
