//! Spanning-tree models of the Kauffman bracket and of Khovanov homology for
//! knot diagrams given as PD codes.

pub mod algebra;
pub mod alternating;
pub mod collapse;
pub mod cli;
pub mod diagram;
pub mod spantree;
pub mod spectral;
pub mod error;
pub mod jones;
pub mod khovanov;

pub use error::{Error, Result};
