//! Relative generalized Hamming weights of affine Cartesian codes.
//!
//! [`weights`] evaluates the closed formula; [`oracle`] recomputes the same
//! numbers by exhaustive search on tiny codes; [`verify`] runs the two
//! against each other over parameter grids.

pub mod boxcomb;
pub mod codes;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
