//! Supercharacter theory of the unipotent upper-triangular groups of type D
//! (with type C alongside, and type B enumeration) over finite fields of odd
//! characteristic, and the Hopf algebra of superclass functions.

pub mod error;
pub mod ffield;
pub mod hopf;
pub mod json;
pub mod matrixrep;
pub mod oracle;
pub mod partitions;
pub mod superchar;
pub mod verify;

pub use error::{Error, Result};
