//! Joint torsion of commuting matrix tuples, local intersection
//! multiplicities and tame symbols on plane curves.

pub mod cli;
pub mod error;
pub mod fredholm;
pub mod generate;
pub mod koszul;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod symbol;
pub mod torsion;
pub mod verify;

pub use error::{Error, ErrorClass, Result};
pub use scalar::PolarScalar;
