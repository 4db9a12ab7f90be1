//! Quiver representations supported at a minuscule vertex and the reverse
//! plane partitions they correspond to.

pub mod arquiver;
pub mod bijection;
pub mod dynamics;
pub mod dynkin;
pub mod error;
pub mod genfun;
pub mod jordan;
pub mod linalg;
pub mod poset;
pub mod quiver;
pub mod typea;
mod vector;
pub mod verify;

pub use error::{Error, Result};
pub use vector::DimVector;
