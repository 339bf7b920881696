pub mod certificate;
pub mod characters;
pub mod combinatorics;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod matroid;
pub mod numtheory;
pub mod snevily;
pub mod sweep;

pub use error::{Error, Result};
