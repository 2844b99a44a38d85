pub mod cyclotomic;
pub mod bundles;
pub mod character;
pub mod corpus;
pub mod error;
pub mod group;
pub mod homs;
pub mod linalg;
pub mod localize;
pub mod matrep;
pub mod morphism;
pub mod nerve;
pub mod real;
pub mod stable_maps;
pub mod transversality;

pub use error::{Error, Result};
