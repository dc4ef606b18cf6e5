pub mod bounds;
pub mod cli;
pub mod critical;
pub mod error;
pub mod fock;
pub mod hubbard;
pub mod linalg;
pub mod measures;
pub mod particle;
pub mod random;
pub mod ree;

pub use error::{Error, Result};
