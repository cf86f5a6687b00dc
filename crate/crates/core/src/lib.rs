pub mod certify;
pub mod cli;
pub mod continuation;
pub mod cusp;
pub mod deform;
pub mod error;
pub mod exact;
pub mod liealg;
pub mod manifold;
pub mod rep;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
