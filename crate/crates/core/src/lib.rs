pub mod bounds;
pub mod cli;
pub mod dynkin;
pub mod error;
pub mod homology0;
pub mod join1;
pub mod linalg;
pub mod oracle0;
pub mod petrov;
pub mod polycore;
pub mod scenario;
pub mod zlattice;

pub use error::{Error, Result};
