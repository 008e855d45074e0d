pub mod error;
pub mod signature;
pub mod diagram;
pub mod optic;
pub mod dsl;
pub mod render;
pub mod fincat;
pub mod laws;
pub mod cli;

pub use error::{Error, Result};
