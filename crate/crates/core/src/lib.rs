pub mod algebra;
pub mod error;
pub mod functions;
pub mod io;
pub mod lab;
pub mod repr;
pub mod symbolic;

pub use error::{Error, Result};
