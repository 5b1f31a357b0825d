pub mod batteries;
pub mod cli;
pub mod error;
pub mod forms;
pub mod jacobi;
pub mod ops;
pub mod poly;
pub mod problem;
pub mod rational;
pub mod report;
pub mod ring;
pub mod sampling;
pub mod smooth;
pub mod weil;

pub use error::{Error, Result};
