pub mod classgroup;
pub mod criteria;
pub mod cubic;
pub mod error;
pub mod field;
pub mod kernel;
pub mod lambda;
pub mod ray;
pub mod units;

pub use error::{IflError, Result};
