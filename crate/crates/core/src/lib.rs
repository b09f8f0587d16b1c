pub mod aff;
pub mod duality;
pub mod error;
pub mod exact;
pub mod exec;
pub mod glue;
pub mod induced;
pub mod inverse;
pub mod lie;
pub mod report;
pub mod symgroup;

pub use error::{Error, Result};
pub use exec::Exec;
