pub mod error;
pub mod exterior;
pub mod flag;
pub mod random;
pub mod stable;
pub mod su3types;
pub mod tolerance;

pub use error::{Error, Result};
pub use exterior::{Endo, Form, Metric, Orientation};
pub use stable::SU3Structure;
pub use tolerance::Tolerances;
