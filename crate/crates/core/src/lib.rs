pub mod abelian;
pub mod colouralg;
pub mod cyclotomic;
pub mod error;
pub mod gmodule;
pub mod grading;
pub mod linalg;
pub mod loopfunctor;
pub mod modp;
pub mod poly;
pub mod workbench;

pub use error::{Error, Result};
