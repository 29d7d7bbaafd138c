pub mod algebra;
pub mod asymptotics;
pub mod boundary;
pub mod error;
pub mod hodge;
pub mod io;
pub mod lie;
pub mod nilpotent;
pub mod par;

pub use error::{Error, Result};
