pub mod algebra;
pub mod arens;
pub mod duality;
pub mod error;
pub mod exactmath;
pub mod io;
pub mod modules;
pub mod regularity;

pub use error::{Error, Result};
