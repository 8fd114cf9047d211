pub mod action;
pub mod error;
pub mod fp;
pub mod linalg;
pub mod parse;
pub mod report;
pub mod periodicity;
pub mod ring;
pub mod ringfile;
pub mod steenrod;
pub mod verify;

pub use error::{Error, Result};
