pub mod cli;
pub mod error;
pub mod fq;
pub mod hall;
pub mod integration;
pub mod motivic;
pub mod oracle;
pub mod quiver;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
