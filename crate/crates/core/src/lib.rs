pub mod cli;
pub mod convpoly;
pub mod error;
pub mod exactnum;
pub mod factorial;
pub mod fharmonic;
pub mod fspec;
pub mod report;
pub mod stirling;
pub mod suites;

pub use error::{Error, Result};
