//! Command-line front end for persistor-core.

pub mod document;
pub mod error;
pub mod input;
pub mod plot;
pub mod run;
