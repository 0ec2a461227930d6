//! Exact oracles, fixtures and seeded random corpora for the persistor tests.

pub mod corpus;
pub mod linalg;
pub mod oracle;

pub use corpus::*;
pub use oracle::*;
