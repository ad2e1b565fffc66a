pub mod algebra;
pub mod bicat;
pub mod bimod;
pub mod coring;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod pushout;
pub mod report;
pub mod wide;

pub use error::{Error, Result};
