//! Library surface of the pipeline tool: configuration, stage runners,
//! report emission, and the synthetic fixture generator. The `steamnet`
//! binary is a thin argument-parsing shell over these modules.

pub mod config;
pub mod errors;
pub mod fixture;
pub mod report;
pub mod stages;
