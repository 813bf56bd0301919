//! Command-line front end and local JSON service for `whskit`.

pub mod cli;
pub mod json;
pub mod service;
