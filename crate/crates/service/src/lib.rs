//! Service and command-line front end for the NetLogo programming
//! assistant.

pub mod app;
pub mod cli;
pub mod config;
pub mod store;
