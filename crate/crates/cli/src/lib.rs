//! Command-line front end for the lattice simulator and its asymptotic analysis.

pub mod commands;
pub mod config;
pub mod criteria;
pub mod csvout;
pub mod figures;
pub mod manifest;
