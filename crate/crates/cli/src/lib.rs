pub mod commands;
pub mod suite;
