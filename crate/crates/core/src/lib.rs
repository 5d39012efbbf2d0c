pub mod calculus;
pub mod error;
pub mod graded;
pub mod superfield;
pub mod potential;
pub mod action;
pub mod jet;
pub mod variational;
pub mod dmodule;
pub mod sim;
pub mod cli;
