//! Command-line harness for the quantum-torus metric toolkit: fixture
//! parsing and the command runner, exposed as a library so integration
//! tests can drive the exact code path of the binary.

pub mod fixture;
pub mod run;
