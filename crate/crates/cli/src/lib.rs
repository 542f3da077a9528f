//! Support library for the `hamtorus` binary: machine-readable output
//! records and the oracle-verification sweep.

pub mod records;
pub mod verify;
