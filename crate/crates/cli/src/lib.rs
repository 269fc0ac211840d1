//! Verification suites and seeded samplers behind the `qsg` binary.

pub mod sample;
pub mod verify;
