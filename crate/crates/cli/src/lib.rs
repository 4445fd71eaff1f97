//! IO companion for the cable-algebra library: JSON encodings, run
//! reports and the verification suites behind the `cables` binary.

pub mod json;
pub mod report;
pub mod verify;
