//! Shared oracle infrastructure for the integration suites.

#![allow(dead_code)]

pub mod dd;
pub mod emzeta;
pub mod oracles;

/// Path to a descriptor fixture shipped with the crate.
pub fn fixture(name: &str) -> String {
    format!("{}/descriptors/{}", env!("CARGO_MANIFEST_DIR"), name)
}
