//! Command-line front end: arrangement fixture I/O, analysis commands, and
//! SVG rendering of planar partitions.
//!
//! All commands read and write UTF-8 JSON except `render`, which emits SVG.
//! Outputs are deterministic for a fixed input, seed, and option set. The
//! enumeration cap can be overridden with the `CONVPART_MAX_HYPERPLANES`
//! environment variable.

pub mod commands;
pub mod json;
pub mod render;

use convpart_core::arrangement::EnumLimits;

/// Enumeration limits from the environment, falling back to the default cap.
pub fn limits_from_env() -> EnumLimits {
    let mut limits = EnumLimits::default();
    if let Ok(v) = std::env::var("CONVPART_MAX_HYPERPLANES") {
        if let Ok(cap) = v.trim().parse::<usize>() {
            limits.max_hyperplanes = cap;
        }
    }
    limits
}
