//! Inputs shared by the benchmarks.

use zz_core::StripSpec;

/// Strips of increasing poset size, labelled for reports.
pub fn sample_strips() -> Vec<(&'static str, StripSpec)> {
    [("parallelogram", "WRRRN", 8), ("flake", "WWRNN", 8), ("wide", "WWRRNN", 6), ("zigzag", "WWNWNN", 6)]
        .into_iter()
        .map(|(name, letters, n)| (name, StripSpec::from_letters(letters, n).unwrap()))
        .collect()
}
