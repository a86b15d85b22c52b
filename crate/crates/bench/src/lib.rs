//! Shared fixtures for the criterion benches.

use wmds_core::LambdaTwist;

/// Twists of increasing size, labelled for the benchmark ids.
pub fn twists() -> Vec<(&'static str, LambdaTwist)> {
    [("r2_l00", vec![0, 0]), ("r2_l11", vec![1, 1]), ("r3_l000", vec![0, 0, 0]), ("r3_l100", vec![1, 0, 0])]
        .into_iter()
        .map(|(name, l)| (name, LambdaTwist::new(l).expect("valid twist")))
        .collect()
}
