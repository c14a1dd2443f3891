//! Fixtures shared by the benchmarks.

use handlecalc::FiberedKnot;

/// A fixed genus-`k` knot with alternating signs.
pub fn alternating(k: usize) -> FiberedKnot {
    FiberedKnot::TwoBridge((0..2 * k).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect())
}

pub fn all_up_to(k: usize) -> Vec<FiberedKnot> {
    (1..=k).flat_map(FiberedKnot::all_two_bridge).collect()
}
