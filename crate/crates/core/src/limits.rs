/// Explicit resource bounds. Every operation that can blow up takes one of
/// these and fails with [`crate::CaError::Resource`] instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest dense transition table that will be materialized.
    pub max_table_entries: u64,
    /// Largest number of windows an exhaustive check will enumerate.
    pub max_windows: u64,
    /// Largest number of cells held by a single configuration or window.
    pub max_cells: usize,
    /// Largest number of distinct configurations stored by cycle detection.
    pub max_orbit_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_table_entries: 1 << 20,
            max_windows: 1 << 24,
            max_cells: 1 << 24,
            max_orbit_states: 1 << 22,
        }
    }
}

/// `base^exp` saturating at `u64::MAX`.
pub(crate) fn saturating_pow(base: u64, exp: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
