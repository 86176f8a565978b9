/// Resource limits shared by the engines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest staircase bounding box (in lattice cells) that will be enumerated.
    pub cell_budget: u64,
    /// Highest power of an ideal the analysis will form.
    pub max_n: usize,
    /// Largest side of a Bhattacharya sample grid.
    pub grid_cap: usize,
    /// Trailing zeros required before a rationalized series is accepted.
    pub guard_window: usize,
    /// Re-verify `J I^(n+1) = I^(n+2)` for two extra powers after the reduction number is found.
    pub verify_persistence: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            cell_budget: 100_000_000,
            max_n: 25,
            grid_cap: 20,
            guard_window: 4,
            verify_persistence: false,
        }
    }
}

impl Budget {
    pub fn with_cell_budget(mut self, cells: u64) -> Self {
        self.cell_budget = cells;
        self
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }
}
