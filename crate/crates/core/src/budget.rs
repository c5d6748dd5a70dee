/// Explicit resource limits. Every operation that can blow up takes these;
/// exceeding a budget is an error, never a truncated answer.
#[derive(Debug, Clone, Copy)]
pub struct Budgets {
    /// Largest group order for which all elements are listed.
    pub max_order_enumerate: usize,
    /// Node cap for subgroup-lattice enumeration.
    pub max_lattice_nodes: usize,
    /// Node cap for the dimension searches (m, i, MaxDim, r).
    pub search_nodes: u64,
    /// Cap on coset enumerations (maximality tests, quotient actions).
    pub coset_cap: usize,
    /// Trial bound for the prime search in the character construction.
    pub prime_search_bound: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_order_enumerate: 50_000,
            max_lattice_nodes: 20_000,
            search_nodes: 10_000_000,
            coset_cap: 10_000,
            prime_search_bound: 10_000,
        }
    }
}
