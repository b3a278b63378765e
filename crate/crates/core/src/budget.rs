/// Resource limits for the exponential parts of the pipeline. Every loop that
/// can blow up checks one of these and fails with
/// [`Error::CapExceeded`](crate::Error::CapExceeded) rather than truncating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// States of any single automaton.
    pub max_states: usize,
    /// Elements of a transition monoid.
    pub max_monoid: usize,
    /// Candidate vectors alive in one level of the Diophantine solver.
    pub max_solver_frontier: usize,
    /// Solutions (Hilbert basis plus minimal inhomogeneous) of one system.
    pub max_solver_solutions: usize,
    /// Components of any semilinear set.
    pub max_components: usize,
    /// Largest pomset size compared by brute-force cross-checks.
    pub oracle_size: usize,
    /// Products produced when distributing `+` over `∥`.
    pub max_products: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 100_000,
            max_monoid: 1_000_000,
            max_solver_frontier: 200_000,
            max_solver_solutions: 20_000,
            max_components: 50_000,
            oracle_size: 5,
            max_products: 10_000,
        }
    }
}

impl Budget {
    /// Sets a field by name; used by the command-line `--budget key=value`.
    pub fn set(&mut self, key: &str, value: usize) -> bool {
        let slot = match key {
            "max_states" => &mut self.max_states,
            "max_monoid" => &mut self.max_monoid,
            "max_solver_frontier" => &mut self.max_solver_frontier,
            "max_solver_solutions" => &mut self.max_solver_solutions,
            "max_components" => &mut self.max_components,
            "oracle_size" => &mut self.oracle_size,
            "max_products" => &mut self.max_products,
            _ => return false,
        };
        *slot = value;
        true
    }

    pub const KEYS: [&'static str; 7] = [
        "max_states",
        "max_monoid",
        "max_solver_frontier",
        "max_solver_solutions",
        "max_components",
        "oracle_size",
        "max_products",
    ];
}
