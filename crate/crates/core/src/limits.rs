use serde::{Deserialize, Serialize};

/// Budgets for the exhaustive searches.
///
/// Hitting any of these turns a decision into `Error::ResourceLimit`; callers
/// never see a budget exhaustion reported as a negative answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    /// States visited by one breadth-first class search.
    pub max_states: usize,
    /// Neighbours generated from a single state.
    pub max_neighbors: usize,
    /// Candidate subsets examined by one cover search.
    pub max_subsets: usize,
    /// Simplices materialised from one complex.
    pub max_simplices: usize,
    /// Backtracking nodes for isomorphism and other enumerations.
    pub max_nodes: usize,
    /// Simplices allowed for ideal enumeration in exact gscat.
    pub gscat_exact_simplices: usize,
    /// Deliberate defect in the search path, used to check that the
    /// certificate checkers catch a broken search.
    #[serde(default)]
    pub fault: Fault,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Fault {
    #[default]
    None,
    /// Neighbour search only requires `h(v) ∪ h'(v)` to be a simplex vertex by
    /// vertex instead of `h(σ) ∪ h'(σ)` for whole simplices.
    VertexwiseContiguity,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_states: 400_000,
            max_neighbors: 200_000,
            max_subsets: 1 << 16,
            max_simplices: 1 << 20,
            max_nodes: 5_000_000,
            gscat_exact_simplices: 12,
            fault: Fault::None,
        }
    }
}

impl SearchLimits {
    pub fn with_max_states(mut self, n: usize) -> Self {
        self.max_states = n;
        self
    }

    pub fn with_max_subsets(mut self, n: usize) -> Self {
        self.max_subsets = n;
        self
    }
}
