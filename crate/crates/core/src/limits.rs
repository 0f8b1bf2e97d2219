use serde::{Deserialize, Serialize};

/// Hard ceiling for the word-packed exact kernels.
pub const MASK_VERTICES: usize = 64;

/// Size limits for every exact search. Exceeding one is an error, never a
/// silent approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    /// Independence and multipartite independence searches.
    pub exact_vertices: usize,
    /// Source order for homomorphism existence.
    pub hom_source: usize,
    /// Source order for homomorphism counting.
    pub hom_count_source: usize,
    /// Pattern order for subgraph and sub-3-graph containment.
    pub pattern_vertices: usize,
    /// Vertex count of a tensor square.
    pub tensor_vertices: usize,
    /// Host order for exhaustive tripartite hole search.
    pub hole_exhaustive: usize,
    /// log2 of the raw state space `m^(6n^2)` allowed for the census.
    pub census_log2_states: u32,
    /// log2 of the raw state space `m^|S|` allowed for a recoloring family.
    pub recoloring_log2_states: u32,
    /// Vertex count for the f3 exhaustion.
    pub f3_vertices: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            exact_vertices: 64,
            hom_source: 16,
            hom_count_source: 20,
            pattern_vertices: 12,
            tensor_vertices: 4096,
            hole_exhaustive: 24,
            census_log2_states: 28,
            recoloring_log2_states: 26,
            f3_vertices: 6,
        }
    }
}

impl SearchLimits {
    /// Limit for kernels that pack vertex sets into one machine word.
    pub(crate) fn mask_vertices(&self) -> usize {
        self.exact_vertices.min(MASK_VERTICES)
    }
}
