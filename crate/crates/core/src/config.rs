/// Caps and knobs shared by the search engines.
///
/// Every cap is a guard against combinatorial blowup, not a tuning parameter:
/// exceeding one either returns an error ([size
/// guards](crate::Error::SizeGuard)) or downgrades a decision to "unknown",
/// which the distance search treats as "not good" and reports as an upper
/// bound.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Maximum number of visited states in a contiguity-class BFS before the
    /// answer is reported as unknown.
    pub class_state_cap: usize,
    /// Exhaustive good-mask enumeration runs when the domain has at most this
    /// many facets; beyond it the distance search grows masks greedily and
    /// reports an upper bound.
    pub exhaustive_mask_cap: usize,
    /// Refuse barycentric subdivision when the base complex has more
    /// simplices (or would produce more flags) than this.
    pub sd_simplex_cap: usize,
    /// Refuse categorical products with more vertex pairs than this.
    pub product_vertex_cap: usize,
    /// Refuse categorical products with more facet pairs than this.
    pub product_facet_cap: usize,
    /// `farber_cover_tc` is oracle-grade: it refuses products with more
    /// facets than this.
    pub farber_facet_cap: usize,
    /// Oracle cap on `|V(codomain)|^|V(domain)|` assignment enumeration.
    pub oracle_assignment_cap: usize,
    /// Oracle cap on the number of enumerated simplicial maps (the contiguity
    /// graph is built pairwise, so this bounds a quadratic cost).
    pub oracle_map_cap: usize,
    /// Oracle distance cap on the number of facets (mask enumeration is
    /// `2^facets`).
    pub oracle_facet_cap: usize,
    /// Worker threads for independent goodness evaluations (1 = sequential).
    pub threads: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            class_state_cap: 1_000_000,
            exhaustive_mask_cap: 20,
            sd_simplex_cap: 1 << 16,
            product_vertex_cap: 1 << 16,
            product_facet_cap: 1 << 16,
            farber_facet_cap: 12,
            oracle_assignment_cap: 3_000_000,
            oracle_map_cap: 2_000,
            oracle_facet_cap: 12,
            threads: 1,
        }
    }
}

impl EngineConfig {
    /// Override the BFS state cap.
    pub fn with_class_state_cap(mut self, cap: usize) -> Self {
        self.class_state_cap = cap;
        self
    }

    /// Override the worker-thread count.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}
