//! Shared fixtures for the criterion benches.

use ramsey_forge::aux_graph::sample_gnp;
use ramsey_forge::gamma::{build_gamma, random_coloring};
use ramsey_forge::{Graph, ThreeGraph};

/// Seeded `G(m, p)` palette.
pub fn palette(m: usize, p: f64, seed: u64) -> Graph {
    sample_gnp(m, p, seed)
}

/// Adjacent-triangle 3-graph of a random `C5` colouring on `n` vertices.
pub fn c5_gamma(n: usize, seed: u64) -> ThreeGraph {
    let chi = random_coloring(n, &Graph::cycle(5), seed).expect("C5 has vertices");
    build_gamma(&chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_seeded() {
        assert_eq!(palette(8, 0.5, 3), palette(8, 0.5, 3));
        assert_eq!(c5_gamma(12, 1), c5_gamma(12, 1));
        assert_eq!(c5_gamma(12, 1).vertex_count(), 12);
    }
}
