//! Exact combinatorial solvers used as oracles throughout the crate.

mod embed;
mod girth;
mod hom;
mod independence;
mod partite;

pub use embed::{contains_copy, contains_subgraph, find_copy, find_subgraph};
pub use girth::{girth, is_bipartite, odd_girth, shortest_cycle, Girth};
pub use hom::{count_homomorphisms, count_homomorphisms_into_complement, find_homomorphism, hom_exists};
pub use independence::{independence_number, Independence};
pub use partite::{
    find_bipartite_independent_set, find_tripartite_independent_set, multipartite_independence, Multipartite,
    PartiteWitness,
};
