//! Shared fixtures for the benchmarks.

use logdec_core::{dirichlet_sample, Atom, Distribution, Ideal, OutcomeSpace};

pub fn distribution(n: usize, seed: u64) -> Distribution {
    dirichlet_sample(&OutcomeSpace::new(n).expect("valid size"), seed, 0)
}

/// Ideal generated by every `k`-subset of the first `m` outcomes of an
/// `n`-outcome space.
pub fn layered_ideal(n: usize, m: usize, k: usize) -> Ideal {
    let space = OutcomeSpace::new(n).expect("valid size");
    let gens = (0u32..1 << m)
        .filter(|b| b.count_ones() as usize == k)
        .map(Atom::from_bits);
    Ideal::from_generators(space, gens).expect("atoms fit the space")
}
