//! Shared instance builders for the solver benchmarks.

use mmpx_core::{random_system, BipartiteSystem, MaskSpec, StateVector};

/// The doubly masked variant: one -inf per row of A, one +inf per row
/// of B. The hardest of the four Latin cases, and the one the iteration
/// comparison cares about.
pub fn case4_system(n: usize, seed: u64) -> BipartiteSystem {
    random_system(n, seed, &MaskSpec::eps_default(), &MaskSpec::tau_default())
        .expect("latin instances of valid order always build")
}

pub fn zero_state(sys: &BipartiteSystem) -> StateVector {
    StateVector::zeros(sys.m(), sys.n())
}
