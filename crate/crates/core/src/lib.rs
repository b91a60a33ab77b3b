//! Separability analysis for pure n-qubit states.
//!
//! A state is given as its `2^n` complex amplitudes, qubit 0 being the most
//! significant bit of the amplitude index. The crate decides
//!
//! * full separability, via well-formedness of the zero pattern plus pair
//!   product invariance of the nonzero amplitudes ([`full`]),
//! * p–q separability for a split point or an arbitrary qubit subset ([`pq`]),
//!
//! builds the tensor factors whenever a test succeeds, and searches qubit
//! subsets for the finest factorization ([`decompose`]). The [`oracle`]
//! module is an independent rank-1 check used to validate all of the above.

pub mod decompose;
pub mod error;
pub mod full;
pub mod mask;
pub mod oracle;
pub mod pq;
pub mod random;
pub mod state;

pub use decompose::{count_bipartitions, decompose, FactorBlock, FactorTree};
pub use error::{Result, SepError};
pub use full::{
    extract_qubit_factors, is_fully_separable, pair_product_invariant, zero_deletion,
    FullSepReason, FullSepReport, PairProductOutcome,
};
pub use mask::{
    amplitude_abstraction, enumerate_well_formed, is_well_formed_mask, well_formedness,
    SupportMask, WellFormedness, ZeroIndexList,
};
pub use oracle::{oracle_fully_separable, oracle_pq, ReshapedMatrix};
pub use pq::{factor_pq, find_pivot, is_pq_separable, is_pq_separable_subset, Pivot, PqReport};
pub use random::{
    place_blocks, planted_state, random_partition, random_structured_state, rng_from_seed,
    zero_pattern_trap,
};
pub use state::{PureState, QubitFactor, QubitPermutation};

pub use num_complex::Complex64;

/// Relative tolerance on the squared norm of a state.
pub const TOL_NORM: f64 = 1e-9;

/// Numerical thresholds shared by every test in the crate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Absolute threshold on `|α|` below which an amplitude counts as zero.
    pub zero: f64,
    /// Relative threshold for equality of amplitude products.
    pub pp: f64,
    /// Relative threshold for vanishing 2×2 minors in the oracle.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero: 1e-12,
            pp: 1e-9,
            rank: 1e-9,
        }
    }
}

/// `|lhs - rhs| <= tol * max(1, |lhs|, |rhs|)`
#[inline]
pub fn products_match(lhs: Complex64, rhs: Complex64, tol: f64) -> bool {
    let scale = 1f64.max(lhs.norm()).max(rhs.norm());
    (lhs - rhs).norm() <= tol * scale
}
