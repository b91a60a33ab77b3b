//! Finest tensor factorization by exhaustive subset search.
//!
//! For a block of `m` qubits every bipartition is visited once by taking the
//! side that contains the block's first qubit. Candidates are ordered by size
//! and then lexicographically; the first one that separates is split off and
//! both sides are searched again. A block none of whose subsets separates is
//! irreducible.

use itertools::Itertools;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, SepError};
use crate::pq::is_pq_separable_subset;
use crate::state::{PureState, QubitPermutation};
use crate::Tolerances;

/// Largest qubit count accepted by [`decompose`].
pub const N_MAX_DECOMPOSE: usize = 14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorBlock {
    /// Qubit labels of the input state, increasing.
    pub qubits: Vec<usize>,
    /// State of these qubits, in the order of `qubits`.
    pub state: PureState,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorTree {
    /// Irreducible blocks ordered by their smallest qubit.
    pub blocks: Vec<FactorBlock>,
    /// Concatenation of the block qubit lists: the tensor product of the
    /// block states equals the input permuted by this.
    pub permutation: QubitPermutation,
}

impl FactorTree {
    /// Tensor of the blocks mapped back to the input qubit order.
    pub fn reconstruct(&self) -> Result<PureState> {
        let product = PureState::tensor_all(self.blocks.iter().map(|b| &b.state))
            .ok_or_else(|| SepError::InvalidBlocks("empty factor tree".into()))?;
        product.permute_qubits(&self.permutation.inverse())
    }

    pub fn block_sets(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.qubits.clone()).collect()
    }
}

/// Number of unordered splits of `n` qubits into two nonempty parts.
pub fn count_bipartitions(n: usize) -> u64 {
    if n < 2 {
        return 0;
    }
    (1u64 << (n - 1)) - 1
}

pub fn decompose(state: &PureState, tol: &Tolerances) -> Result<FactorTree> {
    let n = state.n();
    if n > N_MAX_DECOMPOSE {
        return Err(SepError::TooLarge {
            n,
            max: N_MAX_DECOMPOSE,
        });
    }
    let mut blocks = Vec::new();
    split_block((0..n).collect(), state.clone(), tol, &mut blocks)?;
    blocks.sort_by_key(|b| b.qubits[0]);
    canonicalize_phases(&mut blocks, tol.zero);
    let order: Vec<usize> = blocks
        .iter()
        .flat_map(|b| b.qubits.iter().copied())
        .collect();
    Ok(FactorTree {
        blocks,
        permutation: QubitPermutation::new(order)?,
    })
}

/// Candidate local subsets of an `m`-qubit block, all containing position 0,
/// in (size, lexicographic) order.
fn candidate_subsets(m: usize) -> Vec<Vec<usize>> {
    (0..m - 1)
        .flat_map(|extra| {
            (1..m).combinations(extra).map(move |rest| {
                let mut subset = Vec::with_capacity(extra + 1);
                subset.push(0);
                subset.extend(rest);
                subset
            })
        })
        .collect()
}

fn split_block(
    labels: Vec<usize>,
    state: PureState,
    tol: &Tolerances,
    out: &mut Vec<FactorBlock>,
) -> Result<()> {
    let m = labels.len();
    if m == 1 {
        out.push(FactorBlock {
            qubits: labels,
            state,
        });
        return Ok(());
    }
    let candidates = candidate_subsets(m);
    // find_first keeps the earliest separating candidate regardless of scheduling
    let hit = candidates
        .par_iter()
        .map(|subset| is_pq_separable_subset(&state, subset, tol).map(|r| (subset, r)))
        .find_first(|res| res.as_ref().map_or(true, |(_, r)| r.separable));
    let (subset, report) = match hit {
        None => {
            out.push(FactorBlock {
                qubits: labels,
                state,
            });
            return Ok(());
        }
        Some(res) => res?,
    };
    let (left, right) = report.factors.expect("separable report carries factors");
    let left_labels: Vec<usize> = subset.iter().map(|&i| labels[i]).collect();
    let right_labels: Vec<usize> = (0..m)
        .filter(|i| !subset.contains(i))
        .map(|i| labels[i])
        .collect();
    split_block(left_labels, left, tol, out)?;
    split_block(right_labels, right, tol, out)
}

/// Every block after the first gets its first nonzero amplitude real and
/// positive; the removed phases are folded into the first block.
fn canonicalize_phases(blocks: &mut [FactorBlock], tol_zero: f64) {
    let mut carried = Complex64::new(1.0, 0.0);
    for block in blocks.iter_mut().skip(1) {
        let lead = block
            .state
            .amplitudes()
            .iter()
            .copied()
            .find(|a| a.norm() > tol_zero);
        if let Some(a) = lead {
            let phase = a / a.norm();
            block.state = block.state.with_phase(phase.conj());
            carried *= phase;
        }
    }
    if let Some(first) = blocks.first_mut() {
        first.state = first.state.with_phase(carried);
    }
}
