//! Reproducible random states with a planted product structure.
//!
//! The generator is ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`, and each amplitude is a pair of standard
//! normal draws (`rand_distr::StandardNormal`, real part first). Blocks are
//! drawn in order and normalized separately before being tensored together.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Result, SepError};
use crate::mask::SupportMask;
use crate::state::{dimension, norm_sqr, PureState, QubitPermutation};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Complex Gaussian amplitudes on the support of `mask` (all of it when
/// `None`), normalized.
pub fn random_block<R: Rng + ?Sized>(
    n: usize,
    mask: Option<&SupportMask>,
    rng: &mut R,
) -> Result<PureState> {
    let dim = dimension(n)?;
    if let Some(m) = mask {
        if m.len() != dim {
            return Err(SepError::InvalidBlocks(format!(
                "mask of length {} for a {n}-qubit block",
                m.len()
            )));
        }
        if m.popcount() == 0 {
            return Err(SepError::InvalidBlocks("mask has no support".into()));
        }
    }
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|i| {
            if mask.is_some_and(|m| !m.get(i)) {
                Complex64::new(0.0, 0.0)
            } else {
                complex_gaussian(rng)
            }
        })
        .collect();
    let norm = norm_sqr(&amps).sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    PureState::new(n, amps)
}

/// Tensor product of independent random blocks of the given qubit counts.
/// `zero_masks`, when given, holds one optional support mask per block.
pub fn random_structured_state(
    block_sizes: &[usize],
    seed: u64,
    zero_masks: Option<&[Option<SupportMask>]>,
) -> Result<PureState> {
    let mut rng = rng_from_seed(seed);
    random_structured_state_with(block_sizes, zero_masks, &mut rng)
}

pub fn random_structured_state_with<R: Rng + ?Sized>(
    block_sizes: &[usize],
    zero_masks: Option<&[Option<SupportMask>]>,
    rng: &mut R,
) -> Result<PureState> {
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(SepError::InvalidBlocks(format!(
            "block sizes {block_sizes:?} must be nonempty and positive"
        )));
    }
    if let Some(masks) = zero_masks {
        if masks.len() != block_sizes.len() {
            return Err(SepError::InvalidBlocks(format!(
                "{} masks for {} blocks",
                masks.len(),
                block_sizes.len()
            )));
        }
    }
    let mut state: Option<PureState> = None;
    for (b, &size) in block_sizes.iter().enumerate() {
        let mask = zero_masks.and_then(|m| m[b].as_ref());
        let block = random_block(size, mask, rng)?;
        state = Some(match state {
            None => block,
            Some(acc) => acc.tensor(&block),
        });
    }
    Ok(state.expect("at least one block"))
}

/// Random split of qubits `0..n` into nonempty blocks, each sorted, the
/// blocks ordered by their smallest qubit.
pub fn random_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let mut qubits: Vec<usize> = (0..n).collect();
    qubits.shuffle(rng);
    let mut blocks = Vec::new();
    let mut rest = qubits.as_slice();
    while !rest.is_empty() {
        let size = rng.gen_range(1..=rest.len());
        let (head, tail) = rest.split_at(size);
        let mut block = head.to_vec();
        block.sort_unstable();
        blocks.push(block);
        rest = tail;
    }
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Product of the given block states placed on arbitrary qubit labels:
/// block `b` acts on `blocks[b]` (sorted), and together the blocks must
/// partition `0..n`.
pub fn place_blocks(blocks: &[Vec<usize>], states: &[PureState]) -> Result<PureState> {
    if blocks.len() != states.len() || blocks.is_empty() {
        return Err(SepError::InvalidBlocks(
            "one state per block required".into(),
        ));
    }
    for (b, s) in blocks.iter().zip(states) {
        if b.len() != s.n() {
            return Err(SepError::InvalidBlocks(format!(
                "block {b:?} given a {}-qubit state",
                s.n()
            )));
        }
    }
    let order: Vec<usize> = blocks.iter().flatten().copied().collect();
    let perm = QubitPermutation::new(order)?;
    let product = PureState::tensor_all(states).expect("nonempty");
    product.permute_qubits(&perm.inverse())
}

/// Generic full-support state on each block of `blocks`.
pub fn planted_state<R: Rng + ?Sized>(blocks: &[Vec<usize>], rng: &mut R) -> Result<PureState> {
    let states = blocks
        .iter()
        .map(|b| random_block(b.len(), None, rng))
        .collect::<Result<Vec<_>>>()?;
    place_blocks(blocks, &states)
}

/// An entangled state whose `p`-split passes the cross-product identity
/// over `k > k0`, `r > r0` yet has a nonzero amplitude in a later group at an
/// offset before `r0`. With `P = Q = 2` this covers `(0, a, b, 0)`.
pub fn zero_pattern_trap<R: Rng + ?Sized>(n: usize, p: usize, rng: &mut R) -> Result<PureState> {
    if p == 0 || p >= n {
        return Err(SepError::BadSplit { p, n });
    }
    let (groups, group) = (1usize << p, 1usize << (n - p));
    let k0 = rng.gen_range(0..groups - 1);
    let r0 = rng.gen_range(1..group);
    let mut head = vec![Complex64::new(0.0, 0.0); group];
    for x in head.iter_mut().skip(r0) {
        *x = complex_gaussian(rng);
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); groups * group];
    amps[k0 * group..(k0 + 1) * group].copy_from_slice(&head);
    for k in k0 + 1..groups {
        // zero multiples reproduce the bare (0, a, b, 0) shape
        let c = if rng.gen_bool(0.3) {
            Complex64::new(0.0, 0.0)
        } else {
            complex_gaussian(rng)
        };
        for r in 0..group {
            amps[k * group + r] = c * head[r];
        }
    }
    let k_bad = rng.gen_range(k0 + 1..groups);
    let r_bad = rng.gen_range(0..r0);
    amps[k_bad * group + r_bad] = complex_gaussian(rng);
    let norm = norm_sqr(&amps).sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    PureState::new(n, amps)
}
