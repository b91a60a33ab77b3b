//! Pure states as amplitude vectors, single-qubit factors and qubit reorderings.
//!
//! Amplitude index `i` of an `n`-qubit state encodes qubit 0 in its most
//! significant bit, so a state over qubits `0..p` tensored with a state over
//! qubits `p..n` places amplitude `β_k γ_r` at index `k·2^(n-p) + r`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SepError};
use crate::TOL_NORM;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A normalized vector of `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawState")]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl TryFrom<RawState> for PureState {
    type Error = SepError;

    fn try_from(raw: RawState) -> Result<Self> {
        PureState::new(raw.n, raw.amplitudes)
    }
}

pub(crate) fn dimension(n: usize) -> Result<usize> {
    if n >= usize::BITS as usize - 1 {
        return Err(SepError::TooLarge {
            n,
            max: usize::BITS as usize - 2,
        });
    }
    Ok(1usize << n)
}

pub(crate) fn norm_sqr(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

impl PureState {
    /// Validates length and normalization. Amplitudes are stored as given.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(SepError::NoQubits);
        }
        let expected = dimension(n)?;
        if amplitudes.len() != expected {
            return Err(SepError::LengthMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        let norm_sqr = norm_sqr(&amplitudes);
        if norm_sqr.is_nan() || (norm_sqr - 1.0).abs() > TOL_NORM {
            return Err(SepError::NotNormalized { norm_sqr });
        }
        Ok(Self { n, amplitudes })
    }

    /// Like [`PureState::new`] but infers `n` from the amplitude count.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SepError::BadLength(len));
        }
        Self::new(len.trailing_zeros() as usize, amplitudes)
    }

    pub fn from_reals(n: usize, reals: &[f64]) -> Result<Self> {
        Self::new(n, reals.iter().map(|&re| Complex64::new(re, 0.0)).collect())
    }

    /// Caller guarantees the length; the norm is whatever arithmetic produced.
    pub(crate) fn from_parts_unchecked(n: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n);
        Self { n, amplitudes }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 {
            return Err(SepError::NoQubits);
        }
        let dim = dimension(n)?;
        if index >= dim {
            return Err(SepError::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { n, amplitudes })
    }

    /// `(|0…0⟩ + |1…1⟩)/√2`
    pub fn ghz(n: usize) -> Result<Self> {
        let dim = dimension(n)?;
        if n < 2 {
            return Err(SepError::BadLength(dim));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        amplitudes[dim - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Ok(Self { n, amplitudes })
    }

    /// Equal superposition of the `n` weight-one basis states.
    pub fn w(n: usize) -> Result<Self> {
        let dim = dimension(n)?;
        if n < 2 {
            return Err(SepError::BadLength(dim));
        }
        let mut amplitudes = vec![ZERO; dim];
        let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        for q in 0..n {
            amplitudes[1 << q] = amp;
        }
        Ok(Self { n, amplitudes })
    }

    /// `(|00⟩ + |11⟩)/√2`
    pub fn bell() -> Self {
        Self::ghz(2).expect("two qubits")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// Amplitude at `k·Q + r` is `self[k]·right[r]`, `Q = right.dim()`.
    pub fn tensor(&self, right: &PureState) -> PureState {
        let mut amplitudes = Vec::with_capacity(self.dim() * right.dim());
        for &b in &self.amplitudes {
            amplitudes.extend(right.amplitudes.iter().map(|&g| b * g));
        }
        Self {
            n: self.n + right.n,
            amplitudes,
        }
    }

    /// Left-to-right tensor product of the given factors.
    pub fn tensor_all<'a, I>(factors: I) -> Option<PureState>
    where
        I: IntoIterator<Item = &'a PureState>,
    {
        let mut iter = factors.into_iter();
        let first = iter.next()?.clone();
        Some(iter.fold(first, |acc, f| acc.tensor(f)))
    }

    pub fn product_of(factors: &[QubitFactor]) -> Option<PureState> {
        let states: Vec<PureState> = factors.iter().map(QubitFactor::to_state).collect();
        Self::tensor_all(&states)
    }

    /// Output qubit `t` is input qubit `perm[t]`.
    pub fn permute_qubits(&self, perm: &QubitPermutation) -> Result<PureState> {
        if perm.len() != self.n {
            return Err(SepError::BadPermutation(format!(
                "permutation of {} qubits applied to a {}-qubit state",
                perm.len(),
                self.n
            )));
        }
        if perm.is_identity() {
            return Ok(self.clone());
        }
        let table = IndexRemap::new(perm);
        let amplitudes = (0..self.dim())
            .map(|j| self.amplitudes[table.source(j)])
            .collect();
        Ok(Self {
            n: self.n,
            amplitudes,
        })
    }

    /// Multiplies every amplitude by a unit-modulus phase.
    pub(crate) fn with_phase(&self, phase: Complex64) -> PureState {
        Self {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|&a| a * phase).collect(),
        }
    }

    /// Largest elementwise distance to another state of equal size.
    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Maps output amplitude indices to input indices for a fixed permutation,
/// one lookup table per byte of the output index.
struct IndexRemap {
    tables: Vec<[usize; 256]>,
}

impl IndexRemap {
    fn new(perm: &QubitPermutation) -> Self {
        let n = perm.len();
        let chunks = n.div_ceil(8);
        let mut tables = vec![[0usize; 256]; chunks];
        for (c, table) in tables.iter_mut().enumerate() {
            for (v, slot) in table.iter_mut().enumerate() {
                let mut src = 0usize;
                for b in 0..8 {
                    // bit position counted from the least significant end
                    let lsb_pos = c * 8 + b;
                    if lsb_pos >= n || (v >> b) & 1 == 0 {
                        continue;
                    }
                    let out_qubit = n - 1 - lsb_pos;
                    let in_qubit = perm.perm[out_qubit];
                    src |= 1 << (n - 1 - in_qubit);
                }
                *slot = src;
            }
        }
        Self { tables }
    }

    #[inline]
    fn source(&self, index: usize) -> usize {
        self.tables
            .iter()
            .enumerate()
            .fold(0, |acc, (c, t)| acc | t[(index >> (8 * c)) & 0xff])
    }
}

/// A normalized single-qubit state `amp0|0⟩ + amp1|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitFactor {
    pub amp0: Complex64,
    pub amp1: Complex64,
}

impl QubitFactor {
    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let norm_sqr = amp0.norm_sqr() + amp1.norm_sqr();
        if norm_sqr.is_nan() || (norm_sqr - 1.0).abs() > TOL_NORM {
            return Err(SepError::NotNormalized { norm_sqr });
        }
        Ok(Self { amp0, amp1 })
    }

    pub const fn zero() -> Self {
        Self {
            amp0: ONE,
            amp1: ZERO,
        }
    }

    pub const fn one() -> Self {
        Self {
            amp0: ZERO,
            amp1: ONE,
        }
    }

    pub fn plus() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self { amp0: h, amp1: h }
    }

    pub fn minus() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self { amp0: h, amp1: -h }
    }

    pub fn to_state(&self) -> PureState {
        PureState {
            n: 1,
            amplitudes: vec![self.amp0, self.amp1],
        }
    }

    pub fn max_abs_diff(&self, other: &QubitFactor) -> f64 {
        (self.amp0 - other.amp0)
            .norm()
            .max((self.amp1 - other.amp1).norm())
    }
}

/// A bijection on qubit positions: `perm[j]` is the source qubit placed at
/// position `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct QubitPermutation {
    perm: Vec<usize>,
}

impl TryFrom<Vec<usize>> for QubitPermutation {
    type Error = SepError;

    fn try_from(perm: Vec<usize>) -> Result<Self> {
        Self::new(perm)
    }
}

impl From<QubitPermutation> for Vec<usize> {
    fn from(p: QubitPermutation) -> Self {
        p.perm
    }
}

impl QubitPermutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &q in &perm {
            if q >= n {
                return Err(SepError::BadPermutation(format!(
                    "qubit {q} out of range for {n} qubits"
                )));
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(SepError::BadPermutation(format!("qubit {q} repeated")));
            }
        }
        Ok(Self { perm })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
        }
    }

    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut perm: Vec<usize> = (0..n).collect();
        if a >= n || b >= n {
            return Err(SepError::BadPermutation(format!(
                "swap({a}, {b}) out of range for {n} qubits"
            )));
        }
        perm.swap(a, b);
        Ok(Self { perm })
    }

    /// Moves `subset` (sorted, deduplicated) to the front, keeping relative
    /// order on both sides.
    pub fn subset_first(n: usize, subset: &[usize]) -> Result<Self> {
        let mut chosen = vec![false; n];
        for &q in subset {
            if q >= n {
                return Err(SepError::BadPermutation(format!(
                    "qubit {q} out of range for {n} qubits"
                )));
            }
            chosen[q] = true;
        }
        let front = (0..n).filter(|&q| chosen[q]);
        let back = (0..n).filter(|&q| !chosen[q]);
        Ok(Self {
            perm: front.chain(back).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (pos, &src) in self.perm.iter().enumerate() {
            inv[src] = pos;
        }
        Self { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &q)| i == q)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }
}
