//! Zero patterns of amplitude vectors and the well-formed language over them.
//!
//! The well-formed strings of length `N = 2^n` are generated from
//! `{01, 10, 11}` by repeatedly forming `0^N x`, `x 0^N` and `x x`. They are
//! exactly the zero patterns a product of `n` single-qubit states can have,
//! and there are `3^n` of them.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Result, SepError};
use crate::state::PureState;

/// Largest `n` accepted by [`enumerate_well_formed`].
pub const N_MAX_ENUM: usize = 12;

/// A bit string of length `N` marking nonzero amplitudes.
///
/// Bits are packed most-significant first so that comparing the word vectors
/// orders masks lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportMask {
    len: usize,
    words: Vec<u64>,
    popcount: usize,
}

impl SupportMask {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
            popcount: 0,
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        let mut popcount = 0;
        for bit in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if bit {
                *words.last_mut().unwrap() |= 1 << (63 - len % 64);
                popcount += 1;
            }
            len += 1;
        }
        Self {
            len,
            words,
            popcount,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of set bits, `|x|`.
    pub fn popcount(&self) -> usize {
        self.popcount
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit {i} out of range for mask of length {}",
            self.len
        );
        self.words[i / 64] >> (63 - i % 64) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Sorted indices of cleared bits.
    pub fn zero_indices(&self) -> ZeroIndexList {
        ZeroIndexList((0..self.len).filter(|&i| !self.get(i)).collect())
    }

    fn concat(&self, other: &SupportMask) -> SupportMask {
        SupportMask::from_bools(self.iter().chain(other.iter()))
    }
}

impl fmt::Display for SupportMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for SupportMask {
    type Err = SepError;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(SepError::BadLength(s.len())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bools(bits))
    }
}

impl Serialize for SupportMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Strictly increasing indices of zero amplitudes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ZeroIndexList(pub Vec<usize>);

impl ZeroIndexList {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Bit `i` is cleared iff `|α_i| <= tol_zero`.
pub fn amplitude_abstraction(state: &PureState, tol_zero: f64) -> SupportMask {
    SupportMask::from_bools(state.amplitudes().iter().map(|a| a.norm() > tol_zero))
}

/// Outcome of the well-formedness recursion with its operation counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WellFormedness {
    pub well_formed: bool,
    /// Segment length at which the recursion rejected the mask.
    pub failed_at: Option<usize>,
    /// Length tests plus element-by-element list comparisons.
    pub comparisons: u64,
    /// Probes spent locating the low/high split points (binary search).
    pub partition_probes: u64,
}

pub fn is_well_formed_mask(mask: &SupportMask) -> Result<bool> {
    well_formedness(mask).map(|w| w.well_formed)
}

/// Runs the recursive list algorithm on the mask's zero indices.
pub fn well_formedness(mask: &SupportMask) -> Result<WellFormedness> {
    let len = mask.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(SepError::BadLength(len));
    }
    let zeros = mask.zero_indices();
    let mut out = WellFormedness {
        well_formed: false,
        failed_at: None,
        comparisons: 0,
        partition_probes: 0,
    };
    // the all-zero string is not in the language
    if zeros.len() == len {
        out.failed_at = Some(len);
        return Ok(out);
    }
    let mut wf = WfRun::default();
    let half = len / 2;
    let (low, high) = wf.split(zeros.as_slice(), half);
    let result = wf.check(low, &high, len);
    out.well_formed = result.is_ok();
    out.failed_at = result.err();
    out.comparisons = wf.comparisons;
    out.partition_probes = wf.probes;
    Ok(out)
}

#[derive(Default)]
struct WfRun {
    comparisons: u64,
    probes: u64,
}

impl WfRun {
    /// `low[z, m]` and `high[z, m]`: entries below `m`, and entries at or
    /// above `m` reduced modulo `m`.
    fn split<'a>(&mut self, z: &'a [usize], m: usize) -> (&'a [usize], Vec<usize>) {
        let mut probes = 0;
        let cut = z.partition_point(|&i| {
            probes += 1;
            i < m
        });
        self.probes += probes;
        let (low, high) = z.split_at(cut);
        (low, high.iter().map(|&i| i - m).collect())
    }

    /// `l` and `h` are the zero positions in the two halves of a segment of
    /// length `n`. Returns the failing segment length on rejection.
    fn check(&mut self, l: &[usize], h: &[usize], n: usize) -> std::result::Result<(), usize> {
        if n == 2 {
            return Ok(());
        }
        // no zeros left: every full-support segment is well formed
        self.comparisons += 1;
        if l.is_empty() && h.is_empty() {
            return Ok(());
        }
        let half = n / 2;
        let quarter = n / 4;
        self.comparisons += 1;
        if l.len() > h.len() {
            self.comparisons += 1;
            if l.len() != half {
                return Err(n);
            }
            let (lo, hi) = self.split(h, quarter);
            return self.check(lo, &hi, half);
        }
        self.comparisons += 1;
        if l.len() < h.len() {
            self.comparisons += 1;
            if h.len() != half {
                return Err(n);
            }
            let (lo, hi) = self.split(l, quarter);
            return self.check(lo, &hi, half);
        }
        for (a, b) in l.iter().zip(h) {
            self.comparisons += 1;
            if a != b {
                return Err(n);
            }
        }
        let (lo, hi) = self.split(l, quarter);
        self.check(lo, &hi, half)
    }
}

/// All well-formed masks of length `2^n` in lexicographic order.
pub fn enumerate_well_formed(n: usize) -> Result<Vec<SupportMask>> {
    if n > N_MAX_ENUM {
        return Err(SepError::TooLarge { n, max: N_MAX_ENUM });
    }
    if n == 0 {
        return Err(SepError::BadLength(1));
    }
    let mut level: Vec<SupportMask> = ["01", "10", "11"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for k in 1..n {
        let zeros = SupportMask::zeros(1 << k);
        let mut next = Vec::with_capacity(level.len() * 3);
        for x in &level {
            next.push(zeros.concat(x));
            next.push(x.concat(&zeros));
            next.push(x.concat(x));
        }
        level = next;
    }
    level.sort_unstable();
    level.dedup();
    Ok(level)
}
