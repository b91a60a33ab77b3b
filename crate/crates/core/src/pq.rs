//! Separability into a `p`-qubit and a `q`-qubit factor.
//!
//! With `P = 2^p` and `Q = 2^q` the amplitudes form `P` groups of `Q`:
//! `α_{kQ+r} = β_k γ_r` for a product state. Given the first nonzero
//! amplitude `α_{i0}`, `i0 = k0·Q + r0`, the state splits iff
//!
//! * (a) `α_{k0Q+r0}·α_{kQ+r} = α_{k0Q+r}·α_{kQ+r0}` for every
//!   `k > k0`, `r > r0`, and
//! * (b) `α_{kQ+r} = 0` for every group `k` and offset `r < r0`.
//!
//! Condition (a) alone is not enough: `(0, a, b, 0)` has an empty range for
//! (a) at `p = 1` and is entangled.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, SepError};
use crate::state::{PureState, QubitPermutation};
use crate::{products_match, Tolerances};

/// Position of the first amplitude above the zero tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Pivot {
    pub i0: usize,
    /// Group index, `i0 / Q`.
    pub k0: usize,
    /// Offset inside the group, `i0 % Q`.
    pub r0: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PqWitness {
    /// Condition (a) fails: `lhs = α_{i0}·α_{kQ+r}`, `rhs = α_{k0Q+r}·α_{kQ+r0}`.
    CrossProduct {
        k: usize,
        r: usize,
        lhs: Complex64,
        rhs: Complex64,
    },
    /// Condition (b) fails: amplitude `index = kQ + r` with `r < r0` is nonzero.
    ZeroPattern { k: usize, r: usize, index: usize },
    /// The constructed factors do not reproduce the amplitude at `index`.
    Reconstruction { index: usize, error: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct PqCounters {
    pub cross_products: u64,
    pub cross_comparisons: u64,
    pub zero_checks: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PqReport {
    pub separable: bool,
    pub p: usize,
    pub q: usize,
    pub pivot: Pivot,
    pub witness: Option<PqWitness>,
    /// `(left over qubits 0..p, right over qubits p..n)` of the possibly
    /// permuted state.
    pub factors: Option<(PureState, PureState)>,
    /// Reordering applied before the split, for subset queries.
    pub permutation: Option<QubitPermutation>,
    pub counters: PqCounters,
}

fn check_split(state: &PureState, p: usize) -> Result<(usize, usize)> {
    let n = state.n();
    if p == 0 || p >= n {
        return Err(SepError::BadSplit { p, n });
    }
    Ok((1 << p, 1 << (n - p)))
}

pub fn find_pivot(state: &PureState, p: usize, tol_zero: f64) -> Result<Pivot> {
    let (_, group) = check_split(state, p)?;
    let i0 = state
        .amplitudes()
        .iter()
        .position(|a| a.norm() > tol_zero)
        .ok_or(SepError::AllZero)?;
    Ok(Pivot {
        i0,
        k0: i0 / group,
        r0: i0 % group,
    })
}

/// Condition (a) on its own, as the cross-product identity over
/// `k ∈ [k0+1, P-1]`, `r ∈ [r0+1, Q-1]`.
pub fn cross_product_condition(
    state: &PureState,
    p: usize,
    pivot: Pivot,
    tol_pp: f64,
    counters: &mut PqCounters,
) -> Result<Option<PqWitness>> {
    let (groups, group) = check_split(state, p)?;
    let a = state.amplitudes();
    let piv = a[pivot.i0];
    let head = &a[pivot.k0 * group..(pivot.k0 + 1) * group];
    for k in pivot.k0 + 1..groups {
        let row = &a[k * group..(k + 1) * group];
        let row_r0 = row[pivot.r0];
        for r in pivot.r0 + 1..group {
            let lhs = piv * row[r];
            let rhs = head[r] * row_r0;
            counters.cross_products += 2;
            counters.cross_comparisons += 1;
            if !products_match(lhs, rhs, tol_pp) {
                return Ok(Some(PqWitness::CrossProduct { k, r, lhs, rhs }));
            }
        }
    }
    Ok(None)
}

/// Condition (b): offsets before `r0` are zero in every later group.
/// Earlier groups and the pivot's own group are zero there by choice of pivot.
fn zero_pattern_condition(
    state: &PureState,
    p: usize,
    pivot: Pivot,
    tol_zero: f64,
    counters: &mut PqCounters,
) -> Result<Option<PqWitness>> {
    let (groups, group) = check_split(state, p)?;
    let a = state.amplitudes();
    for k in pivot.k0 + 1..groups {
        for r in 0..pivot.r0 {
            let index = k * group + r;
            counters.zero_checks += 1;
            if a[index].norm() > tol_zero {
                return Ok(Some(PqWitness::ZeroPattern { k, r, index }));
            }
        }
    }
    Ok(None)
}

pub fn is_pq_separable(state: &PureState, p: usize, tol: &Tolerances) -> Result<PqReport> {
    let pivot = find_pivot(state, p, tol.zero)?;
    let n = state.n();
    let mut counters = PqCounters::default();
    let mut report = PqReport {
        separable: false,
        p,
        q: n - p,
        pivot,
        witness: None,
        factors: None,
        permutation: None,
        counters,
    };

    let witness = match cross_product_condition(state, p, pivot, tol.pp, &mut counters)? {
        Some(w) => Some(w),
        None => zero_pattern_condition(state, p, pivot, tol.zero, &mut counters)?,
    };
    report.counters = counters;
    if witness.is_some() {
        report.witness = witness;
        return Ok(report);
    }

    match build_factors(state, p, pivot) {
        Ok(factors) => {
            report.separable = true;
            report.factors = Some(factors);
        }
        Err(w) => report.witness = Some(w),
    }
    Ok(report)
}

/// Builds `(|ψ_P⟩, |ψ_Q⟩)` from the pivot:
/// `|γ_{r0}|² = 1 / (1 + Σ_{i=i0+1}^{(k0+1)Q-1} |α_i|² / |α_{i0}|²)` with
/// `γ_{r0}` real positive, `γ_r = γ_{r0}·α_{k0Q+r}/α_{i0}` and
/// `β_k = α_{kQ+r0}/γ_{r0}`. The product is re-checked against the input.
pub fn factor_pq(state: &PureState, p: usize, pivot: Pivot) -> Result<(PureState, PureState)> {
    check_split(state, p)?;
    build_factors(state, p, pivot).map_err(|w| SepError::NotSeparable(format!("{w:?}")))
}

fn build_factors(
    state: &PureState,
    p: usize,
    pivot: Pivot,
) -> std::result::Result<(PureState, PureState), PqWitness> {
    let n = state.n();
    let q = n - p;
    let (groups, group) = (1usize << p, 1usize << q);
    let a = state.amplitudes();
    let piv = a[pivot.i0];
    let piv_norm_sqr = piv.norm_sqr();

    let tail: f64 = a[pivot.i0 + 1..(pivot.k0 + 1) * group]
        .iter()
        .map(|x| x.norm_sqr())
        .sum();
    let gamma_r0 = (1.0 / (1.0 + tail / piv_norm_sqr)).sqrt();

    let head = &a[pivot.k0 * group..(pivot.k0 + 1) * group];
    let gamma: Vec<Complex64> = head.iter().map(|&x| gamma_r0 * x / piv).collect();
    let beta: Vec<Complex64> = (0..groups)
        .map(|k| a[k * group + pivot.r0] / gamma_r0)
        .collect();

    let left = PureState::from_parts_unchecked(p, beta);
    let right = PureState::from_parts_unchecked(q, gamma);
    let product = left.tensor(&right);
    if let Some((index, error)) = product
        .amplitudes()
        .iter()
        .zip(a)
        .map(|(x, y)| (x - y).norm())
        .enumerate()
        .find(|&(_, e)| e.is_nan() || e >= crate::full::RECONSTRUCTION_TOL)
    {
        return Err(PqWitness::Reconstruction { index, error });
    }
    let left =
        PureState::new(p, left.into_amplitudes()).map_err(|_| PqWitness::Reconstruction {
            index: pivot.i0,
            error: f64::NAN,
        })?;
    let right =
        PureState::new(q, right.into_amplitudes()).map_err(|_| PqWitness::Reconstruction {
            index: pivot.i0,
            error: f64::NAN,
        })?;
    Ok((left, right))
}

/// Tests whether the qubits in `subset` separate from the rest.
///
/// The subset is moved to the front (both sides keep increasing qubit order)
/// and the permuted state is split at `p = |subset|`; the report records the
/// permutation and its factors refer to the permuted order.
pub fn is_pq_separable_subset(
    state: &PureState,
    subset: &[usize],
    tol: &Tolerances,
) -> Result<PqReport> {
    let n = state.n();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() {
        return Err(SepError::BadSubset(format!("{subset:?} repeats a qubit")));
    }
    if let Some(&q) = sorted.iter().find(|&&q| q >= n) {
        return Err(SepError::BadSubset(format!(
            "qubit {q} out of range for {n} qubits"
        )));
    }
    if sorted.is_empty() || sorted.len() == n {
        return Err(SepError::BadSubset(format!(
            "{subset:?} is not a nonempty proper subset of {n} qubits"
        )));
    }
    let perm = QubitPermutation::subset_first(n, &sorted)?;
    let permuted = state.permute_qubits(&perm)?;
    let mut report = is_pq_separable(&permuted, sorted.len(), tol)?;
    report.permutation = Some(perm);
    Ok(report)
}
