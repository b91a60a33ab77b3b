//! Full separability of a pure state into `n` single-qubit factors.
//!
//! A state is a full product exactly when its zero pattern is well formed and
//! the vector of its nonzero amplitudes (in index order) is pair product
//! invariant: for every power-of-two prefix length `L`, all products
//! `α_i·α_{L-i-1}` coincide.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, SepError};
use crate::mask::{amplitude_abstraction, well_formedness, SupportMask};
use crate::state::{PureState, QubitFactor};
use crate::{products_match, Tolerances};

/// Elementwise bound on `‖⊗ factors − state‖∞` accepted by the extractors.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FullSepReason {
    WellFormednessFailed,
    PairProductFailed,
    Separable,
    TrivialBasisState,
}

/// First violated product equality, at prefix length `2^level`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairViolation {
    pub level: u32,
    /// Offset `i` within the prefix; the failing products are
    /// `v[i]·v[L-i-1]` and `v[0]·v[L-1]`.
    pub index: usize,
    pub lhs: Complex64,
    pub rhs: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairProductOutcome {
    pub invariant: bool,
    pub violation: Option<PairViolation>,
    pub products: u64,
    pub comparisons: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FullSepWitness {
    /// The number of nonzero amplitudes is not a power of two.
    Popcount { popcount: usize },
    /// The well-formedness recursion rejected a segment of this length.
    MaskLevel { segment: usize },
    /// Products over the zero-deleted vector that differ. `pair` and
    /// `reference` are amplitude indices of the original state.
    PairProduct {
        level: u32,
        pair: [usize; 2],
        reference: [usize; 2],
        lhs: Complex64,
        rhs: Complex64,
    },
    /// Factor extraction could not reproduce the amplitude at `index`.
    Reconstruction { index: usize, error: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct FullSepCounters {
    pub pair_products: u64,
    pub pair_comparisons: u64,
    pub wf_comparisons: u64,
    pub wf_partition_probes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FullSepReport {
    pub separable: bool,
    pub reason: FullSepReason,
    pub popcount: usize,
    pub witness: Option<FullSepWitness>,
    pub factors: Option<Vec<QubitFactor>>,
    pub counters: FullSepCounters,
}

/// The nonzero amplitudes of `state` in index order.
pub fn zero_deletion(state: &PureState, mask: &SupportMask) -> Result<Vec<Complex64>> {
    if mask.len() != state.dim() {
        return Err(SepError::LengthMismatch {
            expected: state.dim(),
            found: mask.len(),
        });
    }
    if mask.popcount() < 2 {
        return Err(SepError::TooFewNonzero(mask.popcount()));
    }
    let mut out = Vec::with_capacity(mask.popcount());
    out.extend(
        state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask.get(i))
            .map(|(_, &a)| a),
    );
    Ok(out)
}

/// Checks, for every level `l` in `2..=k`, that `v[i]·v[L-i-1]` equals
/// `v[0]·v[L-1]` for `i` in `1..L/2`. Level 1 holds trivially and the upper
/// half of each prefix mirrors the lower half, so this performs exactly
/// `K - k - 1` comparisons over `K - 2` products when the vector passes.
pub fn pair_product_invariant(v: &[Complex64], tol_pp: f64) -> Result<PairProductOutcome> {
    let len = v.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(SepError::BadLength(len));
    }
    let k = len.trailing_zeros();
    let mut out = PairProductOutcome {
        invariant: true,
        violation: None,
        products: 0,
        comparisons: 0,
    };
    for level in 2..=k {
        let l = 1usize << level;
        let reference = v[0] * v[l - 1];
        out.products += 1;
        for i in 1..l / 2 {
            let lhs = v[i] * v[l - i - 1];
            out.products += 1;
            out.comparisons += 1;
            if !products_match(lhs, reference, tol_pp) {
                out.invariant = false;
                out.violation = Some(PairViolation {
                    level,
                    index: i,
                    lhs,
                    rhs: reference,
                });
                return Ok(out);
            }
        }
    }
    Ok(out)
}

pub fn is_fully_separable(state: &PureState, tol: &Tolerances) -> FullSepReport {
    let mask = amplitude_abstraction(state, tol.zero);
    let popcount = mask.popcount();
    let mut counters = FullSepCounters::default();
    let not_separable = |reason, witness, counters| FullSepReport {
        separable: false,
        reason,
        popcount,
        witness: Some(witness),
        factors: None,
        counters,
    };

    if popcount == 1 {
        let index = mask.ones()[0];
        return FullSepReport {
            separable: true,
            reason: FullSepReason::TrivialBasisState,
            popcount,
            witness: None,
            factors: Some(basis_factors(state, index)),
            counters,
        };
    }
    if !popcount.is_power_of_two() {
        return not_separable(
            FullSepReason::WellFormednessFailed,
            FullSepWitness::Popcount { popcount },
            counters,
        );
    }

    // length is a power of two >= 2 for any valid state
    let wf = well_formedness(&mask).expect("state length is a power of two");
    counters.wf_comparisons = wf.comparisons;
    counters.wf_partition_probes = wf.partition_probes;
    if !wf.well_formed {
        return not_separable(
            FullSepReason::WellFormednessFailed,
            FullSepWitness::MaskLevel {
                segment: wf.failed_at.unwrap_or(state.dim()),
            },
            counters,
        );
    }

    let support = mask.ones();
    let reduced = zero_deletion(state, &mask).expect("popcount >= 2");
    let pp = pair_product_invariant(&reduced, tol.pp).expect("popcount is a power of two");
    counters.pair_products = pp.products;
    counters.pair_comparisons = pp.comparisons;
    if let Some(v) = pp.violation {
        let l = 1usize << v.level;
        return not_separable(
            FullSepReason::PairProductFailed,
            FullSepWitness::PairProduct {
                level: v.level,
                pair: [support[v.index], support[l - v.index - 1]],
                reference: [support[0], support[l - 1]],
                lhs: v.lhs,
                rhs: v.rhs,
            },
            counters,
        );
    }

    let factors = peel_factors(state, tol.zero);
    match reconstruction_error(state, &factors) {
        None => FullSepReport {
            separable: true,
            reason: FullSepReason::Separable,
            popcount,
            witness: None,
            factors: Some(factors),
            counters,
        },
        Some((index, error)) => not_separable(
            FullSepReason::PairProductFailed,
            FullSepWitness::Reconstruction { index, error },
            counters,
        ),
    }
}

/// Splits a fully separable state into its `n` qubit factors.
///
/// Factors `1..n` have their first nonzero amplitude real and positive;
/// factor 0 carries the global phase, so the tensor product of the returned
/// factors reproduces `state` without a phase ambiguity.
pub fn extract_qubit_factors(state: &PureState, tol_zero: f64) -> Result<Vec<QubitFactor>> {
    let factors = peel_factors(state, tol_zero);
    match reconstruction_error(state, &factors) {
        None => Ok(factors),
        Some((index, error)) => Err(SepError::NotSeparable(format!(
            "factor product differs from amplitude {index} by {error:e}"
        ))),
    }
}

fn basis_factors(state: &PureState, index: usize) -> Vec<QubitFactor> {
    let n = state.n();
    let mut factors: Vec<QubitFactor> = (0..n)
        .map(|q| {
            if index >> (n - 1 - q) & 1 == 1 {
                QubitFactor::one()
            } else {
                QubitFactor::zero()
            }
        })
        .collect();
    let phase = state.amplitudes()[index];
    factors[0].amp0 *= phase;
    factors[0].amp1 *= phase;
    factors
}

/// Peels qubit 0 off repeatedly. A half below `tol_zero` everywhere fixes the
/// qubit to a basis state; otherwise the second half is taken as
/// `λ·first` with `λ = ⟨a, b⟩ / ‖a‖²` and the quotient is the projection
/// onto `(1, λ)/‖(1, λ)‖`.
fn peel_factors(state: &PureState, tol_zero: f64) -> Vec<QubitFactor> {
    let n = state.n();
    let mut factors = Vec::with_capacity(n);
    let mut v: Vec<Complex64> = state.amplitudes().to_vec();
    for _ in 0..n {
        let half = v.len() / 2;
        let (a, b) = v.split_at(half);
        let a_zero = a.iter().all(|x| x.norm() <= tol_zero);
        let b_zero = b.iter().all(|x| x.norm() <= tol_zero);
        let next = if a_zero && !b_zero {
            factors.push(QubitFactor::one());
            b.to_vec()
        } else if b_zero {
            factors.push(QubitFactor::zero());
            a.to_vec()
        } else {
            let a_norm_sqr: f64 = a.iter().map(|x| x.norm_sqr()).sum();
            let overlap: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
            let lambda = overlap / a_norm_sqr;
            let scale = (1.0 + lambda.norm_sqr()).sqrt();
            let d0 = Complex64::new(1.0 / scale, 0.0);
            let d1 = lambda / scale;
            factors.push(QubitFactor { amp0: d0, amp1: d1 });
            a.iter()
                .zip(b)
                .map(|(x, y)| d0 * x + d1.conj() * y)
                .collect()
        };
        v = next;
    }
    let global = v[0];
    factors[0].amp0 *= global;
    factors[0].amp1 *= global;
    factors
}

/// First amplitude where the factor product misses by more than
/// [`RECONSTRUCTION_TOL`].
pub(crate) fn reconstruction_error(
    state: &PureState,
    factors: &[QubitFactor],
) -> Option<(usize, f64)> {
    let product = PureState::product_of(factors)?;
    product
        .amplitudes()
        .iter()
        .zip(state.amplitudes())
        .map(|(p, a)| (p - a).norm())
        .enumerate()
        .find(|&(_, e)| e.is_nan() || e >= RECONSTRUCTION_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn reals(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| c(x)).collect()
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn zero_deletion_examples() {
        let (a, b) = (0.6, 0.8);
        let s = PureState::from_reals(2, &[0.0, a, 0.0, b]).unwrap();
        let m = amplitude_abstraction(&s, 1e-12);
        assert_eq!(zero_deletion(&s, &m).unwrap(), reals(&[a, b]));

        let full = PureState::from_reals(2, &[0.5; 4]).unwrap();
        let m = amplitude_abstraction(&full, 1e-12);
        assert_eq!(zero_deletion(&full, &m).unwrap(), full.amplitudes());

        let h = FRAC_1_SQRT_2;
        let s = PureState::from_reals(3, &[0.0, 0.0, 0.0, 0.0, h, 0.0, 0.0, h]).unwrap();
        let m = amplitude_abstraction(&s, 1e-12);
        assert_eq!(zero_deletion(&s, &m).unwrap(), reals(&[h, h]));

        let basis = PureState::basis(2, 2).unwrap();
        let m = amplitude_abstraction(&basis, 1e-12);
        assert_eq!(zero_deletion(&basis, &m), Err(SepError::TooFewNonzero(1)));
    }

    #[test]
    fn pair_product_examples() {
        let out = pair_product_invariant(&reals(&[0.5; 4]), 1e-9).unwrap();
        assert!(out.invariant);
        assert_eq!((out.comparisons, out.products), (1, 2));

        let h = FRAC_1_SQRT_2;
        let out = pair_product_invariant(&reals(&[h, 0.0, 0.0, h]), 1e-9).unwrap();
        assert!(!out.invariant);
        let v = out.violation.unwrap();
        assert_eq!((v.level, v.index), (2, 1));
        assert!(v.lhs.norm() < 1e-15);
        assert!((v.rhs - c(0.5)).norm() < 1e-15);

        assert_eq!(
            pair_product_invariant(&reals(&[1.0, 0.0, 0.0]), 1e-9),
            Err(SepError::BadLength(3))
        );
        // a single pair has no comparisons
        let out = pair_product_invariant(&reals(&[0.6, 0.8]), 1e-9).unwrap();
        assert!(out.invariant);
        assert_eq!(out.comparisons, 0);
    }

    #[test]
    fn comparison_count_closed_form() {
        for k in 1..=12u32 {
            let len = 1usize << k;
            let v = vec![c(1.0 / (len as f64).sqrt()); len];
            let out = pair_product_invariant(&v, 1e-9).unwrap();
            assert!(out.invariant);
            assert_eq!(out.comparisons, len as u64 - k as u64 - 1);
            assert_eq!(out.products, len as u64 - 2);
        }
    }

    #[test]
    fn named_states_are_rejected_by_the_mask() {
        let ghz = PureState::ghz(3).unwrap();
        let r = is_fully_separable(&ghz, &tol());
        assert!(!r.separable);
        assert_eq!(r.reason, FullSepReason::WellFormednessFailed);
        assert!(r.witness.is_some() && r.factors.is_none());

        let w = PureState::w(3).unwrap();
        let r = is_fully_separable(&w, &tol());
        assert_eq!(r.reason, FullSepReason::WellFormednessFailed);
        assert_eq!(r.witness, Some(FullSepWitness::Popcount { popcount: 3 }));

        let r = is_fully_separable(&PureState::bell(), &tol());
        assert_eq!(r.reason, FullSepReason::WellFormednessFailed);
        assert_eq!(r.witness, Some(FullSepWitness::MaskLevel { segment: 4 }));
    }

    #[test]
    fn full_support_entangled_fails_pair_products() {
        let s = PureState::from_reals(2, &[0.5, 0.5, 0.5, -0.5]).unwrap();
        let r = is_fully_separable(&s, &tol());
        assert!(!r.separable);
        assert_eq!(r.reason, FullSepReason::PairProductFailed);
        match r.witness.unwrap() {
            FullSepWitness::PairProduct {
                level,
                pair,
                reference,
                ..
            } => {
                assert_eq!(level, 2);
                assert_eq!(pair, [1, 2]);
                assert_eq!(reference, [0, 3]);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn explicit_product_is_factored() {
        let factors = [QubitFactor::plus(), QubitFactor::one(), QubitFactor::zero()];
        let s = PureState::product_of(&factors).unwrap();
        let r = is_fully_separable(&s, &tol());
        assert!(r.separable);
        assert_eq!(r.reason, FullSepReason::Separable);
        let got = r.factors.unwrap();
        for (g, e) in got.iter().zip(&factors) {
            assert!(g.max_abs_diff(e) < 1e-12, "{g:?} vs {e:?}");
        }
    }

    #[test]
    fn extract_examples() {
        let pp = PureState::from_reals(2, &[0.5; 4]).unwrap();
        let f = extract_qubit_factors(&pp, 1e-12).unwrap();
        assert!(f[0].max_abs_diff(&QubitFactor::plus()) < 1e-12);
        assert!(f[1].max_abs_diff(&QubitFactor::plus()) < 1e-12);

        let s01 = PureState::basis(2, 1).unwrap();
        let f = extract_qubit_factors(&s01, 1e-12).unwrap();
        assert_eq!(f, vec![QubitFactor::zero(), QubitFactor::one()]);

        assert!(matches!(
            extract_qubit_factors(&PureState::bell(), 1e-12),
            Err(SepError::NotSeparable(_))
        ));
    }

    #[test]
    fn global_phase_lands_on_first_factor() {
        let phase = Complex64::from_polar(1.0, 0.7);
        let base = PureState::product_of(&[QubitFactor::minus(), QubitFactor::plus()]).unwrap();
        let s = base.with_phase(phase);
        let f = extract_qubit_factors(&s, 1e-12).unwrap();
        assert!(f[1].max_abs_diff(&QubitFactor::plus()) < 1e-12);
        let expected = QubitFactor {
            amp0: QubitFactor::minus().amp0 * phase,
            amp1: QubitFactor::minus().amp1 * phase,
        };
        assert!(f[0].max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn basis_state_shortcut() {
        let phase = Complex64::from_polar(1.0, -1.1);
        let mut amps = vec![c(0.0); 8];
        amps[0b101] = phase;
        let s = PureState::new(3, amps).unwrap();
        let r = is_fully_separable(&s, &tol());
        assert_eq!(r.reason, FullSepReason::TrivialBasisState);
        let f = r.factors.unwrap();
        assert_eq!(f[1], QubitFactor::zero());
        assert_eq!(f[2], QubitFactor::one());
        assert_eq!(f[0].amp1, phase);
        assert_eq!(PureState::product_of(&f).unwrap(), s);
    }

    #[test]
    fn zero_pattern_product() {
        // |1⟩ ⊗ |+⟩ ⊗ |0⟩ ⊗ (0.6|0⟩ + 0.8i|1⟩)
        let last = QubitFactor::new(c(0.6), Complex64::new(0.0, 0.8)).unwrap();
        let factors = [
            QubitFactor::one(),
            QubitFactor::plus(),
            QubitFactor::zero(),
            last,
        ];
        let s = PureState::product_of(&factors).unwrap();
        let r = is_fully_separable(&s, &tol());
        assert!(r.separable);
        assert_eq!(r.popcount, 4);
        let got = r.factors.unwrap();
        for (g, e) in got.iter().zip(&factors) {
            assert!(g.max_abs_diff(e) < 1e-12);
        }
    }
}
