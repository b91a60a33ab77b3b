//! Independent ground truth: a state splits after qubit `p` iff its amplitudes
//! reshaped into a `2^p × 2^(n-p)` matrix have rank one.
//!
//! Nothing here shares code with [`crate::full`] or [`crate::pq`].

use num_complex::Complex64;

use crate::error::{Result, SepError};
use crate::state::PureState;

/// Row-major view `M[k][r] = α_{kQ+r}`.
#[derive(Debug, Clone, Copy)]
pub struct ReshapedMatrix<'a> {
    pub rows: usize,
    pub cols: usize,
    entries: &'a [Complex64],
}

impl<'a> ReshapedMatrix<'a> {
    pub fn new(state: &'a PureState, p: usize) -> Result<Self> {
        let n = state.n();
        if p == 0 || p >= n {
            return Err(SepError::BadSplit { p, n });
        }
        Ok(Self {
            rows: 1 << p,
            cols: 1 << (n - p),
            entries: state.amplitudes(),
        })
    }

    #[inline]
    pub fn get(&self, k: usize, r: usize) -> Complex64 {
        self.entries[k * self.cols + r]
    }

    pub fn frobenius_sqr(&self) -> f64 {
        self.entries.iter().map(|x| x.norm_sqr()).sum()
    }

    /// Every 2×2 minor against the largest-magnitude entry vanishes, relative
    /// to that entry's squared magnitude. Vanishing against one nonzero pivot
    /// forces every row to be a multiple of the pivot row.
    pub fn is_rank_one(&self, tol_rank: f64) -> bool {
        let (pivot_idx, pivot) = self
            .entries
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .map(|(i, &x)| (i, x))
            .expect("nonempty matrix");
        let scale = pivot.norm_sqr();
        if scale == 0.0 {
            return false;
        }
        let (pk, pr) = (pivot_idx / self.cols, pivot_idx % self.cols);
        (0..self.rows).all(|k| {
            let row_at_pr = self.get(k, pr);
            (0..self.cols).all(|r| {
                let minor = self.get(k, r) * pivot - row_at_pr * self.get(pk, r);
                minor.norm() <= tol_rank * scale
            })
        })
    }

    /// Fraction of `‖M‖²_F` carried by the largest singular value, by power
    /// iteration on `M†M`. Equals 1 for rank one; a Rayleigh quotient never
    /// overestimates it.
    pub fn top_singular_weight(&self, iterations: usize) -> f64 {
        let total = self.frobenius_sqr();
        if total == 0.0 {
            return 0.0;
        }
        // fixed, generic start vector
        let mut x: Vec<Complex64> = (0..self.cols)
            .map(|r| Complex64::new(1.0 + 0.37 * r as f64, 0.11 * (r as f64).sin()))
            .collect();
        let mut estimate = 0.0;
        for _ in 0..iterations {
            let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
            let y: Vec<Complex64> = (0..self.rows)
                .map(|k| (0..self.cols).map(|r| self.get(k, r) * x[r]).sum())
                .collect();
            let next = y.iter().map(|v| v.norm_sqr()).sum::<f64>();
            x = (0..self.cols)
                .map(|r| (0..self.rows).map(|k| self.get(k, r).conj() * y[k]).sum())
                .collect();
            let converged = (next - estimate).abs() <= 1e-15 * total;
            estimate = next;
            if converged {
                break;
            }
        }
        estimate / total
    }
}

pub fn oracle_pq(state: &PureState, p: usize, tol_rank: f64) -> Result<bool> {
    Ok(ReshapedMatrix::new(state, p)?.is_rank_one(tol_rank))
}

/// A state is a full product iff every cut after the first `j` qubits,
/// `j = 1..n-1`, has rank one.
pub fn oracle_fully_separable(state: &PureState, tol_rank: f64) -> bool {
    (1..state.n()).all(|p| oracle_pq(state, p, tol_rank).expect("p in range"))
}
