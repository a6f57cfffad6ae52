//! The truncated bilateral shift S of multiplication by z on the weighted
//! sequence space, acting on orthonormal coordinates.
//!
//! In those coordinates S moves the component at index k to index k+1 with
//! the exact scalar factor β(k+1)/β(k) ∈ {R, 1/R}, and S^j telescopes to a
//! single pass with factor β(k+j)/β(k) = R^{d(k+j)-d(k)}. Truncation is
//! strict: an application that would push a nonzero component outside the
//! window is an error, never a silent projection.

use crate::error::{Error, Result};
use crate::model::{CoeffVector, TruncationWindow, WeightSequence};

/// Windowed bilateral shift with weights fixed by a [`WeightSequence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftOperator {
    weights: WeightSequence,
    window: TruncationWindow,
}

impl ShiftOperator {
    pub fn new(weights: WeightSequence, window: TruncationWindow) -> Self {
        Self { weights, window }
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    pub fn window(&self) -> TruncationWindow {
        self.window
    }

    /// Applies S^j (negative j applies the inverse shift) in one composite
    /// pass: the component at k lands at k+j scaled by the exact telescoped
    /// factor R^{d(k+j)-d(k)}.
    ///
    /// Factors are precomputed per residue class mod 2n, so equal residues
    /// share bit-identical factors.
    pub fn apply_power(&self, v: &CoeffVector, j: i64) -> Result<CoeffVector> {
        if v.window() != self.window {
            return Err(Error::WindowMismatch {
                lo_a: v.window().lo(),
                hi_a: v.window().hi(),
                lo_b: self.window.lo(),
                hi_b: self.window.hi(),
            });
        }
        let period = self.weights.period();
        let factors: Vec<f64> = (0..period)
            .map(|r| self.weights.transport_factor(r, r + j))
            .collect();

        let lo = self.window.lo();
        let mut out = vec![0.0; self.window.len()];
        for (off, &x) in v.values().iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let k = lo + off as i64;
            let target = k + j;
            if !self.window.contains(target) {
                return Err(Error::WindowOverflow {
                    index: target,
                    lo: self.window.lo(),
                    hi: self.window.hi(),
                });
            }
            out[(target - lo) as usize] = x * factors[k.rem_euclid(period) as usize];
        }
        CoeffVector::from_values(self.window, out)
    }

    /// ‖S‖ on this window: the largest step ratio β(k+1)/β(k). Requires the
    /// window to span at least one full weight period so the supremum R is
    /// attained; computing it by enumeration doubles as a self-check of the
    /// weight rule.
    pub fn shift_norm(&self) -> Result<f64> {
        self.step_extremum(false)
    }

    /// ‖S^{-1}‖ on this window: the largest inverse step ratio β(k)/β(k+1).
    pub fn inverse_shift_norm(&self) -> Result<f64> {
        self.step_extremum(true)
    }

    fn step_extremum(&self, inverse: bool) -> Result<f64> {
        let period = self.weights.period();
        if self.window.hi() - self.window.lo() < period {
            return Err(Error::WindowTooShort {
                lo: self.window.lo(),
                hi: self.window.hi(),
                period,
            });
        }
        let mut max = 0.0f64;
        for k in self.window.lo()..self.window.hi() {
            let step = self.weights.step_weight(k);
            let ratio = if inverse { 1.0 / step } else { step };
            max = max.max(ratio);
        }
        Ok(max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AnnulusParams;

    fn shift(n: u32, radius: f64, lo: i64, hi: i64) -> ShiftOperator {
        let a = AnnulusParams::new(radius).unwrap();
        let w = WeightSequence::new(n, &a).unwrap();
        ShiftOperator::new(w, TruncationWindow::new(lo, hi).unwrap())
    }

    /// Single-step oracle: apply S (or its inverse) one index at a time using
    /// the raw quotient of β values.
    fn apply_single_steps(op: &ShiftOperator, v: &CoeffVector, j: i64) -> CoeffVector {
        let mut cur = v.clone();
        let step = if j >= 0 { 1 } else { -1 };
        for _ in 0..j.abs() {
            let mut next = CoeffVector::zeros(op.window());
            for (k, x) in cur.iter_nonzero() {
                let factor = op.weights().beta(k + step) / op.weights().beta(k);
                next.set(k + step, x * factor).unwrap();
            }
            cur = next;
        }
        cur
    }

    #[test]
    fn unit_step_picks_up_exact_weight() {
        let op = shift(2, 2.0, -4, 4);
        let v = CoeffVector::unit(op.window(), 0).unwrap();
        let out = op.apply_power(&v, 1).unwrap();
        assert_eq!(out.get(1), 2.0); // β(1)/β(0) = R
        assert_eq!(out.iter_nonzero().count(), 1);
    }

    #[test]
    fn zero_power_is_identity() {
        let op = shift(3, 1.5, -6, 6);
        let mut v = CoeffVector::zeros(op.window());
        v.set(-2, 0.7).unwrap();
        v.set(5, -1.25).unwrap();
        let out = op.apply_power(&v, 0).unwrap();
        assert_eq!(out, v);
    }

    #[test]
    fn inverse_power_matches_single_step_oracle() {
        let op = shift(3, 2.0, -6, 6);
        let v = CoeffVector::unit(op.window(), 3).unwrap();
        let out = op.apply_power(&v, -3).unwrap();
        assert_eq!(out.get(0), 0.125); // β(0)/β(3) = R^{-3}

        let oracle = apply_single_steps(&op, &v, -3);
        for k in op.window().indices() {
            assert!((out.get(k) - oracle.get(k)).abs() <= 1e-13);
        }
    }

    #[test]
    fn composite_equals_repeated_single_steps() {
        let op = shift(4, 1.3, -12, 20);
        let mut v = CoeffVector::zeros(op.window());
        v.set(-3, 1.0).unwrap();
        v.set(0, -2.0).unwrap();
        v.set(7, 0.5).unwrap();
        for j in [-7i64, -4, -1, 1, 3, 8] {
            let composite = op.apply_power(&v, j).unwrap();
            let oracle = apply_single_steps(&op, &v, j);
            for k in op.window().indices() {
                let (a, b) = (composite.get(k), oracle.get(k));
                assert!(
                    (a - b).abs() <= 1e-13 * b.abs().max(1.0),
                    "j={j} k={k}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn strict_mode_rejects_window_exit() {
        let op = shift(2, 2.0, -4, 4);
        let v = CoeffVector::unit(op.window(), 4).unwrap();
        let err = op.apply_power(&v, 1).unwrap_err();
        assert!(matches!(err, Error::WindowOverflow { index: 5, .. }));
    }

    #[test]
    fn shift_norms_equal_radius_exactly() {
        let op = shift(2, 2.0, -4, 4);
        assert_eq!(op.shift_norm().unwrap(), 2.0);
        assert_eq!(op.inverse_shift_norm().unwrap(), 2.0);

        // window of exactly one period, R barely above 1
        let op = shift(2, 1.0001, 0, 4);
        assert_eq!(op.shift_norm().unwrap(), 1.0001);
        assert_eq!(op.inverse_shift_norm().unwrap(), 1.0001);
    }

    #[test]
    fn norm_rejects_subperiod_window() {
        let op = shift(3, 2.0, 0, 2);
        assert!(matches!(op.shift_norm(), Err(Error::WindowTooShort { .. })));
        assert!(matches!(
            op.inverse_shift_norm(),
            Err(Error::WindowTooShort { .. })
        ));
    }

    #[test]
    fn round_trip_is_identity_on_interior_support() {
        let op = shift(3, 1.8, -20, 20);
        let mut v = CoeffVector::zeros(op.window());
        for (k, x) in [(-10i64, 0.3), (-1, -1.7), (0, 2.0), (9, 0.01)] {
            v.set(k, x).unwrap();
        }
        let n = 3i64;
        let back = op
            .apply_power(&op.apply_power(&v, n).unwrap(), -n)
            .unwrap();
        for k in op.window().indices() {
            let (a, b) = (back.get(k), v.get(k));
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn power_norm_bound() {
        // ‖S^j v‖ <= R^{|j|} ‖v‖ since every step ratio is R or 1/R
        let op = shift(4, 1.6, -30, 30);
        let mut v = CoeffVector::zeros(op.window());
        let mut state = 0xfeedu64;
        for k in -20..=20i64 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            v.set(k, ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5)
                .unwrap();
        }
        let norm = v.norm();
        for j in -4i64..=4 {
            let out = op.apply_power(&v, j).unwrap();
            let bound = 1.6f64.powi(j.unsigned_abs() as i32) * norm;
            assert!(out.norm() <= bound * (1.0 + 1e-12), "j={j}");
        }
    }
}
