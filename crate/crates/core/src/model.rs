//! Domain types shared by every module: annulus parameters, Laurent
//! polynomials with real coefficients, the two-valued weight sequence, and
//! windowed coefficient vectors in orthonormal coordinates.
//!
//! Coordinates convention: a sequence f with coefficients f̂(k) and weighted
//! norm ‖f‖²_β = Σ |f̂(k)|² β(k)² is stored componentwise as v[k] = f̂(k)·β(k),
//! so every norm below is a plain Euclidean norm and shift operators become
//! two-valued weighted shifts.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// The annulus { 1/R <= |z| <= R } described by its outer radius R > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusParams {
    radius: f64,
}

impl AnnulusParams {
    /// Requires a finite R strictly greater than 1.
    pub fn new(radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 1.0 {
            return Err(Error::RadiusOutOfRange(radius));
        }
        Ok(Self { radius })
    }

    /// Outer radius R.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Inner radius 1/R.
    pub fn inner_radius(&self) -> f64 {
        1.0 / self.radius
    }
}

/// A finitely supported map from integer degrees to real coefficients.
///
/// Canonical form: only nonzero coefficients are stored; the empty map is the
/// zero polynomial. Iteration over terms is always in ascending degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, f64>,
}

impl LaurentPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial c.
    pub fn constant(c: f64) -> Self {
        Self::from_terms([(0, c)])
    }

    /// Single term c·z^degree.
    pub fn monomial(degree: i64, c: f64) -> Self {
        Self::from_terms([(degree, c)])
    }

    /// Builds from (degree, coefficient) pairs, dropping zeros and summing
    /// repeated degrees.
    pub fn from_terms<I: IntoIterator<Item = (i64, f64)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (d, c) in terms {
            *coeffs.entry(d).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        Self { coeffs }
    }

    /// Coefficient at `degree` (zero if absent).
    pub fn coefficient(&self, degree: i64) -> f64 {
        self.coeffs.get(&degree).copied().unwrap_or(0.0)
    }

    /// Terms in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest stored degree, None for the zero polynomial.
    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest stored degree, None for the zero polynomial.
    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms().chain(other.terms()))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_terms(self.terms().map(|(d, v)| (d, c * v)))
    }

    /// Evaluates at z = radius·e^{i·angle}, returning (re, im).
    ///
    /// Terms accumulate in ascending degree; angle 0 is exact (cos 0 = 1,
    /// sin 0 = 0), so peaks on the sampling grid carry no angular error.
    pub fn eval_polar(&self, radius: f64, angle: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (d, c) in self.terms() {
            let r_pow = powi_i64(radius, d);
            let phase = d as f64 * angle;
            re += c * r_pow * phase.cos();
            im += c * r_pow * phase.sin();
        }
        (re, im)
    }
}

/// z^d for possibly large |d|; i32 saturation is irrelevant at the window
/// sizes this crate admits.
fn powi_i64(base: f64, exp: i64) -> f64 {
    base.powi(exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Builds g_n = R^{-n}·(z^{-n} + z^n), defined for n >= 2.
pub fn make_gn(n: u32, a: &AnnulusParams) -> Result<LaurentPolynomial> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    let c = a.radius().powi(-(n as i32));
    Ok(LaurentPolynomial::from_terms([
        (-(n as i64), c),
        (n as i64, c),
    ]))
}

/// The 2n-periodic weight rule k ↦ β(k):
/// β(2ln + q) = R^q and β((2l+1)n + q) = R^{n-q} for q in {0, ..., n}.
///
/// Equivalently β(k) = R^{d(k)} where d(k) is the distance from k to the
/// nearest multiple of 2n. Values lie in [1, R^n]; consecutive ratios are
/// exactly R or 1/R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSequence {
    half_period: u32,
    radius: f64,
}

impl WeightSequence {
    /// `n` is the half-period (n >= 1). Rejects parameters for which the
    /// peak weight R^n overflows f64 rather than letting infinity propagate.
    pub fn new(half_period: u32, a: &AnnulusParams) -> Result<Self> {
        if half_period == 0 {
            return Err(Error::OrderTooSmall(0));
        }
        let peak = a.radius().powi(half_period as i32);
        if !peak.is_finite() {
            return Err(Error::PowerOverflow {
                radius: a.radius(),
                exponent: half_period,
            });
        }
        Ok(Self {
            half_period,
            radius: a.radius(),
        })
    }

    pub fn half_period(&self) -> u32 {
        self.half_period
    }

    pub fn period(&self) -> i64 {
        2 * self.half_period as i64
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The exponent d(k) with β(k) = R^{d(k)}: distance from k to the nearest
    /// multiple of the period 2n, reduced in O(1).
    pub fn exponent(&self, k: i64) -> i64 {
        let period = self.period();
        let r = k.rem_euclid(period);
        r.min(period - r)
    }

    /// β(k). Exact whenever R^q is exactly representable.
    pub fn beta(&self, k: i64) -> f64 {
        self.radius.powi(self.exponent(k) as i32)
    }

    /// β(k+1)/β(k), computed from the exponent rule so the result is exactly
    /// R or exactly 1/R, never a rounded quotient.
    pub fn step_weight(&self, k: i64) -> f64 {
        if self.exponent(k + 1) > self.exponent(k) {
            self.radius
        } else {
            1.0 / self.radius
        }
    }

    /// R^{d(to) - d(from)}, the exact telescoped factor picked up by moving a
    /// basis component from index `from` to index `to`.
    pub fn transport_factor(&self, from: i64, to: i64) -> f64 {
        self.radius.powi((self.exponent(to) - self.exponent(from)) as i32)
    }
}

/// Inclusive index range [lo, hi] of retained basis coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationWindow {
    lo: i64,
    hi: i64,
}

impl TruncationWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false // lo <= hi by construction
    }

    pub fn contains(&self, k: i64) -> bool {
        self.lo <= k && k <= self.hi
    }

    /// Position of index k inside the backing storage.
    pub fn offset(&self, k: i64) -> usize {
        debug_assert!(self.contains(k));
        (k - self.lo) as usize
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// A window of components in orthonormal coordinates: the entry at index k is
/// f̂(k)·β(k), so `norm()` equals the weighted norm of the represented
/// element.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector {
    window: TruncationWindow,
    values: Vec<f64>,
}

impl CoeffVector {
    pub fn zeros(window: TruncationWindow) -> Self {
        Self {
            values: vec![0.0; window.len()],
            window,
        }
    }

    /// Unit basis vector at index k.
    pub fn unit(window: TruncationWindow, k: i64) -> Result<Self> {
        let mut v = Self::zeros(window);
        v.set(k, 1.0)?;
        Ok(v)
    }

    /// Takes ownership of a dense value slice covering the window exactly.
    pub fn from_values(window: TruncationWindow, values: Vec<f64>) -> Result<Self> {
        if values.len() != window.len() {
            return Err(Error::WindowMismatch {
                lo_a: window.lo(),
                hi_a: window.hi(),
                lo_b: 0,
                hi_b: values.len() as i64 - 1,
            });
        }
        Ok(Self { window, values })
    }

    pub fn window(&self) -> TruncationWindow {
        self.window
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, k: i64) -> f64 {
        if self.window.contains(k) {
            self.values[self.window.offset(k)]
        } else {
            0.0
        }
    }

    pub fn set(&mut self, k: i64, value: f64) -> Result<()> {
        if !self.window.contains(k) {
            return Err(Error::WindowOverflow {
                index: k,
                lo: self.window.lo(),
                hi: self.window.hi(),
            });
        }
        let off = self.window.offset(k);
        self.values[off] = value;
        Ok(())
    }

    /// Nonzero entries as (index, value), ascending index.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let lo = self.window.lo();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(move |(off, &v)| (lo + off as i64, v))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.window != other.window {
            return Err(Error::WindowMismatch {
                lo_a: self.window.lo(),
                hi_a: self.window.hi(),
                lo_b: other.window.lo(),
                hi_b: other.window.hi(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            window: self.window,
            values,
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            window: self.window,
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// Euclidean norm = weighted norm of the represented element.
    ///
    /// Uses Neumaier-compensated summation of squares so that windows with
    /// 10^4+ equal entries stay accurate to a few ulps, and rescales when
    /// entries are large enough that squaring would overflow.
    pub fn norm(&self) -> f64 {
        let max_abs = self.values.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        if max_abs == 0.0 {
            return 0.0;
        }
        if max_abs > 1e140 || max_abs < 1e-140 {
            let scaled: f64 = compensated_sum(self.values.iter().map(|&v| {
                let t = v / max_abs;
                t * t
            }));
            return max_abs * scaled.sqrt();
        }
        compensated_sum(self.values.iter().map(|&v| v * v)).sqrt()
    }
}

/// Neumaier variant of Kahan summation.
fn compensated_sum<I: Iterator<Item = f64>>(iter: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for x in iter {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
