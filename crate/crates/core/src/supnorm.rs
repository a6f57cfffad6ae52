//! Sup norm of a Laurent polynomial over the closed annulus.
//!
//! Laurent polynomials are holomorphic on the open annulus, so by the
//! maximum principle the sup over {1/R ≤ |z| ≤ R} is attained on one of the
//! two boundary circles. Sampling therefore covers only those circles, on
//! equispaced angular grids that contain angle 0; the sampled maximum is a
//! lower bound that converges to the true sup under grid refinement, and is
//! exact whenever the maximizer lands on the grid.

use crate::error::{Error, Result};
use crate::model::{AnnulusParams, LaurentPolynomial};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use std::f64::consts::TAU;

/// Sampled sup norm together with the sample attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupNormResult {
    /// Largest modulus over all samples.
    pub value: f64,
    /// Radius of the attaining circle: R or 1/R.
    pub argmax_radius: f64,
    /// Angle of the attaining sample, in radians.
    pub argmax_angle: f64,
    /// Grid resolution used on each circle.
    pub samples_per_circle: usize,
}

/// Samples |p| on both boundary circles and returns the maximum.
///
/// `samples` must be even and at least 16 so the grid contains angle 0.
/// With the `parallel` feature the samples are evaluated concurrently; the
/// reduction uses a total order (value, then sample position), so the result
/// is identical to the sequential one.
pub fn sup_norm_sampled(
    p: &LaurentPolynomial,
    a: &AnnulusParams,
    samples: usize,
) -> Result<SupNormResult> {
    validate_samples(samples)?;
    #[cfg(feature = "parallel")]
    {
        let best = (0..2 * samples)
            .into_par_iter()
            .map(|flat| candidate(p, a, samples, flat))
            .reduce(Cand::worst, Cand::better);
        Ok(finish(a, samples, best))
    }
    #[cfg(not(feature = "parallel"))]
    {
        sup_norm_sampled_seq(p, a, samples)
    }
}

/// Sequential form of [`sup_norm_sampled`]; always available, bit-identical
/// output.
pub fn sup_norm_sampled_seq(
    p: &LaurentPolynomial,
    a: &AnnulusParams,
    samples: usize,
) -> Result<SupNormResult> {
    validate_samples(samples)?;
    let best = (0..2 * samples)
        .map(|flat| candidate(p, a, samples, flat))
        .fold(Cand::worst(), Cand::better);
    Ok(finish(a, samples, best))
}

/// Maximum of |p| over one circle, with the attaining angle.
pub fn max_modulus_on_circle(
    p: &LaurentPolynomial,
    radius: f64,
    samples: usize,
) -> Result<(f64, f64)> {
    validate_samples(samples)?;
    let mut best = Cand::worst();
    for idx in 0..samples {
        let angle = grid_angle(idx, samples);
        best = Cand::better(
            best,
            Cand {
                value: modulus(p, radius, angle),
                circle: 0,
                idx,
            },
        );
    }
    Ok((best.value, grid_angle(best.idx, samples)))
}

/// ‖g_n‖ over the annulus in closed form: 1 + R^{-2n}, attained at z = R.
pub fn gn_sup_norm_closed(n: u32, a: &AnnulusParams) -> Result<f64> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    Ok(1.0 + a.radius().powi(-2 * n as i32))
}

fn validate_samples(samples: usize) -> Result<()> {
    if samples < 16 || samples % 2 != 0 {
        return Err(Error::SampleCount(samples));
    }
    Ok(())
}

fn grid_angle(idx: usize, samples: usize) -> f64 {
    idx as f64 * TAU / samples as f64
}

fn modulus(p: &LaurentPolynomial, radius: f64, angle: f64) -> f64 {
    let (re, im) = p.eval_polar(radius, angle);
    (re * re + im * im).sqrt()
}

#[derive(Clone, Copy)]
struct Cand {
    value: f64,
    circle: usize,
    idx: usize,
}

impl Cand {
    fn worst() -> Self {
        Self {
            value: f64::NEG_INFINITY,
            circle: usize::MAX,
            idx: usize::MAX,
        }
    }

    /// Total order: larger value wins, ties go to the outer circle and then
    /// the smaller angle, making any reduction order give the same answer.
    fn better(a: Self, b: Self) -> Self {
        if a.value > b.value || (a.value == b.value && (a.circle, a.idx) < (b.circle, b.idx)) {
            a
        } else {
            b
        }
    }
}

fn candidate(p: &LaurentPolynomial, a: &AnnulusParams, samples: usize, flat: usize) -> Cand {
    let (circle, idx) = (flat / samples, flat % samples);
    let radius = if circle == 0 {
        a.radius()
    } else {
        a.inner_radius()
    };
    Cand {
        value: modulus(p, radius, grid_angle(idx, samples)),
        circle,
        idx,
    }
}

fn finish(a: &AnnulusParams, samples: usize, best: Cand) -> SupNormResult {
    SupNormResult {
        value: best.value,
        argmax_radius: if best.circle == 0 {
            a.radius()
        } else {
            a.inner_radius()
        },
        argmax_angle: grid_angle(best.idx, samples),
        samples_per_circle: samples,
    }
}
