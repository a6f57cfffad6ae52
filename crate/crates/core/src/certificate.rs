//! The constructive lower bound on K(R): build the witness vector h, push it
//! through S^{-n} + S^n, and compare norms.
//!
//! The witness has components 1/m at the indices 2ln (where β = 1), so its
//! norm and the norm of its image have closed forms. The ratio
//! ‖g_n(S)h‖ / (‖g_n‖·‖h‖) is a rigorous lower bound for K(R) for every
//! (n, m), strictly below 2 and converging to 2 as n and m grow. Both norms
//! are computed from the windowed vectors and cross-checked against the
//! closed forms on every call; a mismatch is a bug, reported as an invariant
//! violation rather than a value.

use crate::calculus::apply_laurent;
use crate::error::{Error, Result};
use crate::model::{
    AnnulusParams, CoeffVector, LaurentPolynomial, TruncationWindow, WeightSequence,
};
use crate::shift::ShiftOperator;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Largest witness window allocated without an explicit override.
pub const DEFAULT_WINDOW_CAP: u64 = 10_000_000;

/// Default sweep grid: radii spanning the near-1 and large-R regimes.
pub const DEFAULT_SWEEP_RADII: [f64; 7] = [1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0];
/// Default sweep grid for the shift order n.
pub const DEFAULT_SWEEP_ORDERS: [u32; 11] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];
/// Default sweep grid for the witness parameter m.
pub const DEFAULT_SWEEP_WITNESS_PARAMS: [u32; 4] = [3, 10, 31, 100];

/// Validated certificate parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateParams {
    n: u32,
    m: u32,
    annulus: AnnulusParams,
}

impl CertificateParams {
    pub fn new(n: u32, m: u32, annulus: AnnulusParams) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall(n));
        }
        if m < 3 {
            return Err(Error::WitnessParamTooSmall(m));
        }
        Ok(Self { n, m, annulus })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn annulus(&self) -> AnnulusParams {
        self.annulus
    }
}

/// One evaluated witness ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateResult {
    pub params: CertificateParams,
    /// ‖h‖, equal to √(m²+1)/m.
    pub h_norm: f64,
    /// ‖(S^{-n}+S^n)h‖, equal to Rⁿ√(4+2/m²).
    pub image_norm: f64,
    /// The certified lower bound on K(R) from this witness.
    pub ratio: f64,
    /// Algebraic form of the same ratio: m√(4+2/m²) / (√(m²+1)(1+R^{-2n})).
    pub closed_form: f64,
    /// The weaker chained bound 2Rⁿm / ((Rⁿ+R^{-n})√(m²+1)).
    pub paper_chain_value: f64,
    pub window: TruncationWindow,
}

/// One sweep cell; failures are recorded per cell so a sweep never aborts.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub radius: f64,
    pub n: u32,
    pub m: u32,
    pub outcome: Result<CertificateResult>,
}

/// The minimal window for the witness construction: supp(h) = [0, 2m²n]
/// padded by n on both sides for S^{±n}.
pub fn canonical_window(p: &CertificateParams) -> Result<TruncationWindow> {
    canonical_window_with_cap(p, DEFAULT_WINDOW_CAP)
}

/// [`canonical_window`] with an explicit length cap.
pub fn canonical_window_with_cap(p: &CertificateParams, cap: u64) -> Result<TruncationWindow> {
    let (n, m) = (p.n as u128, p.m as u128);
    let len = 2 * n * (m * m + 1) + 1;
    if len > cap as u128 {
        return Err(Error::WindowCapExceeded {
            len: len.min(u64::MAX as u128) as u64,
            cap,
        });
    }
    let n = p.n as i64;
    let m = p.m as i64;
    TruncationWindow::new(-n, (2 * m * m + 1) * n)
}

/// The witness h on its canonical window: components 1/m at 2ln for
/// l ∈ {0, …, m²}. Those indices satisfy β(2ln) = 1, so the orthonormal
/// coordinates equal the raw coefficients.
pub fn make_witness(p: &CertificateParams) -> Result<CoeffVector> {
    let window = canonical_window(p)?;
    let mut h = CoeffVector::zeros(window);
    let (n, m) = (p.n as i64, p.m as i64);
    let value = 1.0 / m as f64;
    for l in 0..=m * m {
        h.set(2 * l * n, value).unwrap();
    }
    Ok(h)
}

/// Builds the witness, applies S^{-n} + S^n, and assembles the certified
/// ratio. Every computed norm is checked against its closed form; failures
/// surface as invariant violations.
pub fn evaluate_certificate(p: &CertificateParams) -> Result<CertificateResult> {
    let a = p.annulus;
    let radius = a.radius();
    let window = canonical_window(p)?;
    let op = ShiftOperator::new(WeightSequence::new(p.n, &a)?, window);
    let h = make_witness(p)?;

    let n = p.n as i32;
    let mf = p.m as f64;
    let rn = radius.powi(n);
    let rinv_n = radius.powi(-n);
    let rinv_2n = radius.powi(-2 * n);

    let h_norm = h.norm();
    let h_closed = (mf * mf + 1.0).sqrt() / mf;
    check("witness norm", h_closed, h_norm, 1e-12)?;

    let poly = LaurentPolynomial::from_terms([(-(n as i64), 1.0), (n as i64, 1.0)]);
    let image_norm = apply_laurent(&poly, &op, &h)?.norm();
    let image_closed = rn * (4.0 + 2.0 / (mf * mf)).sqrt();
    check(
        "image norm closed form",
        image_closed,
        image_norm,
        1e-10 * image_closed,
    )?;
    if !(image_norm > 2.0 * rn) {
        return Err(Error::InvariantViolation {
            check: "image norm floor",
            expected: 2.0 * rn,
            got: image_norm,
        });
    }

    let ratio = image_norm / (rn * (1.0 + rinv_2n) * h_norm);
    let closed_form = mf * (4.0 + 2.0 / (mf * mf)).sqrt() / ((mf * mf + 1.0).sqrt() * (1.0 + rinv_2n));
    let paper_chain_value = 2.0 * rn * mf / ((rn + rinv_n) * (mf * mf + 1.0).sqrt());

    check("ratio closed form", closed_form, ratio, 1e-10 * closed_form)?;
    if ratio < paper_chain_value - 1e-12 {
        return Err(Error::InvariantViolation {
            check: "chain dominance",
            expected: paper_chain_value,
            got: ratio,
        });
    }
    if !(ratio < 2.0) {
        return Err(Error::InvariantViolation {
            check: "ratio ceiling",
            expected: 2.0,
            got: ratio,
        });
    }
    if ratio > 1.0 + std::f64::consts::SQRT_2 + 1e-9 {
        return Err(Error::InvariantViolation {
            check: "universal ceiling",
            expected: 1.0 + std::f64::consts::SQRT_2,
            got: ratio,
        });
    }

    Ok(CertificateResult {
        params: *p,
        h_norm,
        image_norm,
        ratio,
        closed_form,
        paper_chain_value,
        window,
    })
}

/// Evaluates every (R, n, m) combination, ordered lexicographically by
/// (R, n, m) regardless of input order. Cells run concurrently when the
/// `parallel` feature is enabled; the output order and contents are
/// identical either way.
pub fn sweep(n_values: &[u32], m_values: &[u32], r_values: &[f64]) -> Vec<SweepCell> {
    let combos = combinations(n_values, m_values, r_values);
    #[cfg(feature = "parallel")]
    {
        combos
            .into_par_iter()
            .map(|(r, n, m)| evaluate_cell(r, n, m))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        combos
            .into_iter()
            .map(|(r, n, m)| evaluate_cell(r, n, m))
            .collect()
    }
}

/// Sequential form of [`sweep`]; always available, identical output.
pub fn sweep_seq(n_values: &[u32], m_values: &[u32], r_values: &[f64]) -> Vec<SweepCell> {
    combinations(n_values, m_values, r_values)
        .into_iter()
        .map(|(r, n, m)| evaluate_cell(r, n, m))
        .collect()
}

fn combinations(n_values: &[u32], m_values: &[u32], r_values: &[f64]) -> Vec<(f64, u32, u32)> {
    let mut rs = r_values.to_vec();
    rs.sort_by(f64::total_cmp);
    let mut ns = n_values.to_vec();
    ns.sort_unstable();
    let mut ms = m_values.to_vec();
    ms.sort_unstable();
    let mut combos = Vec::with_capacity(rs.len() * ns.len() * ms.len());
    for &r in &rs {
        for &n in &ns {
            for &m in &ms {
                combos.push((r, n, m));
            }
        }
    }
    combos
}

fn evaluate_cell(radius: f64, n: u32, m: u32) -> SweepCell {
    let outcome = AnnulusParams::new(radius)
        .and_then(|a| CertificateParams::new(n, m, a))
        .and_then(|p| evaluate_certificate(&p));
    SweepCell {
        radius,
        n,
        m,
        outcome,
    }
}

fn check(name: &'static str, expected: f64, got: f64, tol: f64) -> Result<()> {
    if (got - expected).abs() <= tol {
        Ok(())
    } else {
        Err(Error::InvariantViolation {
            check: name,
            expected,
            got,
        })
    }
}
