//! Closed-form bounds on the annulus spectral constant K(R), assembled into
//! consistency-checked tables.
//!
//! Four of the six bounds are single expressions in R. The γ lower bound is
//! an infinite product evaluated by adaptive truncation: factors are
//! appended until they are indistinguishable from 1 at the requested
//! precision and a geometric envelope certifies the discarded tail. The
//! constant lower bound 2 is the target the certificates converge to.

use crate::error::{Error, Result};
use crate::model::AnnulusParams;

/// Default relative tolerance for the γ product.
pub const DEFAULT_GAMMA_RTOL: f64 = 1e-12;

/// Product terms after which γ is flagged slow.
const SLOW_CONVERGENCE_TERMS: usize = 10_000;
/// Hard cap on γ product terms.
const GAMMA_TERM_CAP: usize = 1_000_000;
/// Bound magnitude beyond which a value is flagged as blowing up.
const LARGE_VALUE_THRESHOLD: f64 = 10.0;

/// Identifies one of the six cataloged bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundName {
    BadeaLower,
    BbcGammaLower,
    BbcUpper,
    CgUpper,
    ShieldsUpper,
    TsikalasLower,
}

impl BoundName {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::BadeaLower => "badea_lower",
            BoundName::BbcGammaLower => "bbc_gamma_lower",
            BoundName::BbcUpper => "bbc_upper",
            BoundName::CgUpper => "cg_upper",
            BoundName::ShieldsUpper => "shields_upper",
            BoundName::TsikalasLower => "tsikalas_lower",
        }
    }
}

/// Which side of K(R) a bound sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        }
    }
}

/// Quality notes attached to a bound evaluation near the R → 1 blowup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFlag {
    /// The value exceeds 10; the bound is uninformative this close to R = 1.
    LargeValue,
    /// The γ product needed more than 10⁴ terms.
    SlowConvergence,
    /// The γ product hit the term cap; the value is a partial product.
    IterationCap,
}

impl BoundFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundFlag::LargeValue => "large_value",
            BoundFlag::SlowConvergence => "slow_convergence",
            BoundFlag::IterationCap => "iteration_cap",
        }
    }
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    pub name: BoundName,
    pub kind: BoundKind,
    pub value: f64,
    /// Product terms used; present only for the γ bound.
    pub truncation_terms: Option<usize>,
    pub flags: Vec<BoundFlag>,
}

impl BoundValue {
    fn closed(name: BoundName, kind: BoundKind, value: f64) -> Self {
        let flags = if value > LARGE_VALUE_THRESHOLD {
            vec![BoundFlag::LargeValue]
        } else {
            Vec::new()
        };
        Self {
            name,
            kind,
            value,
            truncation_terms: None,
            flags,
        }
    }
}

/// Upper bound 2 + √((R²+1)/(R²−1)); blows up as R → 1.
pub fn shields_upper(a: &AnnulusParams) -> BoundValue {
    let r2 = a.radius() * a.radius();
    let value = 2.0 + ((r2 + 1.0) / (r2 - 1.0)).sqrt();
    BoundValue::closed(BoundName::ShieldsUpper, BoundKind::Upper, value)
}

/// Lower bound γ(R) = 2(1−R⁻²) ∏_{k≥1} ((1−R^{−8k})/(1−R^{4−8k}))².
///
/// Factors decrease to 1 geometrically (ratio R⁻⁸), so the product is
/// truncated once the current factor is within rel_tol/10 of 1 and the
/// geometric tail envelope is below rel_tol/10. If 10⁶ terms do not get
/// there, the partial product is returned flagged `IterationCap`.
pub fn bbc_gamma_lower(a: &AnnulusParams, rel_tol: f64) -> Result<BoundValue> {
    if !rel_tol.is_finite() || rel_tol <= 0.0 {
        return Err(Error::InvalidTolerance(rel_tol));
    }
    let radius = a.radius();
    let r4 = radius.powi(4);
    let r8_inv = radius.powi(-8);

    let mut product = 1.0f64;
    let mut x = r8_inv; // R^{-8k}
    let mut terms = 0usize;
    let mut capped = true;
    while terms < GAMMA_TERM_CAP {
        let y = x * r4; // R^{4-8k}
        let factor = ((1.0 - x) / (1.0 - y)).powi(2);
        product *= factor;
        terms += 1;
        x *= r8_inv;
        if (factor - 1.0).abs() < rel_tol / 10.0 {
            // remaining factors: log ∑ ≤ 2(R⁴−1) ∑_{j>k} R^{−8j} / (1−R^{4−8j})
            let tail = 2.0 * (r4 - 1.0) * x / ((1.0 - x * r4) * (1.0 - r8_inv));
            if tail < rel_tol / 10.0 {
                capped = false;
                break;
            }
        }
    }

    let value = 2.0 * (1.0 - radius.powi(-2)) * product;
    let mut flags = Vec::new();
    if value > LARGE_VALUE_THRESHOLD {
        flags.push(BoundFlag::LargeValue);
    }
    if terms > SLOW_CONVERGENCE_TERMS {
        flags.push(BoundFlag::SlowConvergence);
    }
    if capped {
        flags.push(BoundFlag::IterationCap);
    }
    Ok(BoundValue {
        name: BoundName::BbcGammaLower,
        kind: BoundKind::Lower,
        value,
        truncation_terms: Some(terms),
        flags,
    })
}

/// Upper bound 2 + (R+1)/√(R²+R+1), capped by 2 + 2/√3.
pub fn bbc_upper(a: &AnnulusParams) -> BoundValue {
    let r = a.radius();
    let value = 2.0 + (r + 1.0) / (r * r + r + 1.0).sqrt();
    BoundValue::closed(BoundName::BbcUpper, BoundKind::Upper, value)
}

/// Upper bound 1 + √2, uniform in R.
pub fn cg_upper() -> BoundValue {
    BoundValue::closed(
        BoundName::CgUpper,
        BoundKind::Upper,
        1.0 + std::f64::consts::SQRT_2,
    )
}

/// Lower bound 2(1+R²+R)/(1+R²+2R), strictly between 3/2 and 2.
pub fn badea_lower(a: &AnnulusParams) -> BoundValue {
    let r = a.radius();
    let value = 2.0 * (1.0 + r * r + r) / (1.0 + r * r + 2.0 * r);
    BoundValue::closed(BoundName::BadeaLower, BoundKind::Lower, value)
}

/// Lower bound 2, uniform in R; the supremum the certificates approach.
pub fn tsikalas_lower() -> BoundValue {
    BoundValue::closed(BoundName::TsikalasLower, BoundKind::Lower, 2.0)
}

/// All six bounds, ordered by name, with the lower/upper consistency check
/// applied: max over lower kinds must not exceed min over upper kinds.
pub fn bound_table(a: &AnnulusParams, gamma_rel_tol: f64) -> Result<Vec<BoundValue>> {
    let mut table = vec![
        badea_lower(a),
        bbc_gamma_lower(a, gamma_rel_tol)?,
        bbc_upper(a),
        cg_upper(),
        shields_upper(a),
        tsikalas_lower(),
    ];
    table.sort_by_key(|b| b.name);
    let max_lower = table
        .iter()
        .filter(|b| b.kind == BoundKind::Lower)
        .map(|b| b.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let min_upper = table
        .iter()
        .filter(|b| b.kind == BoundKind::Upper)
        .map(|b| b.value)
        .fold(f64::INFINITY, f64::min);
    if max_lower > min_upper {
        return Err(Error::ConsistencyViolation {
            radius: a.radius(),
            max_lower,
            min_upper,
        });
    }
    Ok(table)
}
