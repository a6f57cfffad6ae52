//! Numerical toolkit for two-sided bounds on the spectral constant K(R) of
//! the annulus {1/R ≤ |z| ≤ R}.
//!
//! The centerpiece is a constructive lower bound: a weighted bilateral shift
//! S with ‖S‖ = ‖S⁻¹‖ = R and an explicit witness vector h for which the
//! ratio ‖g_n(S)h‖ / (‖g_n‖·‖h‖) can be driven arbitrarily close to 2. The
//! crate evaluates that certificate exactly on finite windows, estimates
//! operator norms by power iteration with certified Rayleigh lower bounds,
//! samples sup norms on the annulus boundary, and tabulates the classical
//! closed-form bounds for comparison.
//!
//! With the default `parallel` feature, sweeps and boundary sampling run on
//! rayon; results are bit-identical to the sequential fallbacks.

pub mod bounds;
pub mod calculus;
pub mod certificate;
pub mod error;
pub mod model;
pub mod shift;
pub mod supnorm;

pub use bounds::{
    badea_lower, bbc_gamma_lower, bbc_upper, bound_table, cg_upper, shields_upper,
    tsikalas_lower, BoundFlag, BoundKind, BoundName, BoundValue, DEFAULT_GAMMA_RTOL,
};
pub use calculus::{
    apply_laurent, apply_laurent_adjoint, operator_norm, NormEstimate, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
pub use certificate::{
    canonical_window, canonical_window_with_cap, evaluate_certificate, make_witness, sweep,
    sweep_seq, CertificateParams, CertificateResult, SweepCell, DEFAULT_SWEEP_ORDERS,
    DEFAULT_SWEEP_RADII, DEFAULT_SWEEP_WITNESS_PARAMS, DEFAULT_WINDOW_CAP,
};
pub use error::{Error, Result};
pub use model::{
    make_gn, AnnulusParams, CoeffVector, LaurentPolynomial, TruncationWindow, WeightSequence,
};
pub use shift::ShiftOperator;
pub use supnorm::{
    gn_sup_norm_closed, max_modulus_on_circle, sup_norm_sampled, sup_norm_sampled_seq,
    SupNormResult,
};
