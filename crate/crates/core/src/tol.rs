//! Central tolerances. Every numeric contract in the crate refers to one of
//! these constants; CLI reports echo them in their metadata block.

/// Target accuracy of all contour quadrature (the monotonicity constant τ
/// and every line integral derived from it). Adaptive Gauss–Legendre
/// refinement stops once the local error estimate drops below this budget.
pub const TOL_TAU: f64 = 1e-6;

/// Minimum admissible distance between a curve and a critical value of the
/// fibration. The σ form has an integrable 1/|z - ζ| singularity at each
/// critical value ζ; keeping curves this far away bounds the integrand and
/// its derivatives along the curve.
pub const EPS_CRIT: f64 = 1e-3;

/// Bound on the special-Lagrangian defect |Im Ω(ξ, X_H)| at points of a
/// round matching torus. The defect vanishes identically; double-precision
/// evaluation through a 4×4 linear solve stays far below this.
pub const TOL_SLAG: f64 = 1e-8;

/// Acceptable fractional part when rounding a winding number to an integer.
/// Larger residues indicate a near-tangency and are reported as errors.
pub const WINDING_SLACK: f64 = 0.1;
