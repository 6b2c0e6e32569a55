//! Pinned numerical tolerances.
//!
//! Every tolerance the crate relies on lives here with a short justification,
//! so the verification suite and the library agree on one set of numbers.

/// `|delta| <= EPS_BRANCH` selects the repeated-eigenvalue branch of `exp2`.
/// Well inside f64 precision but wide enough that the series form is accurate
/// where the hyperbolic/trigonometric forms start to cancel.
pub const EPS_BRANCH: f64 = 1e-9;

/// Tolerance for matching a matrix against a canonical form (zero matrix,
/// identity, nilpotent).
pub const EPS_MATCH: f64 = 1e-9;

/// A trace at or below this magnitude counts as zero (unimodular group).
pub const UNIMODULAR_TRACE_TOL: f64 = 1e-12;

/// Max-norm agreement between the closed-form exponential and the
/// scaling-and-squaring oracle on moderate inputs (|z| <= 2, entries in [-3, 3]).
pub const ORACLE_AGREEMENT: f64 = 1e-10;

/// Componentwise tolerance for group axioms (associativity, inverses, identity).
pub const GROUP_AXIOM_TOL: f64 = 1e-10;

/// Frame-vs-metric consistency: `g(E_i, E_j) = delta_ij` residual bound.
pub const FRAME_ORTHO_TOL: f64 = 1e-10;

/// Residual bound for left translations acting as isometries of the canonical
/// metric (Jacobian-conjugated metric vs metric at the translated point).
pub const ISOMETRY_TOL: f64 = 1e-9;

/// Central-difference step for the numerical Lie bracket.
pub const BRACKET_FD_STEP: f64 = 1e-4;

/// Agreement between the numerical bracket and the structure constants.
/// Second-order differencing at step 1e-4 leaves O(1e-8) truncation; 1e-5
/// gives headroom for frame growth away from the identity.
pub const BRACKET_FD_TOL: f64 = 1e-5;

/// Round-trip consistency of the (D, b) moduli parametrization.
pub const DB_CONSISTENCY_TOL: f64 = 1e-12;

/// Invariance of the open-book quotient along binding cosets (after the
/// model has been rotated so that a21 = 0, the invariance is exact up to
/// floating-point rounding).
pub const COSET_INVARIANCE_TOL: f64 = 1e-12;

/// Unit-length residual for Gauss map values.
pub const GAUSS_UNIT_TOL: f64 = 1e-10;

/// Equivariance of the Gauss pipeline under left translation of the mesh.
pub const LEFT_INVARIANCE_TOL: f64 = 1e-10;

/// Minimum |spherical area| / |coordinate area| per face for the Gauss map
/// to count as a local diffeomorphism.
pub const DIFFEO_JACOBIAN_TOL: f64 = 1e-8;

/// A fiber hit is transversal when the angle between the fiber direction and
/// the face plane exceeds this (radians).
pub const TRANSVERSALITY_ANGLE: f64 = 1e-6;

/// Deterministic perturbation magnitude used to break ties / degenerate hits.
pub const JITTER_MAX: f64 = 1e-6;

/// How many deterministic resampling attempts before giving up.
pub const RESAMPLE_BUDGET: u32 = 8;

/// Faces with coordinate area at or below this are rejected as degenerate.
pub const FACE_AREA_EPS: f64 = 1e-12;
