//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input in {context}")]
    NonFinite { context: &'static str },

    #[error("negative canonical parameter {name} = {value}")]
    NegativeParameter { name: &'static str, value: f64 },

    #[error("no canonical model: b = {b} is below the admissible minimum m(D) = {min_b} for D = {d}")]
    BelowModuliBoundary { d: f64, b: f64, min_b: f64 },

    #[error("matrix has a complex eigenvalue pair (discriminant {delta:.3e}); no real triangularization")]
    NotRealTriangularizable { delta: f64 },

    #[error(
        "unimodular matrix could not be classified (det = {det:.3e}, omega = {omega:.3e}, sigma = {sigma:.3e})"
    )]
    UnclassifiedUnimodular { det: f64, omega: f64, sigma: f64 },

    #[error("group `{label}` admits no open book decomposition of this kind")]
    UnsupportedGroup { label: String },

    #[error("point lies on the central fiber; angular field is singular there")]
    SingularPoint,

    #[error("malformed OBJ at line {line}: {reason}")]
    MalformedObj { line: usize, reason: String },

    #[error("mesh is not an oriented closed manifold: {reason}")]
    NonManifold { reason: String },

    #[error("mesh is a closed surface but not a sphere (V - E + F = {chi}, expected 2)")]
    WrongTopology { chi: i64 },

    #[error("face {face} is degenerate (coordinate area {area:.3e})")]
    DegenerateFace { face: usize, area: f64 },

    #[error("degenerate geometry: {reason}")]
    DegenerateGeometry { reason: String },

    #[error("level value {z} collides with a vertex height")]
    VertexHeightCollision { z: f64 },

    #[error("resample budget exhausted after {attempts} attempts in {context}")]
    ResampleBudget { context: String, attempts: u32 },

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
