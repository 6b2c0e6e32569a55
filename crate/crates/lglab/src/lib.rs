//! Metric Lie groups `R^2 x_A R` and embeddedness of immersed spheres.
//!
//! A 2x2 real matrix `A` defines a semidirect product group on coordinates
//! `(x, y, z)` whose left translations are isometries of the canonical
//! metric. This crate classifies those groups up to the rotation action,
//! builds their invariant frames and open-book decompositions, computes
//! left invariant Gauss maps of triangulated spheres, and checks the chain
//! of conclusions that turn "the Gauss map is a diffeomorphism" into "the
//! sphere is embedded": height Morse structure, level curve connectedness,
//! fiber hit counts, the two-sheet decomposition, the Poincaré-Hopf index
//! sum, and exact triangle self-intersection.
//!
//! Entry points:
//! - [`group::classify`] for matrices, [`group::LieGroupModel`] for the
//!   named models.
//! - [`surface::make_round_sphere`] and the OBJ round trip in [`surface`].
//! - [`surface::left_gauss_map`] and [`surface::is_gauss_diffeo`].
//! - [`verify::full_report`] for the whole battery, [`cli::run`] for the
//!   command line.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod group;
pub mod openbook;
pub mod surface;
pub mod tol;
pub mod vec3;
pub mod verify;

pub use error::{Error, Result};
pub use group::{classify, GroupLabel, GroupPoint, LieGroupModel};
pub use surface::SphereMesh;
pub use verify::{full_report, VerificationReport, Verdict, VerifyConfig};
