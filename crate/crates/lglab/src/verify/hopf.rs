//! Poincaré-Hopf index sum for the angular field around a fiber.
//!
//! The ambient field circles the fiber axis in the (y, z) plane with zero
//! x-component. Its tangential part along the surface is a genuine tangent
//! field whose continuum index sum is the Euler characteristic. The discrete
//! statistic samples the field at the three corners of each face, so it
//! captures a zero only when the zero lands inside a face; zeros hugging an
//! edge split their rotation between neighbors and can drop out. For a
//! sphere crossing the fiber transversally in two points the crossings are
//! interior to faces by construction, both carry index +1, nothing else
//! winds, and the sum is exactly 2. Any other winding pattern is evidence
//! of folds or extra crossings.

use crate::error::{Error, Result};
use crate::openbook::Fiber;
use crate::surface::{vertex_coord_normals, SphereMesh};
use crate::tol::{JITTER_MAX, RESAMPLE_BUDGET};
use crate::vec3::{cross, dot, norm, scale, sub, unit, Vec3};
use crate::verify::fibers::{fiber_hits, jitter_rng};
use rand::Rng;

#[derive(Clone, Debug)]
pub struct HopfReport {
    /// Sum of winding indices over all faces.
    pub index_sum: i64,
    /// Faces with nonzero winding, with their indices.
    pub winding_faces: Vec<(usize, i64)>,
    /// True when the fiber misses the mesh; the sum is 0 by convention.
    pub vacuous: bool,
    pub attempts: u32,
}

/// A winding computation hit a degenerate configuration and the fiber must
/// be nudged: field singular or zero at a vertex, or a zero crossing an edge
/// (consecutive projected vectors antiparallel).
struct Degenerate;

fn windings_once(
    mesh: &SphereMesh,
    normals: &[Vec3],
    y: f64,
    z: f64,
) -> std::result::Result<Vec<(usize, i64)>, Degenerate> {
    let mut tangential = Vec::with_capacity(mesh.vertex_count());
    for v in 0..mesh.vertex_count() {
        let p = mesh.position(v);
        let dy = p[1] - y;
        let dz = p[2] - z;
        let n = dy.hypot(dz);
        if n <= 1e-12 {
            return Err(Degenerate);
        }
        let field = [0.0, -dz / n, dy / n];
        let nv = normals[v];
        let t = sub(field, scale(nv, dot(field, nv)));
        if norm(t) < 1e-9 {
            return Err(Degenerate);
        }
        tangential.push(t);
    }
    let mut windings = Vec::new();
    for f in 0..mesh.face_count() {
        let m = unit(mesh.face_normal_vector(f)).expect("validated face area");
        let s: Vec<Vec3> = mesh.faces()[f]
            .iter()
            .map(|&v| {
                let t = tangential[v as usize];
                sub(t, scale(m, dot(t, m)))
            })
            .collect();
        let mut total = 0.0;
        for i in 0..3 {
            let a = s[i];
            let b = s[(i + 1) % 3];
            if norm(a) < 1e-12 || norm(b) < 1e-12 {
                return Err(Degenerate);
            }
            let delta = f64::atan2(dot(cross(a, b), m), dot(a, b));
            if delta.abs() > std::f64::consts::PI - 1e-6 {
                return Err(Degenerate);
            }
            total += delta;
        }
        let w = (total / std::f64::consts::TAU).round() as i64;
        if w != 0 {
            windings.push((f, w));
        }
    }
    Ok(windings)
}

/// Winding index sum of the tangential part of the angular field around
/// `fiber`. When the fiber misses the mesh entirely the check is vacuous and
/// the sum is reported as 0. Degenerate zero placements are resolved by
/// deterministically nudging the fiber center.
pub fn poincare_hopf_index_sum(mesh: &SphereMesh, fiber: Fiber, seed: u64) -> Result<HopfReport> {
    let probe = fiber_hits(mesh, fiber, seed)?;
    if probe.hits.is_empty() {
        return Ok(HopfReport {
            index_sum: 0,
            winding_faces: Vec::new(),
            vacuous: true,
            attempts: 0,
        });
    }
    let normals = vertex_coord_normals(mesh)?;
    for attempt in 0..=RESAMPLE_BUDGET {
        let (y, z) = if attempt == 0 {
            (fiber.y, fiber.z)
        } else {
            let mut rng = jitter_rng(seed.wrapping_add(0x5bd1e995), fiber, attempt);
            let s = attempt as f64;
            (
                fiber.y + s * rng.gen_range(-JITTER_MAX..=JITTER_MAX),
                fiber.z + s * rng.gen_range(-JITTER_MAX..=JITTER_MAX),
            )
        };
        if let Ok(winding_faces) = windings_once(mesh, &normals, y, z) {
            return Ok(HopfReport {
                index_sum: winding_faces.iter().map(|&(_, w)| w).sum(),
                winding_faces,
                vacuous: false,
                attempts: attempt,
            });
        }
    }
    Err(Error::ResampleBudget {
        context: "winding computation around the fiber".into(),
        attempts: RESAMPLE_BUDGET + 1,
    })
}
