//! Level curves of the height function by marching over faces.
//!
//! Requires the level to avoid vertex heights exactly; every crossed face
//! then has exactly two crossed edges, and the crossed faces chain into
//! disjoint closed loops.

use crate::error::{Error, Result};
use crate::surface::SphereMesh;
use crate::vec3::{add, scale, Vec3};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct LevelCurveSet {
    pub z: f64,
    /// Closed polylines on the mesh, one entry per connected component.
    pub loops: Vec<Vec<Vec3>>,
}

impl LevelCurveSet {
    pub fn components(&self) -> usize {
        self.loops.len()
    }
}

pub fn level_curves(mesh: &SphereMesh, z: f64) -> Result<LevelCurveSet> {
    if !z.is_finite() {
        return Err(Error::NonFinite { context: "level_curves" });
    }
    if mesh.vertices().iter().any(|v| v.z == z) {
        return Err(Error::VertexHeightCollision { z });
    }
    // Each crossed undirected edge gets an interpolated point and is shared
    // by exactly two crossed faces.
    let mut edge_point: HashMap<(usize, usize), Vec3> = HashMap::new();
    let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut face_edges: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (fi, f) in mesh.faces().iter().enumerate() {
        for k in 0..3 {
            let (i, j) = (f[k], f[(k + 1) % 3]);
            let (zi, zj) = (mesh.vertices()[i].z, mesh.vertices()[j].z);
            if (zi > z) == (zj > z) {
                continue;
            }
            let key = (i.min(j), i.max(j));
            edge_point.entry(key).or_insert_with(|| {
                let t = (z - zi) / (zj - zi);
                add(scale(mesh.position(i), 1.0 - t), scale(mesh.position(j), t))
            });
            edge_faces.entry(key).or_default().push(fi);
            face_edges.entry(fi).or_default().push(key);
        }
    }
    for edges in face_edges.values() {
        debug_assert_eq!(edges.len(), 2, "crossed face must have two crossed edges");
    }
    // Chain crossed faces into loops; the dual graph is a union of cycles.
    let mut visited: HashMap<(usize, usize), bool> = HashMap::new();
    let mut starts: Vec<(usize, usize)> = edge_point.keys().copied().collect();
    starts.sort_unstable();
    let mut loops = Vec::new();
    for start in starts {
        if visited.get(&start).copied().unwrap_or(false) {
            continue;
        }
        let mut polyline = Vec::new();
        let mut edge = start;
        let mut prev_face = usize::MAX;
        loop {
            visited.insert(edge, true);
            polyline.push(edge_point[&edge]);
            let faces = &edge_faces[&edge];
            debug_assert_eq!(faces.len(), 2, "level edge must touch two crossed faces");
            let face = if faces[0] == prev_face { faces[1] } else { faces[0] };
            let next = face_edges[&face]
                .iter()
                .copied()
                .find(|&e| e != edge)
                .expect("crossed face has a second crossed edge");
            prev_face = face;
            edge = next;
            if edge == start {
                break;
            }
        }
        loops.push(polyline);
    }
    Ok(LevelCurveSet { z, loops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupPoint;
    use crate::surface::{make_round_sphere, make_self_intersecting_sphere};

    #[test]
    fn sphere_levels_are_single_circles() {
        let mesh = make_round_sphere(GroupPoint::IDENTITY, 1.0, 3);
        for z in [-0.7, -0.123, 0.456, 0.9] {
            let set = level_curves(&mesh, z).unwrap();
            assert_eq!(set.components(), 1, "z = {z}");
            let r_expect = (1.0 - z * z).sqrt();
            for p in &set.loops[0] {
                let r = p[0].hypot(p[1]);
                assert!((p[2] - z).abs() < 1e-12);
                // Chord-vs-arc error shrinks with the mesh, 2% is enough here.
                assert!((r - r_expect).abs() < 0.02, "z={z} r={r} expect={r_expect}");
            }
        }
    }

    #[test]
    fn empty_above_and_below() {
        let mesh = make_round_sphere(GroupPoint::IDENTITY, 1.0, 2);
        assert_eq!(level_curves(&mesh, 1.5).unwrap().components(), 0);
        assert_eq!(level_curves(&mesh, -1.5).unwrap().components(), 0);
    }

    #[test]
    fn vertex_height_collision_is_reported() {
        let mesh = make_round_sphere(GroupPoint::IDENTITY, 1.0, 2);
        let z = mesh.vertices()[17].z;
        assert!(matches!(
            level_curves(&mesh, z),
            Err(Error::VertexHeightCollision { .. })
        ));
    }

    #[test]
    fn control_surface_has_multicomponent_levels() {
        // Below the sphere's south pole the funnel still has material, and in
        // the mid-band the level meets both the outer sphere and the funnel.
        let mesh = make_self_intersecting_sphere(3);
        let set = level_curves(&mesh, 0.1234).unwrap();
        assert!(set.components() >= 2, "components {}", set.components());
    }

    #[test]
    fn loops_are_closed_chains_of_distinct_points() {
        let mesh = make_round_sphere(GroupPoint::IDENTITY, 0.2, 2);
        let set = level_curves(&mesh, 0.0512).unwrap();
        for l in &set.loops {
            assert!(l.len() >= 3);
            for w in l.windows(2) {
                assert!(crate::vec3::dist(w[0], w[1]) > 0.0);
            }
        }
    }
}
