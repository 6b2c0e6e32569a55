//! Mesh generators: round icospheres and a deliberately self-intersecting
//! control surface.

use super::SphereMesh;
use crate::group::GroupPoint;
use crate::vec3::{norm, scale, Vec3};
use std::collections::HashMap;

const PHI: f64 = 1.618033988749895; // (1 + sqrt 5) / 2

#[rustfmt::skip]
const ICO_VERTS: [[f64; 3]; 12] = [
    [-1.0,  PHI,  0.0], [ 1.0,  PHI,  0.0], [-1.0, -PHI,  0.0], [ 1.0, -PHI,  0.0],
    [ 0.0, -1.0,  PHI], [ 0.0,  1.0,  PHI], [ 0.0, -1.0, -PHI], [ 0.0,  1.0, -PHI],
    [ PHI,  0.0, -1.0], [ PHI,  0.0,  1.0], [-PHI,  0.0, -1.0], [-PHI,  0.0,  1.0],
];

#[rustfmt::skip]
const ICO_FACES: [[usize; 3]; 20] = [
    [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
    [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
    [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
    [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
];

/// Unit icosphere: `level` rounds of 1-to-4 subdivision with reprojection.
fn unit_icosphere(level: u32) -> (Vec<Vec3>, Vec<[usize; 3]>) {
    assert!(level <= 7, "subdivision level {level} would be enormous");
    let mut verts: Vec<Vec3> = ICO_VERTS
        .iter()
        .map(|&v| scale(v, 1.0 / norm(v)))
        .collect();
    let mut faces: Vec<[usize; 3]> = ICO_FACES.to_vec();
    for _ in 0..level {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, verts: &mut Vec<Vec3>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoint.entry(key).or_insert_with(|| {
                let m = scale(crate::vec3::add(verts[a], verts[b]), 0.5);
                verts.push(scale(m, 1.0 / norm(m)));
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut verts);
            let bc = mid(b, c, &mut verts);
            let ca = mid(c, a, &mut verts);
            next.push([a, ab, ca]);
            next.push([b, bc, ab]);
            next.push([c, ca, bc]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }
    (verts, faces)
}

/// Icosphere of coordinate radius `r` about `center`, outward oriented,
/// with `20 * 4^level` faces.
pub fn make_round_sphere(center: GroupPoint, r: f64, level: u32) -> SphereMesh {
    assert!(r.is_finite() && r > 0.0, "radius must be positive");
    let (verts, faces) = unit_icosphere(level);
    let vertices = verts
        .into_iter()
        .map(|v| GroupPoint::new(center.x + r * v[0], center.y + r * v[1], center.z + r * v[2]))
        .collect();
    SphereMesh::new(vertices, faces).expect("icosphere construction is valid")
}

fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

/// Topological sphere whose image self-intersects: the upper cap of an
/// elongated sphere is pushed straight down, through and past the lower cap.
/// The displaced cap stays a graph over the plane, so the triangulation
/// remains valid (chi = 2) while the image gains a transversal crossing ring.
pub fn make_self_intersecting_sphere(level: u32) -> SphereMesh {
    assert!((2..=7).contains(&level), "control surface wants level in 2..=7");
    let (verts, faces) = unit_icosphere(level);
    let vertices = verts
        .into_iter()
        .map(|v| {
            let dip = 3.9 * smoothstep((v[2] - 0.5) / 0.5);
            GroupPoint::new(v[0], v[1], 1.5 * v[2] - dip)
        })
        .collect();
    SphereMesh::new(vertices, faces).expect("control surface construction is valid")
}
