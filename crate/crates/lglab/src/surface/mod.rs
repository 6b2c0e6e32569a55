//! Triangulated spheres immersed in a model group.
//!
//! `SphereMesh` validates on construction: oriented closed 2-manifold,
//! Euler characteristic 2, disk vertex stars, no degenerate faces. Everything
//! downstream (Gauss maps, height functions, fiber probes) can then assume a
//! combinatorial sphere.

mod gauss;
mod generators;
mod obj;

pub use gauss::{
    gauss_spread, is_gauss_diffeo, left_gauss_map, left_gauss_map_scaled, left_gauss_patch,
    right_gauss_map, vertex_normal, DiffeoCheck, GaussData,
};
pub(crate) use gauss::vertex_coord_normals;
pub use generators::{make_round_sphere, make_self_intersecting_sphere};
pub use obj::{load_mesh, parse_obj, save_mesh, write_obj};

use crate::algebra::Mat2;
use crate::error::{Error, Result};
use crate::group::{multiply, GroupPoint};
use crate::tol::FACE_AREA_EPS;
use crate::vec3::{cross, norm, sub, Vec3};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct SphereMesh {
    vertices: Vec<GroupPoint>,
    faces: Vec<[usize; 3]>,
    /// Neighbor vertices of each vertex, in cyclic order around the star.
    links: Vec<Vec<usize>>,
    edge_count: usize,
}

impl SphereMesh {
    pub fn new(vertices: Vec<GroupPoint>, faces: Vec<[usize; 3]>) -> Result<Self> {
        let nv = vertices.len();
        for (i, v) in vertices.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::DegenerateGeometry {
                    reason: format!("vertex {i} has non-finite coordinates"),
                });
            }
        }
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            if f[0] == f[1] || f[1] == f[2] || f[2] == f[0] {
                return Err(Error::NonManifold {
                    reason: format!("face {fi} repeats a vertex"),
                });
            }
            for k in 0..3 {
                let (i, j) = (f[k], f[(k + 1) % 3]);
                if i >= nv || j >= nv {
                    return Err(Error::NonManifold {
                        reason: format!("face {fi} references vertex {} of {nv}", i.max(j)),
                    });
                }
                if directed.insert((i, j), fi).is_some() {
                    return Err(Error::NonManifold {
                        reason: format!(
                            "directed edge ({i}, {j}) appears twice; inconsistent orientation"
                        ),
                    });
                }
            }
        }
        for &(i, j) in directed.keys() {
            if !directed.contains_key(&(j, i)) {
                return Err(Error::NonManifold {
                    reason: format!("edge ({i}, {j}) has no partner; surface has boundary"),
                });
            }
        }
        let edge_count = directed.len() / 2;
        let chi = nv as i64 - edge_count as i64 + faces.len() as i64;
        if chi != 2 {
            return Err(Error::WrongTopology { chi });
        }
        // Cyclic links: each face (v, u, w) contributes u -> w around v.
        let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); nv];
        for f in &faces {
            for k in 0..3 {
                let (v, u, w) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
                succ[v].insert(u, w);
            }
        }
        let mut links = Vec::with_capacity(nv);
        for (v, next) in succ.iter().enumerate() {
            if next.is_empty() {
                return Err(Error::NonManifold {
                    reason: format!("vertex {v} is isolated"),
                });
            }
            let start = *next.keys().min().expect("nonempty");
            let mut cycle = vec![start];
            let mut cur = next[&start];
            while cur != start {
                if cycle.len() > next.len() {
                    return Err(Error::NonManifold {
                        reason: format!("vertex {v} star does not close into one cycle"),
                    });
                }
                cycle.push(cur);
                cur = match next.get(&cur) {
                    Some(&n) => n,
                    None => {
                        return Err(Error::NonManifold {
                            reason: format!("vertex {v} star does not close into one cycle"),
                        })
                    }
                };
            }
            if cycle.len() != next.len() {
                return Err(Error::NonManifold {
                    reason: format!("vertex {v} star splits into several cycles"),
                });
            }
            links.push(cycle);
        }
        let mesh = SphereMesh {
            vertices,
            faces,
            links,
            edge_count,
        };
        for fi in 0..mesh.faces.len() {
            let area = mesh.face_coordinate_area(fi);
            if !(area > FACE_AREA_EPS) {
                return Err(Error::DegenerateFace { face: fi, area });
            }
        }
        Ok(mesh)
    }

    pub fn vertices(&self) -> &[GroupPoint] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count as i64 + self.face_count() as i64
    }

    /// Neighbors of `v` in cyclic order.
    pub fn vertex_link(&self, v: usize) -> &[usize] {
        &self.links[v]
    }

    pub fn position(&self, v: usize) -> Vec3 {
        self.vertices[v].to_array()
    }

    pub fn face_points(&self, f: usize) -> [Vec3; 3] {
        let [i, j, k] = self.faces[f];
        [self.position(i), self.position(j), self.position(k)]
    }

    /// Unnormalized coordinate normal of a face (twice its area vector).
    pub fn face_normal_vector(&self, f: usize) -> Vec3 {
        let [p0, p1, p2] = self.face_points(f);
        cross(sub(p1, p0), sub(p2, p0))
    }

    pub fn face_coordinate_area(&self, f: usize) -> f64 {
        0.5 * norm(self.face_normal_vector(f))
    }

    pub fn median_edge_length(&self) -> f64 {
        let mut lengths = Vec::with_capacity(self.edge_count);
        for (v, link) in self.links.iter().enumerate() {
            for &u in link {
                if v < u {
                    lengths.push(norm(sub(self.position(v), self.position(u))));
                }
            }
        }
        lengths.sort_unstable_by(|a, b| a.total_cmp(b));
        lengths[lengths.len() / 2]
    }

    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &self.vertices {
            let p = v.to_array();
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }

    /// Image of the mesh under left translation by `by` in the group with
    /// matrix `a`. Combinatorics are unchanged.
    pub fn left_translated(&self, a: Mat2, by: GroupPoint) -> SphereMesh {
        SphereMesh {
            vertices: self.vertices.iter().map(|&v| multiply(a, by, v)).collect(),
            faces: self.faces.clone(),
            links: self.links.clone(),
            edge_count: self.edge_count,
        }
    }

    /// Apply the plane rotation `p -> S^T p` to every vertex (z untouched);
    /// the coordinate change that carries a mesh into open-book position.
    pub fn plane_rotated(&self, s: Mat2) -> SphereMesh {
        let st = s.transpose();
        SphereMesh {
            vertices: self
                .vertices
                .iter()
                .map(|&v| {
                    let p = st.mul_vec([v.x, v.y]);
                    GroupPoint::new(p[0], p[1], v.z)
                })
                .collect(),
            faces: self.faces.clone(),
            links: self.links.clone(),
            edge_count: self.edge_count,
        }
    }
}
