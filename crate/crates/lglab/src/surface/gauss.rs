//! Discrete left and right invariant Gauss maps.
//!
//! The unit normal of the immersed mesh is translated to the identity: its
//! components in the left (resp. right) invariant frame are constant along
//! translations of the mesh by construction, so the map lands in the unit
//! sphere of the Lie algebra. Per-face signed spherical areas give the degree
//! and a discrete Jacobian.

use super::SphereMesh;
use crate::algebra::{exp2_raw, Mat2};
use crate::error::{Error, Result};
use crate::group::{GroupPoint, LieGroupModel};
use crate::vec3::{add, cross, dot, norm, sub, triple, unit, Vec3};

#[derive(Clone, Debug)]
pub struct GaussData {
    /// Metric-unit outward normal per vertex, left-frame components.
    pub per_vertex_normal: Vec<Vec3>,
    /// Gauss map values (normal translated to the identity). Coincides with
    /// `per_vertex_normal` for the unscaled left map.
    pub per_vertex_gauss: Vec<Vec3>,
    /// Sign of the spherical area swept by each face's Gauss image.
    pub per_face_sign: Vec<i8>,
    /// Signed spherical area per face.
    pub per_face_spherical_area: Vec<f64>,
    /// Degree of the Gauss map (signed spherical areas sum to 4 pi * degree).
    pub degree: i64,
    /// min over faces of |spherical area| / coordinate area.
    pub min_abs_jacobian: f64,
}

/// Area-weighted coordinate normals per vertex (unnormalized).
pub(crate) fn vertex_coord_normals(mesh: &SphereMesh) -> Result<Vec<Vec3>> {
    let mut sums = vec![[0.0; 3]; mesh.vertex_count()];
    let mut weights = vec![0.0; mesh.vertex_count()];
    for f in 0..mesh.face_count() {
        let n = mesh.face_normal_vector(f);
        let w = norm(n);
        for &v in &mesh.faces()[f] {
            sums[v] = add(sums[v], n);
            weights[v] += w;
        }
    }
    for (v, s) in sums.iter().enumerate() {
        if !(norm(*s) > 1e-9 * weights[v]) {
            return Err(Error::DegenerateGeometry {
                reason: format!("vertex {v} star normals cancel out"),
            });
        }
    }
    Ok(sums)
}

/// Two coordinate tangent vectors spanning the plane orthogonal to `n_unit`,
/// ordered so that `t1 x t2` points along `+n_unit`. Which basis is chosen is
/// irrelevant downstream: only the oriented plane enters the Gauss value.
fn tangent_pair(n_unit: Vec3) -> (Vec3, Vec3) {
    let axis = {
        let a = [n_unit[0].abs(), n_unit[1].abs(), n_unit[2].abs()];
        if a[0] <= a[1] && a[0] <= a[2] {
            [1.0, 0.0, 0.0]
        } else if a[1] <= a[2] {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        }
    };
    let t1 = unit(cross(n_unit, axis)).expect("axis was chosen non-parallel");
    let t2 = cross(n_unit, t1);
    (t1, t2)
}

/// Components of the coordinate vector `t` at height `z` in the left
/// invariant frame: the plane part is multiplied by `e^{-zA}`.
fn left_frame_components(a: Mat2, z: f64, t: Vec3) -> Vec3 {
    let f = exp2_raw(a, -z);
    let xy = f.mul_vec([t[0], t[1]]);
    [xy[0], xy[1], t[2]]
}

fn left_value(a: Mat2, p: GroupPoint, n_coord: Vec3, lambda: [f64; 3]) -> Result<Vec3> {
    let n_unit = unit(n_coord).ok_or_else(|| Error::DegenerateGeometry {
        reason: "zero vertex normal".to_string(),
    })?;
    let (t1, t2) = tangent_pair(n_unit);
    let mut u1 = left_frame_components(a, p.z, t1);
    let mut u2 = left_frame_components(a, p.z, t2);
    for k in 0..3 {
        u1[k] /= lambda[k];
        u2[k] /= lambda[k];
    }
    unit(cross(u1, u2)).ok_or_else(|| Error::DegenerateGeometry {
        reason: "tangent frame components are dependent".to_string(),
    })
}

fn right_value(a: Mat2, p: GroupPoint, n_coord: Vec3) -> Result<Vec3> {
    let n_unit = unit(n_coord).ok_or_else(|| Error::DegenerateGeometry {
        reason: "zero vertex normal".to_string(),
    })?;
    let (t1, t2) = tangent_pair(n_unit);
    // Inverse of the right frame matrix [[1,0,q1],[0,1,q2],[0,0,1]].
    let q1 = a.a * p.x + a.b * p.y;
    let q2 = a.c * p.x + a.d * p.y;
    let u1 = [t1[0] - q1 * t1[2], t1[1] - q2 * t1[2], t1[2]];
    let u2 = [t2[0] - q1 * t2[2], t2[1] - q2 * t2[2], t2[2]];
    unit(cross(u1, u2)).ok_or_else(|| Error::DegenerateGeometry {
        reason: "tangent frame components are dependent".to_string(),
    })
}

/// Signed area of the spherical triangle with unit vertices `g0, g1, g2`.
fn spherical_area(g0: Vec3, g1: Vec3, g2: Vec3) -> f64 {
    let num = triple(g0, g1, g2);
    let den = 1.0 + dot(g0, g1) + dot(g1, g2) + dot(g2, g0);
    2.0 * num.atan2(den)
}

fn assemble(
    mesh: &SphereMesh,
    per_vertex_normal: Vec<Vec3>,
    per_vertex_gauss: Vec<Vec3>,
) -> GaussData {
    let nf = mesh.face_count();
    let mut per_face_sign = Vec::with_capacity(nf);
    let mut per_face_spherical_area = Vec::with_capacity(nf);
    let mut total = 0.0;
    let mut min_ratio = f64::INFINITY;
    for f in 0..nf {
        let [i, j, k] = mesh.faces()[f];
        let area = spherical_area(
            per_vertex_gauss[i],
            per_vertex_gauss[j],
            per_vertex_gauss[k],
        );
        total += area;
        per_face_sign.push(if area > 0.0 {
            1
        } else if area < 0.0 {
            -1
        } else {
            0
        });
        per_face_spherical_area.push(area);
        let ratio = area.abs() / mesh.face_coordinate_area(f);
        min_ratio = min_ratio.min(ratio);
    }
    let degree = (total / (4.0 * std::f64::consts::PI)).round() as i64;
    GaussData {
        per_vertex_normal,
        per_vertex_gauss,
        per_face_sign,
        per_face_spherical_area,
        degree,
        min_abs_jacobian: min_ratio,
    }
}

/// Metric-unit outward normal at one vertex, in left-frame components.
pub fn vertex_normal(model: &LieGroupModel, mesh: &SphereMesh, v: usize) -> Result<Vec3> {
    let normals = vertex_coord_normals(mesh)?;
    left_value(model.matrix, mesh.vertices()[v], normals[v], [1.0; 3])
}

/// Left invariant Gauss map of the whole mesh.
pub fn left_gauss_map(model: &LieGroupModel, mesh: &SphereMesh) -> Result<GaussData> {
    left_gauss_map_scaled(model, mesh, [1.0; 3])
}

/// Left Gauss map for the metric rescaled by `lambda` on the frame
/// directions. Whether the map is a diffeomorphism does not depend on
/// `lambda`; the values do.
pub fn left_gauss_map_scaled(
    model: &LieGroupModel,
    mesh: &SphereMesh,
    lambda: [f64; 3],
) -> Result<GaussData> {
    assert!(
        lambda.iter().all(|&l| l.is_finite() && l > 0.0),
        "metric scalings must be positive"
    );
    let a = model.matrix;
    let coord_normals = vertex_coord_normals(mesh)?;
    let mut values = Vec::with_capacity(mesh.vertex_count());
    for (v, p) in mesh.vertices().iter().enumerate() {
        values.push(left_value(a, *p, coord_normals[v], lambda)?);
    }
    Ok(assemble(mesh, values.clone(), values))
}

/// Right invariant Gauss map (normals translated with right translations;
/// components in the frame that is orthonormal at the identity).
pub fn right_gauss_map(model: &LieGroupModel, mesh: &SphereMesh) -> Result<GaussData> {
    let a = model.matrix;
    let coord_normals = vertex_coord_normals(mesh)?;
    let mut normals = Vec::with_capacity(mesh.vertex_count());
    let mut values = Vec::with_capacity(mesh.vertex_count());
    for (v, p) in mesh.vertices().iter().enumerate() {
        normals.push(left_value(a, *p, coord_normals[v], [1.0; 3])?);
        values.push(right_value(a, *p, coord_normals[v])?);
    }
    Ok(assemble(mesh, normals, values))
}

/// Gauss values on a raw patch (no closed-surface validation); boundary
/// vertices use their one-sided stars.
pub fn left_gauss_patch(
    model: &LieGroupModel,
    vertices: &[GroupPoint],
    faces: &[[usize; 3]],
) -> Result<Vec<Vec3>> {
    let mut sums = vec![[0.0; 3]; vertices.len()];
    for f in faces {
        let [i, j, k] = *f;
        let n = cross(
            sub(vertices[j].to_array(), vertices[i].to_array()),
            sub(vertices[k].to_array(), vertices[i].to_array()),
        );
        for &v in f {
            sums[v] = add(sums[v], n);
        }
    }
    vertices
        .iter()
        .zip(&sums)
        .map(|(p, n)| left_value(model.matrix, *p, *n, [1.0; 3]))
        .collect()
}

/// Largest deviation of the values from their normalized mean; a spread
/// below 1e-12 means the Gauss map is constant on the sample.
pub fn gauss_spread(values: &[Vec3]) -> f64 {
    let mean = values.iter().fold([0.0; 3], |acc, &v| add(acc, v));
    match unit(mean) {
        Some(m) => values
            .iter()
            .map(|&v| norm(sub(v, m)))
            .fold(0.0_f64, f64::max),
        None => 2.0,
    }
}

#[derive(Clone, Debug)]
pub struct DiffeoCheck {
    pub ok: bool,
    pub degree: i64,
    pub min_abs_jacobian: f64,
    /// Faces whose Jacobian sign disagrees with the majority (or vanishes).
    pub sign_flip_faces: Vec<usize>,
}

/// Local-diffeomorphism test: uniform Jacobian sign, Jacobian bounded away
/// from zero, and global degree +-1.
pub fn is_gauss_diffeo(gd: &GaussData, tol: f64) -> DiffeoCheck {
    let pos = gd.per_face_sign.iter().filter(|&&s| s > 0).count();
    let neg = gd.per_face_sign.iter().filter(|&&s| s < 0).count();
    let majority: i8 = if pos >= neg { 1 } else { -1 };
    let sign_flip_faces: Vec<usize> = gd
        .per_face_sign
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != majority)
        .map(|(f, _)| f)
        .collect();
    let ok = sign_flip_faces.is_empty()
        && gd.min_abs_jacobian > tol
        && gd.degree.abs() == 1;
    DiffeoCheck {
        ok,
        degree: gd.degree,
        min_abs_jacobian: gd.min_abs_jacobian,
        sign_flip_faces,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{make_round_sphere, make_self_intersecting_sphere};
    use crate::tol::{DIFFEO_JACOBIAN_TOL, GAUSS_UNIT_TOL, LEFT_INVARIANCE_TOL};

    #[test]
    fn euclidean_gauss_of_unit_sphere_is_radial() {
        let model = LieGroupModel::r3();
        let mesh = make_round_sphere(GroupPoint::IDENTITY, 1.0, 2);
        let gd = left_gauss_map(&model, &mesh).unwrap();
        for (v, g) in gd.per_vertex_gauss.iter().enumerate() {
            assert!((norm(*g) - 1.0).abs() <= GAUSS_UNIT_TOL);
            let radial = unit(mesh.position(v)).unwrap();
            // Area-weighted normals deviate from radial by O(h^2).
            assert!(dot(*g, radial) > 0.999, "vertex {v}: {g:?} vs {radial:?}");
        }
        assert_eq!(gd.degree, 1);
        assert!(gd.per_face_sign.iter().all(|&s| s == 1));
        // Unit sphere: the continuum Jacobian is 1. The discrete per-face
        // estimate is mesh-quality limited near the twelve valence-5
        // vertices and bottoms out around 0.8 rather than converging.
        assert!(gd.min_abs_jacobian > 0.5 && gd.min_abs_jacobian < 1.5);
        assert!(is_gauss_diffeo(&gd, DIFFEO_JACOBIAN_TOL).ok);
    }

    #[test]
    fn small_spheres_are_diffeomorphic_in_curved_models() {
        let models = [
            LieGroupModel::nil3(),
            LieGroupModel::sol3(1.0).unwrap(),
            LieGroupModel::h3(),
            LieGroupModel::nonunimodular(0.5, 1.0).unwrap(),
        ];
        let mesh = make_round_sphere(GroupPoint::IDENTITY, 0.2, 3);
        for model in models {
            let gd = left_gauss_map(&model, &mesh).unwrap();
            let check = is_gauss_diffeo(&gd, DIFFEO_JACOBIAN_TOL);
            assert!(
                check.ok,
                "{}: degree {} min jac {} flips {}",
                model.label,
                check.degree,
                check.min_abs_jacobian,
                check.sign_flip_faces.len()
            );
            assert_eq!(check.degree.abs(), 1);
        }
    }

    #[test]
    fn control_surface_fails_in_every_model() {
        let models = [
            LieGroupModel::r3(),
            LieGroupModel::nil3(),
            LieGroupModel::h3(),
        ];
        let mesh = make_self_intersecting_sphere(3);
        for model in models {
            let gd = left_gauss_map(&model, &mesh).unwrap();
            let check = is_gauss_diffeo(&gd, DIFFEO_JACOBIAN_TOL);
            assert!(!check.ok, "{} unexpectedly passed", model.label);
            assert!(
                !check.sign_flip_faces.is_empty(),
                "{}: expected Jacobian sign flips",
                model.label
            );
        }
    }

    #[test]
    fn gauss_values_are_left_invariant() {
        let model = LieGroupModel::nil3();
        let mesh = make_round_sphere(GroupPoint::IDENTITY, 0.2, 2);
        let moved = mesh.left_translated(model.matrix, GroupPoint::new(0.4, -0.7, 0.9));
        let gd0 = left_gauss_map(&model, &mesh).unwrap();
        let gd1 = left_gauss_map(&model, &moved).unwrap();
        for v in 0..mesh.vertex_count() {
            let d = norm(sub(gd0.per_vertex_gauss[v], gd1.per_vertex_gauss[v]));
            assert!(d <= LEFT_INVARIANCE_TOL, "vertex {v}: deviation {d}");
        }
    }

    #[test]
    fn right_map_agrees_with_left_in_the_abelian_case() {
        let model = LieGroupModel::r3();
        let mesh = make_round_sphere(GroupPoint::new(0.3, 0.1, -0.2), 0.5, 2);
        let l = left_gauss_map(&model, &mesh).unwrap();
        let r = right_gauss_map(&model, &mesh).unwrap();
        for v in 0..mesh.vertex_count() {
            assert!(norm(sub(l.per_vertex_gauss[v], r.per_vertex_gauss[v])) < 1e-14);
        }
    }

    #[test]
    fn right_map_of_small_sphere_is_a_diffeo_too() {
        let model = LieGroupModel::nil3();
        let mesh = make_round_sphere(GroupPoint::IDENTITY, 0.2, 3);
        let gd = right_gauss_map(&model, &mesh).unwrap();
        assert!(is_gauss_diffeo(&gd, DIFFEO_JACOBIAN_TOL).ok);
    }

    #[test]
    fn metric_rescaling_preserves_the_verdict() {
        let model = LieGroupModel::sol3(1.0).unwrap();
        let mesh = make_round_sphere(GroupPoint::IDENTITY, 0.2, 3);
        for lambda in [[1.0, 1.0, 1.0], [0.5, 1.3, 2.0], [2.0, 0.6, 0.9]] {
            let gd = left_gauss_map_scaled(&model, &mesh, lambda).unwrap();
            assert!(
                is_gauss_diffeo(&gd, DIFFEO_JACOBIAN_TOL).ok,
                "lambda {lambda:?}"
            );
        }
    }

    fn planar_patch() -> (Vec<GroupPoint>, Vec<[usize; 3]>) {
        // Graph of an affine function over a 4x4 grid.
        let mut vertices = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                let x = i as f64 * 0.1;
                let y = j as f64 * 0.1;
                vertices.push(GroupPoint::new(x, y, 0.3 * x + 0.1 * y));
            }
        }
        let mut faces = Vec::new();
        for i in 0..3usize {
            for j in 0..3usize {
                let v = |i: usize, j: usize| i * 4 + j;
                faces.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
                faces.push([v(i, j), v(i + 1, j + 1), v(i, j + 1)]);
            }
        }
        (vertices, faces)
    }

    #[test]
    fn planar_patch_has_constant_gauss_map_only_in_the_flat_model() {
        let (vertices, faces) = planar_patch();
        let flat = left_gauss_patch(&LieGroupModel::r3(), &vertices, &faces).unwrap();
        assert!(gauss_spread(&flat) < 1e-12, "spread {}", gauss_spread(&flat));
        let curved = left_gauss_patch(&LieGroupModel::nil3(), &vertices, &faces).unwrap();
        assert!(gauss_spread(&curved) > 1e-3, "spread {}", gauss_spread(&curved));
    }

    #[test]
    fn degree_is_stable_under_subdivision() {
        let model = LieGroupModel::nil3();
        for level in [3u32, 4] {
            let mesh = make_round_sphere(GroupPoint::IDENTITY, 0.2, level);
            let gd = left_gauss_map(&model, &mesh).unwrap();
            assert_eq!(gd.degree, 1, "level {level}");
        }
    }
}
