//! Open book decomposition with binding the x-axis subgroup.
//!
//! After rotating coordinates so the model matrix is upper triangular
//! (`a21 = 0`), the x-axis `Gamma = {(t, 0, 0)}` is a subgroup whose left
//! cosets fiber the complement; the quotient map is literally
//! `(x, y, z) -> (y, z)` and is exactly constant along cosets.

use crate::algebra::Mat2;
use crate::error::{Error, Result};
use crate::group::{normalize_upper_triangular, GroupPoint, LieGroupModel};
use crate::vec3::Vec3;

/// A fiber of the open book: the left coset of the binding through the points
/// with quotient coordinates `(y, z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fiber {
    pub y: f64,
    pub z: f64,
}

/// A classified model in rotated coordinates with `a21 = 0`.
#[derive(Clone, Copy, Debug)]
pub struct OpenBookModel {
    /// The model in the rotated coordinates (matrix upper triangular).
    pub model: LieGroupModel,
    /// Rotation `S` with `model.matrix = S^T original S`.
    pub basis_change: Mat2,
    /// The matrix the model was built from.
    pub original: Mat2,
}

/// Rotate an admissible model into open-book position.
///
/// Fails with `UnsupportedGroup` when the group admits no such decomposition
/// and with `NotRealTriangularizable` if the matrix unexpectedly resists the
/// rotation (admissible groups always have real eigenvalues).
pub fn make_open_book(model: &LieGroupModel) -> Result<OpenBookModel> {
    if !model.admits_open_book {
        return Err(Error::UnsupportedGroup {
            label: model.label.to_string(),
        });
    }
    let (upper, s) = normalize_upper_triangular(model.matrix)?;
    let rotated = crate::group::classify(upper)?;
    Ok(OpenBookModel {
        model: rotated,
        basis_change: s,
        original: model.matrix,
    })
}

impl OpenBookModel {
    pub fn matrix(&self) -> Mat2 {
        self.model.matrix
    }

    /// Carry a point of the original model into the rotated coordinates.
    /// `(p, z) -> (S^T p, z)` is a group isomorphism and an isometry.
    pub fn to_model_coords(&self, g: GroupPoint) -> GroupPoint {
        let st = self.basis_change.transpose();
        let p = st.mul_vec([g.x, g.y]);
        GroupPoint::new(p[0], p[1], g.z)
    }

    /// Quotient by the binding cosets: `(x, y, z) -> (y, z)`.
    pub fn quotient_pi(&self, g: GroupPoint) -> (f64, f64) {
        (g.y, g.z)
    }

    /// Height of the leaf of the horizontal subgroup through `g`.
    pub fn pi_sigma_left(&self, g: GroupPoint) -> f64 {
        g.z
    }

    /// The fiber (binding coset) through `g`.
    pub fn fiber_through(&self, g: GroupPoint) -> Fiber {
        Fiber { y: g.y, z: g.z }
    }

    /// Unit vector field rotating around the fiber with quotient point
    /// `center`: the lift of the angular field of the `(y, z)` plane.
    /// Singular exactly on the central fiber.
    pub fn angular_field_at(&self, g: GroupPoint, center: (f64, f64)) -> Result<Vec3> {
        let dy = g.y - center.0;
        let dz = g.z - center.1;
        let n = dy.hypot(dz);
        if !(n > 0.0) {
            return Err(Error::SingularPoint);
        }
        Ok([0.0, -dz / n, dy / n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::multiply;
    use crate::tol::COSET_INVARIANCE_TOL;

    fn nil3_book() -> OpenBookModel {
        make_open_book(&LieGroupModel::nil3()).unwrap()
    }

    #[test]
    fn quotient_drops_the_first_coordinate() {
        let ob = nil3_book();
        assert_eq!(ob.quotient_pi(GroupPoint::new(3.0, 4.0, 5.0)), (4.0, 5.0));
        assert_eq!(ob.quotient_pi(GroupPoint::IDENTITY), (0.0, 0.0));
        assert_eq!(ob.pi_sigma_left(GroupPoint::new(3.0, 4.0, 5.0)), 5.0);
    }

    #[test]
    fn quotient_is_constant_along_binding_cosets() {
        let books = [
            make_open_book(&LieGroupModel::r3()).unwrap(),
            nil3_book(),
            make_open_book(&LieGroupModel::sol3(2.0).unwrap()).unwrap(),
            make_open_book(&LieGroupModel::h3()).unwrap(),
            make_open_book(&LieGroupModel::nonunimodular(0.5, 1.0).unwrap()).unwrap(),
        ];
        for ob in books {
            let a = ob.matrix();
            for g in [
                GroupPoint::new(0.3, -1.2, 0.8),
                GroupPoint::new(-2.0, 0.4, -1.1),
            ] {
                for t in [-3.0, -0.5, 0.7, 2.0] {
                    let moved = multiply(a, g, GroupPoint::new(t, 0.0, 0.0));
                    let (y0, z0) = ob.quotient_pi(g);
                    let (y1, z1) = ob.quotient_pi(moved);
                    assert!(
                        (y0 - y1).abs() <= COSET_INVARIANCE_TOL
                            && (z0 - z1).abs() <= COSET_INVARIANCE_TOL,
                        "label {}",
                        ob.model.label
                    );
                }
            }
        }
    }

    #[test]
    fn raw_projection_fails_without_the_rotation() {
        // In the symmetric Sol3 coordinates the x-axis is not a subgroup
        // direction, so the coordinate projection moves along "cosets".
        let a = Mat2::new(0.0, 1.0, 1.0, 0.0);
        let g = GroupPoint::new(0.0, 0.0, 1.0);
        let moved = multiply(a, g, GroupPoint::new(1.0, 0.0, 0.0));
        assert!((moved.y - g.y).abs() > 0.1, "moved {moved:?}");
    }

    #[test]
    fn e2tilde_admits_no_open_book() {
        let err = make_open_book(&LieGroupModel::e2tilde(1.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::UnsupportedGroup { .. }));
    }

    #[test]
    fn fiber_through_reads_quotient_coordinates() {
        let ob = nil3_book();
        assert_eq!(
            ob.fiber_through(GroupPoint::new(7.0, 1.5, -2.0)),
            Fiber { y: 1.5, z: -2.0 }
        );
    }

    #[test]
    fn angular_field_is_unit_and_singular_at_center() {
        let ob = nil3_book();
        let v = ob
            .angular_field_at(GroupPoint::new(0.0, 1.0, 0.0), (0.0, 0.0))
            .unwrap();
        assert_eq!(v, [0.0, 0.0, 1.0]);
        let v = ob
            .angular_field_at(GroupPoint::new(5.0, 0.0, 2.0), (0.0, 0.0))
            .unwrap();
        assert_eq!(v, [0.0, -1.0, 0.0]);
        assert!(matches!(
            ob.angular_field_at(GroupPoint::new(5.0, 0.0, 0.0), (0.0, 0.0)),
            Err(Error::SingularPoint)
        ));
    }

    #[test]
    fn angular_field_winds_once_around_the_center() {
        let ob = nil3_book();
        let center = (0.25, -0.5);
        let n = 256;
        let mut total = 0.0;
        let mut prev: Option<f64> = None;
        for k in 0..=n {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let g = GroupPoint::new(1.0, center.0 + 0.7 * t.cos(), center.1 + 0.7 * t.sin());
            let v = ob.angular_field_at(g, center).unwrap();
            let ang = v[2].atan2(v[1]);
            if let Some(p) = prev {
                let mut d = ang - p;
                while d > std::f64::consts::PI {
                    d -= 2.0 * std::f64::consts::PI;
                }
                while d < -std::f64::consts::PI {
                    d += 2.0 * std::f64::consts::PI;
                }
                total += d;
            }
            prev = Some(ang);
        }
        assert!((total - 2.0 * std::f64::consts::PI).abs() < 1e-9, "total {total}");
    }

    #[test]
    fn model_coordinate_change_is_a_group_isomorphism() {
        let model = LieGroupModel::sol3(2.0).unwrap();
        let ob = make_open_book(&model).unwrap();
        let g1 = GroupPoint::new(0.4, -0.9, 1.3);
        let g2 = GroupPoint::new(-1.1, 0.6, -0.7);
        let lhs = ob.to_model_coords(multiply(model.matrix, g1, g2));
        let rhs = multiply(
            ob.matrix(),
            ob.to_model_coords(g1),
            ob.to_model_coords(g2),
        );
        assert!(
            crate::vec3::dist(lhs.to_array(), rhs.to_array()) < 1e-12,
            "{lhs:?} vs {rhs:?}"
        );
    }
}
