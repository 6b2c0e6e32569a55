//! Left invariant Gauss map of a small coordinate sphere in a few models:
//! degree, worst-face Jacobian, and the local-diffeomorphism verdict.

use lglab::group::{GroupPoint, LieGroupModel};
use lglab::surface::{is_gauss_diffeo, left_gauss_map, left_gauss_map_scaled, make_round_sphere};
use lglab::tol::DIFFEO_JACOBIAN_TOL;

fn main() {
    let mesh = make_round_sphere(GroupPoint::new(0.1, 0.0, -0.2), 0.2, 3);
    println!(
        "sphere: {} vertices, {} faces, chi = {}",
        mesh.vertex_count(),
        mesh.face_count(),
        mesh.euler_characteristic()
    );
    let models = [
        LieGroupModel::r3(),
        LieGroupModel::nil3(),
        LieGroupModel::sol3(1.0).unwrap(),
        LieGroupModel::h3(),
        LieGroupModel::nonunimodular(0.5, 1.0).unwrap(),
    ];
    for model in models {
        let gd = left_gauss_map(&model, &mesh).unwrap();
        let check = is_gauss_diffeo(&gd, DIFFEO_JACOBIAN_TOL);
        println!(
            "{:<28} degree {:+}  min |Jacobian| {:.4}  diffeo: {}",
            model.label.to_string(),
            check.degree,
            check.min_abs_jacobian,
            check.ok,
        );
    }

    // The verdict is a property of the group, not of the chosen left
    // invariant metric: rescaling the frame moves the values only.
    let model = LieGroupModel::nil3();
    let scaled = left_gauss_map_scaled(&model, &mesh, [2.0, 0.5, 1.5]).unwrap();
    let check = is_gauss_diffeo(&scaled, DIFFEO_JACOBIAN_TOL);
    println!(
        "{} with frame scaled by (2, 0.5, 1.5): degree {:+}, diffeo: {}",
        model.label, check.degree, check.ok
    );
}
