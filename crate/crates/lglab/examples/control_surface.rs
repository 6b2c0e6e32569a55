//! The negative control: a topological sphere whose image self-intersects.
//! Every check that certifies embeddedness for round spheres flags it.

use lglab::group::LieGroupModel;
use lglab::surface::{is_gauss_diffeo, left_gauss_map, make_self_intersecting_sphere};
use lglab::tol::DIFFEO_JACOBIAN_TOL;
use lglab::verify::{bigraph_check, self_intersections};

fn main() {
    let mesh = make_self_intersecting_sphere(3);
    println!(
        "control surface: {} faces, chi = {} (still a sphere)",
        mesh.face_count(),
        mesh.euler_characteristic()
    );

    let pairs = self_intersections(&mesh);
    println!("{} intersecting face pairs, first few: {:?}", pairs.len(), &pairs[..pairs.len().min(4)]);

    let model = LieGroupModel::nil3();
    let gd = left_gauss_map(&model, &mesh).unwrap();
    let check = is_gauss_diffeo(&gd, DIFFEO_JACOBIAN_TOL);
    println!(
        "Gauss map in {}: degree {:+}, {} sign-flipped faces, diffeo: {}",
        model.label,
        check.degree,
        check.sign_flip_faces.len(),
        check.ok
    );

    let bigraph = bigraph_check(&mesh, 24, 7).unwrap();
    println!(
        "fiber hit histogram over {} interior samples: {:?} (two sheets would be all 2s)",
        bigraph.interior_samples, bigraph.histogram
    );
    println!("bigraph check ok: {}", bigraph.ok);
}
