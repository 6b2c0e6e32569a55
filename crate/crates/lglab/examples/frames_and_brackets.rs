//! Evaluate the left invariant frame at a point, confirm it is orthonormal
//! for the canonical metric, and compare the frame brackets with a
//! finite-difference approximation.

use lglab::algebra::Mat3;
use lglab::group::{
    bracket_coefficients, left_frame_at, metric_at, numeric_bracket, GroupPoint, LieGroupModel,
};
use lglab::tol::BRACKET_FD_STEP;
use lglab::vec3::{add, dist, scale};

fn main() {
    let model = LieGroupModel::sol3(1.0).unwrap();
    let a = model.matrix;
    let g = GroupPoint::new(0.4, -0.7, 0.9);

    let frame = left_frame_at(a, g);
    println!("model {} at {g:?}", model.label);
    println!("  E1 = {:?}", frame.e1);
    println!("  E2 = {:?}", frame.e2);
    println!("  E3 = {:?}", frame.e3);

    let gram = frame.matrix().transpose().mul(&metric_at(a, g)).mul(&frame.matrix());
    println!(
        "  orthonormality defect |E^T G E - I| = {:.3e}",
        gram.sub(&Mat3::IDENTITY).max_norm()
    );

    let rel = bracket_coefficients(a);
    let f = left_frame_at(a, g);
    let expect = [
        ("[E1,E2]", [0.0; 3]),
        ("[E3,E1]", add(scale(f.e1, rel.e3_e1[0]), scale(f.e2, rel.e3_e1[1]))),
        ("[E3,E2]", add(scale(f.e1, rel.e3_e2[0]), scale(f.e2, rel.e3_e2[1]))),
    ];
    for ((name, want), (i, j)) in expect.into_iter().zip([(1, 2), (3, 1), (3, 2)]) {
        let got = numeric_bracket(a, i, j, g, BRACKET_FD_STEP);
        println!("  {name} = {got:?}  (finite differences, off by {:.3e})", dist(got, want));
    }
}
