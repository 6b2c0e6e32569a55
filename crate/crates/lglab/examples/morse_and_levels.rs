//! Height function diagnostics on a sphere: critical points by link sign
//! changes, and level-curve component counts through the height range.

use lglab::group::GroupPoint;
use lglab::surface::make_round_sphere;
use lglab::verify::{critical_points_of_height, level_curves, poincare_hopf_index_sum};
use lglab::openbook::Fiber;

fn main() {
    let mesh = make_round_sphere(GroupPoint::new(0.0, 0.1, 0.4), 0.5, 3);

    let morse = critical_points_of_height(&mesh, 7).unwrap();
    println!("height range [{:.4}, {:.4}]", morse.z_min, morse.z_max);
    for c in &morse.criticals {
        println!(
            "  critical vertex {} at z = {:+.4}: {:?} (indices {:?})",
            c.vertex,
            c.height,
            c.kind,
            c.kind.indices()
        );
    }

    // Fractions avoid the equator vertex ring (exact heights are rejected).
    for frac in [0.23, 0.55, 0.77] {
        let z = morse.z_min + frac * (morse.z_max - morse.z_min);
        let set = level_curves(&mesh, z).unwrap();
        let points: usize = set.loops.iter().map(|l| l.len()).sum();
        println!(
            "level z = {z:+.4}: {} component(s), {} segment points",
            set.components(),
            points
        );
    }

    // Index sum of the field circling a fiber through the sphere: two
    // transversal crossings, each of index +1.
    let report = poincare_hopf_index_sum(&mesh, Fiber { y: 0.1, z: 0.4 }, 7).unwrap();
    println!(
        "angular field around the central fiber: winding faces {:?}, index sum {}",
        report.winding_faces, report.index_sum
    );
}
