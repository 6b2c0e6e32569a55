//! Full verification report for a round sphere in a non-unimodular model,
//! printed as the same JSON the command line tool emits.

use lglab::group::{GroupPoint, LieGroupModel};
use lglab::surface::make_round_sphere;
use lglab::verify::{consistency_violations, full_report, VerifyConfig};

fn main() {
    let model = LieGroupModel::nonunimodular(0.5, 1.0).unwrap();
    let mesh = make_round_sphere(GroupPoint::IDENTITY, 0.2, 3);
    let config = VerifyConfig { z_samples: 16, fiber_grid: 32, seed: 7 };
    let report = full_report(&model, &mesh, config).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    let violations = consistency_violations(&report, model.admits_open_book);
    if violations.is_empty() {
        println!("\nall cross-checks agree");
    } else {
        for v in violations {
            println!("\nconsistency violation: {v}");
        }
    }
}
