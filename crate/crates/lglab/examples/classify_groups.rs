//! Classify a handful of matrices and print the invariants that pin down
//! each group.

use lglab::algebra::Mat2;
use lglab::group::classify;

fn main() {
    let samples = [
        ("zero", Mat2::ZERO),
        ("nilpotent", Mat2::new(0.0, 1.0, 0.0, 0.0)),
        ("hyperbolic", Mat2::new(0.0, 2.0, 0.5, 0.0)),
        ("rotation", Mat2::new(0.0, -1.0, 1.0, 0.0)),
        ("identity", Mat2::IDENTITY),
        ("generic", Mat2::new(1.3, -0.4, 0.9, 0.7)),
        ("negative trace", Mat2::new(-1.0, 0.2, 0.0, -1.0)),
    ];
    for (name, m) in samples {
        match classify(m) {
            Ok(model) => {
                println!(
                    "{name:>14}: {:<28} D = {:+.4}  open book: {}{}",
                    model.label.to_string(),
                    model.d_invariant,
                    if model.admits_open_book { "yes" } else { "no" },
                    if model.orientation_flipped { "  (classified -A)" } else { "" },
                );
                if let Some((a, b)) = model.canonical_ab() {
                    println!("{:>14}  canonical (a, b) = ({a:.4}, {b:.4})", "");
                }
            }
            Err(e) => println!("{name:>14}: {e}"),
        }
    }
}
