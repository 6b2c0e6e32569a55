//! Rotate a model into open-book position and watch the quotient map
//! collapse binding cosets to points.

use lglab::algebra::Mat2;
use lglab::group::{classify, multiply, GroupPoint};
use lglab::openbook::make_open_book;

fn main() {
    // Symmetric Sol3 coordinates: the binding direction is diagonal, so the
    // raw coordinate projection is not constant along cosets.
    let raw = Mat2::new(0.0, 1.0, 1.0, 0.0);
    let model = classify(raw).unwrap();
    let book = make_open_book(&model).unwrap();
    println!("model {}", model.label);
    println!("rotated matrix [[{:.3}, {:.3}], [{:.3}, {:.3}]]",
        book.matrix().a, book.matrix().b, book.matrix().c, book.matrix().d);

    let g = GroupPoint::new(0.2, -0.4, 0.8);
    println!("coset of {g:?}:");
    for t in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let moved = multiply(book.matrix(), g, GroupPoint::new(t, 0.0, 0.0));
        let (y, z) = book.quotient_pi(moved);
        println!("  t = {t:+.1}: point ({:+.4}, {:+.4}, {:+.4})  quotient ({y:+.4}, {z:+.4})",
            moved.x, moved.y, moved.z);
    }

    // Before the rotation the same motion leaks into the quotient.
    let moved = multiply(raw, g, GroupPoint::new(1.0, 0.0, 0.0));
    println!("without the rotation, t = 1 moves (y, z) to ({:+.4}, {:+.4})", moved.y, moved.z);

    let v = book.angular_field_at(GroupPoint::new(0.0, 1.0, 0.0), (0.0, 0.0)).unwrap();
    println!("angular field at (0, 1, 0) around the central fiber: {v:?}");
}
