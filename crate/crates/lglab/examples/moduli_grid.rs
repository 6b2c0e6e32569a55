//! Sweep the non-unimodular moduli plane and draw an ASCII map: which
//! (D, b) pairs are realizable, and which of those admit an open book.

use lglab::group::LieGroupModel;

fn main() {
    let (rows, cols) = (21, 61);
    println!("rows: b in [0, 2] top to bottom; cols: D in [-2, 2.5]");
    println!("#: admits an open book   o: realizable, no open book   .: not realizable");
    for i in (0..rows).rev() {
        let b = 2.0 * i as f64 / (rows - 1) as f64;
        let mut line = String::new();
        for j in 0..cols {
            let d = -2.0 + 4.5 * j as f64 / (cols - 1) as f64;
            line.push(match LieGroupModel::nonunimodular(d, b) {
                Ok(model) if model.admits_open_book => '#',
                Ok(_) => 'o',
                Err(_) => '.',
            });
        }
        println!("b={b:4.1} {line}");
    }
    // The boundary between '#' and 'o' is D = 1; between 'o' and '.'
    // the realizability bound D = 1 + b^2.
}
