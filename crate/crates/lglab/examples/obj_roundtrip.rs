//! Save a mesh as OBJ, load it back, and confirm the round trip is exact.

use lglab::group::GroupPoint;
use lglab::surface::{load_mesh, make_round_sphere, save_mesh};

fn main() {
    let mesh = make_round_sphere(GroupPoint::new(0.3, -0.1, 0.8), 0.7, 2);
    let dir = std::env::temp_dir();
    let path = dir.join("lglab_roundtrip.obj");

    save_mesh(&mesh, &path).unwrap();
    let size = std::fs::metadata(&path).unwrap().len();
    println!("wrote {} ({} bytes)", path.display(), size);

    let back = load_mesh(&path).unwrap();
    println!(
        "reloaded: {} vertices, {} edges, {} faces, chi = {}",
        back.vertex_count(),
        back.edge_count(),
        back.face_count(),
        back.euler_characteristic()
    );
    // The writer emits shortest round-trip decimals, so equality is exact.
    assert_eq!(mesh.vertices(), back.vertices());
    assert_eq!(mesh.faces(), back.faces());
    println!("round trip is bit-exact");

    std::fs::remove_file(&path).ok();
}
