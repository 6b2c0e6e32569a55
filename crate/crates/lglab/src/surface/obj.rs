//! OBJ subset: `v x y z` and `f i j k` lines (1-based indices, CCW outward).
//!
//! The writer emits shortest round-trip decimals, so save/load is lossless
//! and byte-deterministic. The parser tolerates blank lines and `#` comments
//! and rejects everything else.

use super::SphereMesh;
use crate::error::{Error, Result};
use crate::group::GroupPoint;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

pub fn write_obj<W: Write>(mesh: &SphereMesh, mut w: W) -> Result<()> {
    for v in mesh.vertices() {
        writeln!(w, "v {} {} {}", v.x, v.y, v.z)?;
    }
    for f in mesh.faces() {
        writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

pub fn save_mesh<P: AsRef<Path>>(mesh: &SphereMesh, path: P) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_obj(mesh, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn parse_obj<R: BufRead>(r: R) -> Result<SphereMesh> {
    let mut vertices: Vec<GroupPoint> = Vec::new();
    let mut faces: Vec<(usize, [usize; 3])> = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let malformed = |reason: &str| Error::MalformedObj {
            line: lineno,
            reason: reason.to_string(),
        };
        match parts.next() {
            Some("v") => {
                let mut coords = [0.0f64; 3];
                for c in &mut coords {
                    let tok = parts.next().ok_or_else(|| malformed("vertex needs 3 coordinates"))?;
                    *c = tok
                        .parse::<f64>()
                        .map_err(|_| malformed(&format!("bad coordinate `{tok}`")))?;
                    if !c.is_finite() {
                        return Err(malformed("non-finite coordinate"));
                    }
                }
                if parts.next().is_some() {
                    return Err(malformed("vertex has more than 3 coordinates"));
                }
                vertices.push(GroupPoint::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let mut ids = [0usize; 3];
                for i in &mut ids {
                    let tok = parts.next().ok_or_else(|| malformed("face needs 3 indices"))?;
                    let n: usize = tok
                        .parse()
                        .map_err(|_| malformed(&format!("bad face index `{tok}`")))?;
                    if n == 0 {
                        return Err(malformed("face indices are 1-based"));
                    }
                    *i = n - 1;
                }
                if parts.next().is_some() {
                    return Err(malformed("only triangular faces are supported"));
                }
                faces.push((lineno, ids));
            }
            Some(other) => {
                return Err(malformed(&format!("unsupported element `{other}`")));
            }
            None => unreachable!("trimmed line is nonempty"),
        }
    }
    for &(lineno, ids) in &faces {
        for &i in &ids {
            if i >= vertices.len() {
                return Err(Error::MalformedObj {
                    line: lineno,
                    reason: format!("face index {} exceeds vertex count {}", i + 1, vertices.len()),
                });
            }
        }
    }
    SphereMesh::new(vertices, faces.into_iter().map(|(_, f)| f).collect())
}

pub fn load_mesh<P: AsRef<Path>>(path: P) -> Result<SphereMesh> {
    parse_obj(BufReader::new(File::open(path)?))
}
