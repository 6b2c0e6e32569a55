//! Fiber probes: intersections of binding cosets (lines in the x direction)
//! with the mesh, and the two-sheet structure over the quotient plane.

use crate::error::{Error, Result};
use crate::openbook::Fiber;
use crate::surface::SphereMesh;
use crate::tol::{JITTER_MAX, RESAMPLE_BUDGET, TRANSVERSALITY_ANGLE};
use crate::vec3::norm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, HashSet};

/// Barycentric distance to the triangle boundary below which a hit is
/// considered grazing and the fiber is resampled.
const BARY_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct FiberHit {
    pub face: usize,
    pub x: f64,
    pub point: [f64; 3],
    pub transversal: bool,
}

#[derive(Clone, Debug)]
pub struct FiberProbe {
    /// The fiber actually probed (jittered when attempts > 0).
    pub fiber: Fiber,
    /// Hits sorted by increasing x.
    pub hits: Vec<FiberHit>,
    pub attempts: u32,
}

enum Outcome {
    Clean(Vec<FiberHit>),
    Graze,
}

fn probe_once(mesh: &SphereMesh, candidates: &[u32], y: f64, z: f64) -> Outcome {
    let mut hits = Vec::new();
    for &fi in candidates {
        let fi = fi as usize;
        let [p0, p1, p2] = mesh.face_points(fi);
        let n = mesh.face_normal_vector(fi);
        let den = n[0]; // x-component = twice the (y,z)-projected signed area
        let nn = norm(n);
        if den.abs() <= 1e-12 * nn {
            // Face seen edge-on in the projection (this happens exactly on
            // icospheres): its projected image is a segment, and any hit
            // through it lands on an edge shared with a neighbor, whose own
            // margin test flags the ambiguity. Only a fiber within a hair
            // of the projected edges needs a resample here.
            let pts = [[p0[1], p0[2]], [p1[1], p1[2]], [p2[1], p2[2]]];
            let longest = (0..3)
                .map(|k| {
                    let (a, b) = (pts[k], pts[(k + 1) % 3]);
                    (b[0] - a[0]).hypot(b[1] - a[1])
                })
                .fold(0.0, f64::max);
            let band = BARY_MARGIN * longest;
            if (0..3).any(|k| {
                dist2_point_segment([y, z], pts[k], pts[(k + 1) % 3]) <= band * band
            }) {
                return Outcome::Graze;
            }
            continue;
        }
        let cross2 = |ay: f64, az: f64, by: f64, bz: f64| ay * bz - az * by;
        let l0 = cross2(p1[1] - y, p1[2] - z, p2[1] - y, p2[2] - z) / den;
        let l1 = cross2(p2[1] - y, p2[2] - z, p0[1] - y, p0[2] - z) / den;
        let l2 = cross2(p0[1] - y, p0[2] - z, p1[1] - y, p1[2] - z) / den;
        let m = l0.min(l1).min(l2);
        if m > BARY_MARGIN {
            let x = l0 * p0[0] + l1 * p1[0] + l2 * p2[0];
            hits.push(FiberHit {
                face: fi,
                x,
                point: [x, y, z],
                transversal: den.abs() >= TRANSVERSALITY_ANGLE.sin() * nn,
            });
        } else if m > -BARY_MARGIN {
            return Outcome::Graze;
        }
    }
    hits.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.face.cmp(&b.face)));
    Outcome::Clean(hits)
}

fn dist2_point_segment(q: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let aq = [q[0] - a[0], q[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        ((aq[0] * ab[0] + aq[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let d = [aq[0] - t * ab[0], aq[1] - t * ab[1]];
    d[0] * d[0] + d[1] * d[1]
}

pub(crate) fn jitter_rng(seed: u64, fiber: Fiber, attempt: u32) -> ChaCha8Rng {
    let mix = seed
        .wrapping_mul(0x9e3779b97f4a7c15)
        .wrapping_add(fiber.y.to_bits())
        .wrapping_mul(0x9e3779b97f4a7c15)
        .wrapping_add(fiber.z.to_bits())
        .wrapping_add(attempt as u64);
    ChaCha8Rng::seed_from_u64(mix)
}

fn probe_retrying(
    mesh: &SphereMesh,
    candidates_of: &dyn Fn(f64, f64) -> Vec<u32>,
    fiber: Fiber,
    seed: u64,
) -> Result<FiberProbe> {
    for attempt in 0..=RESAMPLE_BUDGET {
        let (y, z) = if attempt == 0 {
            (fiber.y, fiber.z)
        } else {
            let mut rng = jitter_rng(seed, fiber, attempt);
            (
                fiber.y + rng.gen_range(-JITTER_MAX..=JITTER_MAX) * attempt as f64,
                fiber.z + rng.gen_range(-JITTER_MAX..=JITTER_MAX) * attempt as f64,
            )
        };
        match probe_once(mesh, &candidates_of(y, z), y, z) {
            Outcome::Clean(hits) => {
                return Ok(FiberProbe {
                    fiber: Fiber { y, z },
                    hits,
                    attempts: attempt,
                })
            }
            Outcome::Graze => continue,
        }
    }
    Err(Error::ResampleBudget {
        context: "fiber probe".into(),
        attempts: RESAMPLE_BUDGET + 1,
    })
}

/// Intersections of the fiber through `(y, z)` with the mesh. Grazing hits
/// trigger deterministic resampling of the fiber within `JITTER_MAX`.
pub fn fiber_hits(mesh: &SphereMesh, fiber: Fiber, seed: u64) -> Result<FiberProbe> {
    let all: Vec<u32> = (0..mesh.face_count() as u32).collect();
    probe_retrying(mesh, &|_, _| all.clone(), fiber, seed)
}

/// Uniform (y, z) grid of face indices for fast fiber candidate lookup.
struct FaceBuckets {
    n: usize,
    ymin: f64,
    zmin: f64,
    dy: f64,
    dz: f64,
    cells: Vec<Vec<u32>>,
}

impl FaceBuckets {
    fn build(mesh: &SphereMesh, n: usize) -> Self {
        let (lo, hi) = mesh.bounding_box();
        let pad = 1e-3;
        let ymin = lo[1] - pad;
        let zmin = lo[2] - pad;
        let dy = (hi[1] - lo[1] + 2.0 * pad) / n as f64;
        let dz = (hi[2] - lo[2] + 2.0 * pad) / n as f64;
        let mut cells = vec![Vec::new(); n * n];
        for f in 0..mesh.face_count() {
            let [p0, p1, p2] = mesh.face_points(f);
            let ylo = p0[1].min(p1[1]).min(p2[1]) - pad;
            let yhi = p0[1].max(p1[1]).max(p2[1]) + pad;
            let zlo = p0[2].min(p1[2]).min(p2[2]) - pad;
            let zhi = p0[2].max(p1[2]).max(p2[2]) + pad;
            let i0 = (((ylo - ymin) / dy).floor().max(0.0)) as usize;
            let i1 = (((yhi - ymin) / dy).floor()).min(n as f64 - 1.0) as usize;
            let j0 = (((zlo - zmin) / dz).floor().max(0.0)) as usize;
            let j1 = (((zhi - zmin) / dz).floor()).min(n as f64 - 1.0) as usize;
            for i in i0..=i1 {
                for j in j0..=j1 {
                    cells[i * n + j].push(f as u32);
                }
            }
        }
        FaceBuckets { n, ymin, zmin, dy, dz, cells }
    }

    fn candidates(&self, y: f64, z: f64) -> Vec<u32> {
        let i = ((y - self.ymin) / self.dy).floor();
        let j = ((z - self.zmin) / self.dz).floor();
        if i < 0.0 || j < 0.0 || i >= self.n as f64 || j >= self.n as f64 {
            return Vec::new();
        }
        self.cells[i as usize * self.n + j as usize].clone()
    }
}

#[derive(Clone, Debug)]
pub struct BigraphReport {
    pub ok: bool,
    pub grid: usize,
    /// Samples whose whole `eps`-neighborhood projects onto the mesh.
    pub interior_samples: usize,
    /// Largest hit count over interior samples.
    pub max_hits: usize,
    /// (hit count, number of interior samples) pairs, ascending.
    pub histogram: Vec<(usize, usize)>,
    /// Faces carrying the near / far sheet over interior samples.
    pub sheet_sizes: (usize, usize),
    /// Interior samples violating "exactly two transversal hits".
    pub violations: usize,
    /// Interior sample closest to the projection's bounding-box center.
    pub central_fiber: Option<Fiber>,
}

/// Sample fibers over a `grid x grid` sweep of the projected bounding box and
/// check the two-sheet picture: every interior fiber meets the mesh in
/// exactly two transversal points, and the near/far faces form two connected
/// disjoint sheets.
pub fn bigraph_check(mesh: &SphereMesh, grid: usize, seed: u64) -> Result<BigraphReport> {
    assert!(grid >= 4, "grid too coarse");
    let (lo, hi) = mesh.bounding_box();
    let (ymin, ymax) = (lo[1], hi[1]);
    let (zmin, zmax) = (lo[2], hi[2]);
    let dy = (ymax - ymin) / grid as f64;
    let dz = (zmax - zmin) / grid as f64;
    let buckets = FaceBuckets::build(mesh, 64);
    let mut probes: Vec<FiberProbe> = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        for j in 0..grid {
            let fiber = Fiber {
                y: ymin + (i as f64 + 0.5) * dy,
                z: zmin + (j as f64 + 0.5) * dz,
            };
            probes.push(probe_retrying(
                mesh,
                &|y, z| buckets.candidates(y, z),
                fiber,
                seed,
            )?);
        }
    }
    let count = |i: usize, j: usize| probes[i * grid + j].hits.len();
    let eps = 2.0 * mesh.median_edge_length();
    let ry = (eps / dy).ceil() as isize;
    let rz = (eps / dz).ceil() as isize;
    let interior = |i: usize, j: usize| -> bool {
        if count(i, j) == 0 {
            return false;
        }
        for di in -ry..=ry {
            for dj in -rz..=rz {
                let (ddy, ddz) = (di as f64 * dy, dj as f64 * dz);
                if ddy * ddy + ddz * ddz > eps * eps {
                    continue;
                }
                let (ni, nj) = (i as isize + di, j as isize + dj);
                if ni < 0 || nj < 0 || ni >= grid as isize || nj >= grid as isize {
                    return false;
                }
                if count(ni as usize, nj as usize) == 0 {
                    return false;
                }
            }
        }
        true
    };
    let mut interior_samples = 0;
    let mut violations = 0;
    let mut max_hits = 0;
    let mut histogram: HashMap<usize, usize> = HashMap::new();
    let mut near_sheet: HashSet<usize> = HashSet::new();
    let mut far_sheet: HashSet<usize> = HashSet::new();
    let center = (0.5 * (ymin + ymax), 0.5 * (zmin + zmax));
    let mut central: Option<(f64, Fiber)> = None;
    for i in 0..grid {
        for j in 0..grid {
            if !interior(i, j) {
                continue;
            }
            let probe = &probes[i * grid + j];
            interior_samples += 1;
            let hits = &probe.hits;
            max_hits = max_hits.max(hits.len());
            *histogram.entry(hits.len()).or_insert(0) += 1;
            if hits.len() == 2 && hits.iter().all(|h| h.transversal) {
                near_sheet.insert(hits[0].face);
                far_sheet.insert(hits[1].face);
            } else {
                violations += 1;
            }
            let d2 = (probe.fiber.y - center.0).powi(2) + (probe.fiber.z - center.1).powi(2);
            if central.as_ref().map_or(true, |(best, _)| d2 < *best) {
                central = Some((d2, probe.fiber));
            }
        }
    }
    let disjoint = near_sheet.is_disjoint(&far_sheet);
    let connected = |sheet: &HashSet<usize>| -> bool {
        if sheet.is_empty() {
            return true;
        }
        let mut vertex_faces: HashMap<usize, Vec<usize>> = HashMap::new();
        for &f in sheet {
            for &v in &mesh.faces()[f] {
                vertex_faces.entry(v).or_default().push(f);
            }
        }
        let start = *sheet.iter().min().expect("nonempty");
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for &v in &mesh.faces()[f] {
                for &g in &vertex_faces[&v] {
                    if seen.insert(g) {
                        stack.push(g);
                    }
                }
            }
        }
        seen.len() == sheet.len()
    };
    // No interior samples means the grid cannot see the mesh interior at
    // all; the check is then vacuously clean rather than failed, and the
    // empty histogram records the vacuity.
    let ok = violations == 0 && disjoint && connected(&near_sheet) && connected(&far_sheet);
    let mut histogram: Vec<(usize, usize)> = histogram.into_iter().collect();
    histogram.sort_unstable();
    Ok(BigraphReport {
        ok,
        grid,
        interior_samples,
        max_hits,
        histogram,
        sheet_sizes: (near_sheet.len(), far_sheet.len()),
        violations,
        central_fiber: central.map(|(_, f)| f),
    })
}
