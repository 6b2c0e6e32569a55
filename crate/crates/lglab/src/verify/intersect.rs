//! Exact self-intersection detection.
//!
//! Candidate face pairs come from a median-split AABB tree; the pair test is
//! built entirely from adaptive-precision orientation predicates, so there is
//! no tolerance to tune: triangles intersect iff some edge of one meets the
//! other (plus the coplanar 2D cases). Faces sharing a mesh vertex are
//! skipped, as their shared-boundary contact is not a self-intersection.

use crate::surface::SphereMesh;
use crate::vec3::Vec3;
use robust::{orient2d, orient3d, Coord, Coord3D};

fn c3(p: Vec3) -> Coord3D<f64> {
    Coord3D { x: p[0], y: p[1], z: p[2] }
}

fn o3(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> f64 {
    orient3d(c3(a), c3(b), c3(c), c3(d))
}

/// Project out the axis along which the triangle is most degenerate, i.e.
/// the first axis drop that keeps the projected triangle non-degenerate.
fn projection_axis(t: &[Vec3; 3]) -> usize {
    for axis in 0..3 {
        let p = |v: Vec3| drop_axis(v, axis);
        if orient2d(p(t[0]), p(t[1]), p(t[2])) != 0.0 {
            return axis;
        }
    }
    // Fully degenerate triangles are excluded by mesh validation.
    0
}

fn drop_axis(v: Vec3, axis: usize) -> Coord<f64> {
    match axis {
        0 => Coord { x: v[1], y: v[2] },
        1 => Coord { x: v[0], y: v[2] },
        _ => Coord { x: v[0], y: v[1] },
    }
}

/// 2D point-in-triangle (boundary counts), orientation-agnostic.
fn point_in_tri_2d(p: Coord<f64>, t: [Coord<f64>; 3]) -> bool {
    let s0 = orient2d(t[0], t[1], p);
    let s1 = orient2d(t[1], t[2], p);
    let s2 = orient2d(t[2], t[0], p);
    (s0 >= 0.0 && s1 >= 0.0 && s2 >= 0.0) || (s0 <= 0.0 && s1 <= 0.0 && s2 <= 0.0)
}

/// 2D segment intersection (touching counts), including collinear overlap.
fn seg_seg_2d(a: Coord<f64>, b: Coord<f64>, c: Coord<f64>, d: Coord<f64>) -> bool {
    let d1 = orient2d(c, d, a);
    let d2 = orient2d(c, d, b);
    let d3 = orient2d(a, b, c);
    let d4 = orient2d(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on_segment = |p: Coord<f64>, q: Coord<f64>, r: Coord<f64>| {
        // r collinear with pq; does r lie within the box?
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

fn seg_tri_2d(a: Coord<f64>, b: Coord<f64>, t: [Coord<f64>; 3]) -> bool {
    if point_in_tri_2d(a, t) || point_in_tri_2d(b, t) {
        return true;
    }
    seg_seg_2d(a, b, t[0], t[1]) || seg_seg_2d(a, b, t[1], t[2]) || seg_seg_2d(a, b, t[2], t[0])
}

/// Exact segment-triangle intersection in 3D (touching counts).
fn seg_tri_3d(a: Vec3, b: Vec3, t: &[Vec3; 3]) -> bool {
    let sa = o3(t[0], t[1], t[2], a);
    let sb = o3(t[0], t[1], t[2], b);
    if (sa > 0.0 && sb > 0.0) || (sa < 0.0 && sb < 0.0) {
        return false;
    }
    if sa == 0.0 && sb == 0.0 {
        // Segment lies in the triangle's plane.
        let axis = projection_axis(t);
        return seg_tri_2d(
            drop_axis(a, axis),
            drop_axis(b, axis),
            [
                drop_axis(t[0], axis),
                drop_axis(t[1], axis),
                drop_axis(t[2], axis),
            ],
        );
    }
    // Endpoints on opposite closed sides: the segment meets the plane where
    // the line a-b passes through the triangle.
    let v0 = o3(a, b, t[0], t[1]);
    let v1 = o3(a, b, t[1], t[2]);
    let v2 = o3(a, b, t[2], t[0]);
    (v0 >= 0.0 && v1 >= 0.0 && v2 >= 0.0) || (v0 <= 0.0 && v1 <= 0.0 && v2 <= 0.0)
}

/// Exact triangle-triangle intersection test (touching counts).
pub fn tri_tri_intersect(p: &[Vec3; 3], q: &[Vec3; 3]) -> bool {
    let dp: Vec<f64> = p.iter().map(|&v| o3(q[0], q[1], q[2], v)).collect();
    if dp.iter().all(|&s| s > 0.0) || dp.iter().all(|&s| s < 0.0) {
        return false;
    }
    let dq: Vec<f64> = q.iter().map(|&v| o3(p[0], p[1], p[2], v)).collect();
    if dq.iter().all(|&s| s > 0.0) || dq.iter().all(|&s| s < 0.0) {
        return false;
    }
    if dp.iter().all(|&s| s == 0.0) {
        let axis = projection_axis(q);
        let pp = [
            drop_axis(p[0], axis),
            drop_axis(p[1], axis),
            drop_axis(p[2], axis),
        ];
        let qq = [
            drop_axis(q[0], axis),
            drop_axis(q[1], axis),
            drop_axis(q[2], axis),
        ];
        return pp.iter().any(|&v| point_in_tri_2d(v, qq))
            || qq.iter().any(|&v| point_in_tri_2d(v, pp))
            || (0..3).any(|i| {
                (0..3).any(|j| {
                    seg_seg_2d(pp[i], pp[(i + 1) % 3], qq[j], qq[(j + 1) % 3])
                })
            });
    }
    (0..3).any(|i| seg_tri_3d(p[i], p[(i + 1) % 3], q))
        || (0..3).any(|i| seg_tri_3d(q[i], q[(i + 1) % 3], p))
}

#[derive(Clone, Copy)]
struct Aabb {
    lo: Vec3,
    hi: Vec3,
}

impl Aabb {
    fn of_face(t: &[Vec3; 3]) -> Aabb {
        let mut lo = t[0];
        let mut hi = t[0];
        for v in &t[1..] {
            for k in 0..3 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        Aabb { lo, hi }
    }

    fn union(self, o: Aabb) -> Aabb {
        let mut lo = self.lo;
        let mut hi = self.hi;
        for k in 0..3 {
            lo[k] = lo[k].min(o.lo[k]);
            hi[k] = hi[k].max(o.hi[k]);
        }
        Aabb { lo, hi }
    }

    fn overlaps(&self, o: &Aabb) -> bool {
        (0..3).all(|k| self.lo[k] <= o.hi[k] && self.hi[k] >= o.lo[k])
    }
}

/// Flat median-split AABB tree over faces.
struct BvhNode {
    aabb: Aabb,
    /// Children node indices, or the face range [start, end) for leaves.
    children: Option<(usize, usize)>,
    start: usize,
    end: usize,
}

struct Bvh {
    nodes: Vec<BvhNode>,
    order: Vec<usize>,
}

const LEAF_SIZE: usize = 8;

impl Bvh {
    fn build(boxes: &[Aabb]) -> Bvh {
        let mut order: Vec<usize> = (0..boxes.len()).collect();
        let mut nodes = Vec::new();
        Self::build_range(boxes, &mut order, 0, boxes.len(), &mut nodes);
        Bvh { nodes, order }
    }

    fn build_range(
        boxes: &[Aabb],
        order: &mut [usize],
        start: usize,
        end: usize,
        nodes: &mut Vec<BvhNode>,
    ) -> usize {
        let aabb = order[start..end]
            .iter()
            .map(|&f| boxes[f])
            .reduce(Aabb::union)
            .expect("nonempty range");
        let me = nodes.len();
        nodes.push(BvhNode { aabb, children: None, start, end });
        if end - start > LEAF_SIZE {
            let mut widest = 0;
            let mut width = -1.0;
            for k in 0..3 {
                let w = aabb.hi[k] - aabb.lo[k];
                if w > width {
                    width = w;
                    widest = k;
                }
            }
            let mid = (start + end) / 2;
            order[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
                let ca = boxes[a].lo[widest] + boxes[a].hi[widest];
                let cb = boxes[b].lo[widest] + boxes[b].hi[widest];
                ca.total_cmp(&cb).then(a.cmp(&b))
            });
            let left = Self::build_range(boxes, order, start, mid, nodes);
            let right = Self::build_range(boxes, order, mid, end, nodes);
            nodes[me].children = Some((left, right));
        }
        me
    }
}

/// All pairs of faces whose triangles intersect and share no mesh vertex,
/// sorted lexicographically.
pub fn self_intersections(mesh: &SphereMesh) -> Vec<[usize; 2]> {
    let faces: Vec<[Vec3; 3]> = (0..mesh.face_count()).map(|f| mesh.face_points(f)).collect();
    let boxes: Vec<Aabb> = faces.iter().map(Aabb::of_face).collect();
    let bvh = Bvh::build(&boxes);
    let mut pairs = Vec::new();
    let mut stack = vec![(0usize, 0usize)];
    while let Some((a, b)) = stack.pop() {
        let (na, nb) = (&bvh.nodes[a], &bvh.nodes[b]);
        if !na.aabb.overlaps(&nb.aabb) {
            continue;
        }
        match (na.children, nb.children) {
            (Some((l, r)), _) if a == b => {
                stack.push((l, l));
                stack.push((l, r));
                stack.push((r, r));
            }
            (Some((l, r)), _) => {
                stack.push((l, b));
                stack.push((r, b));
            }
            (None, Some((l, r))) => {
                stack.push((a, l));
                stack.push((a, r));
            }
            (None, None) => {
                for ia in na.start..na.end {
                    let ib_start = if a == b { ia + 1 } else { nb.start };
                    for ib in ib_start..nb.end {
                        let (fa, fb) = (bvh.order[ia], bvh.order[ib]);
                        if !boxes[fa].overlaps(&boxes[fb]) {
                            continue;
                        }
                        let va = mesh.faces()[fa];
                        let vb = mesh.faces()[fb];
                        if va.iter().any(|v| vb.contains(v)) {
                            continue;
                        }
                        if tri_tri_intersect(&faces[fa], &faces[fb]) {
                            pairs.push([fa.min(fb), fa.max(fb)]);
                        }
                    }
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}
