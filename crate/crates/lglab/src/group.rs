//! The semidirect products `R^2 x_A R` as metric Lie groups.
//!
//! A point is `(x, y, z)` with group law
//! `(p1, z1) * (p2, z2) = (p1 + e^{z1 A} p2, z1 + z2)`.
//! The left invariant frame `E1, E2` reads off the columns of `e^{zA}`
//! (plane directions) and `E3 = d/dz`; the canonical metric is the one
//! making this frame orthonormal.

use crate::algebra::{exp2_raw, solve_a_from_db, Mat2, Mat3};
use crate::error::{Error, Result};
use crate::tol::{EPS_BRANCH, EPS_MATCH, UNIMODULAR_TRACE_TOL};
use crate::vec3::{scale, sub, Vec3};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl GroupPoint {
    pub const IDENTITY: GroupPoint = GroupPoint { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        GroupPoint { x, y, z }
    }

    pub fn from_array(v: Vec3) -> Self {
        GroupPoint::new(v[0], v[1], v[2])
    }

    pub fn to_array(self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Group product `g1 * g2` in `R^2 x_A R`. Finite inputs are a precondition.
pub fn multiply(a: Mat2, g1: GroupPoint, g2: GroupPoint) -> GroupPoint {
    let e = exp2_raw(a, g1.z);
    let p = e.mul_vec([g2.x, g2.y]);
    GroupPoint::new(g1.x + p[0], g1.y + p[1], g1.z + g2.z)
}

/// Group inverse: `(p, z)^{-1} = (-e^{-zA} p, -z)`.
pub fn inverse(a: Mat2, g: GroupPoint) -> GroupPoint {
    let e = exp2_raw(a, -g.z);
    let p = e.mul_vec([g.x, g.y]);
    GroupPoint::new(-p[0], -p[1], -g.z)
}

/// Left invariant frame at a point, in coordinate components.
#[derive(Clone, Copy, Debug)]
pub struct FrameAt {
    pub base: GroupPoint,
    pub e1: Vec3,
    pub e2: Vec3,
    pub e3: Vec3,
}

impl FrameAt {
    /// Columns `E1 | E2 | E3`; always invertible since `det e^{zA} > 0`.
    pub fn matrix(&self) -> Mat3 {
        Mat3::from_cols(self.e1, self.e2, self.e3)
    }
}

/// `E1, E2` are the columns of `e^{zA}` extended by 0; `E3 = (0, 0, 1)`.
pub fn left_frame_at(a: Mat2, g: GroupPoint) -> FrameAt {
    let e = exp2_raw(a, g.z);
    FrameAt {
        base: g,
        e1: [e.a, e.c, 0.0],
        e2: [e.b, e.d, 0.0],
        e3: [0.0, 0.0, 1.0],
    }
}

/// Right invariant frame at a point, in coordinate components.
#[derive(Clone, Copy, Debug)]
pub struct RightFrameAt {
    pub base: GroupPoint,
    pub f1: Vec3,
    pub f2: Vec3,
    pub f3: Vec3,
}

impl RightFrameAt {
    pub fn matrix(&self) -> Mat3 {
        Mat3::from_cols(self.f1, self.f2, self.f3)
    }
}

/// `F1 = d/dx`, `F2 = d/dy`, `F3 = (a x + b y, c x + d y, 1)` for `A = [[a,b],[c,d]]`.
pub fn right_frame_at(a: Mat2, g: GroupPoint) -> RightFrameAt {
    RightFrameAt {
        base: g,
        f1: [1.0, 0.0, 0.0],
        f2: [0.0, 1.0, 0.0],
        f3: [a.a * g.x + a.b * g.y, a.c * g.x + a.d * g.y, 1.0],
    }
}

/// Canonical left invariant metric at `g`, as a symmetric 3x3 matrix in
/// coordinates. With `F = e^{-zA}` the plane block is `F^T F`, so positive
/// definiteness and exact symmetry come for free.
pub fn metric_at(a: Mat2, g: GroupPoint) -> Mat3 {
    let f = exp2_raw(a, -g.z);
    let m = f.transpose().mul(f);
    Mat3([[m.a, m.b, 0.0], [m.c, m.d, 0.0], [0.0, 0.0, 1.0]])
}

/// Structure constants of the frame: `[E1, E2] = 0`,
/// `[E3, E1] = a E1 + c E2`, `[E3, E2] = b E1 + d E2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BracketRelations {
    pub e3_e1: [f64; 2],
    pub e3_e2: [f64; 2],
}

pub fn bracket_coefficients(a: Mat2) -> BracketRelations {
    BracketRelations {
        e3_e1: [a.a, a.c],
        e3_e2: [a.b, a.d],
    }
}

/// `[E_i, E_j]` at `g` by central finite differences of the coordinate
/// component functions; the check against `bracket_coefficients` lives in the
/// test suite.
pub fn numeric_bracket(a: Mat2, i: usize, j: usize, g: GroupPoint, h: f64) -> Vec3 {
    assert!((1..=3).contains(&i) && (1..=3).contains(&j), "frame indices are 1..=3");
    let field = |k: usize, p: GroupPoint| -> Vec3 {
        let f = left_frame_at(a, p);
        match k {
            1 => f.e1,
            2 => f.e2,
            _ => f.e3,
        }
    };
    let u = field(i, g);
    let v = field(j, g);
    let mut out = [0.0; 3];
    for l in 0..3 {
        let mut gp = g;
        let mut gm = g;
        match l {
            0 => {
                gp.x += h;
                gm.x -= h;
            }
            1 => {
                gp.y += h;
                gm.y -= h;
            }
            _ => {
                gp.z += h;
                gm.z -= h;
            }
        }
        let dv = scale(sub(field(j, gp), field(j, gm)), 0.5 / h);
        let du = scale(sub(field(i, gp), field(i, gm)), 0.5 / h);
        for m in 0..3 {
            out[m] += u[l] * dv[m] - v[l] * du[m];
        }
    }
    out
}

/// Differential of the left translation `x -> g * x`; the map is affine, so
/// the Jacobian `e^{z_g A} (+) 1` is the same at every point.
pub fn left_translate_map_jacobian(a: Mat2, g: GroupPoint) -> Mat3 {
    let e = exp2_raw(a, g.z);
    Mat3([[e.a, e.b, 0.0], [e.c, e.d, 0.0], [0.0, 0.0, 1.0]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceClass {
    Unimodular,
    /// Trace was nonzero; the stored matrix is rescaled to trace 2.
    NonUnimodularNormalized,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GroupLabel {
    R3,
    Nil3,
    Sol3 { c: f64 },
    E2Tilde { c: f64 },
    H3,
    NonUnimodular { d: f64, b: f64 },
}

impl std::fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupLabel::R3 => write!(f, "R3"),
            GroupLabel::Nil3 => write!(f, "Nil3"),
            GroupLabel::Sol3 { c } => write!(f, "Sol3(c={c})"),
            GroupLabel::E2Tilde { c } => write!(f, "E2tilde(c={c})"),
            GroupLabel::H3 => write!(f, "H3"),
            GroupLabel::NonUnimodular { d, b } => write!(f, "NonUnimodular(D={d}, b={b})"),
        }
    }
}

/// A classified model `R^2 x_A R` with its canonical metric.
#[derive(Clone, Copy, Debug)]
pub struct LieGroupModel {
    /// Matrix actually used by the model (trace-normalized when non-unimodular).
    pub matrix: Mat2,
    pub trace_class: TraceClass,
    pub label: GroupLabel,
    /// `det(matrix)`; the Milnor invariant D in the non-unimodular case.
    pub d_invariant: f64,
    pub admits_open_book: bool,
    /// The classified input was `trace_rescale * matrix` (after the optional flip).
    pub trace_rescale: f64,
    /// True when the input had negative trace and `-A` was classified instead.
    pub orientation_flipped: bool,
}

/// Classify `A` up to rotation conjugation and trace normalization.
///
/// Unimodular case: the rotation invariants are `det`, the antisymmetric part
/// `omega = (a21 - a12)/2` and the norm `sigma` of the symmetric trace-free
/// part, tied together by `det = omega^2 - sigma^2`. Non-unimodular case:
/// after normalizing to trace 2, `D = det` and `b = |omega|` pin the group;
/// the canonical representative has `a = sqrt(1 - D/(1+b^2))`.
pub fn classify(a: Mat2) -> Result<LieGroupModel> {
    if !a.is_finite() {
        return Err(Error::NonFinite { context: "classify" });
    }
    let tr = a.trace();
    if tr.abs() <= UNIMODULAR_TRACE_TOL {
        let det = a.det();
        let omega = 0.5 * (a.c - a.b);
        let p = 0.5 * (a.a - a.d);
        let q = 0.5 * (a.b + a.c);
        let sigma = p.hypot(q);
        let (label, admits) = if a.max_norm() <= EPS_MATCH {
            (GroupLabel::R3, true)
        } else if det.abs() <= EPS_MATCH * a.max_norm() * a.max_norm() {
            (GroupLabel::Nil3, true)
        } else if det < 0.0 {
            let c = (sigma + omega.abs()) / (-det).sqrt();
            if !c.is_finite() {
                return Err(Error::UnclassifiedUnimodular { det, omega, sigma });
            }
            (GroupLabel::Sol3 { c }, true)
        } else {
            let c = (sigma + omega.abs()) / det.sqrt();
            if !c.is_finite() {
                return Err(Error::UnclassifiedUnimodular { det, omega, sigma });
            }
            (GroupLabel::E2Tilde { c }, false)
        };
        Ok(LieGroupModel {
            matrix: a,
            trace_class: TraceClass::Unimodular,
            label,
            d_invariant: det,
            admits_open_book: admits,
            trace_rescale: 1.0,
            orientation_flipped: false,
        })
    } else {
        let flipped = tr < 0.0;
        let input = if flipped { a.scale(-1.0) } else { a };
        let rescale = 0.5 * input.trace();
        let m = input.scale(1.0 / rescale);
        let d = m.det();
        let omega = 0.5 * (m.c - m.b);
        let b = omega.abs();
        let label = if m.sub(Mat2::IDENTITY).max_norm() <= EPS_MATCH {
            GroupLabel::H3
        } else {
            GroupLabel::NonUnimodular { d, b }
        };
        // D <= 1 means real eigenvalues; the pad matches the exponential's
        // repeated-eigenvalue branch width.
        let admits = d <= 1.0 + EPS_BRANCH;
        Ok(LieGroupModel {
            matrix: m,
            trace_class: TraceClass::NonUnimodularNormalized,
            label,
            d_invariant: d,
            admits_open_book: admits,
            trace_rescale: rescale,
            orientation_flipped: flipped,
        })
    }
}

/// Canonical trace-2 matrix of the non-unimodular family:
/// `[[1+a, -(1-a)b], [(1+a)b, 1-a]]` with `a, b >= 0`.
pub fn canonical_nonunimodular(a: f64, b: f64) -> Result<Mat2> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite { context: "canonical_nonunimodular" });
    }
    if a < 0.0 {
        return Err(Error::NegativeParameter { name: "a", value: a });
    }
    if b < 0.0 {
        return Err(Error::NegativeParameter { name: "b", value: b });
    }
    Ok(Mat2::new(1.0 + a, -(1.0 - a) * b, (1.0 + a) * b, 1.0 - a))
}

/// Rotate coordinates so the model matrix becomes upper triangular:
/// returns `(A', S)` with `A' = S^T A S`, `S` a rotation and `a21(A') = 0`
/// exactly. Requires real eigenvalues (`delta >= -EPS_BRANCH`).
pub fn normalize_upper_triangular(a: Mat2) -> Result<(Mat2, Mat2)> {
    if !a.is_finite() {
        return Err(Error::NonFinite { context: "normalize_upper_triangular" });
    }
    if a.c == 0.0 {
        return Ok((a, Mat2::IDENTITY));
    }
    let h = 0.5 * a.trace();
    let delta = h * h - a.det();
    if delta < -EPS_BRANCH {
        return Err(Error::NotRealTriangularizable { delta });
    }
    let s = delta.max(0.0).sqrt();
    let lambda = h + s;
    // Eigenvector for the larger eigenvalue, from the better-conditioned row
    // of A - lambda I. With a21 != 0 the first candidate is never zero.
    let v1 = [lambda - a.d, a.c];
    let v2 = [a.b, lambda - a.a];
    let v = if v1[0] * v1[0] + v1[1] * v1[1] >= v2[0] * v2[0] + v2[1] * v2[1] {
        v1
    } else {
        v2
    };
    let s_rot = Mat2::rotation(v[1].atan2(v[0]));
    let mut upper = s_rot.transpose().mul(a).mul(s_rot);
    upper.c = 0.0;
    Ok((upper, s_rot))
}

impl LieGroupModel {
    pub fn r3() -> Self {
        classify(Mat2::ZERO).expect("zero matrix classifies")
    }

    pub fn nil3() -> Self {
        classify(Mat2::new(0.0, 1.0, 0.0, 0.0)).expect("nilpotent matrix classifies")
    }

    pub fn sol3(c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::NegativeParameter { name: "c", value: c });
        }
        classify(Mat2::new(0.0, c, 1.0 / c, 0.0))
    }

    pub fn e2tilde(c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::NegativeParameter { name: "c", value: c });
        }
        classify(Mat2::new(0.0, -c, 1.0 / c, 0.0))
    }

    pub fn h3() -> Self {
        classify(Mat2::IDENTITY).expect("identity matrix classifies")
    }

    pub fn nonunimodular(d: f64, b: f64) -> Result<Self> {
        let a = solve_a_from_db(d, b)?;
        classify(canonical_nonunimodular(a, b)?)
    }

    pub fn multiply(&self, g1: GroupPoint, g2: GroupPoint) -> GroupPoint {
        multiply(self.matrix, g1, g2)
    }

    pub fn inverse(&self, g: GroupPoint) -> GroupPoint {
        inverse(self.matrix, g)
    }

    pub fn metric_at(&self, g: GroupPoint) -> Mat3 {
        metric_at(self.matrix, g)
    }

    /// Canonical `(a, b)` parameters in the non-unimodular family.
    pub fn canonical_ab(&self) -> Option<(f64, f64)> {
        match self.label {
            GroupLabel::H3 => Some((0.0, 0.0)),
            GroupLabel::NonUnimodular { d, b } => {
                Some(((1.0 - d / (1.0 + b * b)).max(0.0).sqrt(), b))
            }
            _ => None,
        }
    }

    /// The `(D, b) = (0, 0)` point is the product of the hyperbolic plane of
    /// curvature -4 with a line, the only product geometry in the family.
    pub fn is_hyperbolic_plane_product(&self) -> bool {
        matches!(self.label, GroupLabel::NonUnimodular { d, b }
            if d.abs() <= EPS_MATCH && b.abs() <= EPS_MATCH)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::{BRACKET_FD_STEP, BRACKET_FD_TOL, FRAME_ORTHO_TOL, GROUP_AXIOM_TOL};
    use crate::vec3::{add, norm};

    fn assert_point_eq(got: GroupPoint, want: GroupPoint, tol: f64) {
        assert!(
            norm(sub(got.to_array(), want.to_array())) <= tol,
            "got {got:?}, want {want:?}"
        );
    }

    #[test]
    fn r3_product_is_vector_addition() {
        let g = multiply(
            Mat2::ZERO,
            GroupPoint::new(1.0, 2.0, 3.0),
            GroupPoint::new(4.0, 5.0, 6.0),
        );
        assert_point_eq(g, GroupPoint::new(5.0, 7.0, 9.0), 0.0);
    }

    #[test]
    fn nil3_product_twists_the_plane_part() {
        let a = Mat2::new(0.0, 1.0, 0.0, 0.0);
        // e^{1*A} (0, 1) = (1, 1)
        let g = multiply(a, GroupPoint::new(0.0, 0.0, 1.0), GroupPoint::new(0.0, 1.0, 0.0));
        assert_point_eq(g, GroupPoint::new(1.0, 1.0, 1.0), 1e-15);
    }

    #[test]
    fn inverse_cancels_on_both_sides() {
        let a = Mat2::new(1.0, 0.5, -0.25, 0.75);
        let g = GroupPoint::new(0.3, -1.2, 0.8);
        let gi = inverse(a, g);
        assert_point_eq(multiply(a, g, gi), GroupPoint::IDENTITY, GROUP_AXIOM_TOL);
        assert_point_eq(multiply(a, gi, g), GroupPoint::IDENTITY, GROUP_AXIOM_TOL);
    }

    #[test]
    fn identity_is_neutral() {
        let a = Mat2::new(0.0, 2.0, 0.5, 0.0);
        let g = GroupPoint::new(1.0, 2.0, -0.5);
        assert_point_eq(multiply(a, GroupPoint::IDENTITY, g), g, 0.0);
        assert_point_eq(multiply(a, g, GroupPoint::IDENTITY), g, 0.0);
    }

    #[test]
    fn frame_at_identity_is_standard_basis() {
        let f = left_frame_at(Mat2::new(1.0, 1.0, 0.0, 1.0), GroupPoint::IDENTITY);
        assert_eq!(f.e1, [1.0, 0.0, 0.0]);
        assert_eq!(f.e2, [0.0, 1.0, 0.0]);
        assert_eq!(f.e3, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn frame_is_orthonormal_for_the_canonical_metric() {
        let mats = [
            Mat2::ZERO,
            Mat2::new(0.0, 1.0, 0.0, 0.0),
            Mat2::new(0.0, 2.0, 0.5, 0.0),
            Mat2::IDENTITY,
            Mat2::new(1.5, -0.7, 0.3, 0.5),
        ];
        for a in mats {
            for g in [
                GroupPoint::IDENTITY,
                GroupPoint::new(0.4, -1.0, 0.9),
                GroupPoint::new(-2.0, 3.0, -1.5),
            ] {
                let fr = left_frame_at(a, g);
                let met = metric_at(a, g);
                let cols = [fr.e1, fr.e2, fr.e3];
                for i in 0..3 {
                    for j in 0..3 {
                        let want = if i == j { 1.0 } else { 0.0 };
                        let got = crate::vec3::dot(cols[i], met.mul_vec(cols[j]));
                        assert!(
                            (got - want).abs() <= FRAME_ORTHO_TOL,
                            "A={a:?} g={g:?} i={i} j={j} got={got}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn nil3_metric_at_unit_height() {
        let met = metric_at(Mat2::new(0.0, 1.0, 0.0, 0.0), GroupPoint::new(0.0, 0.0, 1.0));
        let want = Mat3([[1.0, -1.0, 0.0], [-1.0, 2.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(met.sub(&want).max_norm() < 1e-15);
    }

    #[test]
    fn h3_metric_decays_exponentially_in_z() {
        for &z in &[-1.0, 0.5, 2.0] {
            let met = metric_at(Mat2::IDENTITY, GroupPoint::new(3.0, -7.0, z));
            let e = (-2.0 * z).exp();
            let want = Mat3([[e, 0.0, 0.0], [0.0, e, 0.0], [0.0, 0.0, 1.0]]);
            assert!(met.sub(&want).max_norm() < 1e-12 * e.max(1.0));
        }
    }

    #[test]
    fn numeric_bracket_matches_structure_constants() {
        let mats = [
            Mat2::new(0.0, 1.0, 0.0, 0.0),
            Mat2::new(0.0, 2.0, 0.5, 0.0),
            Mat2::IDENTITY,
            Mat2::new(1.5, -0.5, 1.5, 0.5),
        ];
        let pts = [
            GroupPoint::IDENTITY,
            GroupPoint::new(0.3, -0.4, 0.6),
            GroupPoint::new(-1.0, 0.2, -0.8),
        ];
        for a in mats {
            let coeff = bracket_coefficients(a);
            for g in pts {
                let fr = left_frame_at(a, g);
                // [E1, E2] = 0
                let b12 = numeric_bracket(a, 1, 2, g, BRACKET_FD_STEP);
                assert!(norm(b12) <= BRACKET_FD_TOL, "A={a:?} g={g:?} [E1,E2]={b12:?}");
                // [E3, E1] = a11 E1 + a21 E2
                let b31 = numeric_bracket(a, 3, 1, g, BRACKET_FD_STEP);
                let want = add(scale(fr.e1, coeff.e3_e1[0]), scale(fr.e2, coeff.e3_e1[1]));
                assert!(norm(sub(b31, want)) <= BRACKET_FD_TOL, "A={a:?} g={g:?}");
                // [E3, E2] = a12 E1 + a22 E2
                let b32 = numeric_bracket(a, 3, 2, g, BRACKET_FD_STEP);
                let want = add(scale(fr.e1, coeff.e3_e2[0]), scale(fr.e2, coeff.e3_e2[1]));
                assert!(norm(sub(b32, want)) <= BRACKET_FD_TOL, "A={a:?} g={g:?}");
            }
        }
    }

    #[test]
    fn left_translations_are_isometries() {
        let mats = [
            Mat2::new(0.0, 1.0, 0.0, 0.0),
            Mat2::new(0.0, 2.0, 0.5, 0.0),
            Mat2::IDENTITY,
            Mat2::new(1.0, 0.8, 0.8, 1.0),
        ];
        for a in mats {
            let g = GroupPoint::new(0.7, -0.3, 1.1);
            let x = GroupPoint::new(-0.2, 0.5, -0.6);
            let j = left_translate_map_jacobian(a, g);
            let gx = multiply(a, g, x);
            let pulled = j.transpose().mul(&metric_at(a, gx)).mul(&j);
            let want = metric_at(a, x);
            assert!(
                pulled.sub(&want).max_norm() <= crate::tol::ISOMETRY_TOL,
                "A={a:?}"
            );
        }
    }

    #[test]
    fn canonical_matrices_classify_to_their_labels() {
        assert_eq!(LieGroupModel::r3().label, GroupLabel::R3);
        assert_eq!(LieGroupModel::nil3().label, GroupLabel::Nil3);
        match LieGroupModel::sol3(2.0).unwrap().label {
            GroupLabel::Sol3 { c } => assert!((c - 2.0).abs() < 1e-12),
            l => panic!("expected Sol3, got {l}"),
        }
        match LieGroupModel::e2tilde(1.5).unwrap().label {
            GroupLabel::E2Tilde { c } => assert!((c - 1.5).abs() < 1e-12),
            l => panic!("expected E2tilde, got {l}"),
        }
        assert_eq!(LieGroupModel::h3().label, GroupLabel::H3);
        match LieGroupModel::nonunimodular(0.5, 1.0).unwrap().label {
            GroupLabel::NonUnimodular { d, b } => {
                assert!((d - 0.5).abs() < 1e-12 && (b - 1.0).abs() < 1e-12)
            }
            l => panic!("expected non-unimodular, got {l}"),
        }
    }

    #[test]
    fn classification_is_invariant_under_rotation_conjugation() {
        let a = Mat2::new(0.0, 2.0, 0.5, 0.0);
        let r = Mat2::rotation(0.37);
        let conj = r.transpose().mul(a).mul(r);
        match classify(conj).unwrap().label {
            GroupLabel::Sol3 { c } => assert!((c - 2.0).abs() < 1e-12, "c={c}"),
            l => panic!("expected Sol3, got {l}"),
        }
    }

    #[test]
    fn trace_normalization_records_scale_and_flip() {
        let m = classify(Mat2::new(3.0, 0.0, 0.0, 3.0)).unwrap();
        assert_eq!(m.label, GroupLabel::H3);
        assert!((m.trace_rescale - 3.0).abs() < 1e-15);
        assert!(!m.orientation_flipped);

        let m = classify(Mat2::new(-1.0, 0.0, 0.0, -1.0)).unwrap();
        assert_eq!(m.label, GroupLabel::H3);
        assert!(m.orientation_flipped);
    }

    #[test]
    fn admissibility_follows_the_d_invariant() {
        assert!(LieGroupModel::r3().admits_open_book);
        assert!(LieGroupModel::nil3().admits_open_book);
        assert!(LieGroupModel::sol3(1.0).unwrap().admits_open_book);
        assert!(LieGroupModel::h3().admits_open_book);
        assert!(LieGroupModel::nonunimodular(0.5, 1.0).unwrap().admits_open_book);
        assert!(!LieGroupModel::e2tilde(1.0).unwrap().admits_open_book);
        // D > 1 has complex eigenvalues
        assert!(!LieGroupModel::nonunimodular(2.0, 1.5).unwrap().admits_open_book);
    }

    #[test]
    fn product_point_is_flagged() {
        assert!(LieGroupModel::nonunimodular(0.0, 0.0)
            .unwrap()
            .is_hyperbolic_plane_product());
        assert!(!LieGroupModel::nonunimodular(0.5, 1.0)
            .unwrap()
            .is_hyperbolic_plane_product());
        let (a, b) = LieGroupModel::nonunimodular(0.0, 0.0).unwrap().canonical_ab().unwrap();
        assert!((a - 1.0).abs() < 1e-15 && b == 0.0);
    }

    #[test]
    fn canonical_nonunimodular_known_values() {
        assert_eq!(canonical_nonunimodular(0.0, 0.0).unwrap(), Mat2::IDENTITY);
        assert_eq!(
            canonical_nonunimodular(1.0, 0.0).unwrap(),
            Mat2::new(2.0, 0.0, 0.0, 0.0)
        );
        assert_eq!(
            canonical_nonunimodular(1.0, 1.0).unwrap(),
            Mat2::new(2.0, 0.0, 2.0, 0.0)
        );
        assert!(matches!(
            canonical_nonunimodular(-0.5, 1.0),
            Err(Error::NegativeParameter { .. })
        ));
    }

    #[test]
    fn d_invariant_matches_the_defining_relation() {
        for &(d, b) in &[(0.5, 1.0), (0.0, 0.0), (1.0, 2.0), (-3.0, 0.25), (2.0, 1.5)] {
            let m = LieGroupModel::nonunimodular(d, b).unwrap();
            assert!(
                (m.d_invariant - d).abs() <= crate::tol::DB_CONSISTENCY_TOL,
                "d={d} b={b} got {}",
                m.d_invariant
            );
        }
    }

    #[test]
    fn upper_triangular_input_is_returned_unchanged() {
        let a = Mat2::new(1.0, 2.0, 0.0, -1.0);
        let (upper, s) = normalize_upper_triangular(a).unwrap();
        assert_eq!(upper, a);
        assert_eq!(s, Mat2::IDENTITY);
    }

    #[test]
    fn symmetric_sol3_matrix_diagonalizes() {
        let (upper, s) = normalize_upper_triangular(Mat2::new(0.0, 1.0, 1.0, 0.0)).unwrap();
        assert!((upper.a - 1.0).abs() < 1e-15);
        assert!((upper.d + 1.0).abs() < 1e-15);
        assert_eq!(upper.c, 0.0);
        assert!(upper.b.abs() < 1e-15);
        // S is the rotation by pi/4
        assert!((s.a - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn conjugation_reconstructs_the_input() {
        for a in [
            Mat2::new(0.0, 2.0, 0.5, 0.0),
            Mat2::new(1.2, 0.3, 0.7, 0.4),
            Mat2::new(0.0, 1.0, 1e-14, 0.0),
        ] {
            let (upper, s) = normalize_upper_triangular(a).unwrap();
            let back = s.mul(upper).mul(s.transpose());
            assert!(back.sub(a).max_norm() < 1e-7, "A={a:?} back={back:?}");
            // S is a rotation
            assert!((s.det() - 1.0).abs() < 1e-14);
            assert!(s.transpose().mul(s).sub(Mat2::IDENTITY).max_norm() < 1e-14);
        }
    }

    #[test]
    fn complex_pair_has_no_real_triangularization() {
        assert!(matches!(
            normalize_upper_triangular(Mat2::new(0.0, -1.0, 1.0, 0.0)),
            Err(Error::NotRealTriangularizable { .. })
        ));
    }
}
