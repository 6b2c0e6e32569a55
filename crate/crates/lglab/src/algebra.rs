//! 2x2 matrix algebra and the closed-form exponential `z -> e^{zA}`.
//!
//! The exponential drives everything else (group law, frames, metric), so it
//! comes in two independent implementations: a closed form split by the
//! discriminant of A, and a scaling-and-squaring power series used as an
//! oracle in tests.

use crate::error::{Error, Result};
use crate::tol::EPS_BRANCH;
use crate::vec3::Vec3;

/// Row-major 2x2 real matrix [[a, b], [c, d]].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const ZERO: Mat2 = Mat2 { a: 0.0, b: 0.0, c: 0.0, d: 0.0 };
    pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn trace(self) -> f64 {
        self.a + self.d
    }

    pub fn det(self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn transpose(self) -> Mat2 {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn scale(self, k: f64) -> Mat2 {
        Mat2::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    pub fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }

    pub fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }

    pub fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn mul_vec(self, v: [f64; 2]) -> [f64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    /// Counterclockwise rotation by `theta`.
    pub fn rotation(theta: f64) -> Mat2 {
        let (s, c) = theta.sin_cos();
        Mat2::new(c, -s, s, c)
    }

    pub fn max_norm(self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }
}

/// Row-major 3x3 real matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn from_cols(c0: Vec3, c1: Vec3, c2: Vec3) -> Mat3 {
        Mat3([
            [c0[0], c1[0], c2[0]],
            [c0[1], c1[1], c2[1]],
            [c0[2], c1[2], c2[2]],
        ])
    }

    pub fn col(&self, j: usize) -> Vec3 {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let mut r = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        Mat3(r)
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Inverse via the adjugate; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Mat3> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let m = &self.0;
        let inv_det = 1.0 / det;
        let mut r = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let (r0, r1) = match j {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let (c0, c1) = match i {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                r[i][j] = sign * minor * inv_det;
            }
        }
        Some(Mat3(r))
    }

    pub fn sub(&self, o: &Mat3) -> Mat3 {
        let mut r = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = self.0[i][j] - o.0[i][j];
            }
        }
        Mat3(r)
    }

    pub fn max_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }
}

/// Eigenvalue structure of a 2x2 matrix, with the discriminant
/// `delta = trace^2/4 - det` that separates the branches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExpBranch {
    /// Two distinct real eigenvalues (`delta > 0`): hyperbolic functions.
    Distinct { delta: f64 },
    /// A repeated real eigenvalue (`|delta| <= EPS_BRANCH`): polynomial limit form.
    Repeated { delta: f64 },
    /// A complex conjugate pair (`delta < 0`): trigonometric functions.
    ComplexPair { delta: f64 },
}

impl ExpBranch {
    pub fn delta(self) -> f64 {
        match self {
            ExpBranch::Distinct { delta }
            | ExpBranch::Repeated { delta }
            | ExpBranch::ComplexPair { delta } => delta,
        }
    }
}

/// Branch of the closed-form exponential that applies to `A`.
pub fn classify_exp_branch(a: Mat2) -> ExpBranch {
    let h = 0.5 * a.trace();
    let delta = h * h - a.det();
    if delta.abs() <= EPS_BRANCH {
        ExpBranch::Repeated { delta }
    } else if delta > 0.0 {
        ExpBranch::Distinct { delta }
    } else {
        ExpBranch::ComplexPair { delta }
    }
}

fn check_finite(a: Mat2, z: f64, context: &'static str) -> Result<()> {
    if a.is_finite() && z.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { context })
    }
}

/// `e^{zA}` without input validation; shared by the group operations, which
/// take finiteness as a precondition.
pub(crate) fn exp2_raw(a: Mat2, z: f64) -> Mat2 {
    // Split A = h I + B with B trace-free, so B^2 = delta I and
    // e^{zA} = e^{hz} (c0(z) I + c1(z) B) with c0, c1 per branch.
    let h = 0.5 * a.trace();
    let b = Mat2::new(a.a - h, a.b, a.c, a.d - h);
    let delta = h * h - a.det();
    let (c0, c1) = if delta.abs() <= EPS_BRANCH {
        // Limit form plus the first Taylor correction; keeps the seam with the
        // other branches below 1e-17 for |z| <= 2.
        let dz2 = delta * z * z;
        (1.0 + 0.5 * dz2, z * (1.0 + dz2 / 6.0))
    } else if delta > 0.0 {
        let s = delta.sqrt();
        ((s * z).cosh(), (s * z).sinh() / s)
    } else {
        let w = (-delta).sqrt();
        ((w * z).cos(), (w * z).sin() / w)
    };
    let e = (h * z).exp();
    Mat2::new(
        e * (c0 + c1 * b.a),
        e * (c1 * b.b),
        e * (c1 * b.c),
        e * (c0 + c1 * b.d),
    )
}

/// Closed-form `e^{zA}`.
pub fn exp2(a: Mat2, z: f64) -> Result<Mat2> {
    check_finite(a, z, "exp2")?;
    Ok(exp2_raw(a, z))
}

/// Independent `e^{zA}` oracle: scale `zA` until its max-norm is at most 1/2,
/// sum the power series to convergence, then square back up.
pub fn exp2_oracle(a: Mat2, z: f64) -> Result<Mat2> {
    check_finite(a, z, "exp2_oracle")?;
    let mut m = a.scale(z);
    let mut squarings = 0u32;
    while m.max_norm() > 0.5 {
        m = m.scale(0.5);
        squarings += 1;
    }
    let mut sum = Mat2::IDENTITY;
    let mut term = Mat2::IDENTITY;
    for n in 1..=60 {
        term = term.mul(m).scale(1.0 / n as f64);
        sum = sum.add(term);
        if term.max_norm() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.mul(sum);
    }
    Ok(sum)
}

/// Moduli boundary: minimum admissible `b` for a given `D`.
pub fn m_of_d(d: f64) -> f64 {
    if d > 1.0 {
        (d - 1.0).sqrt()
    } else {
        0.0
    }
}

/// Canonical parameter `a >= 0` with `(1 - a^2)(1 + b^2) = D`.
///
/// Defined exactly when `b >= m_of_d(d)`; at equality the solution is `a = 0`.
pub fn solve_a_from_db(d: f64, b: f64) -> Result<f64> {
    if !(d.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite { context: "solve_a_from_db" });
    }
    if b < 0.0 {
        return Err(Error::NegativeParameter { name: "b", value: b });
    }
    let min_b = m_of_d(d);
    if b < min_b {
        return Err(Error::BelowModuliBoundary { d, b, min_b });
    }
    // Roundoff at the boundary can push the square just below zero.
    Ok((1.0 - d / (1.0 + b * b)).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::ORACLE_AGREEMENT;

    fn assert_mat2_eq(got: Mat2, want: Mat2, tol: f64) {
        assert!(
            got.sub(want).max_norm() <= tol,
            "got {got:?}, want {want:?} (tol {tol:e})"
        );
    }

    #[test]
    fn exp_of_zero_matrix_is_identity_for_any_z() {
        assert_mat2_eq(exp2(Mat2::ZERO, 7.0).unwrap(), Mat2::IDENTITY, 0.0);
    }

    #[test]
    fn exp_of_nilpotent_is_linear_in_z() {
        let n = Mat2::new(0.0, 1.0, 0.0, 0.0);
        assert_mat2_eq(exp2(n, 2.0).unwrap(), Mat2::new(1.0, 2.0, 0.0, 1.0), 0.0);
    }

    #[test]
    fn exp_of_hyperbolic_generator_matches_cosh_sinh() {
        // e^{z [[0,1],[1,0]]} = [[cosh z, sinh z], [sinh z, cosh z]]
        let a = Mat2::new(0.0, 1.0, 1.0, 0.0);
        let got = exp2(a, 1.0).unwrap();
        let want = Mat2::new(
            1.5430806348152437,
            1.1752011936438014,
            1.1752011936438014,
            1.5430806348152437,
        );
        assert_mat2_eq(got, want, 1e-15);
        assert_mat2_eq(exp2_oracle(a, 1.0).unwrap(), want, 1e-14);
    }

    #[test]
    fn exp_of_rotation_generator_matches_cos_sin() {
        let a = Mat2::new(0.0, -1.0, 1.0, 0.0);
        let z = std::f64::consts::FRAC_PI_2;
        assert_mat2_eq(exp2(a, z).unwrap(), Mat2::new(0.0, -1.0, 1.0, 0.0), 1e-15);
    }

    #[test]
    fn oracle_known_values() {
        let e = std::f64::consts::E;
        assert_mat2_eq(exp2_oracle(Mat2::ZERO, 3.0).unwrap(), Mat2::IDENTITY, 0.0);
        assert_mat2_eq(
            exp2_oracle(Mat2::IDENTITY, 1.0).unwrap(),
            Mat2::new(e, 0.0, 0.0, e),
            1e-14,
        );
        // Jordan block: e^{[[1,1],[0,1]]} = [[e, e], [0, e]]
        assert_mat2_eq(
            exp2_oracle(Mat2::new(1.0, 1.0, 0.0, 1.0), 1.0).unwrap(),
            Mat2::new(e, e, 0.0, e),
            1e-14,
        );
    }

    #[test]
    fn branch_classification() {
        assert!(matches!(
            classify_exp_branch(Mat2::new(2.0, 0.0, 0.0, 3.0)),
            ExpBranch::Distinct { .. }
        ));
        assert!(matches!(
            classify_exp_branch(Mat2::new(0.0, -1.0, 1.0, 0.0)),
            ExpBranch::ComplexPair { .. }
        ));
        assert!(matches!(
            classify_exp_branch(Mat2::new(1.0, 1.0, 0.0, 1.0)),
            ExpBranch::Repeated { .. }
        ));
        let delta = classify_exp_branch(Mat2::new(2.0, 0.0, 0.0, 3.0)).delta();
        assert!((delta - 0.25).abs() < 1e-15);
    }

    #[test]
    fn closed_form_is_continuous_across_the_branch_seam() {
        // A = [[h, 1], [delta, h]] has discriminant exactly delta.
        for &delta in &[-1e-8, -1e-10, 0.0, 1e-10, 1e-8] {
            for &h in &[-1.0, 0.0, 0.7] {
                for &z in &[-2.0, -0.3, 1.0, 2.0] {
                    let a = Mat2::new(h, 1.0, delta, h);
                    let got = exp2(a, z).unwrap();
                    let want = exp2_oracle(a, z).unwrap();
                    assert_mat2_eq(got, want, ORACLE_AGREEMENT);
                }
            }
        }
    }

    #[test]
    fn exp_determinant_matches_trace() {
        // det e^{zA} = e^{z tr A}
        let a = Mat2::new(1.0, 2.0, -0.5, 0.25);
        for &z in &[-2.0, -1.0, 0.5, 2.0] {
            let m = exp2(a, z).unwrap();
            assert!((m.det() - (z * a.trace()).exp()).abs() < 1e-12 * m.det().abs().max(1.0));
        }
    }

    #[test]
    fn non_finite_inputs_are_rejected() {
        assert!(matches!(
            exp2(Mat2::new(f64::NAN, 0.0, 0.0, 0.0), 1.0),
            Err(Error::NonFinite { .. })
        ));
        assert!(matches!(
            exp2_oracle(Mat2::IDENTITY, f64::INFINITY),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn moduli_boundary_values() {
        assert!((m_of_d(2.0) - 1.0).abs() < 1e-15);
        assert_eq!(m_of_d(0.5), 0.0);
        assert_eq!(m_of_d(1.0), 0.0);
    }

    #[test]
    fn a_from_db_known_points() {
        assert_eq!(solve_a_from_db(1.0, 0.0).unwrap(), 0.0);
        assert_eq!(solve_a_from_db(0.0, 0.0).unwrap(), 1.0);
        assert!((solve_a_from_db(2.0, 1.0).unwrap()).abs() < 1e-12);
        assert!(matches!(
            solve_a_from_db(2.0, 0.5),
            Err(Error::BelowModuliBoundary { .. })
        ));
        assert!(matches!(
            solve_a_from_db(1.0, -0.1),
            Err(Error::NegativeParameter { .. })
        ));
    }

    #[test]
    fn a_from_db_round_trips_through_the_defining_relation() {
        for &d in &[-2.0, -0.5, 0.0, 0.5, 1.0, 1.5, 3.0] {
            for &b in &[0.0, 0.25, 1.0, 2.5] {
                if b < m_of_d(d) {
                    continue;
                }
                let a = solve_a_from_db(d, b).unwrap();
                assert!(
                    ((1.0 - a * a) * (1.0 + b * b) - d).abs() < 1e-12,
                    "d={d} b={b} a={a}"
                );
            }
        }
    }

    #[test]
    fn mat3_inverse_round_trip() {
        let m = Mat3([[2.0, 1.0, 0.0], [0.5, 3.0, -1.0], [0.0, 0.25, 1.5]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).sub(&Mat3::IDENTITY).max_norm() < 1e-14);
        assert!(inv.mul(&m).sub(&Mat3::IDENTITY).max_norm() < 1e-14);
    }
}
