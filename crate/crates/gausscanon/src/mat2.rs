//! Small fixed-size helpers for the 2x2 blocks every algorithm in this crate
//! chews on: planar rotations, Pauli matrices, and a closed-form signed
//! singular value decomposition with both factors in SO(2).

use nalgebra::{DMatrix, Matrix2};

/// Planar rotation `rot(a) = [[cos a, sin a], [-sin a, cos a]]`.
///
/// Angles add under multiplication: `rot(a) * rot(b) = rot(a + b)`, and
/// `rot(a).transpose() = rot(-a)`. `rot(pi)` is `-I`.
pub fn rot(alpha: f64) -> Matrix2<f64> {
    let (s, c) = alpha.sin_cos();
    Matrix2::new(c, s, -s, c)
}

pub fn sigma_x() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, 1.0, 0.0)
}

pub fn sigma_z() -> Matrix2<f64> {
    Matrix2::new(1.0, 0.0, 0.0, -1.0)
}

/// Single-mode symplectic form `[[0, -1], [1, 0]]`.
pub fn j1() -> Matrix2<f64> {
    Matrix2::new(0.0, -1.0, 1.0, 0.0)
}

/// Single-mode squeezer `diag(x, 1/x)`.
pub fn squeeze(x: f64) -> Matrix2<f64> {
    Matrix2::new(x, 0.0, 0.0, 1.0 / x)
}

/// Signed SVD of a real 2x2 matrix with rotation factors on both sides:
/// `m = rot(left_angle) * diag(d_plus, d_minus) * rot(right_angle)` with
/// `d_plus >= |d_minus|` (so `d_plus >= 0` and `sign(d_minus) = sign(det m)`).
///
/// The representation is unique up to shifting both angles by pi; `atan2`
/// branch cuts pick one of the two representatives deterministically.
#[derive(Clone, Copy, Debug)]
pub struct SignedSvd {
    pub left_angle: f64,
    pub right_angle: f64,
    pub d_plus: f64,
    pub d_minus: f64,
}

impl SignedSvd {
    /// Sum of the two angles (the "rotation part" angle). For a block
    /// proportional to a rotation, `m = c * rot(angle_sum)`.
    pub fn angle_sum(&self) -> f64 {
        self.left_angle + self.right_angle
    }

    /// Difference of the two angles. For a block proportional to a
    /// reflection, `m = c * rot(angle_diff) * sigma_z`.
    pub fn angle_diff(&self) -> f64 {
        self.left_angle - self.right_angle
    }

    /// Singular values, largest first.
    pub fn singular_values(&self) -> (f64, f64) {
        (self.d_plus, self.d_minus.abs())
    }
}

/// Compute the signed SVD of `m` in closed form.
pub fn signed_svd(m: &Matrix2<f64>) -> SignedSvd {
    // Split m into its rotation-like and reflection-like parts:
    //   (m11 + m22)/2 = p cos(a+b)   (m12 - m21)/2 = p sin(a+b)
    //   (m11 - m22)/2 = q cos(a-b)  -(m12 + m21)/2 = q sin(a-b)
    // with p = (d+ + d-)/2 >= 0 and q = (d+ - d-)/2 >= 0.
    let u = (m[(0, 0)] + m[(1, 1)]) / 2.0;
    let v = (m[(0, 1)] - m[(1, 0)]) / 2.0;
    let w = (m[(0, 0)] - m[(1, 1)]) / 2.0;
    let z = -(m[(0, 1)] + m[(1, 0)]) / 2.0;
    let p = u.hypot(v);
    let q = w.hypot(z);
    let sum = v.atan2(u);
    let diff = z.atan2(w);
    SignedSvd {
        left_angle: (sum + diff) / 2.0,
        right_angle: (sum - diff) / 2.0,
        d_plus: p + q,
        d_minus: p - q,
    }
}

/// Eigendecomposition of a symmetric 2x2 matrix as `a = rot(psi) * diag(e1, e2) * rot(psi)^T`
/// with `e1 >= e2` for positive-semidefinite input. Thin wrapper over
/// [`signed_svd`], which reduces to an eigendecomposition for symmetric input.
pub fn eig_sym2(a: &Matrix2<f64>) -> (f64, f64, f64) {
    let sym = (a + a.transpose()) / 2.0;
    let svd = signed_svd(&sym);
    // For symmetric input the angle sum is 0 or pi (atan2 of a vanishing
    // antisymmetric part). A pi sum means negative trace: the singular values
    // flip sign as eigenvalues and the ordering swaps.
    if svd.angle_sum().cos() < 0.0 {
        (
            -svd.d_minus,
            -svd.d_plus,
            svd.angle_diff() / 2.0 + std::f64::consts::FRAC_PI_2,
        )
    } else {
        (svd.d_plus, svd.d_minus, svd.left_angle)
    }
}

/// Read the 2x2 block of a mode-ordered matrix at mode row `i`, mode column `j`.
pub fn get_block(m: &DMatrix<f64>, i: usize, j: usize) -> Matrix2<f64> {
    Matrix2::new(
        m[(2 * i, 2 * j)],
        m[(2 * i, 2 * j + 1)],
        m[(2 * i + 1, 2 * j)],
        m[(2 * i + 1, 2 * j + 1)],
    )
}

/// Write the 2x2 block of a mode-ordered matrix at mode row `i`, mode column `j`.
pub fn set_block(m: &mut DMatrix<f64>, i: usize, j: usize, b: &Matrix2<f64>) {
    m[(2 * i, 2 * j)] = b[(0, 0)];
    m[(2 * i, 2 * j + 1)] = b[(0, 1)];
    m[(2 * i + 1, 2 * j)] = b[(1, 0)];
    m[(2 * i + 1, 2 * j + 1)] = b[(1, 1)];
}

/// Direct sum of n 2x2 blocks into a 2n x 2n mode-ordered matrix.
pub fn direct_sum(blocks: &[Matrix2<f64>]) -> DMatrix<f64> {
    let n = blocks.len();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for (k, b) in blocks.iter().enumerate() {
        set_block(&mut out, k, k, b);
    }
    out
}

/// Max absolute entry of a dynamic matrix.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Max absolute entry of a 2x2 matrix.
pub fn max_abs2(m: &Matrix2<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}
