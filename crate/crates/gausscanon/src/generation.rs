//! Reference states and circuits: two-mode squeezed vacuum, beam splitters,
//! and distributed two-mode squeezed states.

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};
use crate::mat2;
use crate::phase_space::{BasisOrdering, CovMatrix, SymplecticTransform};
use crate::three_mode::{LocalPurities, ThreeModePureCM, PAIRS};

/// Two-mode squeezed vacuum with squeezing parameter `r >= 0`:
/// `[[cosh r I, sinh r sigma_z], [sinh r sigma_z, cosh r I]]`.
pub fn tms_cm(r: f64) -> Result<CovMatrix> {
    if r < 0.0 || !r.is_finite() {
        return Err(Error::Domain(format!(
            "two-mode squeezing must be >= 0 (got {r}); negative r is a local rotation away"
        )));
    }
    let ch = r.cosh();
    let sh = r.sinh();
    let mut m = DMatrix::zeros(4, 4);
    mat2::set_block(&mut m, 0, 0, &(Matrix2::identity() * ch));
    mat2::set_block(&mut m, 1, 1, &(Matrix2::identity() * ch));
    let off = mat2::sigma_z() * sh;
    mat2::set_block(&mut m, 0, 1, &off);
    mat2::set_block(&mut m, 1, 0, &off);
    Ok(CovMatrix::from_trusted(m, BasisOrdering::ModeOrdered))
}

/// Beam splitter acting on modes 2 and 3 of a three-mode system
/// (mode 1 untouched), with transmissivity `cos^2 theta`:
/// `I ⊕ [[cos theta I, sin theta I], [-sin theta I, cos theta I]]`.
pub fn beam_splitter(theta: f64) -> SymplecticTransform {
    let c = theta.cos();
    let s = theta.sin();
    let mut m = DMatrix::zeros(6, 6);
    mat2::set_block(&mut m, 0, 0, &Matrix2::identity());
    mat2::set_block(&mut m, 1, 1, &(Matrix2::identity() * c));
    mat2::set_block(&mut m, 1, 2, &(Matrix2::identity() * s));
    mat2::set_block(&mut m, 2, 1, &(Matrix2::identity() * -s));
    mat2::set_block(&mut m, 2, 2, &(Matrix2::identity() * c));
    SymplecticTransform::from_trusted(m, BasisOrdering::ModeOrdered)
}

/// Distributed two-mode squeezed state: one arm of a two-mode squeezed vacuum
/// split on a beam splitter with a vacuum mode,
/// `gamma(s, theta) = B(theta) [gamma_tms(s) ⊕ I] B(theta)^T`.
///
/// Its local purities are `lambda_1 = cosh s`,
/// `lambda_2 = sin^2 theta + cos^2 theta cosh s`,
/// `lambda_3 = cos^2 theta + sin^2 theta cosh s`, which always satisfy
/// `lambda_1 + 1 = lambda_2 + lambda_3`.
pub fn distributed_tms(s: f64, theta: f64) -> Result<ThreeModePureCM> {
    let tms = tms_cm(s)?;
    let mut m = DMatrix::identity(6, 6);
    m.view_mut((0, 0), (4, 4)).copy_from(tms.matrix());
    let b = beam_splitter(theta);
    let out = b.matrix() * m * b.matrix().transpose();
    let gamma = CovMatrix::from_trusted(out, BasisOrdering::ModeOrdered);
    let ch = s.cosh();
    let (sin2, cos2) = (theta.sin() * theta.sin(), theta.cos() * theta.cos());
    let lambda = LocalPurities::new(ch, sin2 + cos2 * ch, cos2 + sin2 * ch)?;
    let d: Vec<(f64, f64)> = PAIRS
        .iter()
        .map(|&(i, j)| {
            let block = mat2::get_block(gamma.matrix(), i, j);
            (block[(0, 0)], block[(1, 1)])
        })
        .collect();
    Ok(ThreeModePureCM {
        gamma,
        d: [d[0], d[1], d[2]],
        lambda,
    })
}

/// Invert the purity formulas of [`distributed_tms`]: find `(s, theta)` with
/// `lambda_2 = sin^2 theta + cos^2 theta cosh s` and
/// `lambda_3 = cos^2 theta + sin^2 theta cosh s`, i.e.
/// `cosh s = lambda_2 + lambda_3 - 1` and
/// `cos^2 theta = (lambda_2 - 1)/(cosh s - 1)`.
///
/// `(1, 1)` maps to `(0, 0)` by convention.
pub fn distributed_params_for(l2: f64, l3: f64) -> Result<(f64, f64)> {
    if l2 < 1.0 || l3 < 1.0 {
        return Err(Error::Domain(format!(
            "target purities must be >= 1 (got {l2}, {l3})"
        )));
    }
    let ch = l2 + l3 - 1.0;
    if ch - 1.0 < 1e-14 {
        return Ok((0.0, 0.0));
    }
    let cos2 = ((l2 - 1.0) / (ch - 1.0)).clamp(0.0, 1.0);
    let s = ch.acosh();
    // lambda_2 carries the cos^2 factor, so theta = acos(sqrt(cos^2)) puts the
    // larger of the two purities on mode 2 when cos^2 > 1/2.
    let theta = cos2.sqrt().acos();
    Ok((s, theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::{symplectic_form, DEFAULT_TOL};
    use crate::three_mode::extract_purities;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tms_examples() {
        let g = tms_cm(0.0).unwrap();
        assert_abs_diff_eq!(
            mat2::max_abs(&(g.matrix() - DMatrix::<f64>::identity(4, 4))),
            0.0
        );
        let g = tms_cm(1.0).unwrap();
        assert!(g.is_pure(DEFAULT_TOL).unwrap());
        let nu = g.symplectic_eigenvalues().unwrap();
        assert_abs_diff_eq!(nu[0], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(nu[1], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(g.block(0, 0)[(0, 0)], 1.0_f64.cosh(), epsilon = 1e-12);
        // reduced single-mode purity 1/cosh(r)
        let a = g.block(0, 0);
        assert_abs_diff_eq!(
            a.determinant().sqrt().recip(),
            1.0 / 1.0_f64.cosh(),
            epsilon = 1e-12
        );
        assert!(tms_cm(-0.1).is_err());
    }

    #[test]
    fn beam_splitter_is_orthogonal_symplectic() {
        for theta in [0.0, 0.4, std::f64::consts::FRAC_PI_2] {
            let b = beam_splitter(theta);
            assert!(b.symplectic_defect() < 1e-12);
            let m = b.matrix();
            let orth = m * m.transpose() - DMatrix::<f64>::identity(6, 6);
            assert!(mat2::max_abs(&orth) < 1e-12);
        }
        let b = beam_splitter(0.0);
        assert_abs_diff_eq!(
            mat2::max_abs(&(b.matrix() - DMatrix::<f64>::identity(6, 6))),
            0.0
        );
        // theta = pi/2 swaps modes 2 and 3 up to sign
        let b = beam_splitter(std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!(b.matrix()[(2, 4)], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.matrix()[(4, 2)], -1.0, epsilon = 1e-12);
    }

    #[test]
    fn distributed_tms_purities_and_blocks() {
        let s = 1.0;
        let theta = std::f64::consts::FRAC_PI_4;
        let dt = distributed_tms(s, theta).unwrap();
        let j = symplectic_form(3);
        let res = mat2::max_abs(&(dt.gamma.matrix() * &j * dt.gamma.matrix() - &j));
        assert!(res < 1e-9);

        let ch = s.cosh();
        let p = extract_purities(&dt.gamma).unwrap();
        assert_abs_diff_eq!(p.get(0), ch, epsilon = 1e-9);
        assert_abs_diff_eq!(p.get(1), (ch + 1.0) / 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(p.get(2), (ch + 1.0) / 2.0, epsilon = 1e-9);

        // raw blocks: D12 = cos th sinh s sigma_z, D13 = -sin th sinh s sigma_z,
        // D23 = -sin th cos th (cosh s - 1) I
        let sh = s.sinh();
        let (c, sn) = (theta.cos(), theta.sin());
        let b12 = dt.gamma.block(0, 1);
        assert_abs_diff_eq!((b12 - mat2::sigma_z() * (c * sh)).norm(), 0.0, epsilon = 1e-12);
        let b13 = dt.gamma.block(0, 2);
        assert_abs_diff_eq!((b13 + mat2::sigma_z() * (sn * sh)).norm(), 0.0, epsilon = 1e-12);
        let b23 = dt.gamma.block(1, 2);
        assert_abs_diff_eq!(
            (b23 + Matrix2::identity() * (sn * c * (ch - 1.0))).norm(),
            0.0,
            epsilon = 1e-12
        );

        // characteristic equation
        assert_abs_diff_eq!(p.get(0) + 1.0, p.get(1) + p.get(2), epsilon = 1e-10);

        // s = 0 gives the vacuum
        let dt0 = distributed_tms(0.0, 0.7).unwrap();
        assert_abs_diff_eq!(
            mat2::max_abs(&(dt0.gamma.matrix() - DMatrix::<f64>::identity(6, 6))),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn distributed_params_roundtrip() {
        for (l2, l3) in [(1.0, 1.0), (1.4, 2.3), (3.0, 1.0), (2.0, 2.0)] {
            let (s, theta) = distributed_params_for(l2, l3).unwrap();
            let dt = distributed_tms(s, theta).unwrap();
            assert_abs_diff_eq!(dt.lambda.get(1), l2, epsilon = 1e-8);
            assert_abs_diff_eq!(dt.lambda.get(2), l3, epsilon = 1e-8);
        }
        assert_eq!(distributed_params_for(1.0, 1.0).unwrap(), (0.0, 0.0));
    }
}
