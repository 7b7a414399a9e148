//! Phase-space conventions, physicality and purity tests, Williamson
//! machinery, and basis reordering.
//!
//! Conventions used throughout the crate:
//!
//! - Covariance matrices are dimensionless with **vacuum = identity**
//!   (`gamma_vac = I`, not `I/2`).
//! - First moments (displacements) are not represented at all; they are
//!   irrelevant for local-unitary equivalence and can always be removed by
//!   displacements.
//! - The symplectic form is `J = ⊕_k [[0, -1], [1, 0]]` in the mode-ordered
//!   basis `(x1, p1, ..., xn, pn)`.
//! - A state is physical iff `gamma - iJ >= 0`, and pure iff additionally
//!   `det gamma = 1` (equivalently `gamma J gamma = J`).

use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat2;

/// Default absolute tolerance for physicality/purity checks; scaled by
/// `max(1, |gamma|_max)` wherever a covariance matrix is being tested, so that
/// states with large squeezing do not trip false negatives.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Basis layout of a phase-space matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisOrdering {
    /// `(x1, p1, x2, p2, ..., xn, pn)` - indices of one mode grouped.
    #[serde(rename = "mode")]
    ModeOrdered,
    /// `(x1, ..., xn, p1, ..., pn)` - all position indices first.
    #[serde(rename = "xp")]
    XpOrdered,
}

impl BasisOrdering {
    pub fn other(self) -> Self {
        match self {
            Self::ModeOrdered => Self::XpOrdered,
            Self::XpOrdered => Self::ModeOrdered,
        }
    }
}

/// Symplectic form `J` for `n` modes in the mode-ordered basis.
pub fn symplectic_form(n: usize) -> DMatrix<f64> {
    assert!(n >= 1, "need at least one mode");
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(2 * k, 2 * k + 1)] = -1.0;
        j[(2 * k + 1, 2 * k)] = 1.0;
    }
    j
}

/// Permute a `2n x 2n` matrix between the two basis orderings.
///
/// This is an exact permutation (entries are copied, never combined), so the
/// round trip is bitwise exact.
pub fn reorder(m: &DMatrix<f64>, from: BasisOrdering) -> DMatrix<f64> {
    let dim = m.nrows();
    assert_eq!(dim % 2, 0, "phase-space dimension must be even");
    let n = dim / 2;
    // mode-ordered index of the k-th xp-ordered coordinate
    let mode_idx = |k: usize| if k < n { 2 * k } else { 2 * (k - n) + 1 };
    let mut out = DMatrix::zeros(dim, dim);
    match from {
        BasisOrdering::ModeOrdered => {
            for i in 0..dim {
                for j in 0..dim {
                    out[(i, j)] = m[(mode_idx(i), mode_idx(j))];
                }
            }
        }
        BasisOrdering::XpOrdered => {
            for i in 0..dim {
                for j in 0..dim {
                    out[(mode_idx(i), mode_idx(j))] = m[(i, j)];
                }
            }
        }
    }
    out
}

/// Real symmetric covariance matrix of an `n`-mode Gaussian state.
///
/// Construction validates symmetry (up to `1e-10`, relative to the largest
/// entry) and strict positive definiteness; the stored entries are the
/// symmetrized input.
#[derive(Clone, Debug, PartialEq)]
pub struct CovMatrix {
    n_modes: usize,
    entries: DMatrix<f64>,
    ordering: BasisOrdering,
}

impl CovMatrix {
    pub fn new(entries: DMatrix<f64>, ordering: BasisOrdering) -> Result<Self> {
        let dim = check_phase_space_dims(&entries)?;
        let n_modes = dim / 2;
        let scale = mat2::max_abs(&entries).max(1.0);
        let asym = mat2::max_abs(&(&entries - entries.transpose())) / 2.0;
        if asym > 1e-10 * scale {
            return Err(Error::NotSymmetric(asym));
        }
        let sym = (&entries + entries.transpose()) / 2.0;
        let min_eig = min_sym_eigenvalue(&sym);
        if min_eig <= 0.0 {
            return Err(Error::NotPositiveDefinite(min_eig));
        }
        Ok(Self {
            n_modes,
            entries: sym,
            ordering,
        })
    }

    /// Vacuum state of `n` modes (identity matrix).
    pub fn vacuum(n: usize) -> Self {
        Self {
            n_modes: n,
            entries: DMatrix::identity(2 * n, 2 * n),
            ordering: BasisOrdering::ModeOrdered,
        }
    }

    /// Wrap a matrix that is known-good by construction. Symmetrizes but
    /// performs no further checks.
    pub(crate) fn from_trusted(entries: DMatrix<f64>, ordering: BasisOrdering) -> Self {
        let n_modes = entries.nrows() / 2;
        let sym = (&entries + entries.transpose()) / 2.0;
        Self {
            n_modes,
            entries: sym,
            ordering,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn ordering(&self) -> BasisOrdering {
        self.ordering
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// 2x2 covariance block between modes `i` and `j` (mode-ordered only).
    pub fn block(&self, i: usize, j: usize) -> Matrix2<f64> {
        assert_eq!(self.ordering, BasisOrdering::ModeOrdered);
        mat2::get_block(&self.entries, i, j)
    }

    /// The same state in the other basis ordering.
    pub fn reordered(&self) -> Self {
        Self {
            n_modes: self.n_modes,
            entries: reorder(&self.entries, self.ordering),
            ordering: self.ordering.other(),
        }
    }

    /// Ensure mode ordering, reordering if necessary.
    pub fn into_mode_ordered(self) -> Self {
        match self.ordering {
            BasisOrdering::ModeOrdered => self,
            BasisOrdering::XpOrdered => self.reordered(),
        }
    }

    /// Smallest eigenvalue of the Hermitian matrix `gamma - iJ`. Nonnegative
    /// (up to tolerance) exactly for physical states.
    pub fn uncertainty_defect(&self) -> f64 {
        let gamma = self.mode_ordered_entries();
        let n = self.n_modes;
        let j = symplectic_form(n);
        // gamma - iJ >= 0 iff the real embedding [[gamma, J], [-J, gamma]] >= 0
        // (eigenvalues come doubled).
        let dim = 2 * n;
        let mut emb = DMatrix::zeros(2 * dim, 2 * dim);
        emb.view_mut((0, 0), (dim, dim)).copy_from(&gamma);
        emb.view_mut((0, dim), (dim, dim)).copy_from(&j);
        emb.view_mut((dim, 0), (dim, dim)).copy_from(&(-&j));
        emb.view_mut((dim, dim), (dim, dim)).copy_from(&gamma);
        min_sym_eigenvalue(&emb)
    }

    /// Uncertainty-relation test `gamma - iJ >= -tol`, with `tol` scaled by
    /// the largest entry of `gamma`.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.uncertainty_defect() >= -tol * self.tol_scale()
    }

    /// Residual of the pure-state condition: `max |gamma J gamma - J|`.
    pub fn purity_residual(&self) -> f64 {
        let gamma = self.mode_ordered_entries();
        let j = symplectic_form(self.n_modes);
        mat2::max_abs(&(&gamma * &j * &gamma - &j))
    }

    /// Purity test. Checks both `gamma J gamma = J` and `det gamma = 1`;
    /// the determinant check gets a 10x looser threshold (it accumulates more
    /// roundoff), and a disagreement beyond a factor 100 between the two
    /// verdicts is reported as an internal-consistency error.
    pub fn is_pure(&self, tol: f64) -> Result<bool> {
        if !self.is_physical(tol.max(DEFAULT_TOL) * 10.0) {
            return Err(Error::NotPhysical(self.uncertainty_defect()));
        }
        let t = tol * self.tol_scale();
        let residual = self.purity_residual();
        let det_defect = (self.entries.determinant() - 1.0).abs();
        let by_residual = residual < t;
        let by_det = det_defect < 10.0 * t;
        if by_residual != by_det {
            // Allow a grey zone before declaring the two routes inconsistent.
            let clearly_pure = residual < t && det_defect > 1000.0 * t;
            let clearly_mixed = residual > 100.0 * t && det_defect < 10.0 * t;
            if clearly_pure || clearly_mixed {
                return Err(Error::PurityInconsistent {
                    residual,
                    det_defect,
                });
            }
        }
        Ok(by_residual && by_det)
    }

    /// `tr(rho^2) = det(gamma)^(-1/2)`.
    pub fn purity(&self) -> Result<f64> {
        if !self.is_physical(DEFAULT_TOL) {
            return Err(Error::NotPhysical(self.uncertainty_defect()));
        }
        Ok(self.entries.determinant().powf(-0.5))
    }

    /// Symplectic eigenvalues (moduli of the eigenvalues of `iJ gamma`),
    /// deduplicated to `n` values sorted descending.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let gamma = self.mode_ordered_entries();
        let j = symplectic_form(self.n_modes);
        // The eigenvalues of iJ gamma are +-nu_k; their squares are the
        // eigenvalues of the symmetric matrix -M^2 = M M^T with
        // M = gamma^(1/2) J gamma^(1/2), each appearing twice.
        let root = sym_sqrt(&gamma)?;
        let m = &root * &j * &root;
        let mm = &m * m.transpose();
        let mut sq = sym_eigenvalues(&mm);
        sq.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut nu = Vec::with_capacity(self.n_modes);
        for k in 0..self.n_modes {
            let a = sq[2 * k].max(0.0).sqrt();
            let b = sq[2 * k + 1].max(0.0).sqrt();
            if (a - b).abs() > 1e-6 * a.max(1.0) {
                return Err(Error::SolverFailed(format!(
                    "symplectic eigenvalues failed to pair: {a} vs {b}"
                )));
            }
            nu.push((a + b) / 2.0);
        }
        Ok(nu)
    }

    fn tol_scale(&self) -> f64 {
        mat2::max_abs(&self.entries).max(1.0)
    }

    fn mode_ordered_entries(&self) -> DMatrix<f64> {
        match self.ordering {
            BasisOrdering::ModeOrdered => self.entries.clone(),
            BasisOrdering::XpOrdered => reorder(&self.entries, BasisOrdering::XpOrdered),
        }
    }
}

/// Real symplectic matrix (a Gaussian unitary on phase space).
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticTransform {
    n_modes: usize,
    entries: DMatrix<f64>,
    ordering: BasisOrdering,
}

impl SymplecticTransform {
    pub fn new(entries: DMatrix<f64>, ordering: BasisOrdering) -> Result<Self> {
        let dim = check_phase_space_dims(&entries)?;
        let n_modes = dim / 2;
        let t = Self {
            n_modes,
            entries,
            ordering,
        };
        let defect = t.symplectic_defect();
        if defect >= 1e-9 * mat2::max_abs(&t.entries).max(1.0).powi(2) {
            return Err(Error::NotSymplectic(defect));
        }
        Ok(t)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_modes: n,
            entries: DMatrix::identity(2 * n, 2 * n),
            ordering: BasisOrdering::ModeOrdered,
        }
    }

    /// Direct sum of per-mode 2x2 symplectic blocks (a local operation).
    pub fn from_local_blocks(blocks: &[Matrix2<f64>]) -> Result<Self> {
        Self::new(mat2::direct_sum(blocks), BasisOrdering::ModeOrdered)
    }

    pub(crate) fn from_trusted(entries: DMatrix<f64>, ordering: BasisOrdering) -> Self {
        let n_modes = entries.nrows() / 2;
        Self {
            n_modes,
            entries,
            ordering,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn ordering(&self) -> BasisOrdering {
        self.ordering
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// `max |S J S^T - J|`.
    pub fn symplectic_defect(&self) -> f64 {
        let s = match self.ordering {
            BasisOrdering::ModeOrdered => self.entries.clone(),
            BasisOrdering::XpOrdered => reorder(&self.entries, BasisOrdering::XpOrdered),
        };
        let j = symplectic_form(self.n_modes);
        mat2::max_abs(&(&s * &j * s.transpose() - &j))
    }

    pub fn reordered(&self) -> Self {
        Self {
            n_modes: self.n_modes,
            entries: reorder(&self.entries, self.ordering),
            ordering: self.ordering.other(),
        }
    }

    /// Conjugate a covariance matrix: `S gamma S^T`. Both operands must share
    /// an ordering.
    pub fn apply(&self, gamma: &CovMatrix) -> Result<CovMatrix> {
        if gamma.n_modes() != self.n_modes {
            return Err(Error::ModeMismatch(self.n_modes, gamma.n_modes()));
        }
        if gamma.ordering() != self.ordering {
            return Err(Error::Domain(
                "ordering mismatch between transform and state".into(),
            ));
        }
        let out = &self.entries * gamma.matrix() * self.entries.transpose();
        Ok(CovMatrix::from_trusted(out, self.ordering))
    }
}

/// Williamson decomposition `gamma = S^T (⊕ nu_k I_2) S` with `S` symplectic
/// and the symplectic eigenvalues `nu` sorted descending.
#[derive(Clone, Debug)]
pub struct WilliamsonDecomposition {
    pub s: SymplecticTransform,
    pub nu: Vec<f64>,
}

impl WilliamsonDecomposition {
    /// `⊕ nu_k I_2` in the mode-ordered basis.
    pub fn diagonal(&self) -> DMatrix<f64> {
        let blocks: Vec<Matrix2<f64>> = self
            .nu
            .iter()
            .map(|&v| Matrix2::identity() * v)
            .collect();
        mat2::direct_sum(&blocks)
    }

    /// `max |S^T D S - gamma|`.
    pub fn reconstruction_residual(&self, gamma: &CovMatrix) -> f64 {
        let s = self.s.matrix();
        let back = s.transpose() * self.diagonal() * s;
        mat2::max_abs(&(back - gamma.matrix()))
    }
}

/// Compute the Williamson decomposition of a physical covariance matrix.
pub fn williamson(gamma: &CovMatrix) -> Result<WilliamsonDecomposition> {
    let g = gamma.clone().into_mode_ordered();
    let entries = g.matrix();
    let n = g.n_modes();
    let eigs = sym_eigenvalues(entries);
    let max_e = eigs.iter().cloned().fold(f64::MIN, f64::max);
    let min_e = eigs.iter().cloned().fold(f64::MAX, f64::min);
    if min_e <= 0.0 || max_e / min_e > 1e12 {
        return Err(Error::IllConditioned(max_e / min_e));
    }

    let root = sym_sqrt(entries)?;
    let root_inv = root.clone().try_inverse().ok_or(Error::IllConditioned(f64::INFINITY))?;
    let j = symplectic_form(n);
    // m is antisymmetric with spectrum +-i/nu_k; pair an orthonormal
    // eigenbasis of m m^T into 2x2 blocks (u, m u / s).
    let m = &root_inv * &j * &root_inv;
    let mm = &m * m.transpose();
    let se = nalgebra::SymmetricEigen::new(mm);
    let mut order: Vec<usize> = (0..2 * n).collect();
    // ascending in s^2 = 1/nu^2 so that nu comes out descending
    order.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());

    let dim = 2 * n;
    let mut basis: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(dim);
    let mut nu = Vec::with_capacity(n);
    for k in 0..n {
        let idx = order[2 * k];
        let s2 = se.eigenvalues[idx].max(0.0);
        let s = s2.sqrt();
        if s <= 0.0 {
            return Err(Error::IllConditioned(f64::INFINITY));
        }
        // Gram-Schmidt against already chosen vectors; needed when symplectic
        // eigenvalues are degenerate and eigenvectors mix across pairs.
        let mut u = se.eigenvectors.column(idx).clone_owned();
        for b in &basis {
            let c = b.dot(&u);
            u -= b * c;
        }
        let norm = u.norm();
        if norm < 1e-8 {
            // eigenvector already consumed by a previous pair; take the mate
            let idx2 = order[2 * k + 1];
            u = se.eigenvectors.column(idx2).clone_owned();
            for b in &basis {
                let c = b.dot(&u);
                u -= b * c;
            }
        }
        u /= u.norm();
        let v = (&m * &u) / s;
        nu.push(1.0 / s);
        basis.push(u);
        basis.push(v);
    }

    // Columns (u_1, v_1, u_2, v_2, ...) give O with O^T m O = ⊕ (1/nu_k) J_1.
    let mut o = DMatrix::zeros(dim, dim);
    for (c, vec) in basis.iter().enumerate() {
        o.set_column(c, vec);
    }
    let w_inv_root = {
        let blocks: Vec<Matrix2<f64>> = nu
            .iter()
            .map(|&v| Matrix2::identity() / v.sqrt())
            .collect();
        mat2::direct_sum(&blocks)
    };
    let s_mat = w_inv_root * o.transpose() * &root;
    let s = SymplecticTransform::new(s_mat, BasisOrdering::ModeOrdered)?;
    Ok(WilliamsonDecomposition { s, nu })
}

/// Symplectically diagonalize a single-mode covariance block:
/// `S A S^T = lambda I` with `lambda = sqrt(det A)` and `det S = 1`.
pub fn single_mode_williamson(a: &Matrix2<f64>) -> Result<(Matrix2<f64>, f64)> {
    let det = a.determinant();
    if det <= 0.0 || a[(0, 0)] + a[(1, 1)] <= 0.0 {
        return Err(Error::Domain(format!(
            "single-mode block is not positive definite (det {det:.3e})"
        )));
    }
    let lambda = det.sqrt();
    let (e1, e2, psi) = mat2::eig_sym2(a);
    if e2 <= 0.0 {
        return Err(Error::Domain(format!(
            "single-mode block is not positive definite (min eigenvalue {e2:.3e})"
        )));
    }
    let scale = Matrix2::new((lambda / e1).sqrt(), 0.0, 0.0, (lambda / e2).sqrt());
    let s = scale * mat2::rot(psi).transpose();
    Ok((s, lambda))
}

fn check_phase_space_dims(m: &DMatrix<f64>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare(m.nrows(), m.ncols()));
    }
    if m.nrows() == 0 || !m.nrows().is_multiple_of(2) {
        return Err(Error::OddDimension(m.nrows()));
    }
    Ok(m.nrows())
}

fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let sym = (m + m.transpose()) / 2.0;
    nalgebra::SymmetricEigen::new(sym).eigenvalues.iter().cloned().collect()
}

fn min_sym_eigenvalue(m: &DMatrix<f64>) -> f64 {
    sym_eigenvalues(m).into_iter().fold(f64::MAX, f64::min)
}

/// Symmetric square root of a positive-definite matrix.
fn sym_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let sym = (m + m.transpose()) / 2.0;
    let se = nalgebra::SymmetricEigen::new(sym);
    if se.eigenvalues.iter().any(|&e| e <= 0.0) {
        return Err(Error::NotPositiveDefinite(
            se.eigenvalues.iter().cloned().fold(f64::MAX, f64::min),
        ));
    }
    let d = DMatrix::from_diagonal(&se.eigenvalues.map(f64::sqrt));
    Ok(&se.eigenvectors * d * se.eigenvectors.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn symplectic_form_small_cases() {
        let j1 = symplectic_form(1);
        assert_eq!(j1[(0, 1)], -1.0);
        assert_eq!(j1[(1, 0)], 1.0);
        let j2 = symplectic_form(2);
        assert_eq!(j2[(2, 3)], -1.0);
        assert_eq!(j2[(3, 2)], 1.0);
        assert_eq!(j2[(0, 2)], 0.0);
        // J^T = -J and J^2 = -I
        for n in 1..5 {
            let j = symplectic_form(n);
            assert_abs_diff_eq!(mat2::max_abs(&(j.transpose() + &j)), 0.0);
            let jj = &j * &j + DMatrix::identity(2 * n, 2 * n);
            assert_abs_diff_eq!(mat2::max_abs(&jj), 0.0);
        }
    }

    #[test]
    fn vacuum_is_physical_and_pure() {
        for n in 1..4 {
            let v = CovMatrix::vacuum(n);
            assert!(v.is_physical(DEFAULT_TOL));
            assert!(v.is_pure(DEFAULT_TOL).unwrap());
            assert_abs_diff_eq!(v.purity().unwrap(), 1.0, epsilon = 1e-12);
            let nu = v.symplectic_eigenvalues().unwrap();
            for x in nu {
                assert_abs_diff_eq!(x, 1.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn half_identity_violates_uncertainty() {
        // eigenvalues of 0.5 I - iJ_1 are 0.5 +- 1
        let m = DMatrix::identity(2, 2) * 0.5;
        let g = CovMatrix::new(m, BasisOrdering::ModeOrdered).unwrap();
        assert!(!g.is_physical(DEFAULT_TOL));
        assert_abs_diff_eq!(g.uncertainty_defect(), -0.5, epsilon = 1e-10);
    }

    #[test]
    fn thermal_state_is_mixed() {
        let m = DMatrix::identity(2, 2) * 2.0;
        let g = CovMatrix::new(m, BasisOrdering::ModeOrdered).unwrap();
        assert!(g.is_physical(DEFAULT_TOL));
        assert!(!g.is_pure(DEFAULT_TOL).unwrap());
        assert_abs_diff_eq!(g.purity().unwrap(), 0.5, epsilon = 1e-12);
        let nu = g.symplectic_eigenvalues().unwrap();
        assert_abs_diff_eq!(nu[0], 2.0, epsilon = 1e-10);
    }

    #[test]
    fn asymmetric_input_rejected() {
        let mut m = DMatrix::identity(2, 2);
        m[(0, 1)] = 1e-3;
        assert!(matches!(
            CovMatrix::new(m, BasisOrdering::ModeOrdered),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn reorder_maps_j_to_xp_block_form() {
        let j = symplectic_form(2);
        let jxp = reorder(&j, BasisOrdering::ModeOrdered);
        // [[0, -I], [I, 0]]
        let mut expect = DMatrix::zeros(4, 4);
        expect[(0, 2)] = -1.0;
        expect[(1, 3)] = -1.0;
        expect[(2, 0)] = 1.0;
        expect[(3, 1)] = 1.0;
        assert_eq!(jxp, expect);
        // exact involution
        assert_eq!(reorder(&jxp, BasisOrdering::XpOrdered), j);
    }

    #[test]
    fn single_mode_williamson_examples() {
        let (s, lambda) = single_mode_williamson(&Matrix2::identity()).unwrap();
        assert_abs_diff_eq!(lambda, 1.0);
        assert_abs_diff_eq!((s - Matrix2::identity()).norm(), 0.0, epsilon = 1e-12);

        let a = Matrix2::new(4.0, 0.0, 0.0, 1.0);
        let (s, lambda) = single_mode_williamson(&a).unwrap();
        assert_abs_diff_eq!(lambda, 2.0, epsilon = 1e-12);
        let out = s * a * s.transpose();
        assert_abs_diff_eq!((out - Matrix2::identity() * 2.0).norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s[(0, 0)], 0.5_f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(s[(1, 1)], 2.0_f64.sqrt(), epsilon = 1e-12);

        let a = Matrix2::identity() * 1.0_f64.cosh();
        let (s, lambda) = single_mode_williamson(&a).unwrap();
        assert_abs_diff_eq!(lambda, 1.0_f64.cosh(), epsilon = 1e-12);
        let out = s * a * s.transpose();
        assert_abs_diff_eq!((out - a).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn williamson_reconstructs_single_mode_squeezed_thermal() {
        let s = 0.8_f64;
        let m = DMatrix::from_diagonal(&nalgebra::dvector![(2.0 * s).exp(), (-2.0 * s).exp()]);
        let g = CovMatrix::new(m, BasisOrdering::ModeOrdered).unwrap();
        let w = williamson(&g).unwrap();
        assert_abs_diff_eq!(w.nu[0], 1.0, epsilon = 1e-9);
        assert!(w.reconstruction_residual(&g) < 1e-9);
    }

    #[test]
    fn williamson_handles_degenerate_spectra() {
        // the vacuum has a maximally degenerate symplectic spectrum, which
        // exercises the eigenvector pairing
        for n in 1..4 {
            let v = CovMatrix::vacuum(n);
            let w = williamson(&v).unwrap();
            for nu in &w.nu {
                assert_abs_diff_eq!(*nu, 1.0, epsilon = 1e-10);
            }
            assert!(w.reconstruction_residual(&v) < 1e-9);
            assert!(w.s.symplectic_defect() < 1e-9);
        }
        // two equal thermal occupations
        let m = DMatrix::from_diagonal(&nalgebra::dvector![2.0, 2.0, 2.0, 2.0]);
        let g = CovMatrix::new(m, BasisOrdering::ModeOrdered).unwrap();
        let w = williamson(&g).unwrap();
        assert_abs_diff_eq!(w.nu[0], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(w.nu[1], 2.0, epsilon = 1e-9);
        assert!(w.reconstruction_residual(&g) < 1e-8);
    }

    #[test]
    fn purity_matches_symplectic_spectrum() {
        let m = DMatrix::from_diagonal(&nalgebra::dvector![3.0, 3.0, 1.5, 1.5]);
        let g = CovMatrix::new(m, BasisOrdering::ModeOrdered).unwrap();
        let nu = g.symplectic_eigenvalues().unwrap();
        let prod: f64 = nu.iter().map(|x| 1.0 / x).product();
        assert_abs_diff_eq!(g.purity().unwrap(), prod, epsilon = 1e-10);
        assert_abs_diff_eq!(nu[0], 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(nu[1], 1.5, epsilon = 1e-9);
    }
}
