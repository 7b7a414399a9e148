//! Pure three-mode Gaussian states: realizability of local-purity triples,
//! closed-form construction of the canonical covariance matrix, special-case
//! classification, alternative entry solutions used as cross-checks, and the
//! positivity certificate.
//!
//! A pure `1x1x1` Gaussian state is determined up to Gaussian local unitaries
//! by its three local purities `(lambda_1, lambda_2, lambda_3)`. The canonical
//! covariance matrix has `lambda_i * I` on the diagonal and diagonal 2x2
//! blocks `D_ij = diag(d_ij^+, d_ij^-)` off the diagonal.

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};
use crate::mat2;
use crate::phase_space::{reorder, BasisOrdering, CovMatrix};

/// Validity slack for the realizability inequalities.
const COND_SLACK: f64 = 1e-12;

/// Index of the mode not in the pair `(i, j)`.
pub fn third(i: usize, j: usize) -> usize {
    3 - i - j
}

/// The pair of modes other than `k`, ordered.
pub fn other_pair(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => panic!("mode index out of range"),
    }
}

/// Report produced by [`validate`]: empty `violations` means realizable.
#[derive(Clone, Debug)]
pub struct PurityReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

/// Check that a triple is realizable as the local purities of a pure
/// three-mode state: `lambda_i >= 1` and `lambda_i + 1 <= lambda_j + lambda_k`
/// for every permutation, with `1e-12` slack.
pub fn validate(lambda: [f64; 3]) -> PurityReport {
    let mut violations = Vec::new();
    for (idx, l) in lambda.iter().enumerate() {
        if !l.is_finite() || *l < 1.0 - COND_SLACK {
            violations.push(format!("lambda{} = {} is below 1", idx + 1, l));
        }
    }
    for i in 0..3 {
        let (j, k) = other_pair(i);
        if lambda[i] + 1.0 > lambda[j] + lambda[k] + COND_SLACK {
            violations.push(format!(
                "CondPos violated: {}+1>{}+{}",
                lambda[i], lambda[j], lambda[k]
            ));
        }
    }
    PurityReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// Local purity triple of a pure three-mode state; constructing one proves
/// realizability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalPurities {
    lambda: [f64; 3],
}

impl LocalPurities {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        let lambda = [l1, l2, l3];
        let report = validate(lambda);
        if !report.valid {
            return Err(Error::InvalidPurities(report.violations.join("; ")));
        }
        Ok(Self { lambda })
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.lambda
    }

    pub fn get(&self, i: usize) -> f64 {
        self.lambda[i]
    }
}

/// Entries `(d^+, d^-)` of the off-diagonal block `D_ij` in the canonical
/// form, for the realizable triple `lambda`:
///
/// `d_ij^± = (sqrt(a_ij) ± sqrt(b_ij)) / (4 sqrt(lambda_i lambda_j))`
///
/// with `a_ij = [(li-lj)^2-(lk-1)^2][(li-lj)^2-(lk+1)^2]` and `b_ij` the same
/// with `li+lj`. Radicands are clamped to zero when they dip marginally
/// negative from roundoff at the realizability boundary.
pub fn block_entries(p: &LocalPurities, i: usize, j: usize) -> (f64, f64) {
    let l = p.as_array();
    let k = third(i, j);
    let diff = l[i] - l[j];
    let sum = l[i] + l[j];
    let a = (diff * diff - (l[k] - 1.0) * (l[k] - 1.0))
        * (diff * diff - (l[k] + 1.0) * (l[k] + 1.0));
    let b = (sum * sum - (l[k] - 1.0) * (l[k] - 1.0))
        * (sum * sum - (l[k] + 1.0) * (l[k] + 1.0));
    let a = clamp_radicand(a, b.abs().max(1.0));
    let b = clamp_radicand(b, b.abs().max(1.0));
    let denom = 4.0 * (l[i] * l[j]).sqrt();
    ((a.sqrt() + b.sqrt()) / denom, (a.sqrt() - b.sqrt()) / denom)
}

fn clamp_radicand(x: f64, scale: f64) -> f64 {
    if x < 0.0 && x > -1e-10 * scale {
        0.0
    } else {
        x
    }
}

/// Determinant of the off-diagonal block `D_ij` straight from the purities:
/// `|D_ij| = (lambda_k^2 + 1 - lambda_i^2 - lambda_j^2) / 2`.
pub fn block_det(p: &LocalPurities, i: usize, j: usize) -> f64 {
    let l = p.as_array();
    let k = third(i, j);
    (l[k] * l[k] + 1.0 - l[i] * l[i] - l[j] * l[j]) / 2.0
}

/// Entries of the off-diagonal blocks of a fully symmetric state
/// (`lambda_1 = lambda_2 = lambda_3 = lambda`):
///
/// `d^± = [(lambda^2 - 1) ± sqrt(9 lambda^4 - 10 lambda^2 + 1)] / (4 lambda)`.
pub fn symmetric_entries(lambda: f64) -> Result<(f64, f64)> {
    if lambda < 1.0 - COND_SLACK {
        return Err(Error::Domain(format!("lambda = {lambda} is below 1")));
    }
    let l2 = lambda * lambda;
    let rad = (9.0 * l2 * l2 - 10.0 * l2 + 1.0).max(0.0);
    let root = rad.sqrt();
    Ok((
        (l2 - 1.0 + root) / (4.0 * lambda),
        (l2 - 1.0 - root) / (4.0 * lambda),
    ))
}

/// A pure three-mode state assembled in canonical block-diagonal form.
#[derive(Clone, Debug)]
pub struct ThreeModePureCM {
    pub gamma: CovMatrix,
    /// Off-diagonal entries for the pairs `(0,1)`, `(0,2)`, `(1,2)`.
    pub d: [(f64, f64); 3],
    pub lambda: LocalPurities,
}

pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Assemble the canonical covariance matrix for a realizable purity triple.
pub fn build_pure_cm(p: &LocalPurities) -> ThreeModePureCM {
    let d: Vec<(f64, f64)> = PAIRS.iter().map(|&(i, j)| block_entries(p, i, j)).collect();
    let gamma = assemble(p.as_array(), &[d[0], d[1], d[2]]);
    ThreeModePureCM {
        gamma,
        d: [d[0], d[1], d[2]],
        lambda: *p,
    }
}

fn assemble(lambda: [f64; 3], d: &[(f64, f64); 3]) -> CovMatrix {
    let mut m = DMatrix::zeros(6, 6);
    for (k, &l) in lambda.iter().enumerate() {
        mat2::set_block(&mut m, k, k, &(Matrix2::identity() * l));
    }
    for (idx, &(i, j)) in PAIRS.iter().enumerate() {
        let block = Matrix2::new(d[idx].0, 0.0, 0.0, d[idx].1);
        mat2::set_block(&mut m, i, j, &block);
        mat2::set_block(&mut m, j, i, &block);
    }
    CovMatrix::from_trusted(m, BasisOrdering::ModeOrdered)
}

/// Local purities `lambda_i = sqrt(det gamma_ii)` of a pure three-mode state.
pub fn extract_purities(gamma: &CovMatrix) -> Result<LocalPurities> {
    if gamma.n_modes() != 3 {
        return Err(Error::ModeMismatch(3, gamma.n_modes()));
    }
    let g = gamma.clone().into_mode_ordered();
    if !g.is_pure(1e-7)? {
        return Err(Error::NotPure(g.purity_residual()));
    }
    let l: Vec<f64> = (0..3)
        .map(|k| g.block(k, k).determinant().max(0.0).sqrt())
        .collect();
    LocalPurities::new(l[0], l[1], l[2])
}

/// Qualitative family of a purity triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialCase {
    /// All three off-diagonal determinants strictly negative, no symmetry.
    GenericAllNegative,
    /// `|D_ij| = 0` (one block singular): `lambda_k^2 = lambda_i^2 + lambda_j^2 - 1`.
    SingularBlock(usize, usize),
    /// `D_ij ∝ I`: `lambda_k = lambda_i + lambda_j - 1`.
    ProportionalIdentity(usize, usize),
    /// All three purities equal.
    Symmetric,
    /// `lambda_i = 1`: mode `i` factorizes.
    Product(usize),
}

/// Classify a realizable triple, with scaled tolerance for the defining
/// equalities. Product and symmetric cases take precedence over the two
/// block-degeneracy cases (which they imply).
pub fn classify(p: &LocalPurities) -> SpecialCase {
    let l = p.as_array();
    let scale = l.iter().cloned().fold(1.0, f64::max);
    let tol = 1e-9 * scale;
    for (i, &v) in l.iter().enumerate() {
        if (v - 1.0).abs() < tol {
            return SpecialCase::Product(i);
        }
    }
    if (l[0] - l[1]).abs() < tol && (l[1] - l[2]).abs() < tol {
        return SpecialCase::Symmetric;
    }
    for &(i, j) in PAIRS.iter() {
        let k = third(i, j);
        if (l[k] * l[k] - (l[i] * l[i] + l[j] * l[j] - 1.0)).abs() < tol * scale {
            return SpecialCase::SingularBlock(i, j);
        }
    }
    for &(i, j) in PAIRS.iter() {
        let k = third(i, j);
        if (l[k] - (l[i] + l[j] - 1.0)).abs() < tol {
            return SpecialCase::ProportionalIdentity(i, j);
        }
    }
    SpecialCase::GenericAllNegative
}

/// Off-diagonal entries produced by one of the alternative closed-form
/// solutions of the purity constraint equations ([`solve_singular_case`],
/// [`solve_generic_case`]). Used as independent cross-checks of
/// [`build_pure_cm`].
#[derive(Clone, Debug)]
pub struct SolvedEntries {
    pub lambda: [f64; 3],
    /// `(a, b)`: entries of the `(1,2)` block.
    pub d12: (f64, f64),
    /// `(c, d)`: entries of the `(1,3)` block.
    pub d13: (f64, f64),
    /// `(e, f)`: entries of the `(2,3)` block.
    pub d23: (f64, f64),
}

impl SolvedEntries {
    pub fn assemble(&self) -> CovMatrix {
        let lambda = self.lambda;
        assemble(lambda, &[self.d12, self.d13, self.d23])
    }
}

/// Closed-form solution of the purity constraints when the `(2,3)` block is
/// singular (its first entry vanishes). The third purity is determined:
/// `lambda_1 = sqrt(lambda_2^2 + lambda_3^2 - 1)`.
///
/// The returned entries are in the sign/order convention of the solution
/// chain; [`singular_case_sign_fix`] conjugates them onto the canonical form.
pub fn solve_singular_case(l2: f64, l3: f64) -> Result<SolvedEntries> {
    if l2 < 1.0 || l3 < 1.0 {
        return Err(Error::Domain(format!(
            "purities must be >= 1 (got {l2}, {l3})"
        )));
    }
    let l1 = (l2 * l2 + l3 * l3 - 1.0).sqrt();
    let lambda = [l1, l2, l3];
    let report = validate(lambda);
    if !report.valid {
        return Err(Error::InvalidPurities(report.violations.join("; ")));
    }
    let a = (l2 * (l2 * l2 - 1.0)).sqrt() / l1.sqrt();
    let b = -((l2 * l2 - 1.0) / l2).sqrt() * l1.sqrt();
    let c = (l3 * (l3 * l3 - 1.0) / l1).sqrt();
    let d = -((l3 * l3 - 1.0) / l3).sqrt() * l1.sqrt();
    let e = 0.0;
    let f = ((l2 * l2 - 1.0) * (l3 * l3 - 1.0)).sqrt() / (l2 * l3).sqrt();
    Ok(SolvedEntries {
        lambda,
        d12: (a, b),
        d13: (c, d),
        d23: (e, f),
    })
}

/// The per-mode orthogonal blocks (`-sigma_x`, `sigma_x`, `sigma_x`) whose
/// conjugation sorts and sign-fixes the [`solve_singular_case`] entries onto
/// the canonical ones: each block's two entries swap, and the modes-1 blocks
/// also change sign.
pub fn singular_case_sign_fix() -> [Matrix2<f64>; 3] {
    [-mat2::sigma_x(), mat2::sigma_x(), mat2::sigma_x()]
}

/// The all-mode swap (`sigma_x` on every mode) that maps the
/// [`solve_generic_case`] entries onto the canonical ones (the elimination
/// chain lands on the representative with each block's entries in the
/// opposite order).
pub fn generic_case_sign_fix() -> [Matrix2<f64>; 3] {
    [mat2::sigma_x(), mat2::sigma_x(), mat2::sigma_x()]
}

/// Closed-form solution of the purity constraints in the generic case: all
/// three block determinants nonzero and `lambda_2 != lambda_3`. Entries come
/// out of a sequential elimination chain seeded by the ratio
/// `x = b/d` of two block entries.
///
/// Requires `|D_12| < 0`, which holds whenever mode 1 carries the largest
/// purity; relabel modes first if necessary.
pub fn solve_generic_case(p: &LocalPurities) -> Result<SolvedEntries> {
    let l = p.as_array();
    let (l1, l2, l3) = (l[0], l[1], l[2]);
    let det12 = block_det(p, 0, 1);
    let det13 = block_det(p, 0, 2);
    let det23 = block_det(p, 1, 2);
    let scale = l.iter().map(|x| x * x).sum::<f64>();
    let tol = 1e-9 * scale;
    if det12.abs() < tol || det13.abs() < tol || det23.abs() < tol {
        return Err(Error::Domain(
            "a block determinant vanishes; use the singular-case solution".into(),
        ));
    }
    if (l2 - l3).abs() < 1e-9 * scale.sqrt() {
        return Err(Error::UnsupportedBranch(
            "lambda_2 = lambda_3 is not covered by the generic elimination chain".into(),
        ));
    }
    if det12 >= 0.0 {
        return Err(Error::Domain(
            "the (1,2) block determinant must be negative; relabel modes so mode 1 is largest"
                .into(),
        ));
    }

    let (s1, s2, s3) = (l1 * l1, l2 * l2, l3 * l3);
    let x1 = 1.0 / (4.0 * l2 * l3 * det13 * det13);
    let x2 = s2 * s2 * s2 + (s1 - 1.0) * (s1 - 1.0) * s3 - 2.0 * (1.0 + s1) * s3 * s3
        + s3 * s3 * s3
        - s2 * s2 * (2.0 + 2.0 * s1 + s3)
        + s2 * ((s1 - 1.0) * (s1 - 1.0) + 4.0 * (1.0 + s1) * s3 - s3 * s3);
    let w = w_product(l) * (s2 - s3) * (s2 - s3);
    if w < -1e-9 * scale.powi(4) {
        return Err(Error::Domain(format!("negative discriminant w = {w:.3e}")));
    }
    let x = (0.5 * x1 * (x2 + w.max(0.0).sqrt())).max(0.0).sqrt();

    let y1 = (s3 - s2) * det23;
    let y2 = -2.0 * l3 * det12;
    let y3 = 2.0 * l2 * det13;
    let denom = y2 + y3 * x * x;
    if denom.abs() < 1e-12 * scale {
        return Err(Error::Domain("vanishing denominator in the entry chain".into()));
    }
    let f = 2.0 * y1 * x / denom;
    let e = det23 / f;
    let rad = e * x + l2 * x * x;
    if rad <= 0.0 {
        return Err(Error::Domain(format!(
            "entry chain left the real branch (e*x + lambda_2 x^2 = {rad:.3e})"
        )));
    }
    let d = (l1.sqrt() * (-det12).sqrt()) / rad.sqrt();
    let c = det13 / d;
    let b = x * d;
    let a = det12 / b;
    Ok(SolvedEntries {
        lambda: l,
        d12: (a, b),
        d13: (c, d),
        d23: (e, f),
    })
}

fn w_product(l: [f64; 3]) -> f64 {
    let mut prod = 1.0;
    for s2 in [-1.0, 1.0] {
        for s3 in [-1.0, 1.0] {
            for s0 in [-1.0, 1.0] {
                prod *= s0 + l[0] + s2 * l[1] + s3 * l[2];
            }
        }
    }
    prod
}

/// Positivity certificate for a purity triple: the scalar invariants
/// `K1` and `w1` whose combination `K1 - 1 >= sqrt(w1)` certifies positive
/// semidefiniteness of the canonical covariance matrix, together with the
/// residual of the polynomial identity
/// `(K1 - 1)^2 - w1 = 64 lambda_1^2 lambda_2^2 lambda_3^2`.
#[derive(Clone, Copy, Debug)]
pub struct PositivityCertificate {
    pub k1: f64,
    pub w1: f64,
    pub identity_residual: f64,
    /// Whether `K1 - 1 >= sqrt(w1)` holds (with `w1` clamped at 0).
    pub condition_holds: bool,
}

pub fn positivity_certificate(lambda: [f64; 3]) -> PositivityCertificate {
    let [l1, l2, l3] = lambda;
    let (s1, s2, s3) = (l1 * l1, l2 * l2, l3 * l3);
    let k1 = -(s1 * s1 + s2 * s2 + s3 * s3)
        + 2.0 * (s2 * s3 + s1 * s3 + s1 * s2)
        + 2.0 * (s1 + s2 + s3);
    let w1 = w_product(lambda);
    let target = 64.0 * s1 * s2 * s3;
    let identity_residual = ((k1 - 1.0) * (k1 - 1.0) - w1 - target).abs();
    let condition_holds = w1 >= -1e-9 * target && k1 - 1.0 >= w1.max(0.0).sqrt() - 1e-9 * target;
    PositivityCertificate {
        k1,
        w1,
        identity_residual,
        condition_holds,
    }
}

/// Check that a pure three-mode covariance matrix in canonical form is
/// xp-block-diagonal with the momentum block equal to the inverse of the
/// position block. Returns the max deviation; a state passes when this is
/// below the caller's tolerance.
pub fn xp_block_defect(gamma: &CovMatrix) -> f64 {
    let g = gamma.clone().into_mode_ordered();
    let xp = reorder(g.matrix(), BasisOrdering::ModeOrdered);
    let n = g.n_modes();
    let gx = xp.view((0, 0), (n, n)).clone_owned();
    let gp = xp.view((n, n), (n, n)).clone_owned();
    let off1 = xp.view((0, n), (n, n)).clone_owned();
    let off2 = xp.view((n, 0), (n, n)).clone_owned();
    let mut defect = mat2::max_abs(&off1).max(mat2::max_abs(&off2));
    match gx.clone().try_inverse() {
        Some(inv) => defect = defect.max(mat2::max_abs(&(gp - inv))),
        None => defect = f64::INFINITY,
    }
    defect
}
