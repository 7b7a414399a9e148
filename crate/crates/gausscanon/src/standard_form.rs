//! The unique standard form of an n-mode Gaussian state under Gaussian local
//! unitaries, the induced equivalence test, and the two-mode pure-state
//! reduction.
//!
//! The form is reached in two steps. Step 1 symplectically diagonalizes each
//! single-mode block, `gamma_jj -> lambda_j I`, using up the active part of
//! the per-mode freedom. Step 2 spends the remaining passive freedom (one
//! SO(2) rotation per mode) on the off-diagonal blocks, scanned row by row:
//! a block with distinct singular values fixes the free rotation(s) through
//! its signed SVD; a block proportional to a rotation or a reflection only
//! ties the two rotations together, and the constraint is carried forward
//! until some later block (or the end-of-scan default of 0) resolves it.
//! A final pass normalizes the one remaining sign (`rot(pi) = -I`) per mode
//! so that the first nonzero block in scan order linking two modes has a
//! positive leading entry.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};
use crate::mat2::{self, rot, signed_svd};
use crate::phase_space::{single_mode_williamson, BasisOrdering, CovMatrix, DEFAULT_TOL};

/// Default relative degeneracy tolerance for classifying off-diagonal blocks.
pub const DEFAULT_DEG_TOL: f64 = 1e-7;

/// How an off-diagonal block was classified during the scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockTag {
    /// Both singular values vanish.
    Zero,
    /// Equal singular values, positive determinant: proportional to a rotation.
    DegenerateRotation,
    /// Equal singular values, negative determinant: proportional to a
    /// reflection (`sigma_z` times a rotation).
    DegenerateReflection,
    /// Distinct singular values.
    Generic,
}

/// Output of [`standard_form`].
#[derive(Clone, Debug)]
pub struct StandardFormResult {
    /// The canonical covariance matrix `S(gamma)`.
    pub gamma_std: CovMatrix,
    /// Per-mode 2x2 symplectics with
    /// `(⊕ local_ops) gamma (⊕ local_ops)^T = gamma_std`.
    pub local_ops: Vec<Matrix2<f64>>,
    /// Scalar on each diagonal block of `gamma_std`.
    pub lambdas: Vec<f64>,
    /// Classification of each scanned block `(j, k)`, `j < k`.
    pub tags: BTreeMap<(usize, usize), BlockTag>,
    /// Passive rotation angle per mode, reduced to `[0, pi)` (the rotation is
    /// only defined up to `pi`; the residual sign lives in `local_ops`).
    pub angles: Vec<f64>,
    /// Blocks whose classification fell within a factor 10 of the degeneracy
    /// tolerance; equivalence verdicts near these inputs deserve suspicion.
    pub ambiguous_blocks: Vec<(usize, usize)>,
}

impl StandardFormResult {
    /// `⊕ local_ops` as a full transform.
    pub fn local_transform(&self) -> crate::phase_space::SymplecticTransform {
        crate::phase_space::SymplecticTransform::from_trusted(
            mat2::direct_sum(&self.local_ops),
            BasisOrdering::ModeOrdered,
        )
    }
}

/// Angle bookkeeping for step 2. `Slaved` records `alpha = offset + sign * alpha_anchor`
/// for a not-yet-determined anchor mode (which is always in state `Free`).
#[derive(Clone, Copy, Debug)]
enum AngleState {
    Free,
    Fixed(f64),
    Slaved { anchor: usize, offset: f64, sign: f64 },
}

#[derive(Clone, Copy, Debug)]
enum Rep {
    Fixed(f64),
    Affine { anchor: usize, offset: f64, sign: f64 },
}

struct AngleSolver {
    states: Vec<AngleState>,
}

impl AngleSolver {
    fn new(n: usize) -> Self {
        Self {
            states: vec![AngleState::Free; n],
        }
    }

    fn rep(&self, j: usize) -> Rep {
        match self.states[j] {
            AngleState::Free => Rep::Affine {
                anchor: j,
                offset: 0.0,
                sign: 1.0,
            },
            AngleState::Fixed(v) => Rep::Fixed(v),
            AngleState::Slaved {
                anchor,
                offset,
                sign,
            } => Rep::Affine {
                anchor,
                offset,
                sign,
            },
        }
    }

    fn fix(&mut self, anchor: usize, value: f64) {
        self.states[anchor] = AngleState::Fixed(value);
        for m in 0..self.states.len() {
            if let AngleState::Slaved {
                anchor: a,
                offset,
                sign,
            } = self.states[m]
            {
                if a == anchor {
                    self.states[m] = AngleState::Fixed(offset + sign * value);
                }
            }
        }
    }

    /// Replace anchor `old` by `alpha_old = offset + sign * alpha_new`.
    fn re_anchor(&mut self, old: usize, new: usize, offset: f64, sign: f64) {
        for m in 0..self.states.len() {
            let (o, s) = match self.states[m] {
                AngleState::Slaved {
                    anchor: a,
                    offset: o,
                    sign: s,
                } if a == old => (o, s),
                AngleState::Free if m == old => (0.0, 1.0),
                _ => continue,
            };
            self.states[m] = AngleState::Slaved {
                anchor: new,
                offset: o + s * offset,
                sign: s * sign,
            };
        }
    }

    /// Record the linear constraint `alpha_k = offset + sigma * alpha_j`
    /// coming from a degenerate block. Returns false if both angles were
    /// already pinned (the block is then left as the pinned rotations make it).
    fn constrain(&mut self, j: usize, k: usize, offset: f64, sigma: f64) {
        match (self.rep(j), self.rep(k)) {
            (Rep::Fixed(_), Rep::Fixed(_)) => {}
            (Rep::Fixed(vj), Rep::Affine { anchor, offset: ok, sign: sk }) => {
                self.fix(anchor, (offset + sigma * vj - ok) * sk);
            }
            (Rep::Affine { anchor, offset: oj, sign: sj }, Rep::Fixed(vk)) => {
                self.fix(anchor, (vk - offset - sigma * oj) * sigma * sj);
            }
            (
                Rep::Affine { anchor: aj, offset: oj, sign: sj },
                Rep::Affine { anchor: ak, offset: ok, sign: sk },
            ) => {
                if aj != ak {
                    // alpha_ak = (offset + sigma*oj - ok)*sk + sigma*sj*sk * alpha_aj
                    self.re_anchor(ak, aj, (offset + sigma * oj - ok) * sk, sigma * sj * sk);
                } else {
                    let coeff = sk - sigma * sj;
                    if coeff.abs() > 0.5 {
                        self.fix(aj, (offset + sigma * oj - ok) / coeff);
                    }
                    // coeff == 0: the constraint is either automatic or
                    // unsatisfiable; no information either way.
                }
            }
        }
    }

    fn finish(&mut self) -> Vec<f64> {
        for j in 0..self.states.len() {
            if matches!(self.states[j], AngleState::Free) {
                self.fix(j, 0.0);
            }
        }
        self.states
            .iter()
            .map(|s| match s {
                AngleState::Fixed(v) => *v,
                _ => unreachable!("all anchors fixed at end of scan"),
            })
            .collect()
    }
}

/// Union-find with parity, used to normalize the per-mode sign freedom.
struct SignResolver {
    parent: Vec<usize>,
    /// parity of the path to the parent (true = flipped relative to parent)
    parity: Vec<bool>,
}

impl SignResolver {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, i: usize) -> (usize, bool) {
        if self.parent[i] == i {
            return (i, false);
        }
        let (root, p) = self.find(self.parent[i]);
        self.parent[i] = root;
        self.parity[i] ^= p;
        (root, self.parity[i])
    }

    /// Require `flip(i) XOR flip(j) == want`. Returns false when i and j were
    /// already linked (the requirement is then ignored; cycles keep whatever
    /// sign they have).
    fn link(&mut self, i: usize, j: usize, want: bool) -> bool {
        let (ri, pi) = self.find(i);
        let (rj, pj) = self.find(j);
        if ri == rj {
            return false;
        }
        self.parent[rj] = ri;
        self.parity[rj] = pi ^ pj ^ want;
        true
    }

    fn flips(&mut self) -> Vec<bool> {
        (0..self.parent.len()).map(|i| self.find(i).1).collect()
    }
}

/// Compute the standard form of a physical covariance matrix.
///
/// `deg_tol` is the relative degeneracy tolerance for block classification;
/// pass [`DEFAULT_DEG_TOL`] unless you have a reason not to.
pub fn standard_form(gamma: &CovMatrix, deg_tol: f64) -> Result<StandardFormResult> {
    let g = gamma.clone().into_mode_ordered();
    if !g.is_physical(DEFAULT_TOL * 10.0) {
        return Err(Error::NotPhysical(g.uncertainty_defect()));
    }
    let n = g.n_modes();

    // Step 1: active part, gamma_jj -> lambda_j I.
    let mut actives = Vec::with_capacity(n);
    let mut lambdas = Vec::with_capacity(n);
    for j in 0..n {
        let (s, lambda) = single_mode_williamson(&g.block(j, j))?;
        actives.push(s);
        lambdas.push(lambda);
    }
    let work = apply_local(&actives, g.matrix());

    // Step 2: passive rotations from the off-diagonal blocks, row by row.
    let mut solver = AngleSolver::new(n);
    let mut tags = BTreeMap::new();
    let mut ambiguous = Vec::new();
    for j in 0..n {
        for k in (j + 1)..n {
            let block = mat2::get_block(&work, j, k);
            let svd = signed_svd(&block);
            let (s1, s2) = svd.singular_values();
            let tol = deg_tol * mat2::max_abs2(&block).max(1.0);
            let near = |x: f64| x >= tol / 10.0 && x < tol * 10.0;
            if near(s1) || near(s1 - s2) {
                ambiguous.push((j, k));
            }

            let tag = if s1 < tol {
                BlockTag::Zero
            } else if s1 - s2 < tol {
                if svd.d_minus > 0.0 {
                    BlockTag::DegenerateRotation
                } else {
                    BlockTag::DegenerateReflection
                }
            } else {
                BlockTag::Generic
            };
            tags.insert((j, k), tag);

            match tag {
                BlockTag::Zero => {}
                BlockTag::DegenerateRotation => {
                    // block = c rot(sum); diagonal iff alpha_k = alpha_j + sum
                    solver.constrain(j, k, svd.angle_sum(), 1.0);
                }
                BlockTag::DegenerateReflection => {
                    // block = c rot(diff) sigma_z; diagonal iff
                    // alpha_k = -alpha_j - diff
                    solver.constrain(j, k, -svd.angle_diff(), -1.0);
                }
                BlockTag::Generic => {
                    fix_generic(&mut solver, j, k, &block);
                }
            }
        }
    }
    let mut angles = solver.finish();

    // Compose and run the sign normalization pass.
    let mut ops: Vec<Matrix2<f64>> = (0..n).map(|j| rot(angles[j]) * actives[j]).collect();
    let std_entries = apply_local(&ops, g.matrix());
    let mut signs = SignResolver::new(n);
    for j in 0..n {
        for k in (j + 1)..n {
            if tags[&(j, k)] == BlockTag::Zero {
                continue;
            }
            let block = mat2::get_block(&std_entries, j, k);
            signs.link(j, k, leading_entry(&block) < 0.0);
        }
    }
    for (j, flip) in signs.flips().into_iter().enumerate() {
        if flip {
            ops[j] = -ops[j];
            angles[j] += std::f64::consts::PI;
        }
    }
    let gamma_std = CovMatrix::from_trusted(apply_local(&ops, g.matrix()), BasisOrdering::ModeOrdered);
    let angles = angles
        .iter()
        .map(|a| a.rem_euclid(std::f64::consts::PI))
        .collect();

    Ok(StandardFormResult {
        gamma_std,
        local_ops: ops,
        lambdas,
        tags,
        angles,
        ambiguous_blocks: ambiguous,
    })
}

/// Resolve the rotations around a block with distinct singular values.
fn fix_generic(solver: &mut AngleSolver, j: usize, k: usize, block: &Matrix2<f64>) {
    match (solver.rep(j), solver.rep(k)) {
        (Rep::Fixed(_), Rep::Fixed(_)) => {}
        (Rep::Fixed(vj), Rep::Affine { anchor, offset, sign }) => {
            // right-diagonalize: block_final = rot(a) D after alpha_k absorbs b
            let svd = signed_svd(&(rot(vj) * block * rot(-offset)));
            solver.fix(anchor, svd.right_angle * sign);
        }
        (Rep::Affine { anchor, offset, sign }, Rep::Fixed(vk)) => {
            // left-diagonalize: block_final = D rot(b)
            let svd = signed_svd(&(rot(offset) * block * rot(-vk)));
            solver.fix(anchor, -svd.left_angle * sign);
        }
        (
            Rep::Affine { anchor: aj, offset: oj, sign: sj },
            Rep::Affine { anchor: ak, offset: ok, sign: sk },
        ) => {
            let m = rot(oj) * block * rot(-ok);
            let svd = signed_svd(&m);
            if aj != ak {
                solver.fix(aj, -svd.left_angle * sj);
                solver.fix(ak, svd.right_angle * sk);
            } else {
                // Both rotations track the same undetermined anchor: split the
                // block into its rotation part p*rot(sum) and reflection part
                // q*rot(diff)*sigma_z and cancel the angle the anchor can reach.
                let p = (svd.d_plus + svd.d_minus) / 2.0;
                let q = (svd.d_plus - svd.d_minus) / 2.0;
                if (sj - sk).abs() < 0.5 {
                    // final = p rot(sum) + q rot(diff + 2 s alpha) sigma_z
                    if q.abs() > 1e-300 {
                        solver.fix(aj, -svd.angle_diff() * sj / 2.0);
                    }
                } else {
                    // final = p rot(sum + 2 s alpha) + q rot(diff) sigma_z
                    if p.abs() > 1e-300 {
                        solver.fix(aj, -svd.angle_sum() * sj / 2.0);
                    }
                }
            }
        }
    }
}

/// Conjugate by a direct sum of 2x2 blocks: `(⊕ b) m (⊕ b)^T`.
fn apply_local(blocks: &[Matrix2<f64>], m: &DMatrix<f64>) -> DMatrix<f64> {
    let d = mat2::direct_sum(blocks);
    &d * m * d.transpose()
}

/// Sign indicator of a block: the first entry (row-major) whose magnitude is
/// within a whisker of the block's max. The relative margin keeps the pick
/// stable when several entries tie up to roundoff.
fn leading_entry(block: &Matrix2<f64>) -> f64 {
    let max = mat2::max_abs2(block);
    let margin = max * (1.0 - 1e-6);
    for &idx in &[(0, 0), (0, 1), (1, 0), (1, 1)] {
        if block[idx].abs() >= margin {
            return block[idx];
        }
    }
    0.0
}

/// Decide Gaussian local-unitary equivalence by comparing standard forms
/// entrywise: `max |S(gamma1) - S(gamma2)| < tol`.
pub fn glu_equivalent(gamma1: &CovMatrix, gamma2: &CovMatrix, tol: f64) -> Result<bool> {
    if gamma1.n_modes() != gamma2.n_modes() {
        return Err(Error::ModeMismatch(gamma1.n_modes(), gamma2.n_modes()));
    }
    let s1 = standard_form(gamma1, DEFAULT_DEG_TOL)?;
    let s2 = standard_form(gamma2, DEFAULT_DEG_TOL)?;
    let diff = mat2::max_abs(&(s1.gamma_std.matrix() - s2.gamma_std.matrix()));
    Ok(diff < tol)
}

/// Parameters of a pure two-mode state relative to the two-mode squeezed
/// normal form: `gamma = (S1 ⊕ S2) gamma_tms(r) (S1 ⊕ S2)^T` with
/// `S_k = O_k D_k O'_k`, `D_k = diag(e^{r_k}, e^{-r_k})`.
#[derive(Clone, Debug)]
pub struct TwoModePureParams {
    pub r: f64,
    pub r1: f64,
    pub r2: f64,
    pub o1: Matrix2<f64>,
    pub o2: Matrix2<f64>,
    pub o1p: Matrix2<f64>,
    pub o2p: Matrix2<f64>,
}

impl TwoModePureParams {
    pub fn s1(&self) -> Matrix2<f64> {
        self.o1 * Matrix2::new(self.r1.exp(), 0.0, 0.0, (-self.r1).exp()) * self.o1p
    }

    pub fn s2(&self) -> Matrix2<f64> {
        self.o2 * Matrix2::new(self.r2.exp(), 0.0, 0.0, (-self.r2).exp()) * self.o2p
    }

    /// Rebuild the covariance matrix these parameters describe.
    pub fn reconstruct(&self) -> CovMatrix {
        let tms = crate::generation::tms_cm(self.r).expect("r >= 0 by construction");
        let local = mat2::direct_sum(&[self.s1(), self.s2()]);
        CovMatrix::from_trusted(&local * tms.matrix() * local.transpose(), BasisOrdering::ModeOrdered)
    }
}

/// Extract `(r, r1, r2, rotations)` from a pure two-mode state:
/// `cosh r = sqrt(det A)`, `cosh 2r_k = tr(block_k) / (2 cosh r)`, rotations
/// from the eigenbases of the diagonal blocks and the SVD of the squeezed-out
/// correlation block.
pub fn two_mode_pure_params(gamma: &CovMatrix) -> Result<TwoModePureParams> {
    if gamma.n_modes() != 2 {
        return Err(Error::ModeMismatch(2, gamma.n_modes()));
    }
    let g = gamma.clone().into_mode_ordered();
    if !g.is_pure(1e-7)? {
        return Err(Error::NotPure(g.purity_residual()));
    }
    let a = g.block(0, 0);
    let b = g.block(1, 1);
    let c = g.block(0, 1);
    let scale = mat2::max_abs2(&a).max(1.0);
    let det_a = a.determinant();
    if det_a < 1.0 - 1e-7 * scale * scale {
        return Err(Error::Domain(format!(
            "det A = {det_a} below 1 beyond tolerance on a pure state"
        )));
    }
    let ch_r = det_a.max(1.0).sqrt();
    let r = ch_r.acosh();

    let half_acosh = |x: f64| (x.max(1.0)).acosh() / 2.0;
    let r1 = half_acosh((a[(0, 0)] + a[(1, 1)]) / (2.0 * ch_r));
    let r2 = half_acosh((b[(0, 0)] + b[(1, 1)]) / (2.0 * ch_r));
    let (_, _, psi1) = mat2::eig_sym2(&a);
    let (_, _, psi2) = mat2::eig_sym2(&b);
    let o1 = rot(psi1);
    let o2 = rot(psi2);

    let sh_r = r.sinh();
    let (o1p, o2p) = if sh_r < 1e-12 {
        (Matrix2::identity(), Matrix2::identity())
    } else {
        let d1_inv = Matrix2::new((-r1).exp(), 0.0, 0.0, r1.exp());
        let d2_inv = Matrix2::new((-r2).exp(), 0.0, 0.0, r2.exp());
        let m = d1_inv * o1.transpose() * c * o2 * d2_inv;
        // m = sh_r * (rotation * sigma_z); pick O1' = I, O2' = (sigma_z m / sh)^T
        let o2p = (mat2::sigma_z() * m / sh_r).transpose();
        (Matrix2::identity(), o2p)
    };

    Ok(TwoModePureParams {
        r,
        r1,
        r2,
        o1,
        o2,
        o1p,
        o2p,
    })
}

/// Check that `(lambda, D)` is the two-mode pure normal form: `D = sinh(r) sigma_z`
/// and `lambda = cosh(r)` for a common real `r`.
pub fn verify_two_mode_pure_form(lambda: f64, d: &Matrix2<f64>, tol: f64) -> bool {
    if lambda < 1.0 - tol {
        return false;
    }
    let off = d[(0, 1)].abs().max(d[(1, 0)].abs());
    let trace = d[(0, 0)] + d[(1, 1)];
    let hyperbolic = lambda * lambda - d[(0, 0)] * d[(0, 0)] - 1.0;
    off < tol && trace.abs() < tol && hyperbolic.abs() < tol * lambda.max(1.0)
}
