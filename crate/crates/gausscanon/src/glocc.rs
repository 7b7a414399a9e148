//! Pure Gaussian LOCC channels in Choi-Jamiolkowski form, their action on
//! covariance matrices, the closed-form transformation laws for symmetric
//! inputs, the determinant-sign invariants, and the symmetric-state
//! preparation recipe.
//!
//! A pure single-mode Gaussian channel is parameterized (up to local unitary
//! post-processing, which never matters for the invariants computed here) by
//! `(r, x, phi)`: two-mode squeezing `r` of its CJ state, local squeezing
//! `x > 0`, and a rotation angle `phi`. The closed-form output blocks use
//! `X = diag(x, 1/x)` and `O1 = rot(phi)`; the CJ covariance matrix that
//! reproduces them carries the inverse squeezer `Q = X^{-1}` on its input
//! side. The identity channel is an explicit variant (its CJ matrix is an
//! infinite-squeezing limit and is never represented numerically).

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};
use crate::mat2::{self, rot, sigma_z, squeeze};
use crate::phase_space::{BasisOrdering, CovMatrix};
use crate::three_mode::{block_entries, other_pair, LocalPurities};

/// `(output, input, correlation)` blocks of a single-mode CJ matrix; `None`
/// marks an identity component.
type CjBlocks = Option<(Matrix2<f64>, Matrix2<f64>, Matrix2<f64>)>;

/// A pure single-mode Gaussian completely positive map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PureOneModeChannel {
    /// Leave the mode untouched.
    Identity,
    /// CJ two-mode squeezing `r >= 0`, local squeezing `x > 0`, rotation `phi`.
    Params { r: f64, x: f64, phi: f64 },
}

impl PureOneModeChannel {
    pub fn params(r: f64, x: f64, phi: f64) -> Result<Self> {
        if r < 0.0 || !r.is_finite() {
            return Err(Error::Domain(format!("channel squeezing r must be >= 0 (got {r})")));
        }
        if x <= 0.0 || !x.is_finite() {
            return Err(Error::Domain(format!("local squeezing x must be > 0 (got {x})")));
        }
        Ok(Self::Params { r, x, phi })
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Self::Identity)
    }
}

/// Channels for each mode of a three-mode state.
pub type ThreeModeChannel = [PureOneModeChannel; 3];

/// CJ covariance matrix of a channel, or the identity tag.
#[derive(Clone, Debug)]
pub enum CjForm {
    Identity,
    /// Two-mode CM; mode 1 is the output leg, mode 2 the input leg.
    Cm(CovMatrix),
}

/// Choi-Jamiolkowski covariance matrix of a pure single-mode channel:
/// output block `cosh r I`, input block `cosh r O1 Q^2 O1^T`, correlation
/// `sinh r sigma_z Q O1^T`, with `Q = diag(1/x, x)` and `O1 = rot(phi)`.
pub fn cj_cm(channel: &PureOneModeChannel) -> CjForm {
    match *channel {
        PureOneModeChannel::Identity => CjForm::Identity,
        PureOneModeChannel::Params { r, x, phi } => {
            let q = squeeze(1.0 / x);
            // The transposed rotation here is what makes the closed-form
            // output blocks hold with O1 = rot(phi): conjugation by sigma_z
            // inside the Schur complement flips the angle once.
            let o1 = rot(-phi);
            let g1 = Matrix2::identity() * r.cosh();
            let g2 = o1 * q * q * o1.transpose() * r.cosh();
            let g12 = sigma_z() * q * o1.transpose() * r.sinh();
            let mut m = DMatrix::zeros(4, 4);
            mat2::set_block(&mut m, 0, 0, &g1);
            mat2::set_block(&mut m, 1, 1, &g2);
            mat2::set_block(&mut m, 0, 1, &g12);
            mat2::set_block(&mut m, 1, 0, &g12.transpose());
            CjForm::Cm(CovMatrix::from_trusted(m, BasisOrdering::ModeOrdered))
        }
    }
}

/// Assemble the CJ covariance matrix of a product of single-mode channels:
/// a `2n`-mode matrix whose first `n` modes are the output legs and last `n`
/// the input legs. Identity components have no finite CJ matrix and are
/// rejected here; route those through [`apply_single_mode`] or
/// [`product_channel_diag_blocks`] instead.
pub fn product_cj(channels: &[PureOneModeChannel]) -> Result<CovMatrix> {
    let n = channels.len();
    let mut m = DMatrix::zeros(4 * n, 4 * n);
    for (k, ch) in channels.iter().enumerate() {
        let cm = match cj_cm(ch) {
            CjForm::Identity => {
                return Err(Error::Domain(
                    "identity channels have no finite CJ matrix".into(),
                ))
            }
            CjForm::Cm(cm) => cm,
        };
        let b = cm.matrix();
        mat2::set_block(&mut m, k, k, &mat2::get_block(b, 0, 0));
        mat2::set_block(&mut m, n + k, n + k, &mat2::get_block(b, 1, 1));
        let off = mat2::get_block(b, 0, 1);
        mat2::set_block(&mut m, k, n + k, &off);
        mat2::set_block(&mut m, n + k, k, &off.transpose());
    }
    Ok(CovMatrix::from_trusted(m, BasisOrdering::ModeOrdered))
}

/// Apply a general Gaussian channel given by its CJ covariance matrix:
/// `gamma' = Gamma_1 - Gamma_12 (Gamma_2 + Lambda gamma Lambda)^{-1} Gamma_12^T`
/// with `Lambda = ⊕ sigma_z`. The CJ matrix covers `2n` modes: the first `n`
/// are the output legs, the last `n` the input legs.
pub fn apply_channel(gamma: &CovMatrix, cj: &CovMatrix) -> Result<CovMatrix> {
    let n = gamma.n_modes();
    if cj.n_modes() != 2 * n {
        return Err(Error::ModeMismatch(2 * n, cj.n_modes()));
    }
    let g = gamma.clone().into_mode_ordered();
    let c = cj.clone().into_mode_ordered();
    let dim = 2 * n;
    let g1 = c.matrix().view((0, 0), (dim, dim)).clone_owned();
    let g12 = c.matrix().view((0, dim), (dim, dim)).clone_owned();
    let g2 = c.matrix().view((dim, dim), (dim, dim)).clone_owned();
    let lambda = mat2::direct_sum(&vec![sigma_z(); n]);
    let denom = g2 + &lambda * g.matrix() * &lambda;
    let inv = invert_conditioned(&denom)?;
    let out = g1 - &g12 * inv * g12.transpose();
    Ok(CovMatrix::from_trusted(out, BasisOrdering::ModeOrdered))
}

/// Apply a pure single-mode channel to mode `i` of an n-mode state.
///
/// With `A` the target mode's block, `K` its correlations to the rest and `R`
/// the rest, the output is
/// `A' = G1 - G12 (G2 + sz A sz)^{-1} G12^T`,
/// `R' = R - K^T sz (G2 + sz A sz)^{-1} sz K`,
/// `K' = G12 (G2 + sz A sz)^{-1} sz K`.
/// The identity variant returns the input unchanged.
pub fn apply_single_mode(
    gamma: &CovMatrix,
    channel: &PureOneModeChannel,
    mode: usize,
) -> Result<CovMatrix> {
    let n = gamma.n_modes();
    if mode >= n {
        return Err(Error::Domain(format!("mode {mode} out of range for {n} modes")));
    }
    let (g1, g2, g12) = match cj_cm(channel) {
        CjForm::Identity => return Ok(gamma.clone()),
        CjForm::Cm(cm) => {
            let m = cm.matrix();
            (
                mat2::get_block(m, 0, 0),
                mat2::get_block(m, 1, 1),
                mat2::get_block(m, 0, 1),
            )
        }
    };
    let g = gamma.clone().into_mode_ordered();
    let sz = sigma_z();
    let a = g.block(mode, mode);
    let core = g2 + sz * a * sz;
    let inv = invert_conditioned_2(&core)?;

    let mut out = g.matrix().clone();
    mat2::set_block(&mut out, mode, mode, &(g1 - g12 * inv * g12.transpose()));
    for j in 0..n {
        if j == mode {
            continue;
        }
        // K column for mode j (as seen from the measured mode)
        let k_j = g.block(mode, j);
        let kp = g12 * inv * sz * k_j;
        mat2::set_block(&mut out, mode, j, &kp);
        mat2::set_block(&mut out, j, mode, &kp.transpose());
        for l in j..n {
            if l == mode {
                continue;
            }
            let k_l = g.block(mode, l);
            let r_jl = g.block(j, l);
            let rp = r_jl - k_j.transpose() * sz * inv * sz * k_l;
            mat2::set_block(&mut out, j, l, &rp);
            mat2::set_block(&mut out, l, j, &rp.transpose());
        }
    }
    Ok(CovMatrix::from_trusted(out, BasisOrdering::ModeOrdered))
}

/// Closed-form diagonal blocks of the output when a `(r, x, phi)` channel acts
/// on mode `i` of the canonical pure state with purities `lambda`:
///
/// `A'_i = cosh r I - sinh^2 r (cosh r I + lambda_i X^2)^{-1}`,
/// `A'_l = lambda_l I - T_l (cosh r I + lambda_i X^2)^{-1} T_l^T`,
/// `T_l = D_il O1 X`.
///
/// Blocks are returned in mode order `[A'_1, A'_2, A'_3]`.
pub fn output_diag_blocks(
    p: &LocalPurities,
    r: f64,
    x: f64,
    phi: f64,
    mode: usize,
) -> Result<[Matrix2<f64>; 3]> {
    PureOneModeChannel::params(r, x, phi)?;
    if mode >= 3 {
        return Err(Error::Domain(format!("mode {mode} out of range")));
    }
    let xm = squeeze(x);
    let o1 = rot(phi);
    let ch = r.cosh();
    let sh = r.sinh();
    let li = p.get(mode);
    let core = (Matrix2::identity() * ch + xm * xm * li)
        .try_inverse()
        .expect("cosh r I + lambda X^2 is positive definite");
    let mut blocks = [Matrix2::zeros(); 3];
    blocks[mode] = Matrix2::identity() * ch - core * (sh * sh);
    let (j, k) = other_pair(mode);
    for l in [j, k] {
        let (dp, dm) = block_entries(p, mode.min(l), mode.max(l));
        let d = Matrix2::new(dp, 0.0, 0.0, dm);
        let t = d * o1 * xm;
        blocks[l] = Matrix2::identity() * p.get(l) - t * core * t.transpose();
    }
    Ok(blocks)
}

/// Purity parameters after a TMS filter (`x = 1`, `phi = 0`) on one mode of a
/// symmetric state `(lambda, lambda, lambda)`:
///
/// `lambda_1' = (lambda cosh r + 1)/(lambda + cosh r)` (the filtered mode),
/// `lambda_2' = sqrt(lambda^2 (cosh^2 r + 1) + (3 lambda^4 + 6 lambda^2 - 1)
///              cosh r / (4 lambda)) / (lambda + cosh r)` (the other two).
pub fn tms_filter_on_symmetric(lambda: f64, r: f64) -> Result<(f64, f64)> {
    if lambda < 1.0 {
        return Err(Error::Domain(format!("lambda = {lambda} below 1")));
    }
    if r < 0.0 {
        return Err(Error::Domain(format!("r = {r} below 0")));
    }
    let ch = r.cosh();
    let l1p = (lambda * ch + 1.0) / (lambda + ch);
    let l2 = lambda * lambda;
    let num = l2 * (ch * ch + 1.0) + (3.0 * l2 * l2 + 6.0 * l2 - 1.0) / (4.0 * lambda) * ch;
    let l2p = num.sqrt() / (lambda + ch);
    Ok((l1p, l2p))
}

/// Invert [`tms_filter_on_symmetric`]: given a target filtered purity
/// `lambda_1' >= 1` and the ratio parameter `f >= 0` with
/// `(lambda_2'/lambda_1')^2 = 1 + f`, return the input `lambda` and filter `r`:
///
/// `lambda = h + sqrt(h^2 + 1/3)` with `h = ((3 + 4f) lambda_1'^2 - 1)/(6 lambda_1')`,
/// `cosh r = (lambda lambda_1' - 1)/(lambda - lambda_1')`.
pub fn invert_symmetric_target(l1p: f64, f: f64) -> Result<(f64, f64)> {
    if l1p < 1.0 || f < 0.0 {
        return Err(Error::Domain(format!(
            "target out of range (lambda_1' = {l1p}, f = {f})"
        )));
    }
    let h = ((3.0 + 4.0 * f) * l1p * l1p - 1.0) / (6.0 * l1p);
    let lambda = h + (h * h + 1.0 / 3.0).sqrt();
    if (lambda - l1p).abs() < 1e-12 * lambda {
        if (l1p - 1.0).abs() < 1e-9 {
            // vacuum fixed point
            return Ok((1.0, 0.0));
        }
        return Err(Error::Domain(
            "target requires the identity channel (infinite r)".into(),
        ));
    }
    let ch = (lambda * l1p - 1.0) / (lambda - l1p);
    if ch < 1.0 - 1e-9 {
        return Err(Error::Domain(format!("inverted cosh r = {ch} below 1")));
    }
    Ok((lambda, ch.max(1.0).acosh()))
}

/// The three post-channel determinant indicators
/// `C_i = lambda_i'^2 - lambda_j'^2 - lambda_k'^2 + 1 = 2 |D_jk'|`,
/// labeled by output mode.
#[derive(Clone, Copy, Debug)]
pub struct DetSignTriple {
    pub c: [f64; 3],
}

impl DetSignTriple {
    /// `C_1 + C_2 + C_3 = 3 - sum_i lambda_i'^2`.
    pub fn sum(&self) -> f64 {
        self.c.iter().sum()
    }
}

/// Closed-form determinant indicators after a `(r, x, phi)` channel on
/// `mode` of the canonical pure state `lambda`.
///
/// For the measured mode (with the other two labeled `i, j` and writing
/// `lam = lambda[mode]`, `c_x = x^2 + x^{-2}`, `s_x = x^2 - x^{-2}`):
///
/// `C_mode = ([c_x A + B s_x cos 2 phi] cosh r + C)
///           / (4 lam (lam^2 + cosh^2 r + c_x lam cosh r))`
///
/// with `A, B, C` polynomial/radical combinations of the input purities; the
/// two untouched modes keep their input determinants up to an explicitly
/// positive factor:
///
/// `C_l = (lambda_l^2 - lambda_m^2 - lam^2 + 1) x^2 sinh^2 r
///        / ((lam + x^2 cosh r)(cosh r + lam x^2))`.
pub fn det_signs_after(
    p: &LocalPurities,
    r: f64,
    x: f64,
    phi: f64,
    mode: usize,
) -> Result<DetSignTriple> {
    PureOneModeChannel::params(r, x, phi)?;
    if mode >= 3 {
        return Err(Error::Domain(format!("mode {mode} out of range")));
    }
    let (i, j) = other_pair(mode);
    let l1 = p.get(i);
    let l2 = p.get(j);
    let l3 = p.get(mode);
    let (s1, s2, s3) = (l1 * l1, l2 * l2, l3 * l3);
    let ch = r.cosh();
    let sh = r.sinh();
    let cx = x * x + 1.0 / (x * x);
    let sx = x * x - 1.0 / (x * x);

    let a_poly = s1 * s1 - 2.0 * (s2 + s3 + 1.0) * s1 + s3 * s3 + (s2 - 1.0) * (s2 - 1.0)
        - 2.0 * (s2 - 3.0) * s3;
    let b = crate::three_mode::positivity_certificate(p.as_array())
        .w1
        .max(0.0)
        .sqrt();
    let c_term = 4.0 * l3 * (ch * ch + 1.0) * (s3 - s1 - s2 + 1.0);
    let c_mode = ((cx * a_poly + b * sx * (2.0 * phi).cos()) * ch + c_term)
        / (4.0 * l3 * (s3 + ch * ch + cx * l3 * ch));

    let factor = x * x * sh * sh / ((l3 + x * x * ch) * (ch + l3 * x * x));
    let c_i = (s1 - s2 - s3 + 1.0) * factor;
    let c_j = (s2 - s1 - s3 + 1.0) * factor;

    let mut c = [0.0; 3];
    c[mode] = c_mode;
    c[i] = c_i;
    c[j] = c_j;
    Ok(DetSignTriple { c })
}

/// Closed-form entries of the `(2,3)` block after a `(r, x, phi = 0)` channel
/// on mode 1 of the distributed two-mode squeezed state `gamma(s, theta)`:
///
/// `d± = -sin(2 theta) sinh^2(s/2) (x^{±2} cosh r - 1) / (cosh s + x^{±2} cosh r)`.
///
/// Under this crate's channel convention the output block is
/// `diag(d_minus, d_plus)` (the channel's CJ squeezer is `X^{-1}`, which swaps
/// the two entries relative to a raw `X` filter); the determinant is
/// unaffected.
pub fn d23_after_channel(s: f64, theta: f64, r: f64, x: f64) -> Result<(f64, f64)> {
    if s < 0.0 || r < 0.0 || x <= 0.0 {
        return Err(Error::Domain(
            "require s >= 0, r >= 0, x > 0 for the distributed-state filter".into(),
        ));
    }
    let ch = r.cosh();
    let chs = s.cosh();
    let sh2 = (s / 2.0).sinh().powi(2);
    let entry = |xe: f64| -((2.0 * theta).sin() * sh2 * (xe * ch - 1.0)) / (chs + xe * ch);
    Ok((entry(x * x), entry(1.0 / (x * x))))
}

/// Find `(s, r, x)` such that a `(r, x, 0)` channel on mode 1 of
/// `gamma(s, pi/4)` produces the symmetric state with purity
/// `lambda_target` on all three modes.
///
/// `s` is bracketed and bisected on [`preparation_curve`], which evaluates to
/// the **squared** output purity (it sweeps `1 -> cosh^2 r` as
/// `s: 0 -> inf`, so `cosh r` is fixed at `sqrt(2) * lambda_target` to leave
/// the target well inside the range), and `x` follows from
/// `x^2 + x^{-2} = csch^2(s/2)(3 cosh^2 r cosh s + cosh^2 r - cosh s - 3) / (2 cosh r)`.
pub fn prepare_symmetric_from_distributed(lambda_target: f64) -> Result<(f64, f64, f64)> {
    if lambda_target < 1.0 {
        return Err(Error::Domain(format!(
            "target purity {lambda_target} below 1"
        )));
    }
    if (lambda_target - 1.0).abs() < 1e-12 {
        return Ok((0.0, 0.0, 1.0));
    }
    let goal = lambda_target * lambda_target;
    let ch_r = std::f64::consts::SQRT_2 * lambda_target;
    let r = ch_r.acosh();
    let curve = |s: f64| preparation_curve(s, ch_r);

    let mut lo = 1e-9;
    if curve(lo) > goal {
        return Err(Error::SolverFailed(format!(
            "preparation curve at s -> 0 already exceeds target {lambda_target}"
        )));
    }
    let mut hi = 1.0;
    let mut tries = 0;
    while curve(hi) < goal {
        hi *= 2.0;
        tries += 1;
        if tries > 60 {
            return Err(Error::SolverFailed(format!(
                "no bracket for target {lambda_target}: curve({hi}) = {}",
                curve(hi)
            )));
        }
    }
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if curve(mid) < goal {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 * hi.max(1.0) {
            break;
        }
    }
    let s = (lo + hi) / 2.0;

    let cx = chx_rhs(s, ch_r);
    if cx < 2.0 - 1e-9 {
        return Err(Error::SolverFailed(format!(
            "squeezing equation returned x^2 + x^-2 = {cx} < 2"
        )));
    }
    let cx = cx.max(2.0);
    let x2 = (cx + (cx * cx - 4.0).sqrt()) / 2.0;
    Ok((s, r, x2.sqrt()))
}

/// The preparation curve
///
/// `4 cosh^2(s/2)(cosh^2 r cosh s - 1)
///  / (6 (cosh^2 r - 1) cosh s - 2 cosh^2 r + cosh 2s + 1)`,
///
/// which equals the **square** of the symmetric purity produced at
/// parameters `(s, cosh r)` (the determinant of the output's diagonal
/// blocks). Its limits are 1 as `s -> 0` and `cosh^2 r` as `s -> inf`.
pub fn preparation_curve(s: f64, ch_r: f64) -> f64 {
    let ch2 = ch_r * ch_r;
    let chs = s.cosh();
    let num = 4.0 * (s / 2.0).cosh().powi(2) * (ch2 * chs - 1.0);
    let den = 6.0 * (ch2 - 1.0) * chs - 2.0 * ch2 + (2.0 * s).cosh() + 1.0;
    num / den
}

fn chx_rhs(s: f64, ch_r: f64) -> f64 {
    let ch2 = ch_r * ch_r;
    let chs = s.cosh();
    let csch2 = 1.0 / (s / 2.0).sinh().powi(2);
    csch2 * (3.0 * ch2 * chs + ch2 - chs - 3.0) / (2.0 * ch_r)
}

/// Closed-form diagonal output blocks for a product of three single-mode
/// channels acting jointly on a three-mode state, with identity components
/// handled by deleting their rows/columns from the Schur complement (the
/// infinite-squeezing limit of their CJ blocks) rather than numerically.
///
/// For a measured mode `x` (channel blocks `G1, G2, G12`):
/// `gamma'_xx = G1 - G12 (G2 + sz A_x sz - T_x)^{-1} G12^T`, and for an
/// untouched mode `gamma'_xx = A_x - sz T_x sz`, where
/// `T_x = M_{x,rest} M_{rest}^{-1} M_{rest,x}` is built from
/// `M = (⊕ G2_y) + Lambda gamma Lambda` restricted to the *measured* other
/// modes.
pub fn product_channel_diag_blocks(
    gamma: &CovMatrix,
    channels: &ThreeModeChannel,
) -> Result<[Matrix2<f64>; 3]> {
    if gamma.n_modes() != 3 {
        return Err(Error::ModeMismatch(3, gamma.n_modes()));
    }
    let g = gamma.clone().into_mode_ordered();
    let sz = sigma_z();
    let cj: Vec<CjBlocks> = channels
        .iter()
        .map(|ch| match cj_cm(ch) {
            CjForm::Identity => None,
            CjForm::Cm(cm) => {
                let m = cm.matrix();
                Some((
                    mat2::get_block(m, 0, 0),
                    mat2::get_block(m, 1, 1),
                    mat2::get_block(m, 0, 1),
                ))
            }
        })
        .collect();

    let mut out = [Matrix2::zeros(); 3];
    for mode in 0..3 {
        // rest = other modes that are actually measured
        let (y, z) = other_pair(mode);
        let rest: Vec<usize> = [y, z].iter().cloned().filter(|&m| cj[m].is_some()).collect();
        let t = schur_correction(&g, &cj, mode, &rest)?;
        out[mode] = match cj[mode] {
            Some((g1, g2, g12)) => {
                let a = g.block(mode, mode);
                let core = g2 + sz * a * sz - t;
                let inv = invert_conditioned_2(&core)?;
                g1 - g12 * inv * g12.transpose()
            }
            None => g.block(mode, mode) - sz * t * sz,
        };
    }
    Ok(out)
}

/// `T_mode` over the measured subset `rest` of the other modes.
fn schur_correction(
    g: &CovMatrix,
    cj: &[CjBlocks],
    mode: usize,
    rest: &[usize],
) -> Result<Matrix2<f64>> {
    let sz = sigma_z();
    match rest.len() {
        0 => Ok(Matrix2::zeros()),
        1 => {
            let y = rest[0];
            let g2y = cj[y].as_ref().unwrap().1;
            let myy = g2y + sz * g.block(y, y) * sz;
            let inv = invert_conditioned_2(&myy)?;
            let mxy = sz * g.block(mode, y) * sz;
            Ok(mxy * inv * mxy.transpose())
        }
        2 => {
            let (y, z) = (rest[0], rest[1]);
            let g2y = cj[y].as_ref().unwrap().1;
            let g2z = cj[z].as_ref().unwrap().1;
            let mut m = DMatrix::zeros(4, 4);
            let myy = g2y + sz * g.block(y, y) * sz;
            let mzz = g2z + sz * g.block(z, z) * sz;
            let myz = sz * g.block(y, z) * sz;
            m.view_mut((0, 0), (2, 2)).copy_from(&myy);
            m.view_mut((2, 2), (2, 2)).copy_from(&mzz);
            m.view_mut((0, 2), (2, 2)).copy_from(&myz);
            m.view_mut((2, 0), (2, 2)).copy_from(&myz.transpose());
            let inv = invert_conditioned(&m)?;
            let mut row = DMatrix::zeros(2, 4);
            let mxy = sz * g.block(mode, y) * sz;
            let mxz = sz * g.block(mode, z) * sz;
            row.view_mut((0, 0), (2, 2)).copy_from(&mxy);
            row.view_mut((0, 2), (2, 2)).copy_from(&mxz);
            let t = &row * inv * row.transpose();
            Ok(Matrix2::new(t[(0, 0)], t[(0, 1)], t[(1, 0)], t[(1, 1)]))
        }
        _ => unreachable!("at most two other modes"),
    }
}

fn invert_conditioned(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let sym = (m + m.transpose()) / 2.0;
    let eigs = nalgebra::SymmetricEigen::new(sym.clone()).eigenvalues;
    let max = eigs.iter().cloned().fold(f64::MIN, f64::max);
    let min = eigs.iter().cloned().fold(f64::MAX, f64::min);
    if min <= 0.0 || max / min > 1e12 {
        return Err(Error::IllConditioned(if min <= 0.0 {
            f64::INFINITY
        } else {
            max / min
        }));
    }
    sym.try_inverse().ok_or(Error::IllConditioned(f64::INFINITY))
}

fn invert_conditioned_2(m: &Matrix2<f64>) -> Result<Matrix2<f64>> {
    let det = m.determinant();
    let scale = mat2::max_abs2(m);
    if det.abs() < 1e-12 * scale * scale {
        return Err(Error::IllConditioned(scale * scale / det.abs()));
    }
    m.try_inverse().ok_or(Error::IllConditioned(f64::INFINITY))
}
