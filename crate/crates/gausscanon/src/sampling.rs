//! Seeded random generators for states, local unitaries, and purity triples.
//!
//! Everything here is driven by an explicit RNG so that test suites and the
//! CLI scan are reproducible: the same seed always produces the same samples.

use nalgebra::{DMatrix, Matrix2};
use rand::Rng;

use crate::mat2;
use crate::phase_space::{reorder, BasisOrdering, CovMatrix, SymplecticTransform};
use crate::three_mode::LocalPurities;

/// Uniformly random planar rotation.
pub fn random_rotation<R: Rng>(rng: &mut R) -> Matrix2<f64> {
    mat2::rot(rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Random 2x2 symplectic by Euler composition `rot(a) diag(e^t, e^-t) rot(b)`
/// with `|t| <= max_log_squeeze`.
pub fn random_local_symplectic<R: Rng>(rng: &mut R, max_log_squeeze: f64) -> Matrix2<f64> {
    let t = rng.gen_range(-max_log_squeeze..=max_log_squeeze);
    random_rotation(rng) * mat2::squeeze(t.exp()) * random_rotation(rng)
}

/// Random Gaussian local unitary: a direct sum of per-mode 2x2 symplectics.
pub fn random_local_unitary<R: Rng>(
    rng: &mut R,
    n: usize,
    max_log_squeeze: f64,
) -> SymplecticTransform {
    let blocks: Vec<Matrix2<f64>> = (0..n)
        .map(|_| random_local_symplectic(rng, max_log_squeeze))
        .collect();
    SymplecticTransform::from_local_blocks(&blocks)
        .expect("euler-composed local blocks are symplectic")
}

/// Random passive (orthogonal symplectic) transform on `n` modes, built from
/// a Haar-ish random unitary via the standard embedding
/// `X + iY -> [[X, -Y], [Y, X]]` in the xp-ordered basis.
pub fn random_passive<R: Rng>(rng: &mut R, n: usize) -> SymplecticTransform {
    use nalgebra::Complex;
    let gauss = |rng: &mut R| {
        // Box-Muller
        let u: f64 = rng.gen_range(f64::EPSILON..1.0);
        let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        (-2.0 * u.ln()).sqrt() * v.cos()
    };
    let a = DMatrix::from_fn(n, n, |_, _| Complex::new(gauss(rng), gauss(rng)));
    let qr = a.qr();
    let q = qr.q();
    let mut xp = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = q[(i, j)];
            xp[(i, j)] = z.re;
            xp[(i, j + n)] = -z.im;
            xp[(i + n, j)] = z.im;
            xp[(i + n, j + n)] = z.re;
        }
    }
    let mode = reorder(&xp, BasisOrdering::XpOrdered);
    SymplecticTransform::new(mode, BasisOrdering::ModeOrdered)
        .expect("unitary embedding is symplectic")
}

/// Random symplectic on `n` modes via the Euler decomposition
/// `O1 (⊕ squeezers) O2` with passive factors from [`random_passive`].
pub fn random_symplectic<R: Rng>(rng: &mut R, n: usize, max_log_squeeze: f64) -> SymplecticTransform {
    let o1 = random_passive(rng, n);
    let o2 = random_passive(rng, n);
    let blocks: Vec<Matrix2<f64>> = (0..n)
        .map(|_| {
            let t = rng.gen_range(-max_log_squeeze..=max_log_squeeze);
            mat2::squeeze(t.exp())
        })
        .collect();
    let d = mat2::direct_sum(&blocks);
    let m = o1.matrix() * d * o2.matrix();
    SymplecticTransform::new(m, BasisOrdering::ModeOrdered).expect("euler product is symplectic")
}

/// Random physical state `S^T (⊕ nu_k I) S` with symplectic eigenvalues drawn
/// from `[1, nu_max]`. With `pure = true` all `nu_k = 1`.
pub fn random_state<R: Rng>(rng: &mut R, n: usize, nu_max: f64, pure: bool) -> CovMatrix {
    let s = random_symplectic(rng, n, 1.0);
    let blocks: Vec<Matrix2<f64>> = (0..n)
        .map(|_| {
            let nu = if pure { 1.0 } else { rng.gen_range(1.0..=nu_max) };
            Matrix2::identity() * nu
        })
        .collect();
    let d = mat2::direct_sum(&blocks);
    let g = s.matrix().transpose() * d * s.matrix();
    CovMatrix::new(g, BasisOrdering::ModeOrdered).expect("williamson product is a valid state")
}

/// Random purity triple with each coordinate in `[1, max]`, rejection-sampled
/// against the triangle-like realizability conditions.
pub fn random_purities<R: Rng>(rng: &mut R, max: f64) -> LocalPurities {
    loop {
        let l = [
            rng.gen_range(1.0..=max),
            rng.gen_range(1.0..=max),
            rng.gen_range(1.0..=max),
        ];
        if let Ok(p) = LocalPurities::new(l[0], l[1], l[2]) {
            return p;
        }
    }
}

/// Random valid purity triple whose three off-diagonal block determinants are
/// all nonpositive (the largest mode's determinant constraint re-checked
/// explicitly).
pub fn random_purities_all_nonpositive<R: Rng>(rng: &mut R, max: f64) -> LocalPurities {
    loop {
        let p = random_purities(rng, max);
        if (0..3).all(|k| {
            let (i, j) = crate::three_mode::other_pair(k);
            crate::three_mode::block_det(&p, i, j) <= 0.0
        }) {
            return p;
        }
    }
}
