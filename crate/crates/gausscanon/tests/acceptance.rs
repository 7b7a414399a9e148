//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line (run with `cargo test --test acceptance -- --nocapture` to
//! see them). Tolerances and sample counts are pinned here and nowhere else.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gausscanon::generation::{distributed_tms, tms_cm};
use gausscanon::glocc::{
    apply_single_mode, d23_after_channel, det_signs_after, invert_symmetric_target,
    output_diag_blocks, prepare_symmetric_from_distributed, preparation_curve,
    tms_filter_on_symmetric, PureOneModeChannel,
};
use gausscanon::mat2;
use gausscanon::phase_space::{BasisOrdering, CovMatrix};
use gausscanon::sampling;
use gausscanon::standard_form::{glu_equivalent, standard_form, DEFAULT_DEG_TOL};
use gausscanon::three_mode::{
    block_det, build_pure_cm, extract_purities, other_pair, positivity_certificate,
    solve_generic_case, solve_singular_case, xp_block_defect, LocalPurities, PAIRS,
};

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {criterion} failed: {detail}");
}

/// 1000 random realizable purity triples in [1,6]^3 build covariance matrices
/// with purity residual < 1e-8 and determinant within 1e-7 of 1.
#[test]
fn criterion_01_purity_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst_res = 0.0_f64;
    let mut worst_det = 0.0_f64;
    for _ in 0..1000 {
        let p = sampling::random_purities(&mut rng, 6.0);
        let cm = build_pure_cm(&p);
        worst_res = worst_res.max(cm.gamma.purity_residual());
        worst_det = worst_det.max((cm.gamma.matrix().determinant() - 1.0).abs());
    }
    report(
        "01 purity residual",
        worst_res < 1e-8 && worst_det < 1e-7,
        &format!("worst |gJg - J| = {worst_res:.3e}, worst |det - 1| = {worst_det:.3e}"),
    );
}

/// 500 scrambles are recognized as equivalent (with idempotent canonical
/// forms); 500 pairs with distinct purity signatures are rejected.
#[test]
fn criterion_02_glu_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst_idem = 0.0_f64;
    let mut all_equivalent = true;
    for i in 0..500 {
        let n = 2 + i % 3;
        let pure = i % 2 == 0;
        let g = sampling::random_state(&mut rng, n, 3.0, pure);
        let l = sampling::random_local_unitary(&mut rng, n, 2.0);
        let scrambled = l.apply(&g).unwrap();
        all_equivalent &= glu_equivalent(&g, &scrambled, 1e-6).unwrap();
        let sf = standard_form(&g, DEFAULT_DEG_TOL).unwrap();
        let sf2 = standard_form(&sf.gamma_std, DEFAULT_DEG_TOL).unwrap();
        worst_idem = worst_idem.max(mat2::max_abs(
            &(sf.gamma_std.matrix() - sf2.gamma_std.matrix()),
        ));
    }

    let mut all_distinct = true;
    let mut checked = 0;
    while checked < 500 {
        let n = 2 + checked % 3;
        let a = sampling::random_state(&mut rng, n, 3.0, false);
        let b = sampling::random_state(&mut rng, n, 3.0, false);
        let la = standard_form(&a, DEFAULT_DEG_TOL).unwrap().lambdas;
        let lb = standard_form(&b, DEFAULT_DEG_TOL).unwrap().lambdas;
        let sep = la
            .iter()
            .zip(&lb)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0_f64, f64::max);
        if sep < 1e-3 {
            continue; // purity signatures too close to count as distinct
        }
        all_distinct &= !glu_equivalent(&a, &b, 1e-6).unwrap();
        checked += 1;
    }
    report(
        "02 GLU soundness",
        all_equivalent && all_distinct && worst_idem < 1e-8,
        &format!(
            "equivalents recognized: {all_equivalent}, distinct rejected: {all_distinct}, worst idempotence residual {worst_idem:.3e}"
        ),
    );
}

/// Scrambled two-mode squeezed states return to the hyperbolic normal form.
#[test]
fn criterion_03_two_mode_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst = 0.0_f64;
    for r in [0.3, 1.0, 2.0] {
        let reference = tms_cm(r).unwrap();
        for _ in 0..20 {
            let l = sampling::random_local_unitary(&mut rng, 2, 2.0);
            let sf = standard_form(&l.apply(&reference).unwrap(), DEFAULT_DEG_TOL).unwrap();
            worst = worst.max(mat2::max_abs(
                &(sf.gamma_std.matrix() - reference.matrix()),
            ));
        }
    }
    report(
        "03 two-mode reduction",
        worst < 1e-7,
        &format!("worst deviation from cosh/sinh form {worst:.3e}"),
    );
}

/// Standard forms of pure three-mode states are xp-block-diagonal with the
/// momentum block inverse to the position block.
#[test]
fn criterion_04_xp_block_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let p = sampling::random_purities(&mut rng, 6.0);
        let cm = build_pure_cm(&p);
        worst = worst.max(xp_block_defect(&cm.gamma));
        let l = sampling::random_local_unitary(&mut rng, 3, 1.5);
        let sf = standard_form(&l.apply(&cm.gamma).unwrap(), DEFAULT_DEG_TOL).unwrap();
        worst = worst.max(xp_block_defect(&sf.gamma_std));
    }
    // two-mode squeezing next to a vacuum mode, canonicalized
    let mut m = DMatrix::identity(6, 6);
    m.view_mut((0, 0), (4, 4)).copy_from(tms_cm(1.0).unwrap().matrix());
    let g = CovMatrix::new(m, BasisOrdering::ModeOrdered).unwrap();
    let sf = standard_form(&g, DEFAULT_DEG_TOL).unwrap();
    worst = worst.max(xp_block_defect(&sf.gamma_std));
    report(
        "04 xp block structure",
        worst < 1e-8,
        &format!("worst xp-block defect {worst:.3e}"),
    );
}

/// Both alternative entry-solution chains land in the same equivalence class
/// as the direct construction, 200 samples each.
#[test]
fn criterion_05_solution_chain_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut worst = 0.0_f64;

    let mut done = 0;
    while done < 200 {
        let p = sampling::random_purities(&mut rng, 6.0);
        let mut l = p.as_array();
        l.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let p = LocalPurities::new(l[0], l[1], l[2]).unwrap();
        if (l[1] - l[2]).abs() < 1e-2
            || PAIRS
                .iter()
                .any(|&(i, j)| block_det(&p, i, j).abs() < 1e-2)
        {
            continue;
        }
        let sol = solve_generic_case(&p).unwrap();
        let a = standard_form(&sol.assemble(), DEFAULT_DEG_TOL).unwrap();
        let b = standard_form(&build_pure_cm(&p).gamma, DEFAULT_DEG_TOL).unwrap();
        worst = worst.max(mat2::max_abs(&(a.gamma_std.matrix() - b.gamma_std.matrix())));
        done += 1;
    }

    for _ in 0..200 {
        let l2 = rng.gen_range(1.0..3.5);
        let l3 = rng.gen_range(1.0..3.5);
        let sol = solve_singular_case(l2, l3).unwrap();
        let p = LocalPurities::new(sol.lambda[0], sol.lambda[1], sol.lambda[2]).unwrap();
        let a = standard_form(&sol.assemble(), DEFAULT_DEG_TOL).unwrap();
        let b = standard_form(&build_pure_cm(&p).gamma, DEFAULT_DEG_TOL).unwrap();
        worst = worst.max(mat2::max_abs(&(a.gamma_std.matrix() - b.gamma_std.matrix())));
    }
    report(
        "05 solution-chain equivalence",
        worst < 1e-7,
        &format!("worst canonical-form distance {worst:.3e}"),
    );
}

/// The positivity-certificate identity holds to 1e-10 relative error.
#[test]
fn criterion_06_certificate_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let p = sampling::random_purities(&mut rng, 6.0);
        let l = p.as_array();
        let cert = positivity_certificate(l);
        let scale = 64.0 * l.iter().map(|x| x * x).product::<f64>();
        worst = worst.max(cert.identity_residual / scale);
    }
    report(
        "06 certificate identity",
        worst < 1e-10,
        &format!("worst relative residual {worst:.3e}"),
    );
}

fn no_go_trials() -> (f64, f64, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut worst_pos = f64::NEG_INFINITY;
    let mut worst_sum = 0.0_f64;
    let trials = 10_000;
    for _ in 0..trials {
        let p = sampling::random_purities_all_nonpositive(&mut rng, 6.0);
        let mode = rng.gen_range(0..3);
        let r = rng.gen_range(1.0_f64..10.0).acosh();
        let x = 10.0_f64.powf(rng.gen_range(-1.0..1.0));
        let phi = rng.gen_range(0.0..std::f64::consts::PI);
        let signs = det_signs_after(&p, r, x, phi, mode).unwrap();
        for c in signs.c {
            worst_pos = worst_pos.max(c);
        }
        let blocks = output_diag_blocks(&p, r, x, phi, mode).unwrap();
        let sum_sq: f64 = blocks.iter().map(|b| b.determinant()).sum();
        worst_sum = worst_sum.max((signs.sum() - (3.0 - sum_sq)).abs());
    }
    (worst_pos, worst_sum, trials)
}

/// Monte Carlo no-go: 10^4 channels on all-nonpositive states never produce a
/// positive output determinant.
#[test]
fn criterion_07_sign_no_go() {
    let (worst_pos, _, trials) = no_go_trials();
    report(
        "07 sign no-go",
        worst_pos <= 1e-9,
        &format!("{trials} trials, largest output determinant indicator {worst_pos:.3e}"),
    );
}

/// Determinant-indicator sum rule on every no-go trial.
#[test]
fn criterion_08_sum_rule() {
    let (_, worst_sum, trials) = no_go_trials();
    report(
        "08 sum rule",
        worst_sum < 1e-8,
        &format!("{trials} trials, worst |C1+C2+C3 - (3 - sum lambda'^2)| = {worst_sum:.3e}"),
    );
}

/// Symmetric-input closed forms match the matrix path on a 20x20 grid, the
/// target inversion round-trips, and the (3, 2) -> 7/5 example is exact.
#[test]
fn criterion_09_symmetric_laws() {
    let mut worst_grid = 0.0_f64;
    for li in 0..20 {
        let lambda = 1.05 + 0.3 * li as f64;
        let p = LocalPurities::new(lambda, lambda, lambda).unwrap();
        let g = build_pure_cm(&p).gamma;
        for ri in 0..20 {
            let r = (1.0 + 0.45 * ri as f64).acosh();
            let (l1p, l2p) = tms_filter_on_symmetric(lambda, r).unwrap();
            let out = apply_single_mode(
                &g,
                &PureOneModeChannel::params(r, 1.0, 0.0).unwrap(),
                0,
            )
            .unwrap();
            worst_grid = worst_grid
                .max((out.block(0, 0).determinant().sqrt() - l1p).abs())
                .max((out.block(1, 1).determinant().sqrt() - l2p).abs())
                .max((out.block(2, 2).determinant().sqrt() - l2p).abs());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut worst_round = 0.0_f64;
    for _ in 0..200 {
        let l1p = rng.gen_range(1.0..4.0);
        let f = rng.gen_range(0.01..3.0);
        let (lambda, r) = invert_symmetric_target(l1p, f).unwrap();
        let (back1, back2) = tms_filter_on_symmetric(lambda, r).unwrap();
        worst_round = worst_round
            .max((back1 - l1p).abs())
            .max((back2 - l1p * (1.0 + f).sqrt()).abs());
    }

    // lambda = 3, cosh r = 2: lambda_1' = (3*2 + 1)/(3 + 2) = 7/5, checked in
    // integer arithmetic and against the floating-point path.
    let (num, den) = (3_i64 * 2 + 1, 3 + 2);
    let exact = num * 5 == den * 7;
    let r = 2.0_f64.acosh();
    let (l1p, _) = tms_filter_on_symmetric(3.0, r).unwrap();
    let float_ok = (l1p - 1.4).abs() < 1e-12;

    report(
        "09 symmetric-input laws",
        worst_grid < 1e-8 && worst_round < 1e-8 && exact && float_ok,
        &format!(
            "grid {worst_grid:.3e}, roundtrip {worst_round:.3e}, 7/5 exact: {exact}, float {l1p}"
        ),
    );
}

/// The preparation pipeline hits symmetric targets end to end.
#[test]
fn criterion_10_preparation_pipeline() {
    let mut worst = 0.0_f64;
    let mut all_equivalent = true;
    for target in [1.2, 2.0, 5.0] {
        let (s, r, x) = prepare_symmetric_from_distributed(target).unwrap();
        let g = distributed_tms(s, std::f64::consts::FRAC_PI_4).unwrap().gamma;
        let ch = PureOneModeChannel::params(r, x, 0.0).unwrap();
        let out = apply_single_mode(&g, &ch, 0).unwrap();
        let p = extract_purities(&out).unwrap();
        for i in 0..3 {
            worst = worst.max((p.get(i) - target).abs());
        }
        let sym = LocalPurities::new(target, target, target).unwrap();
        all_equivalent &= glu_equivalent(&out, &build_pure_cm(&sym).gamma, 1e-6).unwrap();
    }
    report(
        "10 preparation pipeline",
        worst < 1e-6 && all_equivalent,
        &format!("worst purity error {worst:.3e}, canonical match: {all_equivalent}"),
    );
}

/// A channel with cosh r = 2, x = 2 on mode 1 of gamma(1, pi/4) makes all
/// three determinants negative, and the closed-form entries match matrices.
#[test]
fn criterion_11_positive_determinant_escape() {
    let (s, theta) = (1.0, std::f64::consts::FRAC_PI_4);
    let r = 2.0_f64.acosh();
    let x = 2.0;
    let g = distributed_tms(s, theta).unwrap().gamma;
    let input_dets: Vec<f64> = PAIRS
        .iter()
        .map(|&(i, j)| g.block(i, j).determinant())
        .collect();
    assert!(input_dets[2] > 0.0, "input (2,3) determinant should be positive");

    let out = apply_single_mode(&g, &PureOneModeChannel::params(r, x, 0.0).unwrap(), 0).unwrap();
    let out_dets: Vec<f64> = PAIRS
        .iter()
        .map(|&(i, j)| out.block(i, j).determinant())
        .collect();
    let all_negative = out_dets.iter().all(|&d| d < 0.0);

    let (dp, dm) = d23_after_channel(s, theta, r, x).unwrap();
    let b = out.block(1, 2);
    let closed_form_matches =
        (b[(1, 1)] - dp).abs() < 1e-8 && (b[(0, 0)] - dm).abs() < 1e-8;
    report(
        "11 positive-determinant escape",
        all_negative && closed_form_matches,
        &format!("output determinants {out_dets:?}, closed form matches: {closed_form_matches}"),
    );
}

/// Limit probes: the measured-mode indicator at x = 1e4 approaches
/// (A + B)/(4 lambda3^2), and the preparation curve at s = 10 approaches
/// cosh^2 r.
#[test]
fn criterion_12_limit_probes() {
    let p = LocalPurities::new(2.0, 1.5, 1.8).unwrap();
    let l = p.as_array();
    let (s1, s2, s3) = (l[0] * l[0], l[1] * l[1], l[2] * l[2]);
    let a_poly = s1 * s1 - 2.0 * (s2 + s3 + 1.0) * s1 + s3 * s3 + (s2 - 1.0) * (s2 - 1.0)
        - 2.0 * (s2 - 3.0) * s3;
    let b = positivity_certificate(l).w1.max(0.0).sqrt();
    let limit = (a_poly + b) / (4.0 * s3);
    let r = 3.0_f64.acosh();
    let c3 = det_signs_after(&p, r, 1e4, 0.0, 2).unwrap().c[2];
    let c3_rel = ((c3 - limit) / limit).abs();

    // convergence in s slows as roughly 3 (cosh^2 r - 1)/cosh s, so probe at
    // moderate r where s = 10 has already converged past the tolerance
    let mut worst_curve = 0.0_f64;
    for ch_r in [1.3, 2.0] {
        let curve = preparation_curve(10.0, ch_r);
        worst_curve = worst_curve.max((curve / (ch_r * ch_r) - 1.0).abs());
    }
    report(
        "12 limit probes",
        c3_rel < 1e-4 && worst_curve < 1e-3,
        &format!("C3 limit relative error {c3_rel:.3e}, curve limit error {worst_curve:.3e}"),
    );
}

/// The three output determinant indicators agree with the unmeasured-mode
/// relabeling under every mode choice (auxiliary coverage for criteria 7/8).
#[test]
fn det_signs_consistent_across_modes() {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for _ in 0..100 {
        let p = sampling::random_purities(&mut rng, 5.0);
        let mode = rng.gen_range(0..3);
        let r = rng.gen_range(0.0..2.0);
        let x = 10.0_f64.powf(rng.gen_range(-0.5..0.5));
        let signs = det_signs_after(&p, r, x, 0.0, mode).unwrap();
        let blocks = output_diag_blocks(&p, r, x, 0.0, mode).unwrap();
        for i in 0..3 {
            let (j, k) = other_pair(i);
            let li = blocks[i].determinant();
            let lj = blocks[j].determinant();
            let lk = blocks[k].determinant();
            assert!((signs.c[i] - (li - lj - lk + 1.0)).abs() < 1e-7);
        }
    }
}
