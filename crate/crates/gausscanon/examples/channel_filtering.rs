//! Pure single-mode Gaussian channels: CJ form, matrix action, and the
//! closed-form laws for symmetric inputs.
//!
//! ```bash
//! cargo run -p gausscanon --example channel_filtering
//! ```

use gausscanon::glocc::{
    apply_single_mode, cj_cm, invert_symmetric_target, output_diag_blocks,
    tms_filter_on_symmetric, CjForm, PureOneModeChannel,
};
use gausscanon::three_mode::{build_pure_cm, LocalPurities};

fn main() {
    // the CJ state of a TMS filter (x = 1) is itself a two-mode squeezed state
    let filter = PureOneModeChannel::params(0.9, 1.0, 0.0).unwrap();
    if let CjForm::Cm(cm) = cj_cm(&filter) {
        println!(
            "CJ state of a TMS filter: pure = {}",
            cm.is_pure(1e-8).unwrap()
        );
    }

    // filter one mode of the maximally symmetric lambda = 3 state
    let lambda = 3.0;
    let p = LocalPurities::new(lambda, lambda, lambda).unwrap();
    let gamma = build_pure_cm(&p).gamma;
    let r = 2.0_f64.acosh(); // cosh r = 2
    let ch = PureOneModeChannel::params(r, 1.0, 0.0).unwrap();
    let out = apply_single_mode(&gamma, &ch, 0).unwrap();
    let (l1p, l2p) = tms_filter_on_symmetric(lambda, r).unwrap();
    println!("filter cosh r = 2 on mode 1 of ({lambda},{lambda},{lambda}):");
    println!(
        "  matrix path purities: {:.6}, {:.6}",
        out.block(0, 0).determinant().sqrt(),
        out.block(1, 1).determinant().sqrt()
    );
    println!("  closed form:          {l1p:.6}, {l2p:.6}   (7/5 = 1.4 exactly)");

    // closed-form diagonal blocks agree with the matrix path even with local
    // squeezing and rotation in the channel
    let (r, x, phi) = (0.8, 1.7, 0.4);
    let blocks = output_diag_blocks(&p, r, x, phi, 1).unwrap();
    let full = apply_single_mode(
        &gamma,
        &PureOneModeChannel::params(r, x, phi).unwrap(),
        1,
    )
    .unwrap();
    let worst = (0..3)
        .map(|m| (full.block(m, m) - blocks[m]).norm())
        .fold(0.0_f64, f64::max);
    println!("general channel (r={r}, x={x}, phi={phi}): paths agree to {worst:.3e}");

    // inverting the symmetric laws: which input and filter hit a target?
    let (l1_target, f) = (1.4, 0.9251700680272108);
    let (lambda_in, r_in) = invert_symmetric_target(l1_target, f).unwrap();
    println!(
        "target (lambda1' = {l1_target}, f = {f:.4}) <- lambda = {lambda_in:.4}, cosh r = {:.4}",
        r_in.cosh()
    );
}
