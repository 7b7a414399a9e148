//! The determinant-sign invariant: channels cannot create a positive
//! off-diagonal block determinant, but they can destroy one.
//!
//! Symmetric states have all three block determinants nonpositive, so no
//! local Gaussian channel chain reaches any state with a positive one (such
//! as the distributed two-mode squeezed states) from them. The converse move
//! is possible: a suitable filter erases a positive determinant.
//!
//! ```bash
//! cargo run -p gausscanon --example sign_no_go
//! ```

use gausscanon::generation::distributed_tms;
use gausscanon::glocc::{apply_single_mode, det_signs_after, PureOneModeChannel};
use gausscanon::sampling;
use gausscanon::three_mode::{block_det, PAIRS};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let trials = 20_000;
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..trials {
        let p = sampling::random_purities_all_nonpositive(&mut rng, 6.0);
        let mode = rng.gen_range(0..3);
        let r = rng.gen_range(1.0_f64..10.0).acosh();
        let x = 10.0_f64.powf(rng.gen_range(-1.0..1.0));
        let phi = rng.gen_range(0.0..std::f64::consts::PI);
        let signs = det_signs_after(&p, r, x, phi, mode).unwrap();
        for c in signs.c {
            worst = worst.max(c);
        }
    }
    println!(
        "{trials} random channels on all-nonpositive states: \
         largest output determinant indicator = {worst:.3e} (never positive)"
    );

    // escape in the other direction: gamma(1, pi/4) starts with a positive
    // (2,3) determinant; a channel on mode 1 with x outside the safe window
    // pushes it negative
    let g = distributed_tms(1.0, std::f64::consts::FRAC_PI_4).unwrap().gamma;
    let before: Vec<f64> = PAIRS.iter().map(|&(i, j)| g.block(i, j).determinant()).collect();
    let ch = PureOneModeChannel::params(2.0_f64.acosh(), 2.0, 0.0).unwrap();
    let out = apply_single_mode(&g, &ch, 0).unwrap();
    let after: Vec<f64> = PAIRS
        .iter()
        .map(|&(i, j)| out.block(i, j).determinant())
        .collect();
    println!("distributed state determinants before: {before:?}");
    println!("after cosh r = 2, x = 2 on mode 1:     {after:?}");

    // input sign pattern straight from the purities, no matrices needed
    let p = g_block_dets();
    println!("input determinants from the purity formulas: {p:?}");
}

fn g_block_dets() -> Vec<f64> {
    let dt = distributed_tms(1.0, std::f64::consts::FRAC_PI_4).unwrap();
    PAIRS
        .iter()
        .map(|&(i, j)| block_det(&dt.lambda, i, j))
        .collect()
}
