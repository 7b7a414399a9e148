//! Pure two-mode states reduce to the hyperbolic normal form
//! `[[cosh r I, sinh r sz], [sinh r sz, cosh r I]]`.
//!
//! ```bash
//! cargo run -p gausscanon --example two_mode_squeezed
//! ```

use gausscanon::generation::tms_cm;
use gausscanon::mat2;
use gausscanon::sampling;
use gausscanon::standard_form::{standard_form, two_mode_pure_params, DEFAULT_DEG_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let r = 1.25;
    let reference = tms_cm(r).unwrap();

    // hide the squeezing behind random local operations
    let scramble = sampling::random_local_unitary(&mut rng, 2, 2.0);
    let hidden = scramble.apply(&reference).unwrap();

    // the canonical form recovers cosh r / sinh r exactly
    let sf = standard_form(&hidden, DEFAULT_DEG_TOL).unwrap();
    println!("input squeezing r = {r}");
    println!(
        "recovered cosh r = {} (expected {})",
        sf.gamma_std.block(0, 0)[(0, 0)],
        r.cosh()
    );

    // full parameter extraction: r plus the local squeezers and rotations
    let params = two_mode_pure_params(&hidden).unwrap();
    println!(
        "extracted (r, r1, r2) = ({:.6}, {:.6}, {:.6})",
        params.r, params.r1, params.r2
    );
    let rebuilt = params.reconstruct();
    println!(
        "reconstruction residual {:.3e}",
        mat2::max_abs(&(rebuilt.matrix() - hidden.matrix()))
    );
}
