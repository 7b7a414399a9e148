//! Prepare any symmetric three-mode state from the one-parameter family of
//! distributed two-mode squeezed states by a single channel on mode 1.
//!
//! ```bash
//! cargo run -p gausscanon --example prepare_symmetric
//! ```

use gausscanon::generation::distributed_tms;
use gausscanon::glocc::{
    apply_single_mode, prepare_symmetric_from_distributed, PureOneModeChannel,
};
use gausscanon::standard_form::glu_equivalent;
use gausscanon::three_mode::{build_pure_cm, extract_purities, LocalPurities};

fn main() {
    for target in [1.2, 2.0, 5.0] {
        let (s, r, x) = prepare_symmetric_from_distributed(target).unwrap();
        println!("target lambda' = {target}: s = {s:.6}, cosh r = {:.6}, x = {x:.6}", r.cosh());

        let input = distributed_tms(s, std::f64::consts::FRAC_PI_4).unwrap().gamma;
        let channel = PureOneModeChannel::params(r, x, 0.0).unwrap();
        let output = apply_single_mode(&input, &channel, 0).unwrap();
        let achieved = extract_purities(&output).unwrap();
        println!("  achieved purities: {:?}", achieved.as_array());

        let reference = build_pure_cm(&LocalPurities::new(target, target, target).unwrap());
        println!(
            "  equivalent to the canonical symmetric state: {}",
            glu_equivalent(&output, &reference.gamma, 1e-6).unwrap()
        );
    }
}
