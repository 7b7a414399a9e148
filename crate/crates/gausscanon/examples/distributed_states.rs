//! Distributed two-mode squeezed states: split one arm of a squeezed pair on
//! a beam splitter and track the resulting purity triple.
//!
//! ```bash
//! cargo run -p gausscanon --example distributed_states
//! ```

use gausscanon::generation::{distributed_params_for, distributed_tms};
use gausscanon::three_mode::classify;

fn main() {
    let (s, theta) = (1.0, std::f64::consts::FRAC_PI_4);
    let dt = distributed_tms(s, theta).unwrap();
    let l = dt.lambda.as_array();
    println!("gamma(s = {s}, theta = pi/4):");
    println!("  purities: {:?}", l);
    println!("  characteristic sum: {} + 1 = {} + {}", l[0], l[1], l[2]);
    println!("  class: {:?}", classify(&dt.lambda));
    println!("  raw off-diagonal entries (d per pair): {:?}", dt.d);

    // any target pair (lambda2, lambda3) >= 1 is reachable
    for (l2, l3) in [(1.5, 2.5), (2.0, 1.2), (1.0, 1.0)] {
        let (s, theta) = distributed_params_for(l2, l3).unwrap();
        let rebuilt = distributed_tms(s, theta).unwrap();
        println!(
            "target ({l2}, {l3}) -> s = {s:.4}, theta = {theta:.4}, purities {:?}",
            rebuilt.lambda.as_array()
        );
    }
}
