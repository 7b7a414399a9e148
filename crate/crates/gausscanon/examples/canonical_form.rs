//! Canonicalize states under Gaussian local unitaries and decide equivalence.
//!
//! ```bash
//! cargo run -p gausscanon --example canonical_form
//! ```

use gausscanon::mat2;
use gausscanon::sampling;
use gausscanon::standard_form::{glu_equivalent, standard_form, DEFAULT_DEG_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    // a random mixed three-mode state and a locally scrambled copy
    let gamma = sampling::random_state(&mut rng, 3, 3.0, false);
    let scramble = sampling::random_local_unitary(&mut rng, 3, 2.0);
    let scrambled = scramble.apply(&gamma).unwrap();

    let sf1 = standard_form(&gamma, DEFAULT_DEG_TOL).unwrap();
    let sf2 = standard_form(&scrambled, DEFAULT_DEG_TOL).unwrap();
    println!("local purities (lambda per mode): {:?}", sf1.lambdas);
    println!("block tags: {:?}", sf1.tags);
    println!(
        "canonical forms coincide to {:.3e}",
        mat2::max_abs(&(sf1.gamma_std.matrix() - sf2.gamma_std.matrix()))
    );
    println!(
        "glu_equivalent(original, scrambled) = {}",
        glu_equivalent(&gamma, &scrambled, 1e-6).unwrap()
    );

    // an unrelated state is rejected
    let other = sampling::random_state(&mut rng, 3, 3.0, false);
    println!(
        "glu_equivalent(original, unrelated) = {}",
        glu_equivalent(&gamma, &other, 1e-6).unwrap()
    );

    // the canonical form is a fixed point
    let again = standard_form(&sf1.gamma_std, DEFAULT_DEG_TOL).unwrap();
    println!(
        "idempotence residual {:.3e}",
        mat2::max_abs(&(again.gamma_std.matrix() - sf1.gamma_std.matrix()))
    );
}
