//! Pure three-mode states from their local purities: construction,
//! classification, block determinants, and the positivity certificate.
//!
//! ```bash
//! cargo run -p gausscanon --example three_mode_family
//! ```

use gausscanon::three_mode::{
    block_det, build_pure_cm, classify, extract_purities, positivity_certificate, validate,
    LocalPurities, PAIRS,
};

fn main() {
    // not every triple is realizable: lambda_i + 1 <= lambda_j + lambda_k
    for triple in [[3.0, 2.0, 2.0], [4.0, 2.0, 2.0]] {
        let report = validate(triple);
        println!("{triple:?} realizable: {}", report.valid);
        for v in &report.violations {
            println!("  {v}");
        }
    }

    for (l1, l2, l3) in [(3.0, 3.0, 3.0), (2.0, 1.5, 1.8), (1.0, 1.7, 1.7)] {
        let p = LocalPurities::new(l1, l2, l3).unwrap();
        let cm = build_pure_cm(&p);
        println!("\npurities ({l1}, {l2}, {l3}): class {:?}", classify(&p));
        println!("  purity residual {:.3e}", cm.gamma.purity_residual());
        for &(i, j) in PAIRS.iter() {
            println!(
                "  block ({},{}): entries {:?}, det {:.6}",
                i + 1,
                j + 1,
                cm.d[PAIRS.iter().position(|&x| x == (i, j)).unwrap()],
                block_det(&p, i, j)
            );
        }
        let back = extract_purities(&cm.gamma).unwrap();
        println!("  extracted back: {:?}", back.as_array());
        let cert = positivity_certificate(p.as_array());
        println!(
            "  certificate: K1 = {:.4}, w1 = {:.4}, identity residual {:.3e}, holds: {}",
            cert.k1, cert.w1, cert.identity_residual, cert.condition_holds
        );
    }
}
