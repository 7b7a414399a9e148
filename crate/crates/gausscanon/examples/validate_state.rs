//! Physicality and purity checks plus the Williamson decomposition.
//!
//! ```bash
//! cargo run -p gausscanon --example validate_state
//! ```

use gausscanon::phase_space::{williamson, BasisOrdering, CovMatrix, DEFAULT_TOL};
use nalgebra::DMatrix;

fn main() {
    // the vacuum saturates the uncertainty relation
    let vacuum = CovMatrix::vacuum(2);
    println!(
        "vacuum:        physical = {}, pure = {}, purity = {}",
        vacuum.is_physical(DEFAULT_TOL),
        vacuum.is_pure(DEFAULT_TOL).unwrap(),
        vacuum.purity().unwrap()
    );

    // a single-mode thermal state is physical but mixed
    let thermal = CovMatrix::new(DMatrix::identity(2, 2) * 2.0, BasisOrdering::ModeOrdered).unwrap();
    println!(
        "thermal nu=2:  physical = {}, pure = {}, purity = {}",
        thermal.is_physical(DEFAULT_TOL),
        thermal.is_pure(DEFAULT_TOL).unwrap(),
        thermal.purity().unwrap()
    );

    // scaling the vacuum below 1 violates the uncertainty relation
    let squeezed_too_far =
        CovMatrix::new(DMatrix::identity(2, 2) * 0.5, BasisOrdering::ModeOrdered).unwrap();
    println!(
        "0.5 * identity: physical = {} (defect {:.3})",
        squeezed_too_far.is_physical(DEFAULT_TOL),
        squeezed_too_far.uncertainty_defect()
    );

    // Williamson: every physical state is a symplectic image of a thermal state
    let mut m = DMatrix::identity(4, 4);
    m[(0, 0)] = 3.1;
    m[(1, 1)] = 1.4;
    m[(0, 2)] = 0.4;
    m[(2, 0)] = 0.4;
    m[(2, 2)] = 2.0;
    m[(3, 3)] = 1.8;
    let gamma = CovMatrix::new(m, BasisOrdering::ModeOrdered).unwrap();
    let w = williamson(&gamma).unwrap();
    println!(
        "two-mode state: symplectic eigenvalues {:?}, reconstruction residual {:.3e}",
        w.nu,
        w.reconstruction_residual(&gamma)
    );
}
