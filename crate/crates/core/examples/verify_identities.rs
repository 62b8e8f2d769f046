//! Numerical checks of the network identities, plus the full verification suite.

use num_complex::Complex64;
use su11::fock::make_space;
use su11::network::{verify_multimode_identity, verify_three_mode_identity};
use su11::suite::{run_suite, SuiteOverrides};

fn main() -> su11::Result<()> {
    let space = make_space(3, 8, Some(7))?;
    println!("three-mode identity: {:.2e}", verify_three_mode_identity(Complex64::new(0.2, 0.0), &space, 4)?);

    // without the photon cap, truncation leaks into the compared block
    let leaky = make_space(3, 8, None)?;
    println!("same, per-mode cutoff only: {:.2e}", verify_three_mode_identity(Complex64::new(0.2, 0.0), &leaky, 4)?);

    let space = make_space(4, 6, Some(5))?;
    let d = verify_multimode_identity(2, 2, Complex64::new(0.2, 0.0), &space, 3)?;
    println!("multimode 2x2: generator {:.2e}, unitary {:.2e}", d.generator, d.unitary);

    for check in run_suite("all", &SuiteOverrides::default())? {
        println!(
            "{} {:<42} {:.2e} (tol {:.0e})",
            if check.pass { "ok  " } else { "FAIL" },
            check.name,
            check.max_deviation,
            check.tolerance
        );
    }
    Ok(())
}
