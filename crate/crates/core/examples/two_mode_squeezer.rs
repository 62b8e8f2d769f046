//! The two-mode squeezer acting on vacuum, and the su(1,1) algebra it lives in.

use num_complex::Complex64;
use su11::fock::{make_space, StateVector};
use su11::network::{simulate, Element, Mode, NetworkSpec};
use su11::su11::two_mode_realization;

fn main() -> su11::Result<()> {
    let space = make_space(2, 12, None)?;
    let real = two_mode_realization(&space, 0, 1)?;
    println!("closure residual on ≤ 9 photons: {:.1e}", real.closure_residuals(9)?.max());

    let r = 0.5;
    let spec = NetworkSpec::new(1, 1, vec![Element::squeezer(Mode::A(0), Mode::B(0), Complex64::new(0.0, 2.0 * r))])?;
    let psi = simulate(&spec, &StateVector::vacuum(&space))?;
    println!("|n,n⟩ amplitudes against tanhⁿ(r)/cosh(r) up to phase:");
    for n in 0..5u32 {
        let amp = psi.amplitude_of(&[n, n]);
        let expected = r.tanh().powi(n as i32) / r.cosh();
        println!("  n={n}: |amp| = {:.8}  expected {:.8}", amp.norm(), expected);
    }
    Ok(())
}
