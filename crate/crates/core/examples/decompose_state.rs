//! Projects a network's output onto the weight basis of its pseudo-bosons.

use num_complex::Complex64;
use su11::fock::{make_space, StateVector};
use su11::network::{classify, simulate, NetworkSpec};
use su11::su11::decompose;

fn main() -> su11::Result<()> {
    let spec = NetworkSpec::multimode_chain(2, 2, Complex64::new(0.3, 0.0))?;
    let space = make_space(4, 6, Some(5))?;
    let psi = simulate(&spec, &StateVector::vacuum(&space))?;
    let form = classify(&spec).expect("chains reduce");
    let d = decompose(&psi, &form.pseudo_a, &form.pseudo_b)?;
    for t in d.significant(1e-6) {
        println!("2k={} 2μ={} {:?}: {:.6}", t.label.two_k(), t.label.two_mu(), t.label.branch(), t.amplitude);
    }
    println!("residual outside the pseudo-mode span: {:.1e}", d.residual_norm);
    Ok(())
}
