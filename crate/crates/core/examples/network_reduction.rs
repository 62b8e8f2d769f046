//! Classifies networks as pseudo-two-mode squeezers and checks the reduced
//! form against direct compilation.

use num_complex::Complex64;
use su11::fock::make_space;
use su11::network::{classify, compile, compile_reduced, NetworkSpec};
use su11::suite::extra_squeezer_network;

fn main() -> su11::Result<()> {
    let spec = NetworkSpec::multimode_chain(3, 2, Complex64::new(0.2, 0.0))?;
    let form = classify(&spec).expect("chains reduce");
    println!("pseudo-A coefficients {:?}", form.pseudo_a.coefficients());
    println!("pseudo-B coefficients {:?}", form.pseudo_b.coefficients());
    println!("squeezer η = {}", form.eta);

    let space = make_space(5, 5, Some(4))?;
    let dev = compile(&spec, &space)?.restrict(2).max_abs_diff(&compile_reduced(&form, &space)?.restrict(2))?;
    println!("reduced vs compiled on ≤ 2 photons: {dev:.1e}");

    match classify(&extra_squeezer_network(0.1, 0.3)) {
        Ok(_) => println!("unexpectedly reducible"),
        Err(obstruction) => println!("extra squeezer: {obstruction}"),
    }
    Ok(())
}
