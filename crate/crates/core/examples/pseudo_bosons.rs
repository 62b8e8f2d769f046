//! Chain pseudo-bosons, pseudo-number states and weight states.

use su11::fock::make_space;
use su11::su11::{chain_coefficients, pseudo_number_state, weight_state_from, Branch, PseudoBoson, Side};

fn main() -> su11::Result<()> {
    for r in 2..=4 {
        println!("chain coefficients r={r}: {:?}", chain_coefficients(r)?);
    }

    let space = make_space(3, 5, None)?;
    let pa = PseudoBoson::chain(vec![0, 1])?;
    let pb = PseudoBoson::single(2);

    let one = pseudo_number_state(1, &pa, Side::A, &space)?;
    println!(
        "|1_A}} = {:.4} |1,0,0⟩ + {:.4} |0,1,0⟩",
        one.expansion.amplitude_of(&[1, 0, 0]),
        one.expansion.amplitude_of(&[0, 1, 0])
    );

    // k = 1, μ = 1 sits on the A branch with n_A = 1, n_B = 0
    let w = weight_state_from(2, 2, Branch::APlus, &pa, &pb, &space)?;
    let nonzero: Vec<_> = w
        .expansion
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-14)
        .map(|(i, a)| (space.occupation(i).to_vec(), *a))
        .collect();
    println!("weight state k=1 μ=1: {nonzero:?}");
    Ok(())
}
