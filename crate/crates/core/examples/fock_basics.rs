//! Truncated Fock spaces, ladder operators and matrix exponentials.

use num_complex::Complex64;
use su11::fock::{annihilation, commutator, creation, expm, make_space, LinearOperator, StateVector};

fn main() -> su11::Result<()> {
    // two modes, occupations 0..=4 each, at most 4 photons in total
    let space = make_space(2, 5, Some(4))?;
    println!("dimension {} (cutoff {}, cap {:?})", space.dimension(), space.cutoff(), space.total_photon_cap());
    for (i, occ) in space.iter().take(6).enumerate() {
        println!("  index {i}: {occ:?}");
    }

    let a = annihilation(&space, 0)?;
    let ad = creation(&space, 0)?;
    let defect = commutator(&a, &ad)?.try_sub(&LinearOperator::identity(&space))?;
    println!("[a, a†] − 1 away from the cap: {:.1e}", defect.restrict(3).max_abs());

    // a 50:50 mode rotation exp(t (a†b − a b†))
    let b = annihilation(&space, 1)?;
    let g = ad.try_mul(&b)?.try_sub(&a.try_mul(&creation(&space, 1)?)?)?;
    let u = expm(&g, Complex64::new(std::f64::consts::FRAC_PI_4, 0.0))?;
    let out = u.apply(&StateVector::basis(&space, &[1, 0])?)?;
    println!("|1,0⟩ → {:.4} |1,0⟩ + {:.4} |0,1⟩", out.amplitude_of(&[1, 0]), out.amplitude_of(&[0, 1]));
    Ok(())
}
