//! The three-generator realization built from the three-mode squeezer and
//! a second squeezer, its structure constants and spectrum.

use su11::fock::make_space;
use su11::network::verify_exotic_identity;
use su11::su11::{exotic_casimir_spectrum, exotic_realization};

fn main() -> su11::Result<()> {
    let space = make_space(3, 6, None)?;
    let ex = exotic_realization(&space)?;
    println!("[Kx,Ky] = {:?}", ex.structure.xy);
    println!("[Ky,Kz] = {:?}", ex.structure.yz);
    println!("[Kz,Kx] = {:?}", ex.structure.zx);
    println!("span residual {:.1e} on ≤ {} photons", ex.span_residual, ex.safe_bound);
    println!("diagonalization deviation {:.1e}", ex.diagonalization_deviation()?);

    let spectrum = exotic_casimir_spectrum(&ex, 2)?;
    println!("block dimension {}", spectrum.block_dimension);
    println!("Casimir eigenvalues {:.4?}", spectrum.casimir);
    println!("U Kz U† eigenvalues {:.4?}", spectrum.transformed_k_z);

    let space = make_space(3, 8, None)?;
    println!("identity deviation at η=0.1, s'=0.3: {:.2e}", verify_exotic_identity(0.1, 0.3, &space, 3)?);
    Ok(())
}
