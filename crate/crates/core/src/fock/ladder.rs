use std::sync::Arc;

use num_complex::Complex64;

use super::operator::LinearOperator;
use super::space::FockSpace;
use crate::error::Result;

/// Annihilation operator `â_m`: `â|…,n,…⟩ = √n |…,n−1,…⟩`.
///
/// Lowering never leaves a truncated space, so this operator is exact on every
/// column.
pub fn annihilation(space: &Arc<FockSpace>, mode: usize) -> Result<LinearOperator> {
    space.check_mode(mode)?;
    let mut scratch = vec![0u32; space.num_modes()];
    let mut triplets = Vec::with_capacity(space.dimension());
    for col in 0..space.dimension() {
        let occ = space.occupation(col);
        let n = occ[mode];
        if n == 0 {
            continue;
        }
        scratch.copy_from_slice(occ);
        scratch[mode] -= 1;
        let row = space.index_of(&scratch).expect("lowering stays inside the space");
        triplets.push((row, col, Complex64::new((n as f64).sqrt(), 0.0)));
    }
    LinearOperator::from_triplets(space, triplets, 0.0)
}

/// Creation operator `â_m†`, the exact adjoint of [`annihilation`].
///
/// Raising out of the truncated space (past the per-mode cutoff or the total
/// photon cap) yields zero: no renormalization is applied.
pub fn creation(space: &Arc<FockSpace>, mode: usize) -> Result<LinearOperator> {
    Ok(annihilation(space, mode)?.adjoint())
}

/// Number operator `n̂_m`, diagonal with the occupation of `mode`.
pub fn number_operator(space: &Arc<FockSpace>, mode: usize) -> Result<LinearOperator> {
    space.check_mode(mode)?;
    Ok(LinearOperator::diagonal(space, |i| Complex64::new(space.occupation(i)[mode] as f64, 0.0)))
}

/// `Σ_{m∈a} n̂_m − Σ_{m∈b} n̂_m`, diagonal with exact integer entries.
pub fn photon_difference(space: &Arc<FockSpace>, a_modes: &[usize], b_modes: &[usize]) -> Result<LinearOperator> {
    for &m in a_modes.iter().chain(b_modes) {
        space.check_mode(m)?;
    }
    Ok(LinearOperator::diagonal(space, |i| {
        let occ = space.occupation(i);
        let na: i64 = a_modes.iter().map(|&m| occ[m] as i64).sum();
        let nb: i64 = b_modes.iter().map(|&m| occ[m] as i64).sum();
        Complex64::new((na - nb) as f64, 0.0)
    }))
}
