//! The three-mode realization that appears once a second squeezer couples an
//! upper and a lower mode:
//!
//! ```text
//! K_x = −i(â₁b̂₁ − â₁†b̂₁†)   K_y = −i(â₂b̂₁ − â₂†b̂₁†)   K_z = i(â₂†â₁ − â₂â₁†)
//! ```
//!
//! The structure constants are not assumed; they are fitted numerically from
//! the pairwise commutators and then used to assemble the ladder form.

use std::sync::Arc;

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use num_complex::Complex64;

use super::realization::{Provenance, Su11Realization};
use crate::error::{Error, Result};
use crate::fock::{annihilation, commutator, creation, expm, number_operator, FockSpace, LinearOperator};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Expansion coefficients of each commutator on `(K_x, K_y, K_z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureConstants {
    /// `[K_x, K_y]`
    pub xy: [Complex64; 3],
    /// `[K_y, K_z]`
    pub yz: [Complex64; 3],
    /// `[K_z, K_x]`
    pub zx: [Complex64; 3],
}

#[derive(Clone, Debug)]
pub struct ExoticRealization {
    pub k_x: LinearOperator,
    pub k_y: LinearOperator,
    pub k_z: LinearOperator,
    pub structure: StructureConstants,
    /// Largest entry left over after projecting each commutator onto the
    /// generator span, on the safe block.
    pub span_residual: f64,
    /// `K₀ = K_z`, `K₊ = K_x + α K_y` with `α` read from `[K_z, K_x] = α K_y`.
    pub ladder: Su11Realization,
    pub safe_bound: u32,
}

/// Frobenius inner product `Σ conj(x_ij) y_ij`.
fn frobenius(x: &LinearOperator, y: &LinearOperator) -> Complex64 {
    x.iter().map(|(r, c, v)| v.conj() * y.get(r, c)).sum()
}

/// Least-squares coefficients of `target` on `basis`, and the max-entry residual.
fn fit_span(target: &LinearOperator, basis: [&LinearOperator; 3]) -> Result<([Complex64; 3], f64)> {
    let gram = Matrix3::from_fn(|i, j| frobenius(basis[i], basis[j]));
    let rhs = Vector3::from_fn(|i, _| frobenius(basis[i], target));
    let coeffs = gram
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("generators are linearly dependent on the safe block".into()))?;
    let mut fit = LinearOperator::zero(target.space());
    for (k, b) in basis.iter().enumerate() {
        fit = fit.linear_combination(Complex64::new(1.0, 0.0), b, coeffs[k])?;
    }
    let residual = target.max_abs_diff(&fit)?;
    Ok(([coeffs[0], coeffs[1], coeffs[2]], residual))
}

/// Builds the realization on modes `(a1, a2, b1) = (0, 1, 2)` of a
/// three-mode space, fitting structure constants on the default safe block.
pub fn exotic_realization(space: &Arc<FockSpace>) -> Result<ExoticRealization> {
    if space.num_modes() != 3 {
        return Err(Error::InvalidArgument(format!(
            "the exotic realization needs exactly 3 modes, got {}",
            space.num_modes()
        )));
    }
    let safe_bound = space.default_safe_bound();
    let (a1, a2, b1) = (annihilation(space, 0)?, annihilation(space, 1)?, annihilation(space, 2)?);
    let (a1d, a2d) = (creation(space, 0)?, creation(space, 1)?);

    // K_x, K_y have the form −i(T − T†); K_z = i(â₂†â₁ − â₂â₁†)
    let x_lower = a1.try_mul(&b1)?;
    let k_x = x_lower.try_sub(&x_lower.adjoint())?.scaled(-I).with_hermitian_hint(true);
    let y_lower = a2.try_mul(&b1)?;
    let k_y = y_lower.try_sub(&y_lower.adjoint())?.scaled(-I).with_hermitian_hint(true);
    let k_z = a2d.try_mul(&a1)?.try_sub(&a2.try_mul(&a1d)?)?.scaled(I).with_hermitian_hint(true);

    let restricted = [k_x.restrict(safe_bound), k_y.restrict(safe_bound), k_z.restrict(safe_bound)];
    let basis = [&restricted[0], &restricted[1], &restricted[2]];
    let (xy, r1) = fit_span(&commutator(&k_x, &k_y)?.restrict(safe_bound), basis)?;
    let (yz, r2) = fit_span(&commutator(&k_y, &k_z)?.restrict(safe_bound), basis)?;
    let (zx, r3) = fit_span(&commutator(&k_z, &k_x)?.restrict(safe_bound), basis)?;
    let structure = StructureConstants { xy, yz, zx };

    // [K_z, K_x] = α K_y and [K_z, K_y] = β K_x; K₊ = K_x + α K_y is a raising
    // operator for K_z exactly when αβ = 1.
    let alpha = zx[1];
    let beta = -yz[0];
    if (alpha * beta - 1.0).norm() > 1e-9 {
        return Err(Error::Numerical(format!(
            "structure constants α = {alpha}, β = {beta} admit no su(1,1) ladder form"
        )));
    }
    let k_plus = k_x.linear_combination(Complex64::new(1.0, 0.0), &k_y, alpha)?;
    let ladder = Su11Realization::from_raising(k_plus, k_z.clone(), Provenance::ExoticQss { a1: 0, a2: 1, b1: 2 })?;

    Ok(ExoticRealization { k_x, k_y, k_z, structure, span_residual: r1.max(r2).max(r3), ladder, safe_bound })
}

impl ExoticRealization {
    pub fn space(&self) -> &Arc<FockSpace> {
        self.k_z.space()
    }

    pub fn casimir(&self) -> &LinearOperator {
        &self.ladder.casimir
    }

    /// `Û = exp[iπ/4 (â₂†â₁ + â₂â₁†)]`.
    pub fn diagonalizer(&self) -> Result<LinearOperator> {
        let space = self.space();
        let hop = creation(space, 1)?.try_mul(&annihilation(space, 0)?)?;
        let g = hop.try_add(&hop.adjoint())?;
        expm(&g, I * std::f64::consts::FRAC_PI_4)
    }

    /// `Û X Û†`.
    pub fn transform(&self, x: &LinearOperator) -> Result<LinearOperator> {
        let u = self.diagonalizer()?;
        u.try_mul(x)?.try_mul(&u.adjoint())
    }

    /// `max |Û K_z Û† − (n̂₂ − n̂₁)|` on the safe block.
    pub fn diagonalization_deviation(&self) -> Result<f64> {
        let space = self.space();
        let target = number_operator(space, 1)?.try_sub(&number_operator(space, 0)?)?;
        self.transform(&self.k_z)?.restrict(self.safe_bound).max_abs_diff(&target.restrict(self.safe_bound))
    }

    /// `max |Û K² Û† − number form|` on the safe block.
    pub fn transformed_casimir_deviation(&self) -> Result<f64> {
        let expected = number_form_transformed_casimir(self.space())?;
        let computed = self.transform(self.casimir())?;
        computed.restrict(self.safe_bound).max_abs_diff(&expected.restrict(self.safe_bound))
    }
}

/// The transformed Casimir written out in mode operators:
///
/// ```text
/// (n₂ − n₁)² − 2(n₂ + n₁ + 1) n_b − (n₂ + n₁ + 2) + 2i(â₂†â₁†b̂₁†² − â₂â₁b̂₁²)
/// ```
pub fn number_form_transformed_casimir(space: &Arc<FockSpace>) -> Result<LinearOperator> {
    let (n1, n2, nb) = (number_operator(space, 0)?, number_operator(space, 1)?, number_operator(space, 2)?);
    let id = LinearOperator::identity(space);
    let one = Complex64::new(1.0, 0.0);
    let diff = n2.try_sub(&n1)?;
    let sum = n2.try_add(&n1)?;
    let sum_plus_one = sum.try_add(&id)?;
    let sum_plus_two = sum_plus_one.try_add(&id)?;
    let (a1, a2, b1) = (annihilation(space, 0)?, annihilation(space, 1)?, annihilation(space, 2)?);
    let lower = a2.try_mul(&a1)?.try_mul(&b1)?.try_mul(&b1)?;
    let pair_term = lower.adjoint().try_sub(&lower)?;
    diff.try_mul(&diff)?
        .linear_combination(one, &sum_plus_one.try_mul(&nb)?, Complex64::new(-2.0, 0.0))?
        .linear_combination(one, &sum_plus_two, -one)?
        .linear_combination(one, &pair_term, 2.0 * I)
}

/// Eigenvalues on the `≤ photon_bound` block, for inspection only.
#[derive(Clone, Debug)]
pub struct ExoticSpectrum {
    pub photon_bound: u32,
    pub block_dimension: usize,
    /// Ascending eigenvalues of the Casimir compressed to the block.
    pub casimir: Vec<f64>,
    /// Ascending eigenvalues of `Û K_z Û†` compressed to the block.
    pub transformed_k_z: Vec<f64>,
    /// Largest `|X − X†|` entry among the two compressed blocks.
    pub hermiticity_defect: f64,
}

fn block_eigenvalues(op: &LinearOperator, indices: &[usize]) -> (Vec<f64>, f64) {
    let block = op.dense_block(indices);
    let defect = (&block - block.adjoint()).iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut eig: Vec<f64> = SymmetricEigen::new(block).eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    (eig, defect)
}

pub fn exotic_casimir_spectrum(realization: &ExoticRealization, photon_bound: u32) -> Result<ExoticSpectrum> {
    let indices = realization.space().indices_up_to(photon_bound);
    let (casimir, d1) = block_eigenvalues(realization.casimir(), &indices);
    let (transformed_k_z, d2) = block_eigenvalues(&realization.transform(&realization.k_z)?, &indices);
    Ok(ExoticSpectrum {
        photon_bound,
        block_dimension: indices.len(),
        casimir,
        transformed_k_z,
        hermiticity_defect: d1.max(d2),
    })
}
