//! Numerical checks of the network identities.
//!
//! Each side of an identity is a product of truncated exponentials. The two
//! products are applied to every basis vector with at most `safe_bound`
//! photons and the results compared on the same block, so the reported number
//! is `max |⟨i|L|j⟩ − ⟨i|R|j⟩|` over that block.

use std::f64::consts::SQRT_2;
use std::sync::Arc;

use num_complex::Complex64;

use super::compile::{compile, generators, pseudo_squeezer_generator};
use super::element::{squeezer_generator, NetworkSpec};
use crate::error::{Error, Result};
use crate::fock::{annihilation, creation, evolve_columns, FockSpace, LinearOperator};
use crate::su11::PseudoBoson;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

type Steps<'a> = Vec<(&'a LinearOperator, Complex64)>;

/// Max entry of `L − R` on the `≤ bound` block, where `L` and `R` are products
/// of exponentials listed in time order.
pub(crate) fn product_deviation(space: &Arc<FockSpace>, lhs: &Steps, rhs: &Steps, bound: u32) -> Result<f64> {
    let safe = space.indices_up_to(bound);
    let left = evolve_columns(space, lhs, &safe)?;
    let right = evolve_columns(space, rhs, &safe)?;
    let mut worst = 0.0f64;
    for (l, r) in left.iter().zip(&right) {
        for &i in &safe {
            worst = worst.max((l[i] - r[i]).norm());
        }
    }
    Ok(worst)
}

fn require_modes(space: &FockSpace, n: usize) -> Result<()> {
    if space.num_modes() != n {
        return Err(Error::InvalidArgument(format!("expected a {n}-mode space, got {} modes", space.num_modes())));
    }
    Ok(())
}

/// Generator of `Ŝ_{a2a1b1}(√2iη)` on modes `(a1, a2, b1) = (0, 1, 2)`:
///
/// ```text
/// (η/√2)(â₁b̂₁ − â₂b̂₁) − (η*/√2)(â₁†b̂₁† − â₂†b̂₁†)
/// ```
///
/// which is the two-mode squeezer with argument `2iη` acting on the
/// pseudo-boson `(â₁ − â₂)/√2` and `b̂₁`.
pub fn three_mode_squeezer_generator(space: &Arc<FockSpace>, eta: Complex64) -> Result<LinearOperator> {
    let upper = PseudoBoson::chain(vec![0, 1])?;
    pseudo_squeezer_generator(space, &upper, &PseudoBoson::single(2), 2.0 * I * eta)
}

/// `B̂⁺_{a2a1} Ŝ_{a1b1}(2iη)` against `Ŝ_{a2a1b1}(√2iη) B̂⁺_{a2a1}` on a
/// three-mode space.
pub fn verify_three_mode_identity(eta: Complex64, space: &Arc<FockSpace>, safe_bound: u32) -> Result<f64> {
    require_modes(space, 3)?;
    let spec = NetworkSpec::three_mode_primitive(2.0 * I * eta);
    let squeeze = spec.element_generator(space, 0)?;
    let split = spec.element_generator(space, 1)?;
    let pseudo = three_mode_squeezer_generator(space, eta)?;
    product_deviation(space, &vec![(&squeeze, ONE), (&split, ONE)], &vec![(&split, ONE), (&pseudo, ONE)], safe_bound)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultimodeDeviation {
    /// `max |Û_p G_S Û_p† − G_{AB}|` with `Û_p` the beamsplitter chains.
    pub generator: f64,
    /// `max |B·S − S_{AB}·B|` on the full unitaries.
    pub unitary: f64,
}

/// Checks the chain network on `r` upper and `s` lower modes against the
/// pseudo-two-mode squeezer built from the chain pseudo-bosons.
pub fn verify_multimode_identity(
    r: usize,
    s: usize,
    eta: Complex64,
    space: &Arc<FockSpace>,
    safe_bound: u32,
) -> Result<MultimodeDeviation> {
    require_modes(space, r + s)?;
    let spec = NetworkSpec::multimode_chain(r, s, eta)?;
    let pseudo_a = PseudoBoson::default_for((0..r).collect())?;
    let pseudo_b = PseudoBoson::default_for((r..r + s).collect())?;
    let target = pseudo_squeezer_generator(space, &pseudo_a, &pseudo_b, eta)?;

    let passive = NetworkSpec::new(r, s, spec.elements()[1..].to_vec())?;
    let u = compile(&passive, space)?;
    let squeeze = spec.element_generator(space, 0)?;
    let conjugated = u.try_mul(&squeeze)?.try_mul(&u.adjoint())?;
    let generator = conjugated.restrict(safe_bound).max_abs_diff(&target.restrict(safe_bound))?;

    let gens = generators(&spec, space)?;
    let lhs: Steps = gens.iter().map(|g| (g, ONE)).collect();
    let mut rhs: Steps = gens[1..].iter().map(|g| (g, ONE)).collect();
    rhs.push((&target, ONE));
    let unitary = product_deviation(space, &lhs, &rhs, safe_bound)?;
    Ok(MultimodeDeviation { generator, unitary })
}

/// Generator of `𝒮̂_{a2a1b1}(η, is′)` on modes `(a1, a2, b1) = (0, 1, 2)`:
///
/// ```text
/// (η/√2)[cosh(s′/2)(â₁b̂₁ − â₁†b̂₁†) + sinh(s′/2)(â₂†â₁ − â₂â₁†) − (â₂b̂₁ − â₂†b̂₁†)]
/// ```
pub fn exotic_generator(space: &Arc<FockSpace>, eta: f64, s_prime: f64) -> Result<LinearOperator> {
    require_modes(space, 3)?;
    let (a1, a2, b1) = (annihilation(space, 0)?, annihilation(space, 1)?, annihilation(space, 2)?);
    let x = a1.try_mul(&b1)?;
    let y = a2.try_mul(&b1)?;
    let hop = creation(space, 1)?.try_mul(&a1)?;
    let minus_adjoint = |t: &LinearOperator| t.try_sub(&t.adjoint());
    let w = eta / SQRT_2;
    let c = Complex64::new(w * (s_prime / 2.0).cosh(), 0.0);
    let sh = Complex64::new(w * (s_prime / 2.0).sinh(), 0.0);
    minus_adjoint(&x)?.scaled(c).linear_combination(ONE, &minus_adjoint(&hop)?, sh)?.linear_combination(
        ONE,
        &minus_adjoint(&y)?,
        Complex64::new(-w, 0.0),
    )
}

/// `Ŝ_{a2b1}(is′) Ŝ_{a2a1b1}(√2iη)` against `𝒮̂_{a2a1b1}(η, is′) Ŝ_{a2b1}(is′)`.
pub fn verify_exotic_identity(eta: f64, s_prime: f64, space: &Arc<FockSpace>, safe_bound: u32) -> Result<f64> {
    require_modes(space, 3)?;
    let extra = squeezer_generator(space, Complex64::new(0.0, s_prime), 1, 2)?;
    let three = three_mode_squeezer_generator(space, Complex64::new(eta, 0.0))?;
    let combined = exotic_generator(space, eta, s_prime)?;
    product_deviation(space, &vec![(&three, ONE), (&extra, ONE)], &vec![(&extra, ONE), (&combined, ONE)], safe_bound)
}
