//! Pseudo-number states, SU(1,1) weight states, and projection of arbitrary
//! states onto the weight basis.

use std::sync::Arc;

use num_complex::Complex64;

use super::labels::{labels_up_to, Branch, WeightLabel};
use super::pseudo::PseudoBoson;
use crate::error::{Error, Result};
use crate::fock::{FockSpace, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

/// `|n} = (Â†)ⁿ|0⟩/√(n!)` expanded over the Fock basis.
#[derive(Clone, Debug)]
pub struct PseudoNumberState {
    pub n: u32,
    pub side: Side,
    pub expansion: StateVector,
}

/// A weight state `|k, μ⟩ = |n_A} ⊗ |n_B}` of a pseudo-two-mode realization.
#[derive(Clone, Debug)]
pub struct WeightState {
    pub label: WeightLabel,
    pub expansion: StateVector,
}

/// `n! / Π parts!` as a float, exact in integers while it fits `u128`.
fn multinomial(n: u32, parts: &[u32]) -> f64 {
    let mut acc: Option<u128> = Some(1);
    let mut placed = 0u32;
    for &p in parts {
        // multiply by C(placed + p, p), one factor at a time so every step stays integral
        for j in 1..=p {
            acc = acc.and_then(|a| a.checked_mul((placed + j) as u128)).map(|a| a / j as u128);
        }
        placed += p;
    }
    debug_assert_eq!(placed, n);
    match acc {
        Some(a) => a as f64,
        None => {
            let ln_fact = |m: u32| (2..=m).map(|k| (k as f64).ln()).sum::<f64>();
            (ln_fact(n) - parts.iter().map(|&p| ln_fact(p)).sum::<f64>()).exp()
        }
    }
}

/// Visits every composition of `n` into `parts` nonnegative parts.
fn for_each_composition(n: u32, parts: usize, max_part: u32, f: &mut impl FnMut(&[u32])) {
    fn go(rest: u32, slot: usize, buf: &mut Vec<u32>, max_part: u32, f: &mut impl FnMut(&[u32])) {
        if slot + 1 == buf.len() {
            if rest <= max_part {
                buf[slot] = rest;
                f(buf);
            }
            return;
        }
        for k in 0..=rest.min(max_part) {
            buf[slot] = k;
            go(rest - k, slot + 1, buf, max_part, f);
        }
    }
    let mut buf = vec![0u32; parts];
    go(n, 0, &mut buf, max_part, f);
}

/// Amplitudes `C_n = (n!/Π n_l!)^{1/2} Π (c_l*)^{n_l}` of `|n} ∝ (Â†)ⁿ|0⟩` on the
/// pseudo-boson's own modes, one entry per composition of `n`.
fn pseudo_number_terms(n: u32, pseudo: &PseudoBoson, max_part: u32) -> Vec<(Vec<u32>, Complex64)> {
    let coeffs = pseudo.coefficients();
    let mut out = Vec::new();
    for_each_composition(n, coeffs.len(), max_part, &mut |parts| {
        let mut amp = Complex64::new(multinomial(n, parts).sqrt(), 0.0);
        for (&p, &c) in parts.iter().zip(coeffs) {
            amp *= c.conj().powu(p);
        }
        if amp != Complex64::new(0.0, 0.0) {
            out.push((parts.to_vec(), amp));
        }
    });
    out
}

fn check_fits(space: &FockSpace, n: u32, what: &str) -> Result<()> {
    if n > space.max_single_mode_photons() {
        return Err(Error::Capacity(format!(
            "{what} with {n} photons does not fit: at most {} photons per mode",
            space.max_single_mode_photons()
        )));
    }
    Ok(())
}

fn check_modes(space: &FockSpace, pseudo: &PseudoBoson) -> Result<()> {
    pseudo.modes().iter().try_for_each(|&m| space.check_mode(m))
}

pub fn pseudo_number_state(
    n: u32,
    pseudo: &PseudoBoson,
    side: Side,
    space: &Arc<FockSpace>,
) -> Result<PseudoNumberState> {
    check_modes(space, pseudo)?;
    check_fits(space, n, "pseudo-number state")?;
    if n > space.max_total_photons() {
        return Err(Error::Capacity(format!("pseudo-number state with {n} photons exceeds the photon cap")));
    }
    let mut psi = vec![Complex64::new(0.0, 0.0); space.dimension()];
    let mut occ = vec![0u32; space.num_modes()];
    for (parts, amp) in pseudo_number_terms(n, pseudo, space.cutoff() - 1) {
        for (&m, &p) in pseudo.modes().iter().zip(&parts) {
            occ[m] = p;
        }
        let idx = space.index_of(&occ).expect("composition fits the space");
        psi[idx] += amp;
    }
    Ok(PseudoNumberState { n, side, expansion: StateVector::from_amplitudes(space, psi)? })
}

fn product_state(
    n_a: u32,
    n_b: u32,
    pseudo_a: &PseudoBoson,
    pseudo_b: &PseudoBoson,
    space: &Arc<FockSpace>,
) -> Result<StateVector> {
    check_modes(space, pseudo_a)?;
    check_modes(space, pseudo_b)?;
    if pseudo_a.overlaps(pseudo_b) {
        return Err(Error::InvalidArgument("pseudo-bosons must act on disjoint modes".into()));
    }
    check_fits(space, n_a, "pseudo-number state")?;
    check_fits(space, n_b, "pseudo-number state")?;
    if n_a + n_b > space.max_total_photons() {
        return Err(Error::Capacity(format!("weight state with {} photons exceeds the photon cap", n_a + n_b)));
    }
    let max_part = space.cutoff() - 1;
    let terms_a = pseudo_number_terms(n_a, pseudo_a, max_part);
    let terms_b = pseudo_number_terms(n_b, pseudo_b, max_part);
    let mut psi = vec![Complex64::new(0.0, 0.0); space.dimension()];
    let mut occ = vec![0u32; space.num_modes()];
    for (pa, ca) in &terms_a {
        for (&m, &p) in pseudo_a.modes().iter().zip(pa) {
            occ[m] = p;
        }
        for (pb, cb) in &terms_b {
            for (&m, &p) in pseudo_b.modes().iter().zip(pb) {
                occ[m] = p;
            }
            let idx = space.index_of(&occ).expect("product fits the space");
            psi[idx] += ca * cb;
        }
    }
    StateVector::from_amplitudes(space, psi)
}

/// The weight state with label `(k, μ, branch)`: on `APlus`,
/// `n_A = k + μ − 1` and `n_B = μ − k`; `BPlus` swaps the two.
pub fn weight_state(
    label: WeightLabel,
    pseudo_a: &PseudoBoson,
    pseudo_b: &PseudoBoson,
    space: &Arc<FockSpace>,
) -> Result<WeightState> {
    let (n_a, n_b) = label.pseudo_occupations();
    Ok(WeightState { label, expansion: product_state(n_a, n_b, pseudo_a, pseudo_b, space)? })
}

/// Convenience wrapper taking `2k`, `2μ`, and a branch.
pub fn weight_state_from(
    two_k: u32,
    two_mu: u32,
    branch: Branch,
    pseudo_a: &PseudoBoson,
    pseudo_b: &PseudoBoson,
    space: &Arc<FockSpace>,
) -> Result<WeightState> {
    weight_state(WeightLabel::new(two_k, two_mu, branch)?, pseudo_a, pseudo_b, space)
}

/// Every weight state with `n_A + n_B ≤ photon_bound` that fits the space.
pub fn weight_basis(
    pseudo_a: &PseudoBoson,
    pseudo_b: &PseudoBoson,
    space: &Arc<FockSpace>,
    photon_bound: u32,
) -> Result<Vec<WeightState>> {
    let bound = photon_bound.min(space.max_total_photons());
    labels_up_to(bound, space.max_single_mode_photons())
        .into_iter()
        .map(|label| weight_state(label, pseudo_a, pseudo_b, space))
        .collect()
}

#[derive(Clone, Debug)]
pub struct DecompositionTerm {
    pub label: WeightLabel,
    pub amplitude: Complex64,
}

/// Coordinates of a state in the weight basis plus the norm it leaves behind
/// in the complementary `r + s − 2` pseudo-boson directions.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub terms: Vec<DecompositionTerm>,
    pub residual_norm: f64,
}

impl Decomposition {
    /// Terms whose amplitude exceeds `floor` in magnitude.
    pub fn significant(&self, floor: f64) -> impl Iterator<Item = &DecompositionTerm> {
        self.terms.iter().filter(move |t| t.amplitude.norm() > floor)
    }
}

/// Projects `psi` onto every weight state that fits its space. Terms with an
/// exactly zero amplitude are omitted.
pub fn decompose(psi: &StateVector, pseudo_a: &PseudoBoson, pseudo_b: &PseudoBoson) -> Result<Decomposition> {
    let space = psi.space();
    let basis = weight_basis(pseudo_a, pseudo_b, space, space.max_total_photons())?;
    let mut terms = Vec::new();
    let mut captured = 0.0;
    for w in basis {
        let amplitude = w.expansion.inner(psi)?;
        if amplitude != Complex64::new(0.0, 0.0) {
            captured += amplitude.norm_sqr();
            terms.push(DecompositionTerm { label: w.label, amplitude });
        }
    }
    let residual_norm = (psi.norm_sqr() - captured).max(0.0).sqrt();
    Ok(Decomposition { terms, residual_norm })
}
