use std::sync::Arc;

use num_complex::Complex64;

use super::pseudo::PseudoBoson;
use crate::error::{Error, Result};
use crate::fock::{annihilation, commutator, creation, number_operator, FockSpace, LinearOperator};

/// Where a generator triple came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    TwoMode {
        a: usize,
        b: usize,
    },
    PseudoTwoMode {
        a_modes: Vec<usize>,
        b_modes: Vec<usize>,
    },
    /// The three-mode realization built from `K_x`, `K_y`, `K_z` on modes
    /// `(a1, a2, b1)`.
    ExoticQss {
        a1: usize,
        a2: usize,
        b1: usize,
    },
}

/// A realization of su(1,1) by `K₊`, `K₋ = K₊†`, `K₀`, and its Casimir
/// `K₀² − ½(K₊K₋ + K₋K₊)`.
#[derive(Clone, Debug)]
pub struct Su11Realization {
    pub k_plus: LinearOperator,
    pub k_minus: LinearOperator,
    pub k_zero: LinearOperator,
    pub casimir: LinearOperator,
    pub provenance: Provenance,
}

/// Residuals of the su(1,1) commutation relations on a photon-bounded block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosureResiduals {
    /// `max |[K₀, K₊] − K₊|`
    pub zero_plus: f64,
    /// `max |[K₀, K₋] + K₋|`
    pub zero_minus: f64,
    /// `max |[K₋, K₊] − 2K₀|`
    pub minus_plus: f64,
}

impl ClosureResiduals {
    pub fn max(&self) -> f64 {
        self.zero_plus.max(self.zero_minus).max(self.minus_plus)
    }
}

pub(crate) fn casimir_of(
    k_plus: &LinearOperator,
    k_minus: &LinearOperator,
    k_zero: &LinearOperator,
) -> Result<LinearOperator> {
    let k0_sq = k_zero.try_mul(k_zero)?;
    let ladder = k_plus.try_mul(k_minus)?.try_add(&k_minus.try_mul(k_plus)?)?;
    Ok(k0_sq
        .linear_combination(Complex64::new(1.0, 0.0), &ladder, Complex64::new(-0.5, 0.0))?
        .with_hermitian_hint(true))
}

impl Su11Realization {
    pub(crate) fn from_raising(k_plus: LinearOperator, k_zero: LinearOperator, provenance: Provenance) -> Result<Self> {
        let k_minus = k_plus.adjoint();
        let casimir = casimir_of(&k_plus, &k_minus, &k_zero)?;
        Ok(Su11Realization { k_plus, k_minus, k_zero, casimir, provenance })
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        self.k_zero.space()
    }

    /// Commutation-relation residuals after restricting to `≤ bound` photons.
    pub fn closure_residuals(&self, bound: u32) -> Result<ClosureResiduals> {
        let zp = commutator(&self.k_zero, &self.k_plus)?.try_sub(&self.k_plus)?;
        let zm = commutator(&self.k_zero, &self.k_minus)?.try_add(&self.k_minus)?;
        let mp = commutator(&self.k_minus, &self.k_plus)?.try_sub(&self.k_zero.scaled(Complex64::new(2.0, 0.0)))?;
        Ok(ClosureResiduals {
            zero_plus: zp.restrict(bound).max_abs(),
            zero_minus: zm.restrict(bound).max_abs(),
            minus_plus: mp.restrict(bound).max_abs(),
        })
    }

    /// Largest entry of `[C, K]` over the three generators, on `≤ bound` photons.
    pub fn casimir_commutator_residual(&self, bound: u32) -> Result<f64> {
        [&self.k_plus, &self.k_minus, &self.k_zero]
            .into_iter()
            .map(|k| Ok(commutator(&self.casimir, k)?.restrict(bound).max_abs()))
            .try_fold(0.0f64, |acc, r: Result<f64>| Ok(acc.max(r?)))
    }

    /// `η K₋ + η* K₊`, the generator direction of a squeezer.
    pub fn squeeze_direction(&self, eta: Complex64) -> Result<LinearOperator> {
        self.k_minus.linear_combination(eta, &self.k_plus, eta.conj())
    }
}

/// `¼[(N_A − N_B)² − 1]` for commuting number-like operators.
pub fn number_form_casimir(n_a: &LinearOperator, n_b: &LinearOperator) -> Result<LinearOperator> {
    let diff = n_a.try_sub(n_b)?;
    let sq = diff.try_mul(&diff)?;
    let id = LinearOperator::identity(n_a.space());
    Ok(sq.linear_combination(Complex64::new(0.25, 0.0), &id, Complex64::new(-0.25, 0.0))?.with_hermitian_hint(true))
}

/// `K₊ = â†b̂†`, `K₋ = âb̂`, `K₀ = (â†â + b̂b̂†)/2`.
pub fn two_mode_realization(space: &Arc<FockSpace>, mode_a: usize, mode_b: usize) -> Result<Su11Realization> {
    if mode_a == mode_b {
        return Err(Error::InvalidArgument(format!("two-mode realization needs distinct modes, got {mode_a} twice")));
    }
    let a = annihilation(space, mode_a)?;
    let b = annihilation(space, mode_b)?;
    let ad = creation(space, mode_a)?;
    let bd = creation(space, mode_b)?;
    let k_plus = ad.try_mul(&bd)?;
    let k_zero = ad.try_mul(&a)?.try_add(&b.try_mul(&bd)?)?.scaled(Complex64::new(0.5, 0.0)).with_hermitian_hint(true);
    Su11Realization::from_raising(k_plus, k_zero, Provenance::TwoMode { a: mode_a, b: mode_b })
}

/// `K₊ = Â†B̂†`, `K₋ = ÂB̂`, `K₀ = (Â†Â + B̂†B̂ + 1)/2` over disjoint mode sets.
pub fn pseudo_two_mode_realization(
    space: &Arc<FockSpace>,
    pseudo_a: &PseudoBoson,
    pseudo_b: &PseudoBoson,
) -> Result<Su11Realization> {
    if pseudo_a.overlaps(pseudo_b) {
        return Err(Error::InvalidArgument("pseudo-bosons must act on disjoint modes".into()));
    }
    let ad = pseudo_a.creation(space)?;
    let bd = pseudo_b.creation(space)?;
    let k_plus = ad.try_mul(&bd)?;
    let numbers = pseudo_a.number(space)?.try_add(&pseudo_b.number(space)?)?;
    let k_zero =
        numbers.try_add(&LinearOperator::identity(space))?.scaled(Complex64::new(0.5, 0.0)).with_hermitian_hint(true);
    Su11Realization::from_raising(
        k_plus,
        k_zero,
        Provenance::PseudoTwoMode { a_modes: pseudo_a.modes().to_vec(), b_modes: pseudo_b.modes().to_vec() },
    )
}

/// Number-form Casimir `¼[(n̂_a − n̂_b)² − 1]` of the two-mode realization.
pub fn two_mode_number_casimir(space: &Arc<FockSpace>, mode_a: usize, mode_b: usize) -> Result<LinearOperator> {
    number_form_casimir(&number_operator(space, mode_a)?, &number_operator(space, mode_b)?)
}

/// Number-form Casimir `¼[(N̂_A − N̂_B)² − 1]` of a pseudo-two-mode realization.
pub fn pseudo_number_casimir(
    space: &Arc<FockSpace>,
    pseudo_a: &PseudoBoson,
    pseudo_b: &PseudoBoson,
) -> Result<LinearOperator> {
    number_form_casimir(&pseudo_a.number(space)?, &pseudo_b.number(space)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_space, photon_difference, StateVector};

    #[test]
    fn raising_on_vacuum() {
        let space = make_space(2, 6, None).unwrap();
        let r = two_mode_realization(&space, 0, 1).unwrap();
        let out = r.k_plus.apply(&StateVector::vacuum(&space)).unwrap();
        assert_eq!(out.amplitude_of(&[1, 1]), Complex64::new(1.0, 0.0));
        assert!((out.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn casimir_and_weight_of_fock_states() {
        let space = make_space(2, 6, None).unwrap();
        let r = two_mode_realization(&space, 0, 1).unwrap();
        // ¼[(2 − 0)² − 1] = 3/4 = k(k − 1) at k = 3/2
        let psi = StateVector::basis(&space, &[2, 0]).unwrap();
        let out = r.casimir.apply(&psi).unwrap();
        assert!((out.amplitude_of(&[2, 0]) - 0.75).norm() < 1e-12);
        assert!((out.norm() - 0.75).abs() < 1e-12);
        let psi = StateVector::basis(&space, &[1, 0]).unwrap();
        let out = r.k_zero.apply(&psi).unwrap();
        assert!((out.amplitude_of(&[1, 0]) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn k_minus_is_exact_adjoint() {
        let space = make_space(4, 4, None).unwrap();
        let pa = PseudoBoson::chain(vec![0, 1]).unwrap();
        let pb = PseudoBoson::chain(vec![2, 3]).unwrap();
        let r = pseudo_two_mode_realization(&space, &pa, &pb).unwrap();
        assert_eq!(r.k_minus.max_abs_diff(&r.k_plus.adjoint()).unwrap(), 0.0);
    }

    #[test]
    fn rejects_colliding_modes() {
        let space = make_space(3, 4, None).unwrap();
        assert!(two_mode_realization(&space, 1, 1).is_err());
        let pa = PseudoBoson::chain(vec![0, 1]).unwrap();
        let pb = PseudoBoson::chain(vec![1, 2]).unwrap();
        assert!(pseudo_two_mode_realization(&space, &pa, &pb).is_err());
    }

    #[test]
    fn pseudo_raising_on_vacuum() {
        let space = make_space(4, 4, None).unwrap();
        let pa = PseudoBoson::chain(vec![0, 1]).unwrap();
        let pb = PseudoBoson::chain(vec![2, 3]).unwrap();
        let r = pseudo_two_mode_realization(&space, &pa, &pb).unwrap();
        let out = r.k_plus.apply(&StateVector::vacuum(&space)).unwrap();
        // ½(|1,0⟩ − |0,1⟩)_a ⊗ (|1,0⟩ − |0,1⟩)_b
        let expect = [([1, 0, 1, 0], 0.5), ([1, 0, 0, 1], -0.5), ([0, 1, 1, 0], -0.5), ([0, 1, 0, 1], 0.5)];
        for (occ, amp) in expect {
            assert!((out.amplitude_of(&occ) - amp).norm() < 1e-15);
        }
        assert!((out.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn photon_difference_commutes_structurally() {
        let space = make_space(4, 5, None).unwrap();
        let pa = PseudoBoson::chain(vec![0, 1]).unwrap();
        let pb = PseudoBoson::chain(vec![2, 3]).unwrap();
        let r = pseudo_two_mode_realization(&space, &pa, &pb).unwrap();
        let diff = photon_difference(&space, &[0, 1], &[2, 3]).unwrap();
        let dir = r.squeeze_direction(Complex64::new(0.3, -0.7)).unwrap();
        assert!(commutator(&diff, &dir).unwrap().is_zero());
    }

    #[test]
    fn generator_and_number_casimirs_agree() {
        let space = make_space(3, 6, None).unwrap();
        let pa = PseudoBoson::chain(vec![0, 1]).unwrap();
        let pb = PseudoBoson::single(2);
        let r = pseudo_two_mode_realization(&space, &pa, &pb).unwrap();
        let nf = pseudo_number_casimir(&space, &pa, &pb).unwrap();
        let dev = r.casimir.restrict(3).max_abs_diff(&nf.restrict(3)).unwrap();
        assert!(dev < 1e-12, "{dev}");

        let r2 = two_mode_realization(&space, 0, 2).unwrap();
        let nf2 = two_mode_number_casimir(&space, 0, 2).unwrap();
        assert!(r2.casimir.restrict(3).max_abs_diff(&nf2.restrict(3)).unwrap() < 1e-12);
    }
}
