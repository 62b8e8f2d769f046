//! Truncated multimode Fock spaces and sparse operators on them.

mod expm;
mod ladder;
mod operator;
mod space;
mod state;

pub(crate) use self::expm::{evolve, evolve_columns};
pub use self::expm::{expm, expm_apply};
pub use self::ladder::{annihilation, creation, number_operator, photon_difference};
pub use self::operator::{anticommutator, commutator, LinearOperator};
pub use self::space::{max_dimension, FockSpace, DEFAULT_MAX_DIMENSION, MAX_DIM_ENV};
pub use self::state::{StateVector, NORMALIZATION_TOL};

use std::sync::Arc;

/// Convenience constructor returning the shared handle operators expect.
pub fn make_space(num_modes: usize, cutoff: u32, total_photon_cap: Option<u32>) -> crate::Result<Arc<FockSpace>> {
    FockSpace::new(num_modes, cutoff, total_photon_cap).map(Arc::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn annihilation_examples() {
        let space = make_space(1, 3, None).unwrap();
        let a = annihilation(&space, 0).unwrap();
        let out = a.apply(&StateVector::basis(&space, &[1]).unwrap()).unwrap();
        assert_eq!(out.amplitude_of(&[0]), c(1.0, 0.0));
        let out = a.apply(&StateVector::basis(&space, &[2]).unwrap()).unwrap();
        assert_eq!(out.amplitude_of(&[1]), c(2f64.sqrt(), 0.0));
        let out = a.apply(&StateVector::vacuum(&space)).unwrap();
        assert_eq!(out.norm(), 0.0);
    }

    #[test]
    fn creation_examples() {
        let space = make_space(1, 3, None).unwrap();
        let ad = creation(&space, 0).unwrap();
        let out = ad.apply(&StateVector::vacuum(&space)).unwrap();
        assert_eq!(out.amplitude_of(&[1]), c(1.0, 0.0));
        let out = ad.apply(&StateVector::basis(&space, &[2]).unwrap()).unwrap();
        assert_eq!(out.norm(), 0.0);
        assert_eq!(ad.get(1, 0), c(1.0, 0.0));
    }

    #[test]
    fn bad_mode_is_rejected() {
        let space = make_space(2, 3, None).unwrap();
        assert!(matches!(annihilation(&space, 2), Err(crate::Error::BadMode { mode: 2, num_modes: 2 })));
        assert!(creation(&space, 5).is_err());
        assert!(number_operator(&space, 2).is_err());
    }

    #[test]
    fn number_operator_examples() {
        let space = make_space(1, 4, None).unwrap();
        let n = number_operator(&space, 0).unwrap();
        assert_eq!(n.get(3, 3), c(3.0, 0.0));
        let trace: Complex64 = (0..space.dimension()).map(|i| n.get(i, i)).sum();
        assert_eq!(trace, c(6.0, 0.0));

        let two = make_space(2, 4, None).unwrap();
        let na = number_operator(&two, 0).unwrap();
        let nb = number_operator(&two, 1).unwrap();
        assert!(commutator(&na, &nb).unwrap().is_zero());
    }

    #[test]
    fn canonical_commutator_away_from_cutoff() {
        let d = 5;
        let space = make_space(2, d, None).unwrap();
        for mode in 0..2 {
            let a = annihilation(&space, mode).unwrap();
            let ad = creation(&space, mode).unwrap();
            let comm = commutator(&a, &ad).unwrap();
            for i in 0..space.dimension() {
                if space.occupation(i)[mode] <= d - 2 {
                    for j in 0..space.dimension() {
                        let expected = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
                        assert!((comm.get(i, j) - expected).norm() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn commutator_space_mismatch() {
        let s1 = make_space(2, 3, None).unwrap();
        let s2 = make_space(2, 4, None).unwrap();
        let a = annihilation(&s1, 0).unwrap();
        let b = annihilation(&s2, 0).unwrap();
        assert_eq!(commutator(&a, &b).unwrap_err(), crate::Error::SpaceMismatch);
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let space = make_space(2, 4, None).unwrap();
        let g = &creation(&space, 0).unwrap() * &annihilation(&space, 1).unwrap();
        let u = expm(&g, c(0.0, 0.0)).unwrap();
        assert_eq!(u.max_abs_diff(&LinearOperator::identity(&space)).unwrap(), 0.0);
    }

    #[test]
    fn expm_phase_rotation() {
        let space = make_space(1, 4, None).unwrap();
        let n = number_operator(&space, 0).unwrap();
        let u = expm(&n, c(0.0, std::f64::consts::PI)).unwrap();
        assert!((u.get(1, 1) - c(-1.0, 0.0)).norm() < 1e-13);
        assert!((u.get(2, 2) - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn expm_one_photon_rotation_matches_block_diagonalization() {
        // Oracle: the one-photon block of θ(â†b̂ − âb̂†)/2 is [[0, θ/2], [−θ/2, 0]]
        // in the basis (|0,1⟩, |1,0⟩); its exponential is a rotation by θ/2.
        let space = make_space(2, 4, None).unwrap();
        let a = annihilation(&space, 0).unwrap();
        let b = annihilation(&space, 1).unwrap();
        let theta = std::f64::consts::FRAC_PI_2;
        let g = &(&a.adjoint() * &b) - &(&a * &b.adjoint());
        let u = expm(&g, c(theta / 2.0, 0.0)).unwrap();
        let i10 = space.index_of(&[1, 0]).unwrap();
        let i01 = space.index_of(&[0, 1]).unwrap();
        let (cs, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        assert!((u.get(i10, i10) - c(cs, 0.0)).norm() < 1e-14);
        assert!((u.get(i01, i10) - c(-sn, 0.0)).norm() < 1e-14);
        assert!((u.get(i10, i01) - c(sn, 0.0)).norm() < 1e-14);
        // (|1,0⟩ − |0,1⟩)/√2 in this sign convention.
        assert!((u.get(i01, i10) + c(0.5f64.sqrt(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn expm_apply_matches_expm() {
        let space = make_space(2, 6, None).unwrap();
        let a = annihilation(&space, 0).unwrap();
        let b = annihilation(&space, 1).unwrap();
        let k = &a * &b;
        let g = &(&k - &k.adjoint()) * 0.7;
        let u = expm(&g, c(1.0, 0.0)).unwrap();
        let psi = StateVector::basis(&space, &[1, 0]).unwrap();
        let direct = u.apply(&psi).unwrap();
        let evolved = expm_apply(&g, c(1.0, 0.0), &psi).unwrap();
        assert!(direct.max_abs_diff(&evolved).unwrap() < 1e-13);
    }

    #[test]
    fn restrict_drops_high_photon_entries() {
        let space = make_space(2, 4, None).unwrap();
        let ad = creation(&space, 0).unwrap();
        let r = ad.restrict(1);
        assert_eq!(r.nnz(), 1);
        assert_eq!(r.get(space.index_of(&[1, 0]).unwrap(), 0), c(1.0, 0.0));
    }
}
