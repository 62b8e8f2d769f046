use num_complex::Complex64;
use proptest::prelude::*;

use su11::fock::{annihilation, commutator, creation, make_space, number_operator, LinearOperator, StateVector};
use su11::su11::{
    pseudo_number_state, pseudo_two_mode_realization, two_mode_realization, weight_state, PseudoBoson, Side,
    WeightLabel,
};

fn normalized(raw: Vec<(f64, f64)>) -> Vec<Complex64> {
    let v: Vec<_> = raw.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|c| c / norm).collect()
}

fn coefficients(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), len)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 0.1))
        .prop_map(normalized)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn basis_index_round_trips(modes in 1usize..5, cutoff in 2u32..6, cap in prop::option::of(0u32..8)) {
        let space = make_space(modes, cutoff, cap).unwrap();
        let expected = match cap {
            None => (cutoff as usize).pow(modes as u32),
            Some(c) => {
                let mut n = 0;
                let mut occ = vec![0u32; modes];
                loop {
                    if occ.iter().sum::<u32>() <= c { n += 1; }
                    let Some(i) = occ.iter().position(|&o| o + 1 < cutoff) else { break };
                    occ[i] += 1;
                    occ[..i].iter_mut().for_each(|o| *o = 0);
                }
                n
            }
        };
        prop_assert_eq!(space.dimension(), expected);
        for i in 0..space.dimension() {
            prop_assert_eq!(space.index_of(space.occupation(i)), Some(i));
        }
    }

    #[test]
    fn commutator_is_antisymmetric(i in 0usize..3, j in 0usize..3, swap in any::<bool>()) {
        let space = make_space(3, 4, None).unwrap();
        let x = annihilation(&space, i).unwrap();
        let y = if swap { creation(&space, j).unwrap() } else { number_operator(&space, j).unwrap() };
        let xy = commutator(&x, &y).unwrap();
        let yx = commutator(&y, &x).unwrap();
        prop_assert_eq!(xy.try_add(&yx).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn lowering_is_adjoint_of_raising(r in 1usize..4, s in 1usize..3) {
        let space = make_space(r + s, 4, Some(5)).unwrap();
        let pa = PseudoBoson::default_for((0..r).collect()).unwrap();
        let pb = PseudoBoson::default_for((r..r + s).collect()).unwrap();
        let real = pseudo_two_mode_realization(&space, &pa, &pb).unwrap();
        prop_assert_eq!(real.k_minus.max_abs_diff(&real.k_plus.adjoint()).unwrap(), 0.0);
    }

    #[test]
    fn canonical_commutator_for_any_pseudo_boson(c in coefficients(3)) {
        let space = make_space(3, 5, None).unwrap();
        let p = PseudoBoson::new(vec![0, 1, 2], c).unwrap();
        let comm = commutator(&p.annihilation(&space).unwrap(), &p.creation(&space).unwrap()).unwrap();
        let defect = comm.try_sub(&LinearOperator::identity(&space)).unwrap().restrict(3).max_abs();
        prop_assert!(defect < 1e-12, "defect {defect}");
    }

    #[test]
    fn pseudo_number_states_are_orthonormal(c in coefficients(2)) {
        let space = make_space(2, 6, None).unwrap();
        let p = PseudoBoson::new(vec![0, 1], c).unwrap();
        let states: Vec<StateVector> =
            (0..=4).map(|n| pseudo_number_state(n, &p, Side::A, &space).unwrap().expansion).collect();
        for (i, x) in states.iter().enumerate() {
            for (j, y) in states.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                prop_assert!((x.inner(y).unwrap() - target).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn weight_states_are_k0_eigenstates(ca in coefficients(2), n_a in 0u32..4, n_b in 0u32..3) {
        let space = make_space(3, 6, Some(6)).unwrap();
        let pa = PseudoBoson::new(vec![0, 1], ca).unwrap();
        let pb = PseudoBoson::single(2);
        let real = pseudo_two_mode_realization(&space, &pa, &pb).unwrap();
        let label = WeightLabel::from_occupations(n_a, n_b);
        let psi = weight_state(label, &pa, &pb, &space).unwrap().expansion;
        prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
        let k0 = real.k_zero.apply(&psi).unwrap();
        prop_assert!(k0.max_abs_diff(&psi.scaled(Complex64::new(label.mu(), 0.0))).unwrap() < 1e-10);
    }

    #[test]
    fn weight_labels_invert(n_a in 0u32..50, n_b in 0u32..50) {
        let label = WeightLabel::from_occupations(n_a, n_b);
        prop_assert_eq!(label.pseudo_occupations(), (n_a, n_b));
        prop_assert_eq!((label.two_mu() - label.two_k()) % 2, 0);
    }
}

/// The two-mode Casimir equals ¼[(N_a − N_b)² − 1] entry by entry, away from
/// the cutoff where `K₊K₋` is truncated.
#[test]
fn two_mode_casimir_is_photon_difference_squared() {
    let space = make_space(2, 7, None).unwrap();
    let real = two_mode_realization(&space, 0, 1).unwrap();
    let expected = LinearOperator::diagonal(&space, |i| {
        let occ = space.occupation(i);
        let d = f64::from(occ[0]) - f64::from(occ[1]);
        Complex64::new((d * d - 1.0) / 4.0, 0.0)
    });
    let dev = real.casimir.restrict(5).max_abs_diff(&expected.restrict(5)).unwrap();
    assert!(dev < 1e-12, "{dev}");
}
