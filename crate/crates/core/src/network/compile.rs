use std::sync::Arc;

use num_complex::Complex64;

use super::element::NetworkSpec;
use crate::error::Result;
use crate::fock::{evolve, expm, FockSpace, LinearOperator, StateVector};
use crate::su11::PseudoBoson;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Element generators in time order.
pub fn generators(spec: &NetworkSpec, space: &Arc<FockSpace>) -> Result<Vec<LinearOperator>> {
    (0..spec.elements().len()).map(|k| spec.element_generator(space, k)).collect()
}

/// `U_n ⋯ U_1` with `U_k = exp(G_k)`.
pub fn compile(spec: &NetworkSpec, space: &Arc<FockSpace>) -> Result<LinearOperator> {
    let mut u = LinearOperator::identity(space);
    for g in generators(spec, space)? {
        u = expm(&g, ONE)?.try_mul(&u)?;
    }
    Ok(u)
}

/// Runs `psi` through the network element by element without forming the
/// full unitary.
pub fn simulate(spec: &NetworkSpec, psi: &StateVector) -> Result<StateVector> {
    let space = psi.space();
    let gens = generators(spec, space)?;
    let steps: Vec<_> = gens.iter().map(|g| (g, ONE)).collect();
    StateVector::from_amplitudes(space, evolve(&steps, psi.amplitudes())?)
}

/// `−i(η ÂB̂ + η* Â†B̂†)/2`.
pub fn pseudo_squeezer_generator(
    space: &Arc<FockSpace>,
    pseudo_a: &PseudoBoson,
    pseudo_b: &PseudoBoson,
    eta: Complex64,
) -> Result<LinearOperator> {
    let pair = pseudo_a.annihilation(space)?.try_mul(&pseudo_b.annihilation(space)?)?;
    let lower = pair.scaled(-I * eta / 2.0);
    lower.try_sub(&lower.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{expm_apply, make_space};
    use crate::network::element::{Element, Mode};
    use proptest::prelude::*;

    #[test]
    fn simulate_matches_compiled_unitary() {
        let space = make_space(3, 5, None).unwrap();
        let spec = NetworkSpec::three_mode_primitive(Complex64::new(0.0, 0.4));
        let psi = StateVector::basis(&space, &[1, 0, 0]).unwrap();
        let direct = compile(&spec, &space).unwrap().apply(&psi).unwrap();
        let stepped = simulate(&spec, &psi).unwrap();
        assert!(direct.max_abs_diff(&stepped).unwrap() < 1e-12);
    }

    #[test]
    fn ordering_is_time_order() {
        // squeezer first, then the beamsplitter: U = B S
        let space = make_space(3, 4, None).unwrap();
        let spec = NetworkSpec::three_mode_primitive(Complex64::new(0.3, 0.0));
        let s = spec.element_generator(&space, 0).unwrap();
        let b = spec.element_generator(&space, 1).unwrap();
        let vac = StateVector::vacuum(&space);
        let manual = expm_apply(&b, ONE, &expm_apply(&s, ONE, &vac).unwrap()).unwrap();
        let compiled = compile(&spec, &space).unwrap().apply(&vac).unwrap();
        assert!(manual.max_abs_diff(&compiled).unwrap() < 1e-12);
    }

    #[test]
    fn bare_mode_pseudo_squeezer_is_the_squeezer() {
        let space = make_space(2, 5, None).unwrap();
        let eta = Complex64::new(0.2, -0.1);
        let g = pseudo_squeezer_generator(&space, &PseudoBoson::single(0), &PseudoBoson::single(1), eta).unwrap();
        let h = crate::network::squeezer_generator(&space, eta, 0, 1).unwrap();
        assert_eq!(g.max_abs_diff(&h).unwrap(), 0.0);
    }

    fn element_strategy() -> impl Strategy<Value = Element> {
        let mode = prop_oneof![(0usize..2).prop_map(Mode::A), Just(Mode::B(0))];
        (mode.clone(), mode, -1.0f64..1.0, -1.0f64..1.0, any::<bool>())
            .prop_filter("distinct modes", |(p, q, ..)| p != q)
            .prop_map(|(p, q, x, y, sq)| {
                if sq {
                    Element::squeezer(p, q, Complex64::new(x, y))
                } else {
                    Element::beamsplitter(p, q, x, y)
                }
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn compiled_networks_are_unitary_on_the_safe_block(elements in prop::collection::vec(element_strategy(), 0..5)) {
            let space = make_space(3, 5, None).unwrap();
            let spec = NetworkSpec::new(2, 1, elements).unwrap();
            let u = compile(&spec, &space).unwrap();
            let bound = space.default_safe_bound();
            let defect = u.adjoint().try_mul(&u).unwrap().restrict(bound)
                .max_abs_diff(&LinearOperator::identity(&space).restrict(bound)).unwrap();
            prop_assert!(defect < 1e-9, "{}", defect);
        }
    }
}
