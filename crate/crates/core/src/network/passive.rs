//! Heisenberg-picture mode matrices of beamsplitter chains.
//!
//! Rows are indexed by the output mode: for a network unitary `Û`,
//! `Û â_l Û† = Σ_m V_lm â_m`. A beamsplitter on `(i, j)` contributes the block
//!
//! ```text
//! [ cos θ/2            −sin θ/2 · e^{iφ} ]
//! [ sin θ/2 · e^{−iφ}   cos θ/2          ]
//! ```
//!
//! and a chain applied in time order `U_1, U_2, …` composes as `V_1 V_2 ⋯`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::element::{Element, ElementKind, Mode, NetworkSpec};
use crate::error::{Error, Result};

/// Tolerance on `V V† = I`.
pub const PASSIVE_UNITARITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct PassiveTransform {
    pub matrix: DMatrix<Complex64>,
}

impl PassiveTransform {
    pub fn identity(n: usize) -> Self {
        PassiveTransform { matrix: DMatrix::identity(n, n) }
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    /// Composes with a beamsplitter applied after everything already folded in.
    pub fn then_beamsplitter(&mut self, theta: f64, phi: f64, i: usize, j: usize) {
        let (s, c) = (theta / 2.0).sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        // V ← V · B, touching only columns i and j
        for row in 0..self.dimension() {
            let (vi, vj) = (self.matrix[(row, i)], self.matrix[(row, j)]);
            self.matrix[(row, i)] = vi * c + vj * e.conj() * s;
            self.matrix[(row, j)] = -vi * e * s + vj * c;
        }
    }

    /// `max |V V† − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dimension();
        let g = &self.matrix * self.matrix.adjoint();
        let id = DMatrix::<Complex64>::identity(n, n);
        (g - id).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn row(&self, l: usize) -> Vec<Complex64> {
        self.matrix.row(l).iter().copied().collect()
    }
}

/// Passive transform of the beamsplitters in `elements` that act within one
/// side, over that side's modes.
fn side_transform<'a>(
    n: usize,
    elements: impl IntoIterator<Item = &'a Element>,
    upper: bool,
) -> Result<PassiveTransform> {
    let mut v = PassiveTransform::identity(n);
    for e in elements {
        let ElementKind::Beamsplitter { theta, phi } = e.kind else {
            return Err(Error::InvalidArgument("passive transforms take beamsplitters only".into()));
        };
        let (p, q) = e.modes;
        if p.is_a() != upper || q.is_a() != upper {
            return Err(Error::InvalidArgument(format!("beamsplitter on {p}, {q} leaves the requested side")));
        }
        v.then_beamsplitter(theta, phi, p.index(), q.index());
    }
    let defect = v.unitarity_defect();
    if defect > PASSIVE_UNITARITY_TOL {
        return Err(Error::Numerical(format!("passive transform is not unitary (defect {defect:e})")));
    }
    Ok(v)
}

/// Mode matrices `(V_a, V_b)` of a network made only of same-side beamsplitters.
pub fn passive_transform(spec: &NetworkSpec) -> Result<(PassiveTransform, PassiveTransform)> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for e in spec.elements() {
        match (e.kind, e.modes) {
            (ElementKind::Squeezer { .. }, _) => {
                return Err(Error::InvalidArgument("passive transforms take beamsplitters only".into()))
            }
            (_, (Mode::A(_), Mode::A(_))) => a.push(e),
            (_, (Mode::B(_), Mode::B(_))) => b.push(e),
            (_, (p, q)) => return Err(Error::InvalidArgument(format!("beamsplitter on {p}, {q} mixes a and b modes"))),
        }
    }
    Ok((side_transform(spec.num_a_modes(), a, true)?, side_transform(spec.num_b_modes(), b, false)?))
}

/// Same as [`passive_transform`] for a bare list of elements on one side.
pub(crate) fn passive_transform_of<'a>(
    n: usize,
    elements: impl IntoIterator<Item = &'a Element>,
    upper: bool,
) -> Result<PassiveTransform> {
    side_transform(n, elements, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{annihilation, expm, make_space};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn empty_chain_is_identity() {
        let spec = NetworkSpec::new(3, 2, vec![]).unwrap();
        let (va, vb) = passive_transform(&spec).unwrap();
        assert_eq!(va, PassiveTransform::identity(3));
        assert_eq!(vb, PassiveTransform::identity(2));
    }

    #[test]
    fn single_b_plus() {
        let spec = NetworkSpec::new(2, 1, vec![Element::b_plus(Mode::A(1), Mode::A(0))]).unwrap();
        let (va, _) = passive_transform(&spec).unwrap();
        // Û â₁ Û† = (â₁ − â₂)/√2, Û â₂ Û† = (â₁ + â₂)/√2
        let expect = [[FRAC_1_SQRT_2, -FRAC_1_SQRT_2], [FRAC_1_SQRT_2, FRAC_1_SQRT_2]];
        for (r, row) in expect.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                assert!((va.matrix[(r, c)] - x).norm() < 1e-15);
            }
        }
        assert!(va.unitarity_defect() < 1e-15);
    }

    #[test]
    fn chain_rows_are_pseudo_boson_coefficients() {
        for r in 2..8 {
            let spec = NetworkSpec::multimode_chain(r, 1, Complex64::new(0.1, 0.0)).unwrap();
            let (va, _) = side_transforms_of_chain(&spec);
            let chain = crate::su11::chain_coefficients(r).unwrap();
            for (m, c) in chain.iter().enumerate() {
                assert!((va.matrix[(0, m)] - c).norm() < 1e-14, "r={r} m={m}");
            }
        }
    }

    fn side_transforms_of_chain(spec: &NetworkSpec) -> (PassiveTransform, PassiveTransform) {
        let a = spec.elements().iter().filter(|e| !e.is_squeezer() && e.modes.0.is_a());
        let b = spec.elements().iter().filter(|e| !e.is_squeezer() && !e.modes.0.is_a());
        (
            passive_transform_of(spec.num_a_modes(), a, true).unwrap(),
            passive_transform_of(spec.num_b_modes(), b, false).unwrap(),
        )
    }

    #[test]
    fn matches_operator_conjugation() {
        // Dual route: conjugate â_l by the compiled unitary on a one-photon
        // truncation and read off the coefficients.
        let space = make_space(4, 2, Some(1)).unwrap();
        let elements = vec![
            Element::beamsplitter(Mode::A(0), Mode::A(2), 0.9, 0.3),
            Element::beamsplitter(Mode::A(2), Mode::A(1), -1.7, 2.2),
            Element::b_plus(Mode::A(1), Mode::A(0)),
        ];
        let spec = NetworkSpec::new(3, 1, elements.clone()).unwrap();
        let v = passive_transform_of(3, &elements, true).unwrap();
        let mut u = crate::fock::LinearOperator::identity(&space);
        for k in 0..elements.len() {
            let g = spec.element_generator(&space, k).unwrap();
            u = expm(&g, Complex64::new(1.0, 0.0)).unwrap().try_mul(&u).unwrap();
        }
        let one_photon: Vec<[u32; 4]> = vec![[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]];
        for l in 0..3 {
            let conj = u.try_mul(&annihilation(&space, l).unwrap()).unwrap().try_mul(&u.adjoint()).unwrap();
            for (m, occ) in one_photon.iter().enumerate() {
                // ⟨0| Û â_l Û† |1_m⟩ = V_lm
                let got = conj.get(0, space.index_of(occ).unwrap());
                assert!((got - v.matrix[(l, m)]).norm() < 1e-13, "l={l} m={m}: {got} vs {}", v.matrix[(l, m)]);
            }
        }
    }

    #[test]
    fn rejects_cross_side_and_squeezers() {
        let spec = NetworkSpec::new(1, 1, vec![Element::b_plus(Mode::A(0), Mode::B(0))]).unwrap();
        assert!(passive_transform(&spec).is_err());
        let spec = NetworkSpec::three_mode_primitive(Complex64::new(0.1, 0.0));
        assert!(passive_transform(&spec).is_err());
    }

    proptest! {
        #[test]
        fn passive_transforms_are_unitary(
            params in prop::collection::vec((0usize..4, 0usize..4, -6.3f64..6.3, -6.3f64..6.3), 0..24)
        ) {
            let elements: Vec<Element> = params
                .into_iter()
                .filter(|(i, j, _, _)| i != j)
                .map(|(i, j, t, p)| Element::beamsplitter(Mode::B(i), Mode::B(j), t, p))
                .collect();
            let v = passive_transform_of(4, &elements, false).unwrap();
            prop_assert!(v.unitarity_defect() <= PASSIVE_UNITARITY_TOL);
        }
    }
}
