//! Recognizing networks that act as a single pseudo-two-mode squeezer.
//!
//! A network qualifies when it holds exactly one squeezer, that squeezer
//! couples an upper mode to a lower mode, and no beamsplitter anywhere
//! couples the two sides. The test looks only at which modes each element
//! touches; a beamsplitter with `θ = 0` across sides still disqualifies.
//!
//! For a qualifying network `U = B_after · S · B_before` we have
//! `U = (B_after S B_after†) · B_after B_before`, and the bracket is the
//! squeezer with its modes replaced by the rows of `B_after`'s passive
//! transforms.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::compile::{compile, pseudo_squeezer_generator};
use super::element::{ElementKind, Mode, NetworkSpec};
use super::passive::{passive_transform_of, PassiveTransform};
use crate::error::Result;
use crate::fock::{expm, FockSpace, LinearOperator};
use crate::su11::PseudoBoson;

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoSqueezerForm {
    pub pseudo_a: PseudoBoson,
    pub pseudo_b: PseudoBoson,
    pub eta: Complex64,
    /// Every beamsplitter of the original network, in its original order.
    pub trailing_passive: NetworkSpec,
    /// Position of the squeezer in the original element list.
    pub squeezer_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionKind {
    NoSqueezer,
    ExtraSqueezer,
    SameSideSqueezer,
    CrossSideBeamsplitter,
}

/// Why a network is not a pseudo-two-mode squeezer, and which element
/// (if any) is responsible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub element: Option<usize>,
    pub kind: ObstructionKind,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ObstructionKind::NoSqueezer => "the network has no two-mode squeezer",
            ObstructionKind::ExtraSqueezer => "a second squeezer appears",
            ObstructionKind::SameSideSqueezer => "the squeezer does not couple an a mode to a b mode",
            ObstructionKind::CrossSideBeamsplitter => "a beamsplitter mixes a modes and b modes",
        };
        match self.element {
            Some(k) => write!(f, "{what} (element {})", k + 1),
            None => f.write_str(what),
        }
    }
}

/// Classifies `spec`, returning either its pseudo-squeezer form or the first
/// element that rules one out.
pub fn classify(spec: &NetworkSpec) -> std::result::Result<PseudoSqueezerForm, Obstruction> {
    let mut squeezer = None;
    for (k, e) in spec.elements().iter().enumerate() {
        match e.kind {
            ElementKind::Squeezer { .. } if squeezer.is_some() => {
                return Err(Obstruction { element: Some(k), kind: ObstructionKind::ExtraSqueezer })
            }
            ElementKind::Squeezer { .. } if !e.crosses_sides() => {
                return Err(Obstruction { element: Some(k), kind: ObstructionKind::SameSideSqueezer })
            }
            ElementKind::Squeezer { .. } => squeezer = Some(k),
            ElementKind::Beamsplitter { .. } if e.crosses_sides() => {
                return Err(Obstruction { element: Some(k), kind: ObstructionKind::CrossSideBeamsplitter })
            }
            ElementKind::Beamsplitter { .. } => {}
        }
    }
    let Some(sq) = squeezer else {
        return Err(Obstruction { element: None, kind: ObstructionKind::NoSqueezer });
    };
    let element = spec.elements()[sq];
    let ElementKind::Squeezer { eta } = element.kind else { unreachable!() };
    let (a_mode, b_mode) = match element.modes {
        (Mode::A(i), Mode::B(j)) | (Mode::B(j), Mode::A(i)) => (i, j),
        _ => unreachable!("checked above"),
    };

    let after = &spec.elements()[sq + 1..];
    let va = passive_transform_of(spec.num_a_modes(), after.iter().filter(|e| e.modes.0.is_a()), true)
        .expect("same-side beamsplitters");
    let vb = passive_transform_of(spec.num_b_modes(), after.iter().filter(|e| !e.modes.0.is_a()), false)
        .expect("same-side beamsplitters");
    let pseudo_a = pseudo_from_row(&va, a_mode, spec.a_fock_modes());
    let pseudo_b = pseudo_from_row(&vb, b_mode, spec.b_fock_modes());

    let passive: Vec<_> = spec.elements().iter().filter(|e| !e.is_squeezer()).copied().collect();
    let trailing_passive =
        NetworkSpec::new(spec.num_a_modes(), spec.num_b_modes(), passive).expect("elements already validated");
    Ok(PseudoSqueezerForm { pseudo_a, pseudo_b, eta, trailing_passive, squeezer_index: sq })
}

fn pseudo_from_row(v: &PassiveTransform, row: usize, fock_modes: Vec<usize>) -> PseudoBoson {
    PseudoBoson::new(fock_modes, v.row(row)).expect("rows of a unitary are normalized")
}

/// The pseudo-squeezer form of `spec`, if it has one.
pub fn reduce(spec: &NetworkSpec) -> Option<PseudoSqueezerForm> {
    classify(spec).ok()
}

/// `exp(−i(ηÂB̂ + η*Â†B̂†)/2) · U_passive`.
pub fn compile_reduced(form: &PseudoSqueezerForm, space: &Arc<FockSpace>) -> Result<LinearOperator> {
    let g = pseudo_squeezer_generator(space, &form.pseudo_a, &form.pseudo_b, form.eta)?;
    expm(&g, Complex64::new(1.0, 0.0))?.try_mul(&compile(&form.trailing_passive, space)?)
}
