//! Optical networks of beamsplitters and two-mode squeezers: compilation to
//! unitaries, reduction to pseudo-two-mode squeezers, and identity checks.

mod compile;
mod element;
mod passive;
mod reduce;
mod verify;

pub use self::compile::{compile, generators, pseudo_squeezer_generator, simulate};
pub use self::element::{beamsplitter_generator, squeezer_generator, Element, ElementKind, Mode, NetworkSpec};
pub use self::passive::{passive_transform, PassiveTransform, PASSIVE_UNITARITY_TOL};
pub use self::reduce::{classify, compile_reduced, reduce, Obstruction, ObstructionKind, PseudoSqueezerForm};
pub use self::verify::{
    exotic_generator, three_mode_squeezer_generator, verify_exotic_identity, verify_multimode_identity,
    verify_three_mode_identity, MultimodeDeviation,
};
