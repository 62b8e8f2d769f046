//! su(1,1) realizations on Fock space, their weight bases, and projection of
//! states onto those bases.

mod basis;
mod exotic;
mod labels;
mod pseudo;
mod realization;

pub use self::basis::{
    decompose, pseudo_number_state, weight_basis, weight_state, weight_state_from, Decomposition, DecompositionTerm,
    PseudoNumberState, Side, WeightState,
};
pub use self::exotic::{
    exotic_casimir_spectrum, exotic_realization, number_form_transformed_casimir, ExoticRealization, ExoticSpectrum,
    StructureConstants,
};
pub use self::labels::{labels_up_to, Branch, IrrepLabel, WeightLabel};
pub use self::pseudo::{chain_coefficients, PseudoBoson, PSEUDO_NORM_TOL};
pub use self::realization::{
    number_form_casimir, pseudo_number_casimir, pseudo_two_mode_realization, two_mode_number_casimir,
    two_mode_realization, ClosureResiduals, Provenance, Su11Realization,
};
