//! The degree-two operators on Ext, the comparison maps between them, and
//! their action on Ext.

pub mod action;
pub mod alpha;
pub mod h1;
pub mod hochschild;
pub mod theta;
pub mod verify;

pub use action::{act, action_table, fin_gen_report, FinGenReport, OperatorAction};
pub use alpha::{
    alpha_map, alpha_map_with_section, alpha_of_extension, check_conormal_linear, cyclic_ideal_map,
    ideal_extension, ideal_map_of_extension, ideal_sequence, normal_form_section,
};
pub use h1::{h1_compute, H1Space};
pub use hochschild::{
    bar_complex, gamma, hh2_space, s_map, BarComplex, HH2Class, HH2Space, DEFAULT_BAR_BUDGET,
};
pub use theta::{operator_target, phi, phi_class, psi, psi_class, OperatorValue};
pub use verify::{
    verify_naturality_forget, verify_naturality_pushforward, verify_naturality_restrict,
    verify_phi_eq_psi_alpha, verify_s_gamma_eq_psi, Verdict,
};
