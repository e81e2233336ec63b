//! Cylindrical degeneracies, standard homotopy pushouts and the lax comparisons they carry.

pub mod compare;
pub mod hpo;
pub mod structure;
pub mod tracked;

pub use compare::{
    chi, chi_via_paste, iota, is_weak_equivalence, kappa, lambda, paste_symmetry, projection, rho, sigma,
    weak_equivalence_chain, ChainError, Orientation,
};
pub use hpo::{cyl_concat, cyl_concat_t, cyl_concat_with_legs, cyl_degeneracy, standard_hpo, HomotopyPushout, HpoConcat};
pub use structure::Structure;
pub use tracked::{sym_paste, track_cyl_concat, track_cyl_degeneracy, track_sym_paste};
