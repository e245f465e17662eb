//! Finite crossed modules, group-groupoids, groupoid coverings and the lifting
//! machinery connecting them, all verified by exhaustive checking at desk scale.
//!
//! Everything is a table: groups are Cayley tables, groupoids carry explicit
//! source/target/composition tables with a definedness mask, and every
//! structural theorem exposed by this crate is re-checked by finite
//! enumeration rather than assumed. The [`catalog`] module generates the
//! instance corpus the [`verify`] suites run over.

pub mod catalog;
pub mod equivalence;
pub mod error;
pub mod group;
pub mod group_groupoid;
pub mod groupoid;
pub mod lifting;
pub mod serial;
pub mod verify;
pub mod xmod;

pub use equivalence::{
    delta, delta_morphism, eta, eta_morphism, roundtrip_gg, roundtrip_xmod,
    transitivity_correspondence, EquivWitness,
};
pub use error::{Error, Result};
pub use group::{
    are_isomorphic, automorphism_group, automorphism_maps, enumerate_actions, enumerate_homs,
    find_isomorphism, hom_invariants, semidirect_product, FiniteGroup, GroupAction, GroupHom,
    Subgroup,
};
pub use group_groupoid::{
    action_group_groupoid, validate_gg_action, validate_group_groupoid, GroupGroupoid,
    GroupGroupoidAction, GroupGroupoidData, GroupGroupoidMorphism,
};
pub use groupoid::{
    act_morphism_check, action_from_covering, action_groupoid, classify_transitivity,
    find_groupoid_isomorphism, is_covering_morphism, is_universal_covering, lifting_function,
    to_dot, ActionMorphismCheck, CoveringCheck, Groupoid, GroupoidAction, GroupoidData,
    GroupoidMorphism, TransitivityFlags,
};
pub use lifting::{
    action_from_lifting, compose_liftings, connecting_morphism, covering_to_lifting,
    distinct_up_to_isomorphism, enumerate_liftings, exhaustive_liftings, find_lifting_isomorphism,
    gg_action_on_kernel_quotient, is_lifting_of_lifting, lifting_from_action,
    lifting_from_central_subgroup, lifting_to_covering, natural_lifting, one_lifting_check,
    theta_psi_roundtrip_action, theta_psi_roundtrip_lifting, transport_lifting, universal_lifting,
    Connecting, Lifting, LiftingMorphism, LiftingOfLifting, XModCovering,
};
pub use xmod::{
    classify_xmod_transitivity, find_xmod_isomorphism, validate_xmod, validate_xmod_morphism,
    xmod_from_normal_subgroup, xmod_inner_automorphism, xmod_properties, xmod_zero_module,
    CrossedModule, XModMorphism, XModProperties,
};
