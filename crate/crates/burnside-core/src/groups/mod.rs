//! Finite groups as Cayley tables: subgroup lattices, conjugacy, homomorphisms and
//! composition length.

mod catalog;
mod group;
mod hom;
mod lattice;

pub use catalog::{
    cycle_notation, cyclic, dihedral, elementary_abelian, group_from_json, group_to_json,
    load_group, permutation_group, quaternion, GroupFile, CATALOG_HELP, CATALOG_SAMPLES,
};
pub use group::{
    max_fusion_order, max_group_order, ElemSet, FiniteGroup, Subgroup, DEFAULT_MAX_FUSION_ORDER,
    DEFAULT_MAX_ORDER,
};
pub use hom::{
    are_isomorphic, conjugation_homomorphisms, first_isomorphism, homomorphisms, order_profile,
    GroupHom, HomKind, MorphismKind,
};
pub use lattice::Lattice;
