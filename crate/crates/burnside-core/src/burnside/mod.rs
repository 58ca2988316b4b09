//! Double Burnside groups `B^S(G,H)`: subgroup systems and their standard bases, tables
//! of marks, the Mackey product, opposites, and explicit bisets used as an oracle.

mod biset;
mod element;
mod system;

pub use biset::{
    decompose_biset, factorization_fixed_point_count, fixed_point_factorizations, tensor_oracle,
    ExplicitBiset, Factorization,
};
pub use element::{
    mackey_product, mark_matrix, marks, opposite_element, standard_basis, valuation,
    BurnsideElement,
};
pub(crate) use element::rat;
pub use system::{Member, SubgroupSystem, SystemFlavor, MAX_PRODUCT_ORDER};
pub(crate) use system::GhostTable;
