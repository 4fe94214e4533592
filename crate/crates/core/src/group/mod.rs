//! Finite groups, conjugacy classes and the twist dictionary.

pub mod table;
pub mod twist;

pub use table::{gl_order, ConjugacyClass, FiniteGroupTable, TABLE_LIMIT};
pub use twist::{
    base_change, conjugacy_descriptors, frequency_table, h1_cyclic_oracle, merge_twists_coprime,
    twist_aut_order, twists_over, write_frequency_csv, AbelianPresentation, TwistDescriptor,
};
