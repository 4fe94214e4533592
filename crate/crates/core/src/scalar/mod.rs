//! Scalar rings: prime-power fields and truncated Witt rings over them.

pub mod poly;
pub mod ring;
pub mod tables;

pub use ring::{
    is_primitive, lift_modulus, unit_root, FieldParams, FqElem, RingEmbedding, WittElem, WittRing,
    WittRingParams, RING_SIZE_LIMIT,
};
pub use tables::FieldTables;
