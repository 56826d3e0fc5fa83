//! Finite fields GF(p^m), subfield towers, traces and bases.

mod basis;
mod field;
pub mod poly;
mod tower;

pub use basis::{BasisKind, FieldBasis};
pub use field::{
    field_from_record, make_field, make_field_of_order, make_field_within, prime_power, Elem,
    FieldRecord, FiniteField,
};
pub(crate) use field::{gcd, is_prime};
pub use tower::{prime_tower, Tower};
