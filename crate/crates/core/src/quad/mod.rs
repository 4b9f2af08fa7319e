//! Arithmetic in quadratic fields: elements, ideals, primes, square roots.

mod disc;
mod element;
mod field;
mod ideal;
mod prime;
mod sqrt;

pub use disc::{fundamental_discriminants, FundDisc};
pub use element::QuadElement;
pub use field::QuadField;
pub use ideal::QuadIdeal;
pub use prime::{
    factor_element, factor_ideal, ideal_from_factors, splitting_type, PrimeIdeal, SplitKind,
    SplittingType,
};
pub use sqrt::{is_square, sqrt_in_field};

/// Absolute norm of an integral ideal.
pub fn ideal_norm(ideal: &QuadIdeal) -> num_bigint::BigInt {
    ideal.norm()
}
